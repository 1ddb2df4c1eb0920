#include "qnlp/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qnlp/diagram.hpp"
#include "qnlp/rewriter.hpp"
#include "qnlp/simulator.hpp"

namespace qnlp {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Portable uniform in [0, 1): fixed bit recipe, no
// std::uniform_real_distribution (implementation-defined sequences).
double uniform01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

std::uint64_t scramble(std::uint64_t seed) {
    // splitmix64 step; keeps the SPSA stream apart from the init stream.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string joined(const std::vector<std::string>& tokens) {
    std::string out;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i) {
            out += ' ';
        }
        out += tokens[i];
    }
    return out;
}

}  // namespace

Dataset Dataset::subset(const std::string& split) const {
    if (split == "all") {
        return *this;
    }
    Dataset out;
    for (const auto& item : items) {
        if (item.split == split) {
            out.items.push_back(item);
        }
    }
    return out;
}

Dataset dataset_from_jsonl(const std::string& text) {
    Dataset ds;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("dataset line " + std::to_string(lineno) + ": " + e.what());
        }
        DatasetItem item;
        try {
            item.tokens = doc.at("tokens").get<std::vector<std::string>>();
            item.label = doc.at("label").get<int>();
            item.split = doc.at("split").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("dataset line " + std::to_string(lineno) + ": " + e.what());
        }
        if (item.label != 0 && item.label != 1) {
            throw ConfigError("dataset line " + std::to_string(lineno) + ": label must be 0 or 1");
        }
        if (item.split != "train" && item.split != "dev") {
            throw ConfigError("dataset line " + std::to_string(lineno) +
                              ": split must be 'train' or 'dev'");
        }
        ds.items.push_back(std::move(item));
    }
    return ds;
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open dataset file: " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return dataset_from_jsonl(buf.str());
}

void validate_dataset(const Dataset& ds, const Lexicon& lex) {
    bool labels[2] = {false, false};
    for (const auto& item : ds.items) {
        try {
            parse_sentence(item.tokens, lex);
        } catch (const UnknownWordError& e) {
            throw UnknownWordError(e.token, std::string(e.what()) + " in sentence '" +
                                                joined(item.tokens) + "'");
        } catch (const NoParseError& e) {
            throw NoParseError("sentence '" + joined(item.tokens) + "': " + e.what());
        }
        if (item.split == "train") {
            labels[item.label] = true;
        }
    }
    if (!labels[0] || !labels[1]) {
        throw ConfigError("train split must contain both labels");
    }
}

void init_parameters(ParameterTable& table, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (const auto& name : table.names()) {
        table.set(name, uniform01(rng) * kTwoPi);
    }
}

Model make_model(Lexicon lexicon, AnsatzConfig ansatz, const Dataset& corpus, bool rewrite,
                 std::uint64_t seed) {
    Model m{std::move(lexicon), std::move(ansatz), {}, rewrite};
    for (const auto& item : corpus.items) {
        const Diagram d = parse_sentence(item.tokens, m.lexicon);
        compile_into(m.rewrite ? remove_cups(d) : as_rewritten(d), m.ansatz, m.params);
    }
    init_parameters(m.params, seed);
    return m;
}

Prediction predict(const Model& m, const std::vector<std::string>& tokens) {
    const Diagram d = parse_sentence(tokens, m.lexicon);
    const RewrittenDiagram rw = m.rewrite ? remove_cups(d) : as_rewritten(d);
    ParameterTable scratch = m.params;
    const CircuitIR circuit = compile_into(rw, m.ansatz, scratch, /*allow_new=*/false);
    const OutcomeDistribution dist = run(circuit, scratch);

    Prediction out;
    if (dist.success_weight < 1e-12) {
        out.degenerate = true;
        return out;
    }
    double p1 = 0.0;
    for (const auto& [bits, prob] : dist.probabilities) {
        const auto ones = std::count(bits.begin(), bits.end(), '1');
        if (2 * ones > static_cast<long>(bits.size())) {
            p1 += prob;
        }
    }
    out.p1 = p1;
    out.p0 = 1.0 - p1;
    return out;
}

double loss(const Model& m, const Dataset& ds, double epsilon) {
    if (ds.items.empty()) {
        return 0.0;
    }
    double total = 0.0;
    for (const auto& item : ds.items) {
        const Prediction pred = predict(m, item.tokens);
        const double p = item.label == 1 ? pred.p1 : pred.p0;
        total += -std::log(std::max(p, epsilon));
    }
    return total / double(ds.items.size());
}

double evaluate(const Model& m, const Dataset& ds) {
    if (ds.items.empty()) {
        return 0.0;
    }
    int correct = 0;
    for (const auto& item : ds.items) {
        const Prediction pred = predict(m, item.tokens);
        if (std::abs(pred.p0 - pred.p1) < 1e-12) {
            continue;  // tie counts as incorrect
        }
        const int guess = pred.p1 > pred.p0 ? 1 : 0;
        correct += guess == item.label;
    }
    return double(correct) / double(ds.items.size());
}

TrainResult spsa_train(Model m, const Dataset& train, const TrainConfig& cfg) {
    std::mt19937_64 rng(scramble(cfg.seed));
    const size_t p = m.params.size();
    std::vector<double> theta = m.params.values();
    const double big_a = cfg.effective_stability();

    TrainResult result;
    result.history.reserve(cfg.iterations);
    std::vector<double> shifted(p);
    for (int k = 0; k < cfg.iterations; ++k) {
        m.params.set_values(theta);
        result.history.push_back({k, loss(m, train, cfg.epsilon), evaluate(m, train)});

        const double ak = cfg.a / std::pow(k + 1 + big_a, cfg.alpha);
        const double ck = cfg.c / std::pow(k + 1, cfg.gamma);
        std::vector<double> delta(p);
        for (size_t i = 0; i < p; ++i) {
            delta[i] = (rng() & 1) ? 1.0 : -1.0;
        }
        for (size_t i = 0; i < p; ++i) {
            shifted[i] = theta[i] + ck * delta[i];
        }
        m.params.set_values(shifted);
        const double loss_plus = loss(m, train, cfg.epsilon);
        for (size_t i = 0; i < p; ++i) {
            shifted[i] = theta[i] - ck * delta[i];
        }
        m.params.set_values(shifted);
        const double loss_minus = loss(m, train, cfg.epsilon);

        const double diff = (loss_plus - loss_minus) / (2.0 * ck);
        for (size_t i = 0; i < p; ++i) {
            theta[i] -= ak * diff * delta[i];  // delta entries are +-1, so 1/delta == delta
        }
    }
    m.params.set_values(theta);
    result.model = std::move(m);
    return result;
}

Eigen::VectorXd finite_diff_gradient(const Model& m, const Dataset& ds, double h) {
    if (h <= 0) {
        throw std::invalid_argument("finite difference step must be positive");
    }
    Model probe = m;
    const std::vector<double> theta = m.params.values();
    Eigen::VectorXd grad(theta.size());
    std::vector<double> shifted = theta;
    for (size_t i = 0; i < theta.size(); ++i) {
        shifted[i] = theta[i] + h;
        probe.params.set_values(shifted);
        const double plus = loss(probe, ds);
        shifted[i] = theta[i] - h;
        probe.params.set_values(shifted);
        const double minus = loss(probe, ds);
        shifted[i] = theta[i];
        grad[static_cast<Eigen::Index>(i)] = (plus - minus) / (2.0 * h);
    }
    return grad;
}

std::string checkpoint_to_json(const Model& m, std::uint64_t seed) {
    std::ostringstream out;
    out << "{\"ansatz\":{\"default_qubits\":" << m.ansatz.default_qubits
        << ",\"layers\":" << m.ansatz.layers << ",\"qubits_per_type\":{";
    bool first = true;
    for (const auto& [base, q] : m.ansatz.qubits_per_type) {
        out << (first ? "" : ",") << "\"" << base << "\":" << q;
        first = false;
    }
    out << "}},\"params\":{";
    std::map<std::string, double> sorted;
    for (const auto& name : m.params.names()) {
        sorted[name] = m.params.value(name);
    }
    first = true;
    for (const auto& [name, value] : sorted) {
        out << (first ? "" : ",") << "\"" << name << "\":" << format_number(value);
        first = false;
    }
    out << "},\"rewrite\":" << (m.rewrite ? "true" : "false") << ",\"seed\":" << seed << "}\n";
    return out.str();
}

Checkpoint checkpoint_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("checkpoint is not valid JSON: ") + e.what());
    }
    Checkpoint ck;
    try {
        const auto& ansatz = doc.at("ansatz");
        ck.ansatz.default_qubits = ansatz.at("default_qubits").get<int>();
        ck.ansatz.layers = ansatz.at("layers").get<int>();
        for (const auto& [base, q] : ansatz.at("qubits_per_type").items()) {
            ck.ansatz.qubits_per_type[base] = q.get<int>();
        }
        ck.rewrite = doc.at("rewrite").get<bool>();
        ck.seed = doc.at("seed").get<std::uint64_t>();
        for (const auto& [name, value] : doc.at("params").items()) {
            ck.params.emplace_back(name, value.get<double>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed checkpoint: ") + e.what());
    }
    return ck;
}

Model model_from_checkpoint(Lexicon lexicon, const Checkpoint& ck) {
    Model m{std::move(lexicon), ck.ansatz, {}, ck.rewrite};
    for (const auto& [name, value] : ck.params) {
        m.params.ensure(name, value);
    }
    return m;
}

std::string history_to_jsonl(const std::vector<TrainStep>& history) {
    std::ostringstream out;
    for (const auto& step : history) {
        out << "{\"step\":" << step.step << ",\"loss\":" << format_number(step.loss)
            << ",\"acc\":" << format_number(step.acc) << "}\n";
    }
    return out.str();
}

}  // namespace qnlp
