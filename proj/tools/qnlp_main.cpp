#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qnlp/ansatz.hpp"
#include "qnlp/diagram.hpp"
#include "qnlp/lexicon.hpp"
#include "qnlp/rewriter.hpp"
#include "qnlp/simulator.hpp"
#include "qnlp/trainer.hpp"

namespace {

using namespace qnlp;

struct FileConfig {
    AnsatzConfig ansatz;
    bool rewrite = false;
    TrainConfig train;
};

FileConfig load_config(const std::string& path) {
    FileConfig cfg;
    if (path.empty()) {
        return cfg;
    }
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open config file: " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        if (doc.contains("qubits_per_type")) {
            for (const auto& [base, q] : doc.at("qubits_per_type").items()) {
                cfg.ansatz.qubits_per_type[base] = q.get<int>();
            }
        }
        cfg.ansatz.default_qubits = doc.value("default_qubits", 1);
        cfg.ansatz.layers = doc.value("layers", 1);
        cfg.rewrite = doc.value("rewrite", false);
        if (doc.contains("train")) {
            const auto& t = doc.at("train");
            cfg.train.seed = t.value("seed", std::uint64_t{7});
            cfg.train.iterations = t.value("iterations", 200);
            cfg.train.a = t.value("a", 0.1);
            cfg.train.c = t.value("c", 0.1);
            cfg.train.stability = t.value("A", -1.0);
            cfg.train.alpha = t.value("alpha", 0.602);
            cfg.train.gamma = t.value("gamma", 0.101);
            cfg.train.epsilon = t.value("epsilon", 1e-9);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return cfg;
}

Lexicon resolve_lexicon(const std::string& spec) {
    return spec == "seed" ? seed_lexicon() : load_lexicon(spec);
}

// Priority: QNLP_SEED env var, then --seed, then the config file.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, const FileConfig& cfg) {
    if (const char* env = std::getenv("QNLP_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ConfigError(std::string("QNLP_SEED is not an integer: ") + env);
        }
    }
    return flag ? *flag : cfg.train.seed;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::ios_base::failure("cannot write file: " + path);
    }
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open file: " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

nlohmann::json complex_json(const std::complex<double>& z) {
    return nlohmann::json::array({z.real(), z.imag()});
}

std::string distribution_json(const OutcomeDistribution& dist,
                              const Statevector* state_dump) {
    nlohmann::json doc;
    doc["success_weight"] = dist.success_weight;
    doc["degenerate"] = dist.success_weight < 1e-12;
    doc["probabilities"] = nlohmann::json::object();
    doc["raw_amplitudes"] = nlohmann::json::object();
    for (const auto& [bits, prob] : dist.probabilities) {
        doc["probabilities"][bits] = prob;
    }
    for (const auto& [bits, amp] : dist.raw_amplitudes) {
        doc["raw_amplitudes"][bits] = complex_json(amp);
    }
    if (state_dump) {
        nlohmann::json amps = nlohmann::json::array();
        for (Eigen::Index i = 0; i < state_dump->amps.size(); ++i) {
            amps.push_back(complex_json(state_dump->amps[i]));
        }
        doc["state"] = std::move(amps);
    }
    return doc.dump();
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Pregroup parsing, diagram-to-circuit compilation, simulation and training "
                 "for Hindi sentence classification"};
    app.require_subcommand(1);

    std::string lexicon_spec = "seed";
    std::string config_path;
    std::string output_path;
    std::string format = "json";
    std::optional<std::uint64_t> seed_flag;
    bool rewrite_on = false;
    bool rewrite_off = false;
    std::vector<std::string> sentence_words;
    std::string dataset_path;
    std::string model_path;
    std::string history_path;
    std::string split = "all";
    bool dump_state = false;

    auto add_common = [&](CLI::App* cmd, bool with_sentence) {
        cmd->add_option("--lexicon", lexicon_spec, "Lexicon file path, or 'seed' for the built-in");
        cmd->add_option("--config", config_path, "Pipeline config JSON");
        cmd->add_option("--seed", seed_flag, "Random seed (QNLP_SEED env overrides)");
        cmd->add_option("--output", output_path, "Write to a file instead of standard output");
        if (with_sentence) {
            cmd->add_option("sentence", sentence_words, "Sentence (whitespace tokenized)")
                ->required();
        }
    };
    auto add_rewrite = [&](CLI::App* cmd) {
        cmd->add_flag("--rewrite", rewrite_on, "Run cup removal before compilation");
        cmd->add_flag("--no-rewrite", rewrite_off, "Disable cup removal");
    };

    CLI::App* cmd_parse = app.add_subcommand("parse", "Parse a sentence to a diagram (JSON)");
    add_common(cmd_parse, true);

    CLI::App* cmd_diagram = app.add_subcommand("diagram", "Render a sentence diagram");
    add_common(cmd_diagram, true);
    cmd_diagram->add_option("--format", format, "dot or json")
        ->check(CLI::IsMember({"dot", "json"}));

    CLI::App* cmd_compile = app.add_subcommand("compile", "Compile a sentence to a circuit");
    add_common(cmd_compile, true);
    add_rewrite(cmd_compile);
    cmd_compile->add_option("--format", format, "json or qasm")
        ->check(CLI::IsMember({"json", "qasm"}));

    CLI::App* cmd_run = app.add_subcommand("run", "Compile and simulate a sentence");
    add_common(cmd_run, true);
    add_rewrite(cmd_run);
    cmd_run->add_flag("--dump-state", dump_state, "Include the pre-measurement statevector");

    CLI::App* cmd_train = app.add_subcommand("train", "Train a classifier on a dataset");
    add_common(cmd_train, false);
    add_rewrite(cmd_train);
    cmd_train->add_option("--dataset", dataset_path, "JSONL dataset")->required();
    cmd_train->add_option("--history", history_path, "Training history path");

    CLI::App* cmd_eval = app.add_subcommand("eval", "Evaluate a checkpoint on a dataset");
    add_common(cmd_eval, false);
    cmd_eval->add_option("--dataset", dataset_path, "JSONL dataset")->required();
    cmd_eval->add_option("--model", model_path, "Checkpoint JSON")->required();
    cmd_eval->add_option("--split", split, "train, dev or all")
        ->check(CLI::IsMember({"train", "dev", "all"}));

    CLI::App* cmd_predict = app.add_subcommand("predict", "Class probabilities for a sentence");
    add_common(cmd_predict, true);
    cmd_predict->add_option("--model", model_path, "Checkpoint JSON")->required();

    CLI::App* cmd_validate =
        app.add_subcommand("lexicon-validate", "Check a lexicon file and summarize it");
    cmd_validate->add_option("--lexicon", lexicon_spec, "Lexicon file path")->required();
    cmd_validate->add_option("--output", output_path, "Write to a file instead of standard output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    const FileConfig cfg = load_config(config_path);
    const bool rewrite = rewrite_off ? false : (rewrite_on || cfg.rewrite);

    auto tokens = [&]() {
        std::vector<std::string> out;
        for (const auto& word : sentence_words) {
            for (auto& tok : tokenize(word)) {
                out.push_back(std::move(tok));
            }
        }
        return out;
    };

    if (app.got_subcommand(cmd_parse)) {
        const Lexicon lex = resolve_lexicon(lexicon_spec);
        write_output(to_json(parse_sentence(tokens(), lex)), output_path);
        return 0;
    }
    if (app.got_subcommand(cmd_diagram)) {
        const Lexicon lex = resolve_lexicon(lexicon_spec);
        const Diagram d = parse_sentence(tokens(), lex);
        write_output(format == "json" ? to_json(d) : to_dot(d), output_path);
        return 0;
    }
    if (app.got_subcommand(cmd_compile) || app.got_subcommand(cmd_run)) {
        const Lexicon lex = resolve_lexicon(lexicon_spec);
        const Diagram d = parse_sentence(tokens(), lex);
        CompiledCircuit compiled = compile(rewrite ? remove_cups(d) : as_rewritten(d), cfg.ansatz);
        init_parameters(compiled.params, resolve_seed(seed_flag, cfg));
        if (app.got_subcommand(cmd_compile)) {
            write_output(format == "qasm" ? to_qasm_like(compiled.circuit, compiled.params)
                                          : circuit_to_json(compiled.circuit, compiled.params),
                         output_path);
            return 0;
        }
        const OutcomeDistribution dist = run(compiled.circuit, compiled.params);
        if (dump_state) {
            const Statevector sv = run_gates(compiled.circuit, compiled.params);
            write_output(distribution_json(dist, &sv), output_path);
        } else {
            write_output(distribution_json(dist, nullptr), output_path);
        }
        return 0;
    }
    if (app.got_subcommand(cmd_train)) {
        if (output_path.empty()) {
            throw ConfigError("train needs --output for the checkpoint");
        }
        const Lexicon lex = resolve_lexicon(lexicon_spec);
        const Dataset ds = load_dataset(dataset_path);
        validate_dataset(ds, lex);
        TrainConfig train_cfg = cfg.train;
        train_cfg.seed = resolve_seed(seed_flag, cfg);
        const Dataset train_split = ds.subset("train");
        Model model = make_model(lex, cfg.ansatz, ds, rewrite, train_cfg.seed);
        TrainResult result = spsa_train(std::move(model), train_split, train_cfg);

        const std::string hist_path =
            history_path.empty() ? output_path + ".history.jsonl" : history_path;
        write_output(checkpoint_to_json(result.model, train_cfg.seed), output_path);
        write_output(history_to_jsonl(result.history), hist_path);
        nlohmann::json summary;
        summary["checkpoint"] = output_path;
        summary["history"] = hist_path;
        summary["final_loss"] = loss(result.model, train_split, train_cfg.epsilon);
        summary["final_acc"] = evaluate(result.model, train_split);
        std::cout << summary.dump() << "\n";
        return 0;
    }
    if (app.got_subcommand(cmd_eval)) {
        const Lexicon lex = resolve_lexicon(lexicon_spec);
        const Dataset ds = load_dataset(dataset_path).subset(split);
        const Model model = model_from_checkpoint(lex, checkpoint_from_json(read_file(model_path)));
        for (const auto& item : ds.items) {
            parse_sentence(item.tokens, model.lexicon);  // name unparseable sentences up front
        }
        nlohmann::json doc;
        doc["split"] = split;
        doc["items"] = ds.items.size();
        doc["accuracy"] = evaluate(model, ds);
        write_output(doc.dump(), output_path);
        return 0;
    }
    if (app.got_subcommand(cmd_predict)) {
        const Lexicon lex = resolve_lexicon(lexicon_spec);
        const Model model = model_from_checkpoint(lex, checkpoint_from_json(read_file(model_path)));
        const Prediction pred = predict(model, tokens());
        nlohmann::json doc;
        doc["p0"] = pred.p0;
        doc["p1"] = pred.p1;
        doc["degenerate"] = pred.degenerate;
        write_output(doc.dump(), output_path);
        return 0;
    }
    if (app.got_subcommand(cmd_validate)) {
        const Lexicon lex = load_lexicon(lexicon_spec);
        nlohmann::json doc;
        doc["entries"] = lex.entries().size();
        doc["symbols"] = lex.declared_symbols();
        write_output(doc.dump(), output_path);
        return 0;
    }
    return 3;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const UnknownWordError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NoParseError& e) {
        std::cerr << "error: no parse: " << e.what() << "\n";
        return 2;
    } catch (const AmbiguityCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const LexiconError& e) {
        std::cerr << "error: invalid lexicon: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
