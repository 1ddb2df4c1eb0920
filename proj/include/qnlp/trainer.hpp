#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qnlp/ansatz.hpp"
#include "qnlp/lexicon.hpp"

namespace qnlp {

struct DatasetItem {
    std::vector<std::string> tokens;
    int label = 0;  // 0 or 1
    std::string split = "train";

    bool operator==(const DatasetItem&) const = default;
};

struct Dataset {
    std::vector<DatasetItem> items;

    Dataset subset(const std::string& split) const;  // "all" keeps everything
};

/// JSON lines, each { "tokens": [...], "label": 0|1, "split": "train"|"dev" }.
Dataset dataset_from_jsonl(const std::string& text);
Dataset load_dataset(const std::string& path);

/// Every sentence must parse under the lexicon (errors name the
/// sentence) and the train split must contain both labels.
void validate_dataset(const Dataset& ds, const Lexicon& lex);

struct TrainConfig {
    std::uint64_t seed = 7;
    int iterations = 200;
    // SPSA gains: a_k = a/(k+1+A)^alpha, c_k = c/(k+1)^gamma.
    double a = 0.1;
    double c = 0.1;
    double stability = -1.0;  // A; negative means 0.1 * iterations
    double alpha = 0.602;
    double gamma = 0.101;
    double epsilon = 1e-9;  // loss smoothing

    double effective_stability() const { return stability >= 0 ? stability : 0.1 * iterations; }
};

/// Classifier state: lexicon, ansatz, the shared parameter table built
/// over a corpus, and whether cup removal runs before compilation.
struct Model {
    Lexicon lexicon;
    AnsatzConfig ansatz;
    ParameterTable params;
    bool rewrite = true;
};

/// Draws every parameter uniformly from [0, 2pi), in table order, with
/// a portable seeded generator.
void init_parameters(ParameterTable& table, std::uint64_t seed);

/// Builds the shared parameter table over the corpus (union by
/// entry id, first-appearance order) and initializes every parameter
/// uniformly in [0, 2pi) from the seed.
Model make_model(Lexicon lexicon, AnsatzConfig ansatz, const Dataset& corpus, bool rewrite,
                 std::uint64_t seed);

struct Prediction {
    double p0 = 0.5;
    double p1 = 0.5;
    bool degenerate = false;  // success weight below 1e-12
};

/// Compiles (with rewrite if enabled), runs, and reads the sentence
/// qubit: p1 = P(1). A wider sentence wire reduces by the majority-bit
/// marginal, ties counting toward class 0.
Prediction predict(const Model& m, const std::vector<std::string>& tokens);

/// Mean binary cross-entropy, -mean log(max(p_label, epsilon)).
double loss(const Model& m, const Dataset& ds, double epsilon = 1e-9);

/// Fraction of items with argmax prediction equal to the label;
/// near-ties (|p0 - p1| < 1e-12) count as incorrect.
double evaluate(const Model& m, const Dataset& ds);

struct TrainStep {
    int step = 0;
    double loss = 0.0;
    double acc = 0.0;
};

struct TrainResult {
    Model model;
    std::vector<TrainStep> history;
};

/// Standard SPSA over the shared parameters; fully reproducible from
/// cfg.seed. History records loss and train accuracy at the start of
/// each step.
TrainResult spsa_train(Model m, const Dataset& train, const TrainConfig& cfg);

/// Central differences per coordinate, in parameter-table order.
Eigen::VectorXd finite_diff_gradient(const Model& m, const Dataset& ds, double h);

/// Checkpoint: { "ansatz", "params", "rewrite", "seed" }, numbers at 12
/// significant digits, keys sorted, byte-stable across runs.
std::string checkpoint_to_json(const Model& m, std::uint64_t seed);
struct Checkpoint {
    AnsatzConfig ansatz;
    bool rewrite = true;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, double>> params;
};
Checkpoint checkpoint_from_json(const std::string& text);
Model model_from_checkpoint(Lexicon lexicon, const Checkpoint& ck);

std::string history_to_jsonl(const std::vector<TrainStep>& history);

}  // namespace qnlp
