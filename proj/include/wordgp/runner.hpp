#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wordgp/config.hpp"

namespace wordgp {

// One results.csv row: the data behind the training-phase comparisons.
struct RunRow {
    std::size_t dim = 0;
    std::size_t run = 0;
    double best_initial_fitness = 0.0;
    double best_final_fitness = 0.0;
    double random_baseline = 0.0;
    double first_word_baseline = 0.0;
    double last_word_baseline = 0.0;
};

struct EvolveOutput {
    std::vector<RunRow> rows;  // sorted by (dim, run)
    std::string results_csv_path;
    // (dim, run) pairs that aborted, with reasons; successful runs proceed.
    std::vector<std::string> errors;
};

struct PredictionRecord {
    std::vector<std::string> inputs;
    std::string predicted;
    std::string original;
    double similarity = 0.0;  // predicted-vs-original embedding similarity
    bool degenerate = false;
};

struct TestSummary {
    std::size_t dim = 0;
    std::size_t best_run = 0;
    std::string expression;
    std::size_t cases = 0;
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
    std::string predictions_csv_path;
    std::string summary_path;
};

// Trains one embedding per configured dimension and writes them in the text
// format under output_dir.
void cmd_train_embedding(const ExperimentConfig& config, std::ostream& log);

// Full training protocol: per (dim, run) samples a training set, evolves, and
// scores the three baselines on the same set. Writes results.csv and one best
// expression file per (dim, run). Byte-deterministic for a fixed config.
EvolveOutput cmd_evolve(const ExperimentConfig& config, std::ostream& log);

// Loads the best expression across runs for dim, samples a test set, predicts
// the final word of every case, and writes predictions.csv plus a five-number
// summary of predicted-vs-original similarity.
TestSummary cmd_test(const ExperimentConfig& config, std::size_t dim, std::ostream& log);

// Single-shot prediction from an expression and k input words. When
// `original` is given, similarity is predicted-vs-original; otherwise the
// record reports the decode similarity against the predicted word itself.
PredictionRecord cmd_predict(const std::string& expression,
                             const std::vector<std::string>& words,
                             const std::string& embedding_path,
                             const std::optional<std::string>& original = std::nullopt);

// Quartile convention used in summaries: linear interpolation at p*(n-1).
double quantile(std::vector<double> sorted_values, double p);

}  // namespace wordgp
