// Command-line front end: train embeddings, run the evolution protocol,
// score the best tree on a held-out test sample, or predict a single word.
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wordgp/config.hpp"
#include "wordgp/runner.hpp"
#include "wordgp/util.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::size_t> dims;
    std::optional<std::size_t> runs;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
};

void add_common_options(CLI::App& cmd, CommonArgs& args, bool with_runs) {
    cmd.add_option("--config", args.config_path, "experiment config file (key = value lines)")
        ->required();
    cmd.add_option("--dim", args.dims, "restrict to these embedding dimensions");
    if (with_runs) cmd.add_option("--runs", args.runs, "override the number of runs");
    cmd.add_option("--seed", args.seed, "override master_seed");
    cmd.add_option("--out", args.out_dir, "override output_dir");
}

wordgp::ExperimentConfig resolve_config(const CommonArgs& args) {
    wordgp::ExperimentConfig cfg = wordgp::load_config_file(args.config_path);
    if (!args.dims.empty()) cfg.dims = args.dims;
    if (args.runs) cfg.runs = *args.runs;
    if (args.seed) cfg.master_seed = *args.seed;
    if (args.out_dir) cfg.output_dir = *args.out_dir;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GP next-word prediction over word embeddings"};
    app.require_subcommand(1);

    CommonArgs train_args;
    CLI::App* train = app.add_subcommand(
        "train-embedding", "train one embedding per configured dimension");
    add_common_options(*train, train_args, false);

    CommonArgs evolve_args;
    CLI::App* evolve = app.add_subcommand(
        "evolve", "run the full training protocol and write results.csv");
    add_common_options(*evolve, evolve_args, true);

    CommonArgs test_args;
    CLI::App* test = app.add_subcommand(
        "test", "score the best evolved tree for one dimension on a test sample");
    add_common_options(*test, test_args, false);

    std::string predict_expression;
    std::vector<std::string> predict_words;
    std::string predict_embedding;
    std::string predict_original;
    CLI::App* predict =
        app.add_subcommand("predict", "predict the next word for one input sentence");
    predict->add_option("expression", predict_expression, "tree expression, e.g. \"(w0+w1)\"")
        ->required();
    predict->add_option("words", predict_words, "input words, one per terminal slot")
        ->required()
        ->expected(-1);
    predict->add_option("--embedding", predict_embedding, "embedding file in text format")
        ->required();
    predict->add_option("--original", predict_original,
                        "score the prediction against this word instead of itself");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) {
            wordgp::cmd_train_embedding(resolve_config(train_args), std::cout);
        } else if (evolve->parsed()) {
            const wordgp::EvolveOutput out =
                wordgp::cmd_evolve(resolve_config(evolve_args), std::cout);
            if (!out.errors.empty()) {
                std::cerr << out.errors.size() << " run(s) failed\n";
                return 1;
            }
        } else if (test->parsed()) {
            const wordgp::ExperimentConfig cfg = resolve_config(test_args);
            if (cfg.dims.size() != 1) {
                std::cerr << "error: test needs exactly one dimension (pass --dim)\n";
                return 1;
            }
            wordgp::cmd_test(cfg, cfg.dims.front(), std::cout);
        } else if (predict->parsed()) {
            std::optional<std::string> original;
            if (!predict_original.empty()) original = predict_original;
            const wordgp::PredictionRecord rec = wordgp::cmd_predict(
                predict_expression, predict_words, predict_embedding, original);
            std::cout << "predicted: " << rec.predicted << "\n";
            std::cout << "similarity: " << wordgp::format_double(rec.similarity) << "\n";
            if (rec.degenerate)
                std::cout << "note: output vector was zero; prediction fell back to the first "
                             "vocabulary word\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
