#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wordgp/evolution.hpp"
#include "wordgp/sgns.hpp"

namespace wordgp {

// Experiment configuration; defaults reproduce the full protocol. Loaded from
// a flat "key = value" file ('#' starts a comment), with CLI overrides on top.
struct ExperimentConfig {
    std::string corpus_path;
    std::size_t sentence_length = 6;
    std::uint32_t k = 5;  // must equal sentence_length - 1
    std::vector<std::size_t> dims = {10, 15, 20, 25, 50, 100};
    std::size_t runs = 30;
    double train_fraction = 0.01;
    std::size_t test_count = 10000;
    bool test_exclude_train = false;
    std::string output_dir = "out";
    std::uint64_t master_seed = 1;
    int threads = 0;  // 0 = library default

    // evolution
    std::size_t population_size = 500;
    std::size_t tournament_size = 3;
    double mutation_probability = 0.3;
    std::size_t max_evaluations = 100000;
    int max_depth = 5;

    // embedding trainer
    std::size_t epochs = 20;
    std::size_t window = 5;
    std::size_t negatives = 5;
    double learning_rate = 0.025;
    std::size_t min_count = 1;
    std::size_t workers = 1;

    // per-dimension external embedding files; when absent for a dim, the
    // trainer output under output_dir is used
    std::map<std::size_t, std::string> embedding_paths;

    EvolutionParams evolution_params(std::uint64_t seed) const;
    TrainerParams trainer_params(std::size_t dim, std::uint64_t seed) const;

    // Path cmd_evolve and cmd_test read the embedding for a dimension from:
    // the configured embedding_path.<dim> when present, otherwise the file
    // cmd_train_embedding writes under output_dir.
    std::string embedding_file(std::size_t dim) const;

    void validate() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

}  // namespace wordgp
