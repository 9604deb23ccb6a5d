#pragma once

#include <cstdint>
#include <vector>

#include "wordgp/dataset.hpp"
#include "wordgp/embedding.hpp"

namespace wordgp {

struct TrainerParams {
    std::size_t dim = 100;
    std::size_t epochs = 20;
    std::size_t window = 5;
    std::size_t negatives = 5;
    double learning_rate = 0.025;  // linearly decayed to min_learning_rate
    double min_learning_rate = 1e-4;
    std::size_t min_count = 1;
    std::uint64_t seed = 0;
    // workers == 1 is the deterministic mode; more workers update the shared
    // weights hogwild-style and make no determinism promise.
    std::size_t workers = 1;

    void validate() const;
};

// Skip-gram with negative sampling over the tokenized corpus. The vocabulary
// keeps every token occurring at least min_count times, ordered by frequency
// (ties by first occurrence). Returned vectors are unit-normalized.
LoadedEmbedding train_embedding(const std::vector<Headline>& corpus, const TrainerParams& params);

}  // namespace wordgp
