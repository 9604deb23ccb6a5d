#pragma once

#include <string>

#include "wordgp/fitness.hpp"
#include "wordgp/rng.hpp"

namespace wordgp {

enum class PredictorLabel : std::uint8_t { Random, FirstWord, LastWord, Gp };

struct PredictorScore {
    PredictorLabel label;
    double fitness = 0.0;
};

// Draws pool_size sets of |cases| isotropic unit vectors, scores each set with
// the GP fitness function (the set's i-th vector predicts the i-th target),
// and returns the best set's score. Each set owns a derived rng stream, so the
// result is independent of how the pool is scheduled; the pool loop is
// OpenMP-parallel when available.
PredictorScore best_random_predictor(const ResolvedCases& cases, const EmbeddingTable& table,
                                     std::size_t pool_size, Rng& rng);

// Single-threaded reference, kept for tests and benchmarks.
PredictorScore best_random_predictor_serial(const ResolvedCases& cases,
                                            const EmbeddingTable& table,
                                            std::size_t pool_size, Rng& rng);

enum class Position : std::uint8_t { First, Last };

// Trivial predictor that always answers the first (or last) input word.
PredictorScore positional_predictor(Position which, const ResolvedCases& cases,
                                    const EmbeddingTable& table);

}  // namespace wordgp
