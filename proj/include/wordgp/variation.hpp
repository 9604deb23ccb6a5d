#pragma once

#include "wordgp/rng.hpp"
#include "wordgp/tree.hpp"

namespace wordgp {

enum class CrossoverKind : std::uint8_t {
    Subtree,
    Uniform,
    SizeFair,
    OnePoint,
    ContextPreserving,
};
inline constexpr int kNumCrossoverKinds = 5;

// Returns one child. If a raw child exceeds max_depth the same operator is
// retried with fresh points up to 5 times, after which a copy of `fitter`
// (the first parent; pass the fitter one there) is returned.
GpTree crossover(CrossoverKind kind, const GpTree& fitter, const GpTree& other,
                 int max_depth, Rng& rng);

// Subtree mutation: a uniformly chosen node is replaced by a fresh
// grow-generated subtree that fits the remaining depth budget.
GpTree mutate(const GpTree& tree, std::uint32_t num_slots, int max_depth, Rng& rng);

}  // namespace wordgp
