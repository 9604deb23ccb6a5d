#pragma once

#include <cstdint>
#include <vector>

#include "wordgp/dataset.hpp"
#include "wordgp/embedding.hpp"
#include "wordgp/tree.hpp"

namespace wordgp {

// Fitness cases resolved to vocabulary indices, flattened for the hot loop.
// Every case has exactly k inputs and one target; resolution rejects
// out-of-vocabulary words naming the offender.
struct ResolvedCases {
    std::uint32_t k = 0;
    std::vector<std::uint32_t> input_ids;   // case-major, k per case
    std::vector<std::uint32_t> target_ids;  // one per case

    std::size_t count() const { return target_ids.size(); }
};

ResolvedCases resolve_cases(const std::vector<FitnessCase>& cases, const Vocabulary& vocab);

// Mean cosine similarity between the tree output and the target vector over
// all cases. A zero output vector contributes 0. Per-case similarities are
// computed independently and summed in case order, so the result is identical
// whether the case loop runs serially or under OpenMP.
class FitnessEvaluator {
public:
    FitnessEvaluator(const ResolvedCases& cases, const EmbeddingTable& table,
                     bool parallel = true)
        : cases_(&cases), table_(&table), parallel_(parallel) {}

    double operator()(const GpTree& tree) const;

    // Forced single-thread path, kept for tests and benchmarks.
    double serial(const GpTree& tree) const;

    const ResolvedCases& cases() const { return *cases_; }
    const EmbeddingTable& table() const { return *table_; }

private:
    double run(const GpTree& tree, bool parallel) const;

    const ResolvedCases* cases_;
    const EmbeddingTable* table_;
    bool parallel_;
};

// One-shot convenience: resolves the cases, then scores the tree.
double compute_fitness(const GpTree& tree, const std::vector<FitnessCase>& cases,
                       const Vocabulary& vocab, const EmbeddingTable& table);

}  // namespace wordgp
