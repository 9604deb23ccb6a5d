#include "wordgp/fitness.hpp"

#include <span>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wordgp/eval.hpp"

namespace wordgp {

ResolvedCases resolve_cases(const std::vector<FitnessCase>& cases, const Vocabulary& vocab) {
    if (cases.empty()) throw std::runtime_error("resolve_cases: no fitness cases");
    ResolvedCases out;
    out.k = static_cast<std::uint32_t>(cases.front().inputs.size());
    if (out.k == 0) throw std::runtime_error("resolve_cases: cases have no input words");
    out.input_ids.reserve(cases.size() * out.k);
    out.target_ids.reserve(cases.size());
    for (const auto& c : cases) {
        if (c.inputs.size() != out.k)
            throw std::runtime_error("resolve_cases: inconsistent input arity (expected " +
                                     std::to_string(out.k) + ", got " +
                                     std::to_string(c.inputs.size()) + ")");
        for (const auto& w : c.inputs)
            out.input_ids.push_back(static_cast<std::uint32_t>(vocab.at(w)));
        out.target_ids.push_back(static_cast<std::uint32_t>(vocab.at(c.target)));
    }
    return out;
}

namespace {

// Per-case similarity with a caller-provided evaluator and scratch buffers,
// so the parallel loop can give each thread its own.
double case_similarity(const Evaluator& eval, const ResolvedCases& cases,
                       const EmbeddingTable& table, std::size_t case_idx,
                       std::vector<std::span<const double>>& inputs, Vec& out) {
    const std::size_t k = cases.k;
    for (std::size_t j = 0; j < k; ++j)
        inputs[j] = table.row(cases.input_ids[case_idx * k + j]);
    eval.run(inputs, out);
    return cosine_similarity(out, table.row(cases.target_ids[case_idx]));
}

}  // namespace

double FitnessEvaluator::run(const GpTree& tree, bool parallel) const {
    const ResolvedCases& cases = *cases_;
    const EmbeddingTable& table = *table_;
    const std::size_t n = cases.count();
    if (n == 0) throw std::runtime_error("FitnessEvaluator: no fitness cases");

    // Fill a per-case buffer, then sum in case order. The sum is a fixed-order
    // serial reduction either way, so thread count never changes the result.
    std::vector<double> sims(n);
#ifdef _OPENMP
    const bool use_omp = parallel && n >= 64 && !omp_in_parallel();
#else
    const bool use_omp = false;
    (void)parallel;
#endif
    if (use_omp) {
#ifdef _OPENMP
#pragma omp parallel
        {
            Evaluator eval(table.dim());
            eval.compile(tree);
            std::vector<std::span<const double>> inputs(cases.k);
            Vec out(table.dim());
#pragma omp for schedule(static)
            for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
                sims[static_cast<std::size_t>(i)] =
                    case_similarity(eval, cases, table, static_cast<std::size_t>(i), inputs, out);
        }
#endif
    } else {
        Evaluator eval(table.dim());
        eval.compile(tree);
        std::vector<std::span<const double>> inputs(cases.k);
        Vec out(table.dim());
        for (std::size_t i = 0; i < n; ++i)
            sims[i] = case_similarity(eval, cases, table, i, inputs, out);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += sims[i];
    return total / static_cast<double>(n);
}

double FitnessEvaluator::operator()(const GpTree& tree) const { return run(tree, parallel_); }

double FitnessEvaluator::serial(const GpTree& tree) const { return run(tree, false); }

double compute_fitness(const GpTree& tree, const std::vector<FitnessCase>& cases,
                       const Vocabulary& vocab, const EmbeddingTable& table) {
    const ResolvedCases resolved = resolve_cases(cases, vocab);
    return FitnessEvaluator(resolved, table)(tree);
}

}  // namespace wordgp
