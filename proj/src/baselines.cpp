#include "wordgp/baselines.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wordgp/vec.hpp"

namespace wordgp {

namespace {

// Mean cosine similarity of one candidate set (i-th vector answers the i-th
// case) against the targets. Fixed summation order.
double score_set(const std::vector<Vec>& predictions, const ResolvedCases& cases,
                 const EmbeddingTable& table) {
    double total = 0.0;
    for (std::size_t i = 0; i < cases.count(); ++i)
        total += cosine_similarity(predictions[i], table.row(cases.target_ids[i]));
    return total / static_cast<double>(cases.count());
}

double score_one_random_set(std::uint64_t set_seed, const ResolvedCases& cases,
                            const EmbeddingTable& table) {
    Rng set_rng(set_seed);
    std::vector<Vec> predictions;
    predictions.reserve(cases.count());
    for (std::size_t i = 0; i < cases.count(); ++i)
        predictions.push_back(random_unit_vector(table.dim(), set_rng));
    return score_set(predictions, cases, table);
}

PredictorScore best_random_impl(const ResolvedCases& cases, const EmbeddingTable& table,
                                std::size_t pool_size, Rng& rng, bool parallel) {
    if (pool_size == 0) throw std::runtime_error("best_random_predictor: pool_size must be positive");
    if (cases.count() == 0) throw std::runtime_error("best_random_predictor: no fitness cases");

    // Every set draws from its own seed-derived stream, so the scores do not
    // depend on scheduling; the caller's rng advances by exactly one draw.
    const std::uint64_t base = rng.next_u64();
    std::vector<double> scores(pool_size);
#ifdef _OPENMP
    const bool use_omp = parallel && pool_size >= 2 && !omp_in_parallel();
#else
    const bool use_omp = false;
    (void)parallel;
#endif
    if (use_omp) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(pool_size); ++s)
            scores[static_cast<std::size_t>(s)] =
                score_one_random_set(derive_seed(base, static_cast<std::uint64_t>(s)), cases, table);
#endif
    } else {
        for (std::size_t s = 0; s < pool_size; ++s)
            scores[s] = score_one_random_set(derive_seed(base, static_cast<std::uint64_t>(s)), cases, table);
    }

    // Argmax with lowest-index ties, scanned in index order.
    std::size_t best = 0;
    for (std::size_t s = 1; s < pool_size; ++s) {
        if (scores[s] > scores[best]) best = s;
    }
    return {PredictorLabel::Random, scores[best]};
}

}  // namespace

PredictorScore best_random_predictor(const ResolvedCases& cases, const EmbeddingTable& table,
                                     std::size_t pool_size, Rng& rng) {
    return best_random_impl(cases, table, pool_size, rng, true);
}

PredictorScore best_random_predictor_serial(const ResolvedCases& cases,
                                            const EmbeddingTable& table,
                                            std::size_t pool_size, Rng& rng) {
    return best_random_impl(cases, table, pool_size, rng, false);
}

PredictorScore positional_predictor(Position which, const ResolvedCases& cases,
                                    const EmbeddingTable& table) {
    if (cases.count() == 0) throw std::runtime_error("positional_predictor: no fitness cases");
    const std::size_t offset = (which == Position::First) ? 0 : cases.k - 1;
    double total = 0.0;
    for (std::size_t i = 0; i < cases.count(); ++i) {
        const std::uint32_t input = cases.input_ids[i * cases.k + offset];
        total += cosine_similarity(table.row(input), table.row(cases.target_ids[i]));
    }
    const double fitness = total / static_cast<double>(cases.count());
    return {which == Position::First ? PredictorLabel::FirstWord : PredictorLabel::LastWord,
            fitness};
}

}  // namespace wordgp
