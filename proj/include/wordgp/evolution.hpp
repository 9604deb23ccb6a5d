#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wordgp/fitness.hpp"
#include "wordgp/rng.hpp"
#include "wordgp/tree.hpp"
#include "wordgp/variation.hpp"

namespace wordgp {

struct Individual {
    GpTree tree;
    double fitness = 0.0;
};

struct EvolutionParams {
    std::size_t population_size = 500;
    std::size_t tournament_size = 3;
    double mutation_probability = 0.3;
    std::size_t max_evaluations = 100000;
    int max_depth = 5;
    std::uint32_t k = 5;  // input words per sentence
    std::uint64_t seed = 0;

    void validate() const;
};

struct RunResult {
    double best_initial_fitness = 0.0;
    double best_final_fitness = 0.0;
    std::string best_tree_expression;
    std::size_t evaluations_used = 0;
    // (evaluation count, best-so-far fitness), non-decreasing in both.
    std::vector<std::pair<std::size_t, double>> fitness_trace;
};

// Ramped half-and-half over depths 2..max_depth, fitness cached. Costs
// population_size evaluations.
std::vector<Individual> init_population(const EvolutionParams& params,
                                        const FitnessEvaluator& fit, Rng& rng);

// One steady-state breeding event: sample tournament_size distinct members,
// mate the two fittest with a uniformly chosen crossover kind, mutate the
// child with probability mutation_probability, evaluate it (one evaluation),
// and overwrite the tournament's worst member. Fitness ties inside the
// tournament are broken by population slot. Returns the replaced slot.
std::size_t steady_state_step(std::vector<Individual>& population, const EvolutionParams& params,
                              const FitnessEvaluator& fit, Rng& rng);

// Full run: initialization plus steady-state steps until exactly
// max_evaluations fitness evaluations have been spent. The best individual
// ever seen is archived for reporting; it is not shielded from replacement in
// the population.
RunResult evolve(const EvolutionParams& params, const FitnessEvaluator& fit, Rng& rng);

}  // namespace wordgp
