#include "wordgp/evolution.hpp"

#include <algorithm>
#include <stdexcept>

#include "wordgp/expr.hpp"

namespace wordgp {

void EvolutionParams::validate() const {
    if (population_size < 2) throw std::runtime_error("population_size must be at least 2");
    if (tournament_size < 2 || tournament_size > population_size)
        throw std::runtime_error("tournament_size must be in [2, population_size]");
    if (mutation_probability < 0.0 || mutation_probability > 1.0)
        throw std::runtime_error("mutation_probability must be in [0, 1]");
    if (max_depth < 2) throw std::runtime_error("max_depth must be at least 2");
    if (k == 0) throw std::runtime_error("k must be positive");
    if (max_evaluations < population_size)
        throw std::runtime_error("max_evaluations must cover at least the initial population");
}

std::vector<Individual> init_population(const EvolutionParams& params,
                                        const FitnessEvaluator& fit, Rng& rng) {
    params.validate();
    // Ramped half-and-half: walk depths 2..max_depth, a full/grow pair at each
    // depth, wrapping until the population is filled.
    const int num_depths = params.max_depth - 1;
    std::vector<Individual> population;
    population.reserve(params.population_size);
    for (std::size_t i = 0; i < params.population_size; ++i) {
        const int target_depth = 2 + static_cast<int>((i / 2) % static_cast<std::size_t>(num_depths));
        const InitMethod method = (i % 2 == 0) ? InitMethod::Full : InitMethod::Grow;
        Individual ind;
        ind.tree = random_tree(params.k, target_depth, method, rng);
        ind.fitness = fit(ind.tree);
        population.push_back(std::move(ind));
    }
    return population;
}

namespace {

// Total order on tournament entrants: higher fitness wins, ties go to the
// lower population slot. Keeps winner/loser selection deterministic.
bool beats(const std::vector<Individual>& population, std::size_t a, std::size_t b) {
    if (population[a].fitness != population[b].fitness)
        return population[a].fitness > population[b].fitness;
    return a < b;
}

}  // namespace

std::size_t steady_state_step(std::vector<Individual>& population, const EvolutionParams& params,
                              const FitnessEvaluator& fit, Rng& rng) {
    // Tournament slots, sampled without replacement.
    std::vector<std::size_t> entrants;
    entrants.reserve(params.tournament_size);
    while (entrants.size() < params.tournament_size) {
        const std::size_t slot = rng.uniform_index(population.size());
        if (std::find(entrants.begin(), entrants.end(), slot) == entrants.end())
            entrants.push_back(slot);
    }
    std::sort(entrants.begin(), entrants.end(),
              [&](std::size_t a, std::size_t b) { return beats(population, a, b); });

    const Individual& fitter = population[entrants.front()];
    const Individual& other = population[entrants[1]];
    const std::size_t loser = entrants.back();

    const auto kind = static_cast<CrossoverKind>(rng.uniform_index(kNumCrossoverKinds));
    GpTree child = crossover(kind, fitter.tree, other.tree, params.max_depth, rng);
    if (rng.bernoulli(params.mutation_probability))
        child = mutate(child, params.k, params.max_depth, rng);

    Individual replacement;
    replacement.fitness = fit(child);
    replacement.tree = std::move(child);
    population[loser] = std::move(replacement);
    return loser;
}

RunResult evolve(const EvolutionParams& params, const FitnessEvaluator& fit, Rng& rng) {
    params.validate();
    std::vector<Individual> population = init_population(params, fit, rng);
    std::size_t evaluations = population.size();

    // Archive the best individual ever evaluated; reporting only, the copy in
    // the population stays fair game for replacement.
    std::size_t best_slot = 0;
    for (std::size_t i = 1; i < population.size(); ++i) {
        if (population[i].fitness > population[best_slot].fitness) best_slot = i;
    }
    Individual best = population[best_slot];

    RunResult result;
    result.best_initial_fitness = best.fitness;
    result.fitness_trace.emplace_back(evaluations, best.fitness);

    while (evaluations < params.max_evaluations) {
        const std::size_t replaced = steady_state_step(population, params, fit, rng);
        ++evaluations;
        if (population[replaced].fitness > best.fitness) {
            best = population[replaced];
            result.fitness_trace.emplace_back(evaluations, best.fitness);
        }
    }

    result.best_final_fitness = best.fitness;
    result.best_tree_expression = to_expression(best.tree);
    result.evaluations_used = evaluations;
    return result;
}

}  // namespace wordgp
