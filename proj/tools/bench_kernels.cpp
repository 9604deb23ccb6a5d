// Micro-benchmark pitting the parallel kernels against their serial
// references: fitness evaluation, vocabulary scan, random-predictor pool, and
// the compiled evaluator against the recursive one.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wordgp/baselines.hpp"
#include "wordgp/embedding.hpp"
#include "wordgp/eval.hpp"
#include "wordgp/fitness.hpp"
#include "wordgp/rng.hpp"
#include "wordgp/tree.hpp"

using namespace wordgp;

namespace {

double seconds_of(const std::function<void()>& body, int repeats) {
    const auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) body();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count() / repeats;
}

void report(const std::string& name, double serial_s, double parallel_s) {
    std::printf("%-34s serial %9.4f ms   parallel %9.4f ms   speedup %5.2fx\n", name.c_str(),
                serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s);
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t vocab_size = 20000;
    std::size_t dim = 50;
    std::size_t num_cases = 2672;
    std::size_t pool_size = 100;
    int repeats = 5;
    std::uint64_t seed = 1;

    CLI::App app{"benchmark parallel kernels against serial references"};
    app.add_option("--vocab", vocab_size, "vocabulary size");
    app.add_option("--dim", dim, "embedding dimension");
    app.add_option("--cases", num_cases, "fitness cases");
    app.add_option("--pool", pool_size, "random-predictor pool size");
    app.add_option("--repeats", repeats, "timing repeats per kernel");
    app.add_option("--seed", seed, "rng seed");
    CLI11_PARSE(app, argc, argv);

    Rng rng(seed);

    // Synthetic vocabulary and embedding: random unit rows.
    Vocabulary vocab;
    EmbeddingTable table(dim, vocab_size);
    for (std::size_t i = 0; i < vocab_size; ++i) {
        vocab.add("word" + std::to_string(i));
        const Vec v = random_unit_vector(dim, rng);
        auto row = table.mutable_row(i);
        for (std::size_t c = 0; c < dim; ++c) row[c] = v[c];
    }
    table.refresh_norms();

    constexpr std::uint32_t kSlots = 5;
    ResolvedCases cases;
    cases.k = kSlots;
    for (std::size_t i = 0; i < num_cases; ++i) {
        for (std::uint32_t j = 0; j < kSlots; ++j)
            cases.input_ids.push_back(static_cast<std::uint32_t>(rng.uniform_index(vocab_size)));
        cases.target_ids.push_back(static_cast<std::uint32_t>(rng.uniform_index(vocab_size)));
    }

    const GpTree tree = random_tree(kSlots, 5, InitMethod::Full, rng);
    std::printf("vocab %zu, dim %zu, cases %zu, pool %zu, tree size %zu\n\n", vocab_size, dim,
                num_cases, pool_size, size(tree));

    {
        const FitnessEvaluator fit(cases, table);
        const double serial_s = seconds_of([&] { (void)fit.serial(tree); }, repeats);
        const double parallel_s = seconds_of([&] { (void)fit(tree); }, repeats);
        report("fitness over cases", serial_s, parallel_s);
        if (fit.serial(tree) != fit(tree)) {
            std::fprintf(stderr, "fitness mismatch between serial and parallel paths\n");
            return 1;
        }
    }

    {
        const Vec query = random_unit_vector(dim, rng);
        const double serial_s =
            seconds_of([&] { (void)nearest_word_serial(query, vocab, table); }, repeats);
        const double parallel_s =
            seconds_of([&] { (void)nearest_word(query, vocab, table); }, repeats);
        report("nearest-word vocabulary scan", serial_s, parallel_s);
        if (nearest_word_serial(query, vocab, table).index !=
            nearest_word(query, vocab, table).index) {
            std::fprintf(stderr, "argmax mismatch between serial and parallel scans\n");
            return 1;
        }
    }

    {
        const double serial_s = seconds_of(
            [&] {
                Rng r(seed);
                (void)best_random_predictor_serial(cases, table, pool_size, r);
            },
            repeats);
        const double parallel_s = seconds_of(
            [&] {
                Rng r(seed);
                (void)best_random_predictor(cases, table, pool_size, r);
            },
            repeats);
        report("random-predictor pool", serial_s, parallel_s);
        Rng r1(seed), r2(seed);
        if (best_random_predictor_serial(cases, table, pool_size, r1).fitness !=
            best_random_predictor(cases, table, pool_size, r2).fitness) {
            std::fprintf(stderr, "pool mismatch between serial and parallel paths\n");
            return 1;
        }
    }

    {
        std::vector<Vec> inputs;
        std::vector<std::span<const double>> input_views;
        for (std::uint32_t j = 0; j < kSlots; ++j) {
            inputs.push_back(random_unit_vector(dim, rng));
            input_views.emplace_back(inputs.back());
        }
        // Re-point the views: the vector may have reallocated while growing.
        for (std::uint32_t j = 0; j < kSlots; ++j) input_views[j] = inputs[j];
        Evaluator compiled(dim);
        compiled.compile(tree);
        Vec out(dim);
        constexpr int kEvalsPerRound = 2000;
        const double recursive_s = seconds_of(
            [&] {
                for (int i = 0; i < kEvalsPerRound; ++i) (void)evaluate(tree, inputs);
            },
            repeats);
        const double compiled_s = seconds_of(
            [&] {
                for (int i = 0; i < kEvalsPerRound; ++i) compiled.run(input_views, out);
            },
            repeats);
        std::printf("%-34s recursive %7.4f ms  compiled %8.4f ms   speedup %5.2fx\n",
                    "evaluator (2000 evals)", recursive_s * 1e3, compiled_s * 1e3,
                    recursive_s / compiled_s);
        if (evaluate(tree, inputs) != out) {
            std::fprintf(stderr, "evaluator mismatch between recursive and compiled paths\n");
            return 1;
        }
    }

    return 0;
}
