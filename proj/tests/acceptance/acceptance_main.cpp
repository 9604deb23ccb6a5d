// Acceptance suite: one self-contained check per release criterion, each
// reported as a single [PASS]/[FAIL]/[SKIP] line. Exits nonzero when any
// criterion fails. Checks 7 and 8 need the Million News Headlines corpus and
// are skipped unless WORDGP_MNH_CORPUS points at the headline file.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "support/synthetic.hpp"
#include "wordgp/config.hpp"
#include "wordgp/dataset.hpp"
#include "wordgp/eval.hpp"
#include "wordgp/expr.hpp"
#include "wordgp/fitness.hpp"
#include "wordgp/runner.hpp"
#include "wordgp/tree.hpp"
#include "wordgp/util.hpp"
#include "wordgp/vec.hpp"

using namespace wordgp;
namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// Reporting

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
    Verdict verdict;
    std::string detail;
};

Outcome pass(std::string detail) { return {Verdict::Pass, std::move(detail)}; }
Outcome fail(std::string detail) { return {Verdict::Fail, std::move(detail)}; }
Outcome skip(std::string detail) { return {Verdict::Skip, std::move(detail)}; }

int g_failures = 0;

void report(int number, const std::string& name, const Outcome& outcome, double seconds) {
    const char* tag = "[PASS]";
    if (outcome.verdict == Verdict::Fail) {
        tag = "[FAIL]";
        ++g_failures;
    } else if (outcome.verdict == Verdict::Skip) {
        tag = "[SKIP]";
    }
    std::ostringstream line;
    line << tag << " criterion " << number << " (" << name << "): " << outcome.detail;
    if (outcome.verdict != Verdict::Skip) {
        line.setf(std::ios::fixed);
        line.precision(seconds < 10 ? 2 : 0);
        line << " [" << seconds << " s]";
    }
    std::cout << line.str() << std::endl;
}

template <typename F>
void run_criterion(int number, const std::string& name, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome = fail("unknown");
    try {
        outcome = body();
    } catch (const std::exception& e) {
        outcome = fail(std::string("exception: ") + e.what());
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    report(number, name, outcome, elapsed.count());
}

std::string fmt(double v) { return format_double(v); }

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return quantile(values, 0.5);
}

// ---------------------------------------------------------------------------
// Independent fitness recomputation for criterion 1. Deliberately written
// from scratch: plain recursion, textbook sqrt-of-squares norms, no shared
// code with the engine beyond the tree data type.

namespace naive {

double scalar(BinaryOp op, double a, double b) {
    switch (op) {
        case BinaryOp::Add: return a + b;
        case BinaryOp::Sub: return a - b;
        case BinaryOp::Mul: return a * b;
        case BinaryOp::PDiv: return std::fabs(b) < 1e-9 ? a : a / b;
    }
    return 0.0;
}

double scalar(UnaryOp op, double a) {
    return op == UnaryOp::Square ? a * a : (a < 0 ? -std::sqrt(-a) : std::sqrt(a));
}

double plain_norm(const Vec& v) {
    double ssq = 0.0;
    for (const double x : v) ssq += x * x;
    return std::sqrt(ssq);
}

Vec normalized(Vec v) {
    bool all_zero = true;
    for (const double x : v)
        if (x != 0.0) all_zero = false;
    if (all_zero) return v;
    const double n = plain_norm(v);
    for (double& x : v) x /= n;
    return v;
}

Vec eval(const Node& node, const std::vector<Vec>& inputs) {
    if (node.kind == NodeKind::Terminal) return inputs[node.slot];
    if (node.kind == NodeKind::Unary) {
        Vec c = eval(node.children[0], inputs);
        for (double& x : c) x = scalar(node.unary, x);
        return normalized(std::move(c));
    }
    const Vec l = eval(node.children[0], inputs);
    const Vec r = eval(node.children[1], inputs);
    Vec out(l.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scalar(node.binary, l[i], r[i]);
    return normalized(std::move(out));
}

double cosine(const Vec& a, const Vec& b) {
    const double na = plain_norm(a);
    const double nb = plain_norm(b);
    if (na == 0.0 || nb == 0.0) return 0.0;
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    return std::clamp(dot / (na * nb), -1.0, 1.0);
}

double fitness(const GpTree& tree, const ResolvedCases& cases, const EmbeddingTable& table) {
    double total = 0.0;
    for (std::size_t c = 0; c < cases.count(); ++c) {
        std::vector<Vec> inputs;
        for (std::uint32_t j = 0; j < cases.k; ++j) {
            const auto row = table.row(cases.input_ids[c * cases.k + j]);
            inputs.emplace_back(row.begin(), row.end());
        }
        const Vec out = eval(tree.root, inputs);
        const auto target = table.row(cases.target_ids[c]);
        total += cosine(out, Vec(target.begin(), target.end()));
    }
    return total / static_cast<double>(cases.count());
}

}  // namespace naive

// ---------------------------------------------------------------------------
// Desk-scale experiment shared by criteria 3-6: a topic-structured corpus of
// 20,000 six-word sentences with embeddings built so that same-topic words
// have cosine ~0.5 at d=10 and drift apart as the dimension grows.

struct DeskWorld {
    fs::path dir;
    ExperimentConfig config;
};

DeskWorld build_desk_world() {
    DeskWorld world;
    world.dir = fs::temp_directory_path() / "wordgp_acceptance";
    fs::remove_all(world.dir);
    fs::create_directories(world.dir);

    const synthetic::TopicWorldParams params;
    const auto corpus = synthetic::make_topic_corpus(params, 20000, 8101);
    std::string text;
    for (const auto& h : corpus) {
        for (std::size_t i = 0; i < h.tokens.size(); ++i) {
            text += h.tokens[i];
            text += (i + 1 < h.tokens.size()) ? ' ' : '\n';
        }
    }
    const std::string corpus_path = (world.dir / "corpus.txt").string();
    write_file(corpus_path, text);

    ExperimentConfig& c = world.config;
    c.corpus_path = corpus_path;
    c.dims = {10, 50};
    c.runs = 5;
    c.train_fraction = 0.01;  // 200 cases per run
    c.output_dir = (world.dir / "out").string();
    c.master_seed = 8102;
    c.population_size = 200;
    c.max_evaluations = 20000;
    const double noise = 1.0 / std::sqrt(10.0);
    for (const std::size_t dim : c.dims) {
        const auto emb = synthetic::make_topic_embedding(params, dim, noise, 8103);
        const std::string path =
            (world.dir / ("embedding_d" + std::to_string(dim) + ".txt")).string();
        save_text_format(path, emb.vocab, emb.table);
        c.embedding_paths[dim] = path;
    }
    return world;
}

struct DeskResults {
    std::vector<RunRow> d10;
    std::vector<RunRow> d50;
    std::string error;  // non-empty when the experiment could not run
};

DeskResults run_desk_experiment(const DeskWorld& world) {
    DeskResults results;
    try {
        const EvolveOutput out = cmd_evolve(world.config, std::cout);
        if (!out.errors.empty()) {
            results.error = "evolve reported " + std::to_string(out.errors.size()) +
                            " error(s): " + out.errors.front();
            return results;
        }
        for (const RunRow& row : out.rows)
            (row.dim == 10 ? results.d10 : results.d50).push_back(row);
        if (results.d10.size() != 5 || results.d50.size() != 5)
            results.error = "expected 5 runs per dimension, got " +
                            std::to_string(results.d10.size()) + " and " +
                            std::to_string(results.d50.size());
    } catch (const std::exception& e) {
        results.error = e.what();
    }
    return results;
}

// ---------------------------------------------------------------------------
// Criteria

Outcome criterion_fitness_oracle() {
    const auto emb = synthetic::random_embedding(10, 50, 4201);
    const auto cases = synthetic::random_cases(5, 10, 50, 4202);
    const FitnessEvaluator fit(cases, emb.table);
    Rng rng(4203);
    double max_diff = 0.0;
    for (int t = 0; t < 50; ++t) {
        const GpTree tree =
            random_tree(5, 5, t % 2 == 0 ? InitMethod::Grow : InitMethod::Full, rng);
        const double engine = fit(tree);
        const double reference = naive::fitness(tree, cases, emb.table);
        max_diff = std::max(max_diff, std::fabs(engine - reference));
    }
    if (max_diff > 1e-12)
        return fail("engine fitness deviates from naive recomputation by " + fmt(max_diff));
    return pass("50 trees x 10 cases, max |engine - naive| = " + fmt(max_diff));
}

Outcome criterion_norm_contract() {
    Rng rng(4301);
    Evaluator eval(10);
    std::vector<Vec> inputs(5);
    std::vector<std::span<const double>> spans(5);
    Vec out(10);
    std::size_t zero_outputs = 0;
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const GpTree tree =
            random_tree(5, 5, i % 2 == 0 ? InitMethod::Grow : InitMethod::Full, rng);
        for (std::size_t j = 0; j < 5; ++j) {
            inputs[j] = random_unit_vector(10, rng);
            spans[j] = inputs[j];
        }
        eval.compile(tree);
        eval.run(spans, out);
        for (const double x : out) {
            if (!std::isfinite(x))
                return fail("non-finite component in evaluation " + std::to_string(i));
        }
        if (is_zero(out)) {
            ++zero_outputs;
            continue;
        }
        const double deviation = std::fabs(norm(out) - 1.0);
        worst = std::max(worst, deviation);
        if (deviation > 1e-6)
            return fail("norm deviates by " + fmt(deviation) + " in evaluation " +
                        std::to_string(i));
    }
    return pass("10,000 evaluations, worst unit-norm deviation " + fmt(worst) + ", " +
                std::to_string(zero_outputs) + " exact-zero outputs");
}

Outcome criterion_gp_beats_random(const DeskResults& desk) {
    if (!desk.error.empty()) return fail(desk.error);
    std::size_t wins = 0;
    std::vector<double> gp, random_baseline;
    for (const RunRow& row : desk.d10) {
        if (row.best_final_fitness > row.random_baseline) ++wins;
        gp.push_back(row.best_final_fitness);
        random_baseline.push_back(row.random_baseline);
    }
    const double margin = median_of(gp) - median_of(random_baseline);
    if (wins < 5) return fail("GP beat the random baseline in only " + std::to_string(wins) + "/5 runs");
    if (margin < 0.05) return fail("median margin over random is " + fmt(margin) + " < 0.05");
    return pass("5/5 wins at d=10, median margin " + fmt(margin));
}

Outcome criterion_gp_beats_init(const DeskResults& desk) {
    if (!desk.error.empty()) return fail(desk.error);
    std::size_t improved = 0;
    double min_gain = 1e9;
    for (const RunRow& row : desk.d10) {
        if (row.best_final_fitness > row.best_initial_fitness) ++improved;
        min_gain = std::min(min_gain, row.best_final_fitness - row.best_initial_fitness);
    }
    if (improved < 5)
        return fail("evolution strictly improved on initialization in only " +
                    std::to_string(improved) + "/5 runs");
    return pass("5/5 runs improved on initialization, smallest gain " + fmt(min_gain));
}

Outcome criterion_dimension_trend(const DeskResults& desk) {
    if (!desk.error.empty()) return fail(desk.error);
    std::vector<double> f10, f50;
    for (const RunRow& row : desk.d10) f10.push_back(row.best_final_fitness);
    for (const RunRow& row : desk.d50) f50.push_back(row.best_final_fitness);
    const double m10 = median_of(f10);
    const double m50 = median_of(f50);
    if (m10 <= m50)
        return fail("median best fitness at d=10 (" + fmt(m10) +
                    ") does not exceed d=50 (" + fmt(m50) + ")");
    return pass("median best fitness " + fmt(m10) + " at d=10 vs " + fmt(m50) + " at d=50");
}

Outcome criterion_first_word_gap(const DeskResults& desk) {
    if (!desk.error.empty()) return fail(desk.error);
    std::vector<double> gp, first;
    for (const RunRow& row : desk.d10) {
        gp.push_back(row.best_final_fitness);
        first.push_back(row.first_word_baseline);
    }
    const double gap = median_of(gp) - median_of(first);
    if (gap <= 0.0)
        return fail("median GP - median first-word-predictor gap is " + fmt(gap) + " at d=10");
    return pass("median gap over the first-word predictor is " + fmt(gap) + " at d=10");
}

const char* mnh_corpus_path() { return std::getenv("WORDGP_MNH_CORPUS"); }

constexpr const char* kMnhSkip =
    "needs the Million News Headlines corpus; set WORDGP_MNH_CORPUS to the headline file";

Outcome criterion_full_protocol(const fs::path& scratch) {
    const char* corpus = mnh_corpus_path();
    if (corpus == nullptr) return skip(kMnhSkip);

    ExperimentConfig c;  // defaults are the full protocol
    c.corpus_path = corpus;
    c.dims = {10};
    c.output_dir = (scratch / "mnh_out").string();
    if (const char* runs = std::getenv("WORDGP_MNH_RUNS")) {
        c.runs = static_cast<std::size_t>(parse_int(runs, "WORDGP_MNH_RUNS"));
        std::cout << "note: WORDGP_MNH_RUNS=" << c.runs << " (default is 30)\n";
    }

    cmd_train_embedding(c, std::cout);
    const EvolveOutput evolved = cmd_evolve(c, std::cout);
    if (!evolved.errors.empty())
        return fail("evolve reported " + std::to_string(evolved.errors.size()) +
                    " error(s): " + evolved.errors.front());
    const TestSummary summary = cmd_test(c, 10, std::cout);
    if (summary.median < 0.35 || summary.median > 0.65)
        return fail("median test similarity " + fmt(summary.median) + " outside [0.35, 0.65]");
    return pass("median test similarity " + fmt(summary.median) + " over " +
                std::to_string(summary.cases) + " headlines (soft range [0.35, 0.65])");
}

Outcome criterion_mnh_counts() {
    const char* corpus_path = mnh_corpus_path();
    if (corpus_path == nullptr) return skip(kMnhSkip);

    const auto corpus = load_corpus(corpus_path);
    const auto six = filter_by_length(corpus, 6);
    if (six.size() != 267292)
        return fail("expected 267,292 six-word headlines (2019 snapshot), found " +
                    std::to_string(six.size()));
    Rng rng(1);
    const auto sample = sample_training_set(six, 0.01, rng);
    if (sample.size() != 2672)
        return fail("a 1/100 sample yields " + std::to_string(sample.size()) +
                    " cases, expected 2,672");
    return pass("267,292 six-word headlines; 1/100 sample has 2,672 cases");
}

Outcome criterion_determinism(const DeskWorld& world) {
    ExperimentConfig c = world.config;
    c.dims = {10};
    c.runs = 2;
    c.population_size = 50;
    c.max_evaluations = 500;

    std::ostringstream quiet;
    c.output_dir = (world.dir / "det_a").string();
    const EvolveOutput a = cmd_evolve(c, quiet);
    c.output_dir = (world.dir / "det_b").string();
    const EvolveOutput b = cmd_evolve(c, quiet);
    if (!a.errors.empty() || !b.errors.empty()) return fail("evolve reported errors");
    const std::string csv_a = read_file(a.results_csv_path);
    const std::string csv_b = read_file(b.results_csv_path);
    if (csv_a != csv_b) return fail("two identically seeded runs produced different results.csv");
    return pass("two executions produced byte-identical results.csv (" +
                std::to_string(csv_a.size()) + " bytes)");
}

Outcome criterion_expression_round_trip() {
    Rng rng(4401);
    for (int i = 0; i < 1000; ++i) {
        const GpTree tree =
            random_tree(5, 5, i % 2 == 0 ? InitMethod::Grow : InitMethod::Full, rng);
        const GpTree back = parse_expression(to_expression(tree), 5);
        if (!(back == tree))
            return fail("round-trip mismatch for " + to_expression(tree));
    }

    // Published best-of-run trees, one per embedding dimension, with their
    // reported node counts.
    struct Known {
        std::size_t dim;
        std::size_t size;
        const char* text;
    };
    const Known known[] = {
        {10, 27,
         "(((w2+(w4+w0))+((w4+w1)+w2^2))+((w3+w0^2)-((sqrt(w2)-(w1*w4))*sqrt(w2))))"},
        {15, 38,
         "(((((w4+w0)+(w3+w2))+(w1+(w2*w2)))+(w3+(w4+w4)))+((((w0+w0)+w2)-(w4*(w3-w4)))+(w1+("
         "sqrt(w3)*w3))))"},
        {20, 39,
         "(((((w3+w0)+w0^2)+(w1+w1))+(w1+w4))+((((w4+w0)+(w2+w0))+(w4+w2))+(((w3+w0)+w2^2)+(w4+("
         "w4*w4)))))"},
        {25, 48,
         "(((((w4*w4)+(w4+w0))+((w1+w3)+(w4+w2)))+((w3^2+w1)+(w0+(w0+w4))))+((((w1+w3)+(w4+w0))+("
         "w2+w0))+(((w2-w1)*(w2-w1))+w2)))"},
        {50, 36,
         "((((w4+(w3+w0))+(w1-w3^2))+((w4+(w0+w1))+w2))+((w2+(w4+w0))+((w3+w0)+((w2-w3)*(w1+w3))))"
         ")"},
        {100, 27,
         "((((w0+(w3*w3))+w1^2)+(w2+w1))+((((w4+w0)+w3)+w1^2)-(w4*(w1-w4))))"},
    };
    for (const Known& k : known) {
        const GpTree tree = parse_expression(k.text, 5);
        if (size(tree) != k.size)
            return fail("d=" + std::to_string(k.dim) + " tree has size " +
                        std::to_string(size(tree)) + ", expected " + std::to_string(k.size));
        if (depth(tree) > 5)
            return fail("d=" + std::to_string(k.dim) + " tree has depth " +
                        std::to_string(depth(tree)) + " > 5");
        std::vector<Vec> inputs;
        for (int j = 0; j < 5; ++j) inputs.push_back(random_unit_vector(k.dim, rng));
        const Vec out = evaluate(tree, inputs);
        for (const double x : out)
            if (!std::isfinite(x))
                return fail("d=" + std::to_string(k.dim) + " tree produced a non-finite output");
        if (!is_zero(out) && std::fabs(norm(out) - 1.0) > 1e-6)
            return fail("d=" + std::to_string(k.dim) + " tree output is not unit-norm");
    }
    return pass("1,000 random trees round-trip; all six published trees parse, evaluate, and "
                "match their node counts");
}

}  // namespace

int main() {
    std::cout << "building the desk-scale experiment (20,000 sentences, d in {10, 50}, "
                 "5 runs each, 20,000 evaluations per run)...\n";
    const DeskWorld world = build_desk_world();
    const DeskResults desk = run_desk_experiment(world);

    run_criterion(1, "fitness oracle equivalence", [] { return criterion_fitness_oracle(); });
    run_criterion(2, "output norm contract", [] { return criterion_norm_contract(); });
    run_criterion(3, "GP beats the random baseline",
                  [&] { return criterion_gp_beats_random(desk); });
    run_criterion(4, "GP beats its initialization", [&] { return criterion_gp_beats_init(desk); });
    run_criterion(5, "lower dimensions fit better", [&] { return criterion_dimension_trend(desk); });
    run_criterion(6, "GP beats the first-word predictor",
                  [&] { return criterion_first_word_gap(desk); });
    run_criterion(7, "full protocol on real headlines",
                  [&] { return criterion_full_protocol(world.dir); });
    run_criterion(8, "headline corpus counts", [] { return criterion_mnh_counts(); });
    run_criterion(9, "byte-identical reruns", [&] { return criterion_determinism(world); });
    run_criterion(10, "expression round-trip and published trees",
                  [] { return criterion_expression_round_trip(); });

    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed or were skipped\n";
    return 0;
}
