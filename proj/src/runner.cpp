#include "wordgp/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wordgp/baselines.hpp"
#include "wordgp/dataset.hpp"
#include "wordgp/eval.hpp"
#include "wordgp/evolution.hpp"
#include "wordgp/expr.hpp"
#include "wordgp/sgns.hpp"
#include "wordgp/util.hpp"

namespace wordgp {

namespace {

// Seed streams per purpose. Run seeds use the documented (master, dim, run)
// derivation; the trainer and test-sampling streams get fixed tags so they
// never alias a run stream.
constexpr std::uint64_t kTrainerTag = 101;
constexpr std::uint64_t kTestTag = 202;

std::string default_embedding_file(const ExperimentConfig& config, std::size_t dim) {
    return config.output_dir + "/embedding_d" + std::to_string(dim) + ".txt";
}

std::string expression_file(const ExperimentConfig& config, std::size_t dim, std::size_t run) {
    return config.output_dir + "/best_tree_d" + std::to_string(dim) + "_run" +
           std::to_string(run) + ".txt";
}

std::string results_file(const ExperimentConfig& config) {
    return config.output_dir + "/results.csv";
}

void apply_thread_setting(const ExperimentConfig& config) {
#ifdef _OPENMP
    if (config.threads > 0) omp_set_num_threads(config.threads);
#else
    (void)config;
#endif
}

LoadedEmbedding load_embedding_for(const ExperimentConfig& config, std::size_t dim) {
    LoadedEmbedding emb = load_text_format(config.embedding_file(dim));
    if (emb.table.dim() != dim)
        throw std::runtime_error(config.embedding_file(dim) + ": embedding has dimension " +
                                 std::to_string(emb.table.dim()) + ", expected " +
                                 std::to_string(dim));
    emb.table = unit_normalize_all(std::move(emb.table), emb.vocab);
    return emb;
}

const std::string kResultsHeader =
    "dim,run,best_initial_fitness,best_final_fitness,random_baseline,first_word_baseline,"
    "last_word_baseline";

std::string format_row(const RunRow& row) {
    std::string out = std::to_string(row.dim);
    out += ',';
    out += std::to_string(row.run);
    out += ',';
    out += format_double(row.best_initial_fitness);
    out += ',';
    out += format_double(row.best_final_fitness);
    out += ',';
    out += format_double(row.random_baseline);
    out += ',';
    out += format_double(row.first_word_baseline);
    out += ',';
    out += format_double(row.last_word_baseline);
    return out;
}

std::vector<std::string> split_on(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t end = line.find(sep, pos);
        if (end == std::string::npos) {
            out.push_back(line.substr(pos));
            return out;
        }
        out.push_back(line.substr(pos, end - pos));
        pos = end + 1;
    }
}

std::vector<RunRow> read_results_csv(const std::string& path) {
    const std::string text = read_file(path);
    std::vector<RunRow> rows;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const bool at_end = (end == text.size());
        pos = end + 1;
        ++line_no;
        if (line.empty()) {
            if (at_end) break;
            continue;
        }
        if (line_no == 1) {
            if (line != kResultsHeader)
                throw std::runtime_error(path + ": unexpected results header '" + line + "'");
            if (at_end) break;
            continue;
        }
        const auto fields = split_on(line, ',');
        if (fields.size() != 7)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 7 columns, got " +
                                     std::to_string(fields.size()));
        const std::string ctx = path + ":" + std::to_string(line_no);
        RunRow row;
        row.dim = static_cast<std::size_t>(parse_int(fields[0], ctx));
        row.run = static_cast<std::size_t>(parse_int(fields[1], ctx));
        row.best_initial_fitness = parse_double(fields[2], ctx);
        row.best_final_fitness = parse_double(fields[3], ctx);
        row.random_baseline = parse_double(fields[4], ctx);
        row.first_word_baseline = parse_double(fields[5], ctx);
        row.last_word_baseline = parse_double(fields[6], ctx);
        rows.push_back(row);
        if (at_end) break;
    }
    return rows;
}

// Training cases for one (dim, run), replayable anywhere the same run must be
// reconstructed (evolve itself, and test-set exclusion).
std::vector<FitnessCase> training_set_for_run(const std::vector<Headline>& sentences,
                                              const ExperimentConfig& config,
                                              std::uint64_t run_seed) {
    Rng sample_rng(derive_seed(run_seed, 1));
    return sample_training_set(sentences, config.train_fraction, sample_rng);
}

}  // namespace

double quantile(std::vector<double> sorted_values, double p) {
    if (sorted_values.empty()) throw std::runtime_error("quantile: empty input");
    if (p < 0.0 || p > 1.0) throw std::runtime_error("quantile: p must be in [0, 1]");
    const double pos = p * static_cast<double>(sorted_values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (frac == 0.0) return sorted_values[lo];
    return sorted_values[lo] * (1.0 - frac) + sorted_values[lo + 1] * frac;
}

void cmd_train_embedding(const ExperimentConfig& config, std::ostream& log) {
    config.validate();
    apply_thread_setting(config);
    const std::vector<Headline> corpus = load_corpus(config.corpus_path);
    std::filesystem::create_directories(config.output_dir);
    for (const std::size_t dim : config.dims) {
        const TrainerParams params =
            config.trainer_params(dim, derive_seed(config.master_seed, kTrainerTag, dim));
        const LoadedEmbedding emb = train_embedding(corpus, params);
        const std::string path = default_embedding_file(config, dim);
        save_text_format(path, emb.vocab, emb.table);
        log << "trained embedding d=" << dim << ": vocabulary " << emb.vocab.size()
            << " words, wrote " << path << "\n";
    }
}

EvolveOutput cmd_evolve(const ExperimentConfig& config, std::ostream& log) {
    config.validate();
    apply_thread_setting(config);
    const std::vector<Headline> sentences =
        filter_by_length(load_corpus(config.corpus_path), config.sentence_length);
    if (sentences.empty())
        throw std::runtime_error("no headline of length " +
                                 std::to_string(config.sentence_length) + " in " +
                                 config.corpus_path);
    log << sentences.size() << " headlines of length " << config.sentence_length << "\n";
    std::filesystem::create_directories(config.output_dir);

    EvolveOutput out;
    for (const std::size_t dim : config.dims) {
        LoadedEmbedding emb;
        try {
            emb = load_embedding_for(config, dim);
        } catch (const std::exception& e) {
            const std::string reason = "d=" + std::to_string(dim) + ": " + e.what();
            log << "error: " << reason << "\n";
            out.errors.push_back(reason);
            continue;
        }
        for (std::size_t run = 0; run < config.runs; ++run) {
            try {
                const std::uint64_t run_seed = derive_seed(config.master_seed, dim, run);
                const std::vector<FitnessCase> training =
                    training_set_for_run(sentences, config, run_seed);
                const ResolvedCases resolved = resolve_cases(training, emb.vocab);
                const FitnessEvaluator fit(resolved, emb.table);

                Rng evolve_rng(derive_seed(run_seed, 2));
                const RunResult result = evolve(config.evolution_params(run_seed), fit, evolve_rng);

                Rng baseline_rng(derive_seed(run_seed, 3));
                const PredictorScore random_score = best_random_predictor(
                    resolved, emb.table, config.population_size, baseline_rng);
                const PredictorScore first_score =
                    positional_predictor(Position::First, resolved, emb.table);
                const PredictorScore last_score =
                    positional_predictor(Position::Last, resolved, emb.table);

                RunRow row;
                row.dim = dim;
                row.run = run;
                row.best_initial_fitness = result.best_initial_fitness;
                row.best_final_fitness = result.best_final_fitness;
                row.random_baseline = random_score.fitness;
                row.first_word_baseline = first_score.fitness;
                row.last_word_baseline = last_score.fitness;
                out.rows.push_back(row);

                write_file(expression_file(config, dim, run), result.best_tree_expression + "\n");
                log << "d=" << dim << " run=" << run
                    << " cases=" << resolved.count()
                    << " best_initial=" << format_double(row.best_initial_fitness)
                    << " best_final=" << format_double(row.best_final_fitness)
                    << " random=" << format_double(row.random_baseline)
                    << " first=" << format_double(row.first_word_baseline)
                    << " last=" << format_double(row.last_word_baseline) << "\n";
            } catch (const std::exception& e) {
                const std::string reason =
                    "d=" + std::to_string(dim) + " run=" + std::to_string(run) + ": " + e.what();
                log << "error: " << reason << "\n";
                out.errors.push_back(reason);
            }
        }
    }

    std::sort(out.rows.begin(), out.rows.end(), [](const RunRow& a, const RunRow& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.run < b.run;
    });
    std::string csv = kResultsHeader + "\n";
    for (const RunRow& row : out.rows) {
        csv += format_row(row);
        csv += '\n';
    }
    out.results_csv_path = results_file(config);
    write_file(out.results_csv_path, csv);
    log << "wrote " << out.results_csv_path << " (" << out.rows.size() << " rows)\n";
    return out;
}

TestSummary cmd_test(const ExperimentConfig& config, std::size_t dim, std::ostream& log) {
    config.validate();
    apply_thread_setting(config);

    const std::vector<RunRow> all_rows = read_results_csv(results_file(config));
    const RunRow* best_row = nullptr;
    for (const RunRow& row : all_rows) {
        if (row.dim != dim) continue;
        if (best_row == nullptr || row.best_final_fitness > best_row->best_final_fitness)
            best_row = &row;
    }
    if (best_row == nullptr)
        throw std::runtime_error(results_file(config) + ": no rows for dimension " +
                                 std::to_string(dim) + "; run evolve first");

    const std::string expression =
        std::string(trim(read_file(expression_file(config, dim, best_row->run))));
    const GpTree tree = parse_expression(expression, config.k);

    const LoadedEmbedding emb = load_embedding_for(config, dim);
    const std::vector<Headline> sentences =
        filter_by_length(load_corpus(config.corpus_path), config.sentence_length);

    std::vector<FitnessCase> exclude;
    if (config.test_exclude_train) {
        const std::uint64_t run_seed = derive_seed(config.master_seed, dim, best_row->run);
        exclude = training_set_for_run(sentences, config, run_seed);
    }
    Rng test_rng(derive_seed(config.master_seed, kTestTag, dim));
    const std::vector<FitnessCase> cases =
        sample_test_set(sentences, config.test_count, test_rng,
                        config.test_exclude_train ? &exclude : nullptr);
    const ResolvedCases resolved = resolve_cases(cases, emb.vocab);

    // Per-case records are independent; fill a buffer in case order so the
    // output file is identical however the loop is scheduled.
    const std::size_t n = resolved.count();
    std::vector<PredictionRecord> records(n);
    const auto predict_case = [&](std::size_t i, const Evaluator& eval,
                                  std::vector<std::span<const double>>& inputs, Vec& out) {
        for (std::size_t j = 0; j < resolved.k; ++j)
            inputs[j] = emb.table.row(resolved.input_ids[i * resolved.k + j]);
        eval.run(inputs, out);
        const NearestWord nearest = nearest_word(out, emb.vocab, emb.table);
        PredictionRecord rec;
        rec.inputs = cases[i].inputs;
        rec.predicted = emb.vocab.word(nearest.index);
        rec.original = cases[i].target;
        rec.similarity = cosine_similarity(emb.table.row(nearest.index),
                                           emb.table.row(resolved.target_ids[i]));
        rec.degenerate = nearest.degenerate;
        records[i] = std::move(rec);
    };
#ifdef _OPENMP
#pragma omp parallel
    {
        Evaluator eval(emb.table.dim());
        eval.compile(tree);
        std::vector<std::span<const double>> inputs(resolved.k);
        Vec out(emb.table.dim());
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
            predict_case(static_cast<std::size_t>(i), eval, inputs, out);
    }
#else
    {
        Evaluator eval(emb.table.dim());
        eval.compile(tree);
        std::vector<std::span<const double>> inputs(resolved.k);
        Vec out(emb.table.dim());
        for (std::size_t i = 0; i < n; ++i) predict_case(i, eval, inputs, out);
    }
#endif

    std::filesystem::create_directories(config.output_dir);
    std::string csv = "inputs,predicted,original,similarity\n";
    std::vector<double> sims;
    sims.reserve(n);
    for (const PredictionRecord& rec : records) {
        std::string joined;
        for (const auto& w : rec.inputs) {
            if (!joined.empty()) joined += ' ';
            joined += w;
        }
        csv += joined;
        csv += ',';
        csv += rec.predicted;
        csv += ',';
        csv += rec.original;
        csv += ',';
        csv += format_double(rec.similarity);
        csv += '\n';
        sims.push_back(rec.similarity);
    }

    std::sort(sims.begin(), sims.end());
    TestSummary summary;
    summary.dim = dim;
    summary.best_run = best_row->run;
    summary.expression = expression;
    summary.cases = n;
    summary.min = sims.front();
    summary.q1 = quantile(sims, 0.25);
    summary.median = quantile(sims, 0.5);
    summary.q3 = quantile(sims, 0.75);
    summary.max = sims.back();
    summary.predictions_csv_path =
        config.output_dir + "/predictions_d" + std::to_string(dim) + ".csv";
    summary.summary_path = config.output_dir + "/test_summary_d" + std::to_string(dim) + ".txt";

    write_file(summary.predictions_csv_path, csv);
    std::string text;
    text += "dim = " + std::to_string(summary.dim) + "\n";
    text += "best_run = " + std::to_string(summary.best_run) + "\n";
    text += "expression = " + summary.expression + "\n";
    text += "cases = " + std::to_string(summary.cases) + "\n";
    text += "min = " + format_double(summary.min) + "\n";
    text += "q1 = " + format_double(summary.q1) + "\n";
    text += "median = " + format_double(summary.median) + "\n";
    text += "q3 = " + format_double(summary.q3) + "\n";
    text += "max = " + format_double(summary.max) + "\n";
    write_file(summary.summary_path, text);

    log << "d=" << dim << " best run " << summary.best_run << " (" << summary.expression << ")\n";
    log << "similarity over " << summary.cases << " cases: min=" << format_double(summary.min)
        << " q1=" << format_double(summary.q1) << " median=" << format_double(summary.median)
        << " q3=" << format_double(summary.q3) << " max=" << format_double(summary.max) << "\n";
    log << "wrote " << summary.predictions_csv_path << " and " << summary.summary_path << "\n";
    return summary;
}

PredictionRecord cmd_predict(const std::string& expression,
                             const std::vector<std::string>& words,
                             const std::string& embedding_path,
                             const std::optional<std::string>& original) {
    if (words.empty()) throw std::runtime_error("predict: at least one input word required");
    LoadedEmbedding emb = load_text_format(embedding_path);
    emb.table = unit_normalize_all(std::move(emb.table), emb.vocab);

    const GpTree tree = parse_expression(expression, static_cast<std::uint32_t>(words.size()));
    std::vector<Vec> inputs;
    inputs.reserve(words.size());
    for (const auto& w : words) {
        const auto row = emb.table.row(emb.vocab.at(w));
        inputs.emplace_back(row.begin(), row.end());
    }
    const Vec out = evaluate(tree, inputs);
    const NearestWord nearest = nearest_word(out, emb.vocab, emb.table);

    PredictionRecord rec;
    rec.inputs = words;
    rec.predicted = emb.vocab.word(nearest.index);
    rec.degenerate = nearest.degenerate;
    if (original) {
        rec.original = *original;
        rec.similarity = cosine_similarity(emb.table.row(nearest.index),
                                           emb.table.row(emb.vocab.at(*original)));
    } else {
        rec.original = rec.predicted;
        rec.similarity = nearest.similarity;
    }
    return rec;
}

}  // namespace wordgp
