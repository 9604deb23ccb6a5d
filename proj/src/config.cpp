#include "wordgp/config.hpp"

#include <algorithm>
#include <stdexcept>

#include "wordgp/util.hpp"

namespace wordgp {

EvolutionParams ExperimentConfig::evolution_params(std::uint64_t seed) const {
    EvolutionParams p;
    p.population_size = population_size;
    p.tournament_size = tournament_size;
    p.mutation_probability = mutation_probability;
    p.max_evaluations = max_evaluations;
    p.max_depth = max_depth;
    p.k = k;
    p.seed = seed;
    return p;
}

TrainerParams ExperimentConfig::trainer_params(std::size_t dim, std::uint64_t seed) const {
    TrainerParams p;
    p.dim = dim;
    p.epochs = epochs;
    p.window = window;
    p.negatives = negatives;
    p.learning_rate = learning_rate;
    p.min_count = min_count;
    p.seed = seed;
    p.workers = workers;
    return p;
}

std::string ExperimentConfig::embedding_file(std::size_t dim) const {
    if (auto it = embedding_paths.find(dim); it != embedding_paths.end()) return it->second;
    return output_dir + "/embedding_d" + std::to_string(dim) + ".txt";
}

void ExperimentConfig::validate() const {
    if (corpus_path.empty()) throw std::runtime_error("config: corpus_path is required");
    if (sentence_length < 2) throw std::runtime_error("config: sentence_length must be at least 2");
    if (k != sentence_length - 1)
        throw std::runtime_error("config: k must equal sentence_length - 1 (k=" +
                                 std::to_string(k) + ", sentence_length=" +
                                 std::to_string(sentence_length) + ")");
    if (dims.empty()) throw std::runtime_error("config: dims must be non-empty");
    for (std::size_t d : dims) {
        if (d < 1) throw std::runtime_error("config: every dim must be at least 1");
    }
    if (runs < 1) throw std::runtime_error("config: runs must be at least 1");
    if (train_fraction <= 0.0 || train_fraction > 1.0)
        throw std::runtime_error("config: train_fraction must be in (0, 1]");
    if (test_count < 1) throw std::runtime_error("config: test_count must be at least 1");
    if (output_dir.empty()) throw std::runtime_error("config: output_dir must be non-empty");
    if (threads < 0) throw std::runtime_error("config: threads must be non-negative");
    evolution_params(0).validate();
    trainer_params(dims.front(), 0).validate();
}

namespace {

std::size_t parse_size(std::string_view value, const std::string& key) {
    const long long v = parse_int(value, "config key '" + key + "'");
    if (v < 0)
        throw std::runtime_error("config key '" + key + "' must be non-negative, got " +
                                 std::string(value));
    return static_cast<std::size_t>(v);
}

bool parse_bool(std::string_view value, const std::string& key) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw std::runtime_error("config key '" + key + "' expects true/false, got '" +
                             std::string(value) + "'");
}

std::vector<std::size_t> parse_dims(std::string_view value) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos <= value.size()) {
        std::size_t end = value.find(',', pos);
        if (end == std::string_view::npos) end = value.size();
        const auto item = trim(value.substr(pos, end - pos));
        if (!item.empty()) out.push_back(parse_size(item, "dims"));
        if (end == value.size()) break;
        pos = end + 1;
    }
    if (out.empty())
        throw std::runtime_error("config key 'dims' must list at least one dimension");
    return out;
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value,
               std::size_t line_no) {
    if (key == "corpus_path") cfg.corpus_path = value;
    else if (key == "sentence_length") cfg.sentence_length = parse_size(value, key);
    else if (key == "k") cfg.k = static_cast<std::uint32_t>(parse_size(value, key));
    else if (key == "dims") cfg.dims = parse_dims(value);
    else if (key == "runs") cfg.runs = parse_size(value, key);
    else if (key == "train_fraction") cfg.train_fraction = parse_double(value, "config key 'train_fraction'");
    else if (key == "test_count") cfg.test_count = parse_size(value, key);
    else if (key == "test_exclude_train") cfg.test_exclude_train = parse_bool(value, key);
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "master_seed")
        cfg.master_seed = static_cast<std::uint64_t>(parse_int(value, "config key 'master_seed'"));
    else if (key == "threads") cfg.threads = static_cast<int>(parse_size(value, key));
    else if (key == "population_size") cfg.population_size = parse_size(value, key);
    else if (key == "tournament_size") cfg.tournament_size = parse_size(value, key);
    else if (key == "mutation_probability")
        cfg.mutation_probability = parse_double(value, "config key 'mutation_probability'");
    else if (key == "max_evaluations") cfg.max_evaluations = parse_size(value, key);
    else if (key == "max_depth") cfg.max_depth = static_cast<int>(parse_size(value, key));
    else if (key == "epochs") cfg.epochs = parse_size(value, key);
    else if (key == "window") cfg.window = parse_size(value, key);
    else if (key == "negatives") cfg.negatives = parse_size(value, key);
    else if (key == "learning_rate")
        cfg.learning_rate = parse_double(value, "config key 'learning_rate'");
    else if (key == "min_count") cfg.min_count = parse_size(value, key);
    else if (key == "workers") cfg.workers = parse_size(value, key);
    else if (key.starts_with("embedding_path.")) {
        const auto dim = parse_size(key.substr(std::string("embedding_path.").size()),
                                    "embedding_path dimension suffix");
        cfg.embedding_paths[dim] = value;
    } else {
        throw std::runtime_error("config line " + std::to_string(line_no) + ": unknown key '" +
                                 key + "'");
    }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line(text, pos, end - pos);
        const bool at_end = (end == text.size());
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto stripped = trim(line);
        if (!stripped.empty()) {
            const auto eq = stripped.find('=');
            if (eq == std::string_view::npos)
                throw std::runtime_error("config line " + std::to_string(line_no) +
                                         ": expected 'key = value', got '" + std::string(stripped) +
                                         "'");
            const std::string key(trim(stripped.substr(0, eq)));
            const std::string value(trim(stripped.substr(eq + 1)));
            if (key.empty())
                throw std::runtime_error("config line " + std::to_string(line_no) +
                                         ": empty key");
            apply_key(cfg, key, value, line_no);
        }
        if (at_end) break;
    }
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    return parse_config_text(read_file(path));
}

}  // namespace wordgp
