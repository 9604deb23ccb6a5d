#include "wordgp/dataset.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "wordgp/util.hpp"

namespace wordgp {

namespace {

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

std::string case_key(const FitnessCase& c) {
    std::string key = join_tokens(c.inputs);
    key += ' ';
    key += c.target;
    return key;
}

// Fisher-Yates with our own rng, so shuffles replay across toolchains.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = rng.uniform_index(i);
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace

std::vector<Headline> parse_corpus_text(const std::string& text) {
    std::vector<Headline> out;
    std::size_t pos = 0;
    bool first_content_line = true;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string_view line(text.data() + pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = end + 1;
        auto tokens = split_whitespace(to_lower_ascii(line));
        if (tokens.empty()) continue;
        // MNH-style single-column CSV: skip the "headline_text" header line.
        if (first_content_line && tokens.size() == 1 && tokens[0] == "headline_text") {
            first_content_line = false;
            continue;
        }
        first_content_line = false;
        out.push_back({std::move(tokens)});
        if (end == text.size()) break;
    }
    return out;
}

std::vector<Headline> load_corpus(const std::string& path) {
    return parse_corpus_text(read_file(path));
}

std::vector<Headline> filter_by_length(const std::vector<Headline>& headlines, std::size_t length) {
    if (length < 2) throw std::runtime_error("filter_by_length: length must be at least 2");
    std::vector<Headline> out;
    for (const auto& h : headlines) {
        if (h.tokens.size() == length) out.push_back(h);
    }
    return out;
}

FitnessCase case_from_headline(const Headline& headline) {
    if (headline.tokens.size() < 2)
        throw std::runtime_error("headline too short to form a fitness case: '" +
                                 join_tokens(headline.tokens) + "'");
    FitnessCase c;
    c.inputs.assign(headline.tokens.begin(), headline.tokens.end() - 1);
    c.target = headline.tokens.back();
    return c;
}

std::vector<FitnessCase> sample_training_set(const std::vector<Headline>& headlines,
                                             double fraction, Rng& rng) {
    if (fraction <= 0.0 || fraction > 1.0)
        throw std::runtime_error("sample_training_set: fraction must be in (0, 1]");
    std::vector<std::size_t> order(headlines.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    shuffle(order, rng);
    const auto take = static_cast<std::size_t>(fraction * static_cast<double>(headlines.size()));
    std::vector<FitnessCase> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.push_back(case_from_headline(headlines[order[i]]));
    return out;
}

std::vector<FitnessCase> sample_test_set(const std::vector<Headline>& headlines,
                                         std::size_t count, Rng& rng,
                                         const std::vector<FitnessCase>* exclude) {
    std::vector<std::size_t> pool;
    if (exclude != nullptr && !exclude->empty()) {
        std::unordered_set<std::string> banned;
        banned.reserve(exclude->size());
        for (const auto& c : *exclude) banned.insert(case_key(c));
        for (std::size_t i = 0; i < headlines.size(); ++i) {
            if (!banned.contains(case_key(case_from_headline(headlines[i])))) pool.push_back(i);
        }
    } else {
        pool.resize(headlines.size());
        for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    }
    if (count > pool.size())
        throw std::runtime_error("sample_test_set: requested " + std::to_string(count) +
                                 " headlines but only " + std::to_string(pool.size()) +
                                 " are available");
    shuffle(pool, rng);
    std::vector<FitnessCase> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(case_from_headline(headlines[pool[i]]));
    return out;
}

}  // namespace wordgp
