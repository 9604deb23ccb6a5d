#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wordgp/rng.hpp"

namespace wordgp {

// One corpus line: lowercase whitespace-free tokens.
struct Headline {
    std::vector<std::string> tokens;
};

// One training/test pair: k input words and the target next word.
struct FitnessCase {
    std::vector<std::string> inputs;
    std::string target;
};

// Reads one headline per line: lowercased, split on whitespace runs, blank
// lines skipped, CRLF tolerated. A leading "headline_text" CSV header line is
// auto-detected and skipped.
std::vector<Headline> load_corpus(const std::string& path);

// Same parsing applied to an in-memory string (used by tests and generators).
std::vector<Headline> parse_corpus_text(const std::string& text);

// Headlines with exactly `length` tokens, original order preserved.
std::vector<Headline> filter_by_length(const std::vector<Headline>& headlines, std::size_t length);

// First n-1 tokens become the inputs, the last token the target.
FitnessCase case_from_headline(const Headline& headline);

// Uniform shuffle, then the first floor(fraction * N) headlines as cases.
std::vector<FitnessCase> sample_training_set(const std::vector<Headline>& headlines,
                                             double fraction, Rng& rng);

// Uniform sample of `count` headlines without replacement. When `exclude` is
// given, headlines whose case form appears there are removed from the pool
// first.
std::vector<FitnessCase> sample_test_set(const std::vector<Headline>& headlines,
                                         std::size_t count, Rng& rng,
                                         const std::vector<FitnessCase>* exclude = nullptr);

}  // namespace wordgp
