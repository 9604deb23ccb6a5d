#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wordgp/vec.hpp"
#include "wordgp/vocab.hpp"

namespace wordgp {

// Dense d-dimensional vector per vocabulary entry, row-aligned with the
// Vocabulary ordering. Immutable once built; safe to share across threads.
class EmbeddingTable {
public:
    EmbeddingTable() = default;
    EmbeddingTable(std::size_t dim, std::size_t count)
        : dim_(dim), data_(dim * count, 0.0), norms_(count, 0.0) {}

    std::size_t dim() const { return dim_; }
    std::size_t count() const { return norms_.size(); }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * dim_, dim_};
    }
    std::span<double> mutable_row(std::size_t i) { return {data_.data() + i * dim_, dim_}; }

    double row_norm(std::size_t i) const { return norms_[i]; }

    // Recomputes the cached row norms; call after filling rows.
    void refresh_norms();

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
    std::vector<double> norms_;
};

struct LoadedEmbedding {
    Vocabulary vocab;
    EmbeddingTable table;
};

// word2vec text format: header "<count> <dim>", then one "<token> <v1> ... <vd>"
// line per word. Vectors are loaded as stored; normalization is the caller's
// step. Malformed headers, arity mismatches, and duplicate tokens are rejected
// with the offending line number.
LoadedEmbedding load_text_format(const std::string& path);

void save_text_format(const std::string& path, const Vocabulary& vocab,
                      const EmbeddingTable& table);

// Scales every row to unit norm. A zero row is rejected naming its token.
EmbeddingTable unit_normalize_all(EmbeddingTable table, const Vocabulary& vocab);

struct NearestWord {
    std::uint32_t index = 0;
    double similarity = 0.0;
    // Set when the query was the zero vector; the result is then index 0 by
    // convention rather than a true argmax.
    bool degenerate = false;
};

// Exhaustive cosine-similarity argmax over the vocabulary. Ties go to the
// lowest index. OpenMP-parallel when available; result does not depend on the
// thread count.
NearestWord nearest_word(std::span<const double> v, const Vocabulary& vocab,
                         const EmbeddingTable& table);

// Single-threaded reference scan, kept for tests and benchmarks.
NearestWord nearest_word_serial(std::span<const double> v, const Vocabulary& vocab,
                                const EmbeddingTable& table);

}  // namespace wordgp
