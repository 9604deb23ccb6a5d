#include "wordgp/embedding.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wordgp/util.hpp"

namespace wordgp {

void EmbeddingTable::refresh_norms() {
    for (std::size_t i = 0; i < count(); ++i) norms_[i] = norm(row(i));
}

namespace {

[[noreturn]] void reject(const std::string& path, std::size_t line_no, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

LoadedEmbedding load_text_format(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open embedding file: " + path);

    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) reject(path, 1, "missing header");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_whitespace(line);
    if (header.size() != 2)
        reject(path, line_no, "malformed header, expected '<count> <dim>', got '" + line + "'");
    const long long count = parse_int(header[0], "embedding header count");
    const long long dim = parse_int(header[1], "embedding header dim");
    if (count <= 0 || dim <= 0) reject(path, line_no, "header counts must be positive");

    LoadedEmbedding out;
    out.table = EmbeddingTable(static_cast<std::size_t>(dim), static_cast<std::size_t>(count));

    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (rows == static_cast<std::size_t>(count))
            reject(path, line_no, "more rows than the declared count " + std::to_string(count));
        const auto fields = split_whitespace(line);
        if (fields.size() != static_cast<std::size_t>(dim) + 1)
            reject(path, line_no,
                   "row arity " + std::to_string(fields.size() - 1) + " != declared dimension " +
                       std::to_string(dim) + " for token '" + fields.front() + "'");
        try {
            out.vocab.add(fields[0]);
        } catch (const std::exception& e) {
            reject(path, line_no, e.what());
        }
        auto row = out.table.mutable_row(rows);
        for (std::size_t i = 0; i < static_cast<std::size_t>(dim); ++i)
            row[i] = parse_double(fields[i + 1], path + ":" + std::to_string(line_no));
        ++rows;
    }
    if (rows != static_cast<std::size_t>(count))
        reject(path, line_no, "found " + std::to_string(rows) + " rows, header declared " +
                                  std::to_string(count));
    out.table.refresh_norms();
    return out;
}

void save_text_format(const std::string& path, const Vocabulary& vocab,
                      const EmbeddingTable& table) {
    if (vocab.size() != table.count())
        throw std::runtime_error("save_text_format: vocabulary/table size mismatch");
    std::ostringstream ss;
    ss << vocab.size() << ' ' << table.dim() << '\n';
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        ss << vocab.word(static_cast<std::uint32_t>(i));
        for (double x : table.row(i)) ss << ' ' << format_double(x);
        ss << '\n';
    }
    write_file(path, ss.str());
}

EmbeddingTable unit_normalize_all(EmbeddingTable table, const Vocabulary& vocab) {
    for (std::size_t i = 0; i < table.count(); ++i) {
        auto row = table.mutable_row(i);
        if (norm(row) == 0.0)
            throw std::runtime_error("cannot normalize zero vector for token '" +
                                     vocab.word(static_cast<std::uint32_t>(i)) + "'");
        normalize_in_place(row);
    }
    table.refresh_norms();
    return table;
}

namespace {

struct Best {
    double score = -2.0;  // below any cosine
    std::uint32_t index = 0;
    bool valid = false;

    void consider(double s, std::uint32_t i) {
        if (!valid || s > score || (s == score && i < index)) {
            score = s;
            index = i;
            valid = true;
        }
    }
    // Keeps the lowest index on exact score ties, so the merged result equals
    // the full serial scan regardless of chunking.
    void merge(const Best& other) {
        if (!other.valid) return;
        if (!valid || other.score > score || (other.score == score && other.index < index)) {
            *this = other;
        }
    }
};

Best scan_range(std::span<const double> v, const EmbeddingTable& table, double v_norm,
                std::size_t begin, std::size_t end) {
    Best best;
    for (std::size_t i = begin; i < end; ++i) {
        const double rn = table.row_norm(i);
        if (rn == 0.0) continue;  // a zero row is never "most similar"
        const double s = dot(v, table.row(i)) / (v_norm * rn);
        best.consider(s, static_cast<std::uint32_t>(i));
    }
    return best;
}

NearestWord finish(const Best& best) {
    if (!best.valid) {
        // every row was zero; fall back to the degenerate convention
        return {0, 0.0, true};
    }
    NearestWord out;
    out.index = best.index;
    out.similarity = std::clamp(best.score, -1.0, 1.0);
    out.degenerate = false;
    return out;
}

}  // namespace

NearestWord nearest_word_serial(std::span<const double> v, const Vocabulary& vocab,
                                const EmbeddingTable& table) {
    if (vocab.empty()) throw std::runtime_error("nearest_word: empty vocabulary");
    if (v.size() != table.dim())
        throw std::runtime_error("nearest_word: query dimension " + std::to_string(v.size()) +
                                 " != table dimension " + std::to_string(table.dim()));
    const double v_norm = norm(v);
    if (v_norm == 0.0) return {0, 0.0, true};
    return finish(scan_range(v, table, v_norm, 0, table.count()));
}

NearestWord nearest_word(std::span<const double> v, const Vocabulary& vocab,
                         const EmbeddingTable& table) {
    if (vocab.empty()) throw std::runtime_error("nearest_word: empty vocabulary");
    if (v.size() != table.dim())
        throw std::runtime_error("nearest_word: query dimension " + std::to_string(v.size()) +
                                 " != table dimension " + std::to_string(table.dim()));
    const double v_norm = norm(v);
    if (v_norm == 0.0) return {0, 0.0, true};

#ifdef _OPENMP
    const std::size_t n = table.count();
    if (n >= 4096 && !omp_in_parallel()) {
        Best global;
#pragma omp parallel
        {
            const int nt = omp_get_num_threads();
            const int tid = omp_get_thread_num();
            const std::size_t chunk = (n + nt - 1) / nt;
            const std::size_t lo = std::min(n, chunk * static_cast<std::size_t>(tid));
            const std::size_t hi = std::min(n, lo + chunk);
            Best local = scan_range(v, table, v_norm, lo, hi);
#pragma omp critical
            global.merge(local);
        }
        return finish(global);
    }
#endif
    return finish(scan_range(v, table, v_norm, 0, table.count()));
}

}  // namespace wordgp
