#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wordgp {

// Ordered set of distinct tokens with stable 0-based indices.
class Vocabulary {
public:
    Vocabulary() = default;

    // Appends a token; rejects duplicates.
    std::uint32_t add(std::string token);

    std::optional<std::uint32_t> find(std::string_view token) const;

    // Index of token, or throws naming the missing word.
    std::uint32_t at(std::string_view token) const;

    const std::string& word(std::uint32_t index) const { return words_.at(index); }
    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }
    const std::vector<std::string>& words() const { return words_; }

private:
    std::vector<std::string> words_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

}  // namespace wordgp
