#include "wordgp/vocab.hpp"

#include <stdexcept>

namespace wordgp {

std::uint32_t Vocabulary::add(std::string token) {
    auto [it, inserted] = index_.try_emplace(std::move(token), static_cast<std::uint32_t>(words_.size()));
    if (!inserted) throw std::runtime_error("duplicate token in vocabulary: '" + it->first + "'");
    words_.push_back(it->first);
    return it->second;
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::uint32_t Vocabulary::at(std::string_view token) const {
    auto idx = find(token);
    if (!idx) throw std::runtime_error("word not in vocabulary: '" + std::string(token) + "'");
    return *idx;
}

}  // namespace wordgp
