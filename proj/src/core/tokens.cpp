#include "oraclesim/core/tokens.hpp"

#include <algorithm>

#include "oraclesim/errors.hpp"

namespace oraclesim {

TokenSet::TokenSet(std::vector<TokenId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

TokenSet TokenSet::range(TokenId first, TokenId count) {
    TokenSet out;
    out.ids_.reserve(count);
    for (TokenId i = 0; i < count; ++i) out.ids_.push_back(first + i);
    return out;
}

bool TokenSet::contains(TokenId id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
}

bool TokenSet::contains_all(const TokenSet& other) const {
    return std::includes(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end());
}

bool TokenSet::disjoint_from(const TokenSet& other) const {
    auto a = ids_.begin();
    auto b = other.ids_.begin();
    while (a != ids_.end() && b != other.ids_.end()) {
        if (*a < *b) {
            ++a;
        } else if (*b < *a) {
            ++b;
        } else {
            return false;
        }
    }
    return true;
}

TokenSet TokenSet::set_union(const TokenSet& other) const {
    TokenSet out;
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(out.ids_));
    return out;
}

TokenSet TokenSet::set_difference(const TokenSet& other) const {
    TokenSet out;
    std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(out.ids_));
    return out;
}

TokenSet TokenSet::set_intersection(const TokenSet& other) const {
    TokenSet out;
    std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                          std::back_inserter(out.ids_));
    return out;
}

TokenSet TokenSet::take(std::size_t n) const {
    if (n > ids_.size()) throw InvariantError("TokenSet::take: not enough tokens");
    TokenSet out;
    out.ids_.assign(ids_.begin(), ids_.begin() + static_cast<std::ptrdiff_t>(n));
    return out;
}

void TokenSet::insert(TokenId id) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it != ids_.end() && *it == id) return;
    ids_.insert(it, id);
}

void TokenSet::insert_all(const TokenSet& other) {
    *this = set_union(other);
}

OmegaPartition::OmegaPartition(const OutcomeSpace& space) : space_(space) {
    for (const auto& outcome : space.outcomes()) cells_[outcome.label] = TokenSet{};
    cells_[kAbstainLabel] = TokenSet{};
}

const TokenSet& OmegaPartition::cell(const std::string& key) const {
    auto it = cells_.find(key);
    if (it == cells_.end()) throw ConfigError("partition: no cell '" + key + "'");
    return it->second;
}

TokenSet OmegaPartition::union_all() const {
    TokenSet out;
    for (const auto& [key, tokens] : cells_) out = out.set_union(tokens);
    return out;
}

void partition_assign(OmegaPartition& partition, const std::string& key,
                      const TokenSet& tokens) {
    auto it = partition.cells_.find(key);
    if (it == partition.cells_.end()) {
        throw ConfigError("partition: no cell '" + key + "'");
    }
    for (const auto& [other_key, cell] : partition.cells_) {
        if (!cell.disjoint_from(tokens)) {
            throw ConfigError("partition: token already assigned to cell '" + other_key +
                              "'");
        }
    }
    it->second.insert_all(tokens);
}

}  // namespace oraclesim
