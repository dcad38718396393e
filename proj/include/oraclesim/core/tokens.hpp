// Reporting tokens and the partition of a token pool across outcome cells.
// Tokens are indivisible units with stable identities; a TokenSet is an
// ordered set of identities, so set algebra is deterministic.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oraclesim/core/outcome.hpp"

namespace oraclesim {

using TokenId = std::uint32_t;
using AgentId = std::string;

class TokenSet {
  public:
    TokenSet() = default;
    explicit TokenSet(std::vector<TokenId> ids);

    static TokenSet range(TokenId first, TokenId count);

    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    bool contains(TokenId id) const;
    bool contains_all(const TokenSet& other) const;
    bool disjoint_from(const TokenSet& other) const;

    TokenSet set_union(const TokenSet& other) const;
    TokenSet set_difference(const TokenSet& other) const;
    TokenSet set_intersection(const TokenSet& other) const;
    // First n tokens in id order; n must not exceed size().
    TokenSet take(std::size_t n) const;

    void insert(TokenId id);
    void insert_all(const TokenSet& other);

    const std::vector<TokenId>& ids() const { return ids_; }
    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }

    bool operator==(const TokenSet& other) const = default;

  private:
    std::vector<TokenId> ids_;  // strictly increasing
};

// Cells indexed by every outcome of a space plus Abstain. Cells are disjoint;
// their union never exceeds the pool the partition was declared over.
class OmegaPartition {
  public:
    OmegaPartition() = default;
    explicit OmegaPartition(const OutcomeSpace& space);

    const OutcomeSpace& space() const { return space_; }
    const TokenSet& cell(const std::string& key) const;
    const std::map<std::string, TokenSet>& cells() const { return cells_; }
    TokenSet union_all() const;
    bool has_cell(const std::string& key) const { return cells_.count(key) != 0; }

    bool operator==(const OmegaPartition& other) const {
        return cells_ == other.cells_;
    }

  private:
    friend void partition_assign(OmegaPartition& partition, const std::string& key,
                                 const TokenSet& tokens);
    OutcomeSpace space_;
    std::map<std::string, TokenSet> cells_;
};

// Adds tokens to one cell. Rejects unknown cell keys and any token already
// present in some cell (cells stay disjoint).
void partition_assign(OmegaPartition& partition, const std::string& key,
                      const TokenSet& tokens);

}  // namespace oraclesim
