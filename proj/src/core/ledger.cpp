#include "oraclesim/core/ledger.hpp"

#include "oraclesim/errors.hpp"

namespace oraclesim {

const AgentId& Ledger::burn_sink() {
    static const AgentId sink = "@burn";
    return sink;
}

TokenSet Ledger::mint(const AgentId& owner, std::uint32_t count) {
    if (owner == burn_sink()) throw ConfigError("ledger: cannot mint to the burn sink");
    TokenSet minted = TokenSet::range(next_token_id_, count);
    for (TokenId id : minted) owner_by_token_[id] = owner;
    next_token_id_ += count;
    balances_.try_emplace(owner, 0);
    return minted;
}

const Rat& Ledger::balance(const AgentId& agent) const {
    static const Rat zero = 0;
    auto it = balances_.find(agent);
    return it == balances_.end() ? zero : it->second;
}

AgentId Ledger::owner_of(TokenId id) const {
    auto it = owner_by_token_.find(id);
    if (it == owner_by_token_.end()) {
        throw InvariantError("ledger: unknown token " + std::to_string(id));
    }
    return it->second;
}

TokenSet Ledger::tokens_of(const AgentId& agent) const {
    TokenSet out;
    for (const auto& [id, owner] : owner_by_token_) {
        if (owner == agent) out.insert(id);
    }
    return out;
}

TokenSet Ledger::tokens_of_in(const AgentId& agent, const TokenSet& pool) const {
    TokenSet out;
    for (TokenId id : pool) {
        if (owner_of(id) == agent) out.insert(id);
    }
    return out;
}

std::vector<AgentId> Ledger::owners_of(const TokenSet& pool) const {
    std::vector<AgentId> out;
    for (TokenId id : pool) {
        AgentId owner = owner_of(id);
        bool known = false;
        for (const auto& seen : out) {
            if (seen == owner) {
                known = true;
                break;
            }
        }
        if (!known) out.push_back(owner);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void Ledger::transfer(const AgentId& from, const AgentId& to, const Rat& amount) {
    if (amount < 0) throw ConfigError("ledger: negative transfer amount");
    if (from == burn_sink() || to == burn_sink()) {
        throw ConfigError("ledger: the burn sink cannot transact currency");
    }
    balances_[from] -= amount;
    balances_[to] += amount;
    flows_.push_back({"transfer " + from + "->" + to, Rat(0)});
}

void Ledger::external_credit(const AgentId& to, const Rat& amount, const std::string& op) {
    if (to == burn_sink()) throw ConfigError("ledger: the burn sink cannot transact currency");
    balances_[to] += amount;
    inflow_total_ += amount;
    flows_.push_back({op + " ->" + to, amount});
}

void Ledger::move_tokens(const TokenSet& tokens, const AgentId& to) {
    for (TokenId id : tokens) {
        auto it = owner_by_token_.find(id);
        if (it == owner_by_token_.end()) {
            throw InvariantError("ledger: unknown token " + std::to_string(id));
        }
        it->second = to;
    }
}

Rat Ledger::total_currency() const {
    Rat total = 0;
    for (const auto& [agent, balance] : balances_) total += balance;
    return total;
}

TokenSet Ledger::all_tokens() const {
    TokenSet out;
    for (const auto& [id, owner] : owner_by_token_) out.insert(id);
    return out;
}

void Ledger::audit() const {
    if (total_currency() != inflow_total_) {
        throw InvariantError("ledger audit: currency total " +
                             rat_to_string(total_currency()) +
                             " != declared inflows " + rat_to_string(inflow_total_));
    }
    if (all_tokens().size() != owner_by_token_.size() ||
        (next_token_id_ != 0 && all_tokens() != TokenSet::range(0, next_token_id_))) {
        throw InvariantError("ledger audit: token identities do not match genesis");
    }
}

std::map<AgentId, std::size_t> Ledger::holdings_snapshot() const {
    std::map<AgentId, std::size_t> out;
    for (const auto& [id, owner] : owner_by_token_) out[owner] += 1;
    return out;
}

void ledger_transfer(Ledger& ledger, const AgentId& from, const AgentId& to,
                     const Rat& amount) {
    ledger.transfer(from, to, amount);
}

}  // namespace oraclesim
