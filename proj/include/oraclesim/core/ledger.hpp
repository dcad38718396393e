// Balance sheet for one simulation: currency balances, token ownership, and
// the audit trail that proves conservation. Currency only moves through
// explicit transfers or declared external inflows (fees, benefits, bribes),
// so the sum of balances always equals the sum of declared inflows. Tokens
// never appear or vanish; burning reassigns them to an unspendable sink.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oraclesim/core/tokens.hpp"
#include "oraclesim/rational.hpp"

namespace oraclesim {

struct FlowRecord {
    std::string op;
    Rat net_external;  // contribution to the system-wide currency total
};

class Ledger {
  public:
    // Reserved owner for burned tokens. Not a real agent; cannot transact.
    static const AgentId& burn_sink();

    // Creates count tokens owned by the agent, ids assigned consecutively.
    TokenSet mint(const AgentId& owner, std::uint32_t count);

    const Rat& balance(const AgentId& agent) const;
    AgentId owner_of(TokenId id) const;
    TokenSet tokens_of(const AgentId& agent) const;
    // Subset of `pool` owned by `agent`.
    TokenSet tokens_of_in(const AgentId& agent, const TokenSet& pool) const;
    // Distinct owners of tokens in `pool`, ascending.
    std::vector<AgentId> owners_of(const TokenSet& pool) const;

    // Moves amount >= 0 of currency between agents. Balances may go negative;
    // agents are not budget constrained.
    void transfer(const AgentId& from, const AgentId& to, const Rat& amount);

    // Declares currency entering the system from outside (fee paid by an
    // unmodeled caller, trade benefit, bribe fund).
    void external_credit(const AgentId& to, const Rat& amount, const std::string& op);

    // Reassigns token ownership. Burning is a move to burn_sink().
    void move_tokens(const TokenSet& tokens, const AgentId& to);

    Rat total_currency() const;
    const Rat& declared_inflow_total() const { return inflow_total_; }
    std::size_t token_count() const { return owner_by_token_.size(); }
    TokenSet all_tokens() const;
    const std::vector<FlowRecord>& flows() const { return flows_; }

    // Throws InvariantError if currency or token conservation is broken.
    void audit() const;

    std::map<AgentId, Rat> balances_snapshot() const { return balances_; }
    std::map<AgentId, std::size_t> holdings_snapshot() const;

  private:
    std::map<AgentId, Rat> balances_;
    std::map<TokenId, AgentId> owner_by_token_;
    TokenId next_token_id_ = 0;
    Rat inflow_total_ = 0;
    std::vector<FlowRecord> flows_;
};

// Currency transfer as a standalone operation.
void ledger_transfer(Ledger& ledger, const AgentId& from, const AgentId& to,
                     const Rat& amount);

}  // namespace oraclesim
