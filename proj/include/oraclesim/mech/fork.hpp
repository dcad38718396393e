// The reporting primitives: querying every token holder independently,
// splitting fees pro rata, picking a plurality winner, and redistributing
// staked tokens to the winning side.
#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "oraclesim/core/ledger.hpp"
#include "oraclesim/core/outcome.hpp"
#include "oraclesim/core/tokens.hpp"
#include "oraclesim/rng.hpp"

namespace oraclesim {

// How one agent answers one event query. nullopt models no response;
// any label outside the outcome space is coerced to Abstain.
using ReporterInterface = std::function<std::optional<std::string>(
    const AgentId& agent, const std::string& event, const OutcomeSpace& space,
    const TokenSet& holding)>;

// One agent's report over their holding within pool. The agent must own at
// least one pool token. Returns the cell key (an outcome label or Abstain)
// and the full holding, which moves as one block.
std::pair<std::string, TokenSet> report(const AgentId& agent, const std::string& event,
                                        const OutcomeSpace& space, const TokenSet& pool,
                                        const ReporterInterface& iface,
                                        const Ledger& ledger);

// Queries every owner of a token in pool independently and assembles the
// partition of pool across outcome cells plus Abstain. The result does not
// depend on the order owners are asked.
OmegaPartition fork(const std::string& event, const OutcomeSpace& space,
                    const TokenSet& pool, const ReporterInterface& iface,
                    const Ledger& ledger);

// Splits fee across pool owners pro rata by holding, exactly. When payer is
// set the fee is an internal transfer from that agent; otherwise it is
// declared as an external inflow.
void pay(Ledger& ledger, const TokenSet& pool, const Rat& fee,
         const std::optional<AgentId>& payer = std::nullopt);

// Largest outcome cell wins; Abstain never does. Ties break uniformly at
// random, and an all-empty partition degenerates to a uniform choice over
// the whole space.
Outcome plurality_winner(const OmegaPartition& partition, Rng& rng);

// Pays all staked tokens to the owners of the winning cell, pro rata. Exact
// shares are used when integral; otherwise whole tokens are apportioned by
// largest remainder so every token is disbursed. The winning cell must be
// non-empty. Winners get their own stake back first, then profit tokens in
// ascending owner order.
void distribute(Ledger& ledger, const OmegaPartition& stakes, const std::string& winner);

}  // namespace oraclesim
