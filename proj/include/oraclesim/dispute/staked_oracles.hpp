// Oracles that avoid forking by default. The querier submits a tentative
// outcome backed by a stake; token holders may dispute. The single-dispute
// variant forks after one accepted dispute. The ladder variant doubles the
// dispute stake every round and only forks once the stake reaches a
// threshold, paying sub-threshold winners a capped return with the surplus
// burned.
#pragma once

#include "oraclesim/dispute/dispute.hpp"
#include "oraclesim/mech/simple_oracle.hpp"

namespace oraclesim {

struct StakedQueryInputs {
    std::string tentative;   // outcome the querier asserts
    TokenSet initial_stake;  // querier-owned pool tokens backing it
    std::map<AgentId, DisputePolicy> policies;
    std::vector<AgentId> priority;  // dispute arbitration order; ids not listed
                                    // follow in ascending order
};

struct LadderInputs : StakedQueryInputs {
    std::size_t fork_threshold = 0;  // stake level that triggers the fork
    Rat roi = Rat(2, 5);             // winners' capped return on stake
};

struct StakedQueryResult {
    Outcome outcome;
    bool disputed = false;
    bool forked = false;
    std::size_t rounds = 0;
    std::size_t disputes = 0;
    std::size_t burned = 0;
};

// One query with a single dispute round at stake 2d. Undisputed: the stake
// refunds in full and the pool is untouched. Disputed: the pool forks and the
// stake goes to whichever side the fork vindicates.
StakedQueryResult oracle_query_single_dispute(OracleState& state, const QueryJob& job,
                                              const StakedQueryInputs& inputs,
                                              const ReporterInterface& iface,
                                              Ledger& ledger, Rng& rng);

// One query with an escalating dispute sequence. Quiet round: refund (never
// disputed) or capped payout with surplus burned (disputed below threshold);
// the pool is bitwise unchanged either way. Threshold reached: fork with the
// same capped payout rule.
StakedQueryResult oracle_query_dispute_ladder(OracleState& state, const QueryJob& job,
                                              const LadderInputs& inputs,
                                              const ReporterInterface& iface,
                                              Ledger& ledger, Rng& rng);

}  // namespace oraclesim
