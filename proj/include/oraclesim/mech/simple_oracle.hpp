// The fork-every-query oracle. Each call pays the fee over the current pool,
// forks, and records the resulting partition. The next call starts by letting
// its querier judge that recorded partition: the pool shrinks to whichever
// cell the querier designates as the truthful one, so the judgment of query i
// lands at the start of query i+1.
#pragma once

#include <optional>
#include <vector>

#include "oraclesim/mech/fork.hpp"

namespace oraclesim {

enum class PunishKind {
    PunishFalse,  // keep the cell that reported the configured true outcome
    PunishTrue,   // keep everything except that cell
    KeepCell,     // keep one explicitly named cell
};

struct PunishPolicy {
    PunishKind kind = PunishKind::PunishFalse;
    std::string cell;  // KeepCell only

    TokenSet designate(const OmegaPartition& partition, const Outcome& truth) const;
};

struct QueryJob {
    std::string event;
    OutcomeSpace space;
    Outcome truth;  // scenario ground truth for this query
    Rat fee = 0;
    AgentId querier;
    PunishPolicy punish;
};

struct PendingJudgment {
    OmegaPartition partition;
    Outcome truth;
};

struct HistoryEntry {
    std::string event;
    Outcome returned;
    bool forked = false;
    std::size_t dispute_rounds = 0;
};

struct OracleState {
    std::uint64_t counter = 0;
    TokenSet pool;
    std::optional<PendingJudgment> pending;
    std::vector<HistoryEntry> history;
};

// Apply a pending judgment, if any: the pool shrinks to the cell the policy
// designates and the judgment is cleared. No-op when nothing is pending.
// Every query entry point calls this first; callers that need to inspect the
// post-judgment pool (e.g. to choose stake tokens) may call it themselves.
void settle_pending(OracleState& state, const PunishPolicy& punish);

// One query against the fork-every-time oracle: settle any pending judgment,
// pay the fee pro rata (debited from the querier), fork, return the plurality
// winner, and leave the new partition pending for the next caller. Throws
// once the pool is empty; the oracle is then dead.
Outcome oracle_query_simple(OracleState& state, const QueryJob& job,
                            const ReporterInterface& iface, Ledger& ledger, Rng& rng);

}  // namespace oraclesim
