#include "oraclesim/mech/simple_oracle.hpp"

#include "oraclesim/errors.hpp"

namespace oraclesim {

TokenSet PunishPolicy::designate(const OmegaPartition& partition,
                                 const Outcome& truth) const {
    switch (kind) {
        case PunishKind::PunishFalse:
            return partition.cell(truth.label);
        case PunishKind::PunishTrue:
            return partition.union_all().set_difference(partition.cell(truth.label));
        case PunishKind::KeepCell:
            return partition.cell(cell);
    }
    throw InvariantError("punish policy: unknown kind");
}

void settle_pending(OracleState& state, const PunishPolicy& punish) {
    if (!state.pending.has_value()) return;
    state.pool = punish.designate(state.pending->partition, state.pending->truth);
    state.pending.reset();
}

Outcome oracle_query_simple(OracleState& state, const QueryJob& job,
                            const ReporterInterface& iface, Ledger& ledger, Rng& rng) {
    settle_pending(state, job.punish);
    if (state.pool.empty()) {
        throw ConfigError("oracle is dead: reporting pool is empty");
    }
    pay(ledger, state.pool, job.fee, job.querier);
    OmegaPartition partition = fork(job.event, job.space, state.pool, iface, ledger);
    Outcome winner = plurality_winner(partition, rng);
    state.counter += 1;
    state.history.push_back({job.event, winner, true, 0});
    state.pending = PendingJudgment{partition, job.truth};
    return winner;
}

}  // namespace oraclesim
