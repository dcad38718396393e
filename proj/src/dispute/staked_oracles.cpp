#include "oraclesim/dispute/staked_oracles.hpp"

#include "oraclesim/errors.hpp"

namespace oraclesim {

namespace {

// Shared entry checks: pending judgment, liveness, fee, and the stake cell.
OmegaPartition open_query(OracleState& state, const QueryJob& job,
                          const StakedQueryInputs& inputs, Ledger& ledger) {
    settle_pending(state, job.punish);
    if (state.pool.empty()) {
        throw ConfigError("oracle is dead: reporting pool is empty");
    }
    if (!job.space.contains(inputs.tentative)) {
        throw ConfigError("query: tentative outcome '" + inputs.tentative +
                          "' is not in the outcome space");
    }
    if (inputs.initial_stake.empty()) {
        throw ConfigError("query: initial stake is empty");
    }
    if (!state.pool.contains_all(inputs.initial_stake)) {
        throw ConfigError("query: initial stake must come from the reporting pool");
    }
    for (TokenId id : inputs.initial_stake) {
        if (ledger.owner_of(id) != job.querier) {
            throw ConfigError("query: initial stake token " + std::to_string(id) +
                              " is not owned by the querier");
        }
    }
    pay(ledger, state.pool, job.fee, job.querier);
    OmegaPartition stakes(job.space);
    partition_assign(stakes, inputs.tentative, inputs.initial_stake);
    return stakes;
}

}  // namespace

StakedQueryResult oracle_query_single_dispute(OracleState& state, const QueryJob& job,
                                              const StakedQueryInputs& inputs,
                                              const ReporterInterface& iface,
                                              Ledger& ledger, Rng& rng) {
    OmegaPartition stakes = open_query(state, job, inputs, ledger);
    const std::size_t d = inputs.initial_stake.size();

    DisputeRoundResult round =
        dispute_round(job.event, job.space, inputs.tentative, stakes, 2 * d,
                      inputs.policies, inputs.priority, state.pool, ledger);

    StakedQueryResult result;
    result.rounds = 1;
    if (!round.disputed) {
        distribute(ledger, stakes, inputs.tentative);  // full refund
        result.outcome = Outcome{inputs.tentative};
        state.counter += 1;
        state.history.push_back({job.event, result.outcome, false, 1});
        return result;
    }

    ForkSettlement settlement =
        choice_by_fork(job.event, job.space, state.pool, stakes, iface, ledger, rng);
    result.outcome = settlement.winner;
    result.disputed = true;
    result.forked = true;
    result.disputes = 1;
    state.counter += 1;
    state.history.push_back({job.event, result.outcome, true, 1});
    state.pending = PendingJudgment{settlement.partition, job.truth};
    return result;
}

StakedQueryResult oracle_query_dispute_ladder(OracleState& state, const QueryJob& job,
                                              const LadderInputs& inputs,
                                              const ReporterInterface& iface,
                                              Ledger& ledger, Rng& rng) {
    if (inputs.roi <= 0 || inputs.roi >= Rat(1, 2)) {
        throw ConfigError("query: return cap must lie in (0, 1/2)");
    }
    OmegaPartition stakes = open_query(state, job, inputs, ledger);

    DisputeSequenceResult sequence = dispute_sequence(
        job.event, job.space, inputs.tentative, stakes, inputs.fork_threshold,
        inputs.policies, inputs.priority, state.pool, ledger);

    StakedQueryResult result;
    result.rounds = sequence.rounds_run;
    result.disputes = sequence.disputes_accepted;
    result.disputed = sequence.ever_disputed;

    if (!sequence.big_dispute) {
        if (!sequence.ever_disputed) {
            distribute(ledger, stakes, sequence.outcome);  // full refund
        } else {
            result.burned = capped_payout(ledger, stakes, sequence.outcome, inputs.roi);
        }
        result.outcome = Outcome{sequence.outcome};
        state.counter += 1;
        state.history.push_back({job.event, result.outcome, false, sequence.rounds_run});
        return result;
    }

    ForkSettlement settlement = choice_by_fork_capped(
        job.event, job.space, state.pool, stakes, inputs.roi, iface, ledger, rng);
    result.outcome = settlement.winner;
    result.forked = true;
    result.burned = settlement.burned;
    state.counter += 1;
    state.history.push_back({job.event, result.outcome, true, sequence.rounds_run});
    state.pending = PendingJudgment{settlement.partition, job.truth};
    return result;
}

}  // namespace oraclesim
