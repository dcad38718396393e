#include "oraclesim/dispute/dispute.hpp"

#include <algorithm>

#include "oraclesim/errors.hpp"

namespace oraclesim {

namespace {

std::vector<AgentId> poll_order(const std::vector<AgentId>& priority,
                                const std::vector<AgentId>& eligible) {
    std::vector<AgentId> order;
    for (const AgentId& agent : priority) {
        if (std::find(eligible.begin(), eligible.end(), agent) != eligible.end() &&
            std::find(order.begin(), order.end(), agent) == order.end()) {
            order.push_back(agent);
        }
    }
    for (const AgentId& agent : eligible) {
        if (std::find(order.begin(), order.end(), agent) == order.end()) {
            order.push_back(agent);
        }
    }
    return order;
}

Outcome tally_winner(const OutcomeSpace& space, const OmegaPartition& free_reports,
                     const OmegaPartition& stakes, Rng& rng) {
    std::size_t best = 0;
    for (const Outcome& outcome : space.outcomes()) {
        const std::size_t count = free_reports.cell(outcome.label).size() +
                                  stakes.cell(outcome.label).size();
        best = std::max(best, count);
    }
    std::vector<Outcome> leaders;
    for (const Outcome& outcome : space.outcomes()) {
        const std::size_t count = free_reports.cell(outcome.label).size() +
                                  stakes.cell(outcome.label).size();
        if (count == best) leaders.push_back(outcome);
    }
    return leaders[rng.next_below(leaders.size())];
}

}  // namespace

std::size_t capped_payout(Ledger& ledger, const OmegaPartition& stakes,
                          const std::string& winner, const Rat& roi) {
    const TokenSet& winning_cell = stakes.cell(winner);
    if (winning_cell.empty()) {
        throw ConfigError("capped payout: winning cell '" + winner + "' is empty");
    }
    const TokenSet all = stakes.union_all();
    const Rat total(static_cast<std::int64_t>(all.size()));
    const Rat cell(static_cast<std::int64_t>(winning_cell.size()));
    const Rat surplus = total - (Rat(1) + roi) * cell;
    if (surplus <= 0) {
        distribute(ledger, stakes, winner);
        return 0;
    }

    bool integral = true;
    std::vector<std::pair<AgentId, std::size_t>> targets;
    std::size_t paid_total = 0;
    for (const AgentId& agent : ledger.owners_of(winning_cell)) {
        const Rat stake(
            static_cast<std::int64_t>(ledger.tokens_of_in(agent, winning_cell).size()));
        const Rat target = (Rat(1) + roi) * stake;
        if (!rat_is_integer(target)) integral = false;
        const std::size_t paid =
            static_cast<std::size_t>(rat_floor(target).convert_to<std::uint64_t>());
        targets.emplace_back(agent, paid);
        paid_total += paid;
    }
    const std::size_t burn_count = all.size() - paid_total;

    if (integral) {
        burn_and_distribute(ledger, stakes, winner, burn_count);
        return burn_count;
    }

    // Whole-token fallback: winners floor their capped share, remainder burns.
    TokenSet pot = all.set_difference(winning_cell);
    TokenSet to_burn = pot.take(burn_count);
    ledger.move_tokens(to_burn, Ledger::burn_sink());
    pot = pot.set_difference(to_burn);
    for (const auto& [agent, paid] : targets) {
        const std::size_t own = ledger.tokens_of_in(agent, winning_cell).size();
        TokenSet granted = pot.take(paid - own);
        pot = pot.set_difference(granted);
        ledger.move_tokens(granted, agent);
    }
    if (!pot.empty()) throw InvariantError("capped payout: undisbursed tokens remain");
    return burn_count;
}

DisputeRoundResult dispute_round(const std::string& event, const OutcomeSpace& space,
                                 const std::string& tentative, OmegaPartition& stakes,
                                 std::size_t stake,
                                 const std::map<AgentId, DisputePolicy>& policies,
                                 const std::vector<AgentId>& priority,
                                 const TokenSet& pool, Ledger& ledger,
                                 std::size_t round) {
    if (stake == 0) throw ConfigError("dispute round: zero stake requirement");
    if (stakes.cell(tentative).empty()) {
        throw ConfigError("dispute round: tentative outcome '" + tentative +
                          "' carries no stake");
    }
    const TokenSet committed = stakes.union_all();
    const TokenSet free_pool = pool.set_difference(committed);
    const std::vector<AgentId> eligible = ledger.owners_of(free_pool);

    for (const AgentId& agent : poll_order(priority, eligible)) {
        auto policy_it = policies.find(agent);
        if (policy_it == policies.end()) continue;
        if (agent == Ledger::burn_sink()) continue;

        DisputeRoundView view;
        view.event = event;
        view.space = &space;
        view.tentative = tentative;
        view.round = round;
        view.required_stake = stake;
        view.stakes = &stakes;
        view.free_holding = ledger.tokens_of_in(agent, free_pool);

        std::optional<std::string> target = policy_it->second(view);
        if (!target.has_value()) continue;
        if (*target == tentative) {
            throw ConfigError("dispute round: policy of '" + agent +
                              "' disputes in favor of the tentative outcome");
        }
        if (!space.contains(*target)) {
            throw ConfigError("dispute round: policy of '" + agent +
                              "' targets unknown outcome '" + *target + "'");
        }
        if (view.free_holding.size() < stake) continue;  // cannot afford; skipped

        partition_assign(stakes, *target, view.free_holding.take(stake));
        return {*target, true, agent};
    }
    return {tentative, false, AgentId{}};
}

DisputeSequenceResult dispute_sequence(const std::string& event,
                                       const OutcomeSpace& space,
                                       const std::string& tentative,
                                       OmegaPartition& stakes, std::size_t threshold,
                                       const std::map<AgentId, DisputePolicy>& policies,
                                       const std::vector<AgentId>& priority,
                                       const TokenSet& pool, Ledger& ledger) {
    const std::size_t d = stakes.cell(tentative).size();
    if (d == 0) throw ConfigError("dispute sequence: empty initial stake");
    if (threshold <= d) {
        throw ConfigError("dispute sequence: fork threshold must exceed the initial stake");
    }

    DisputeSequenceResult result;
    result.outcome = tentative;
    std::size_t round = 1;
    // Stakes double each round; the sequence ends quietly or escalates to the
    // fork once the accepted stake reaches the threshold.
    while ((d << (round - 1)) < threshold) {
        const std::size_t required = d << round;
        DisputeRoundResult r = dispute_round(event, space, result.outcome, stakes, required,
                                             policies, priority, pool, ledger, round);
        result.rounds_run = round;
        if (!r.disputed) return result;
        result.ever_disputed = true;
        result.disputes_accepted += 1;
        result.outcome = r.outcome;
        round += 1;
    }
    result.big_dispute = true;
    return result;
}

void burn_and_distribute(Ledger& ledger, const OmegaPartition& stakes,
                         const std::string& winner, std::size_t burn_count) {
    const TokenSet& winning_cell = stakes.cell(winner);
    if (winning_cell.empty()) {
        throw ConfigError("burn: winning cell '" + winner + "' is empty");
    }
    const TokenSet all = stakes.union_all();
    if (burn_count == 0 || burn_count >= all.size()) {
        throw ConfigError("burn: count must lie strictly between 0 and the staked total");
    }
    TokenSet losing = all.set_difference(winning_cell);
    if (burn_count > losing.size()) {
        throw ConfigError("burn: count exceeds the losing stake");
    }
    const std::size_t payout_total = all.size() - burn_count;
    const Rat cell(static_cast<std::int64_t>(winning_cell.size()));

    struct Grant {
        AgentId agent;
        std::size_t extra;
    };
    std::vector<Grant> grants;
    for (const AgentId& agent : ledger.owners_of(winning_cell)) {
        const std::size_t own = ledger.tokens_of_in(agent, winning_cell).size();
        const Rat share = Rat(static_cast<std::int64_t>(own)) *
                          Rat(static_cast<std::int64_t>(payout_total)) / cell;
        if (!rat_is_integer(share)) {
            throw ConfigError("burn: pro rata share for '" + agent +
                              "' is not a whole token count");
        }
        grants.push_back(
            {agent, static_cast<std::size_t>(share.convert_to<std::uint64_t>()) - own});
    }

    TokenSet to_burn = losing.take(burn_count);
    ledger.move_tokens(to_burn, Ledger::burn_sink());
    TokenSet pot = losing.set_difference(to_burn);
    for (const auto& grant : grants) {
        TokenSet granted = pot.take(grant.extra);
        pot = pot.set_difference(granted);
        ledger.move_tokens(granted, grant.agent);
    }
    if (!pot.empty()) throw InvariantError("burn: undisbursed tokens remain");
}

ForkSettlement choice_by_fork(const std::string& event, const OutcomeSpace& space,
                              const TokenSet& pool, const OmegaPartition& stakes,
                              const ReporterInterface& iface, Ledger& ledger, Rng& rng) {
    const TokenSet committed = stakes.union_all();
    if (!pool.contains_all(committed)) {
        throw ConfigError("fork settlement: staked tokens are not all in the pool");
    }
    const TokenSet free_pool = pool.set_difference(committed);
    OmegaPartition reports =
        free_pool.empty() ? OmegaPartition(space)
                          : fork(event, space, free_pool, iface, ledger);
    Outcome winner = tally_winner(space, reports, stakes, rng);
    distribute(ledger, stakes, winner.label);

    OmegaPartition merged = reports;
    partition_assign(merged, winner.label, committed);
    return {winner, merged, 0};
}

ForkSettlement choice_by_fork_capped(const std::string& event, const OutcomeSpace& space,
                                     const TokenSet& pool, const OmegaPartition& stakes,
                                     const Rat& roi, const ReporterInterface& iface,
                                     Ledger& ledger, Rng& rng) {
    if (roi <= 0 || roi >= Rat(1, 2)) {
        throw ConfigError("fork settlement: return cap must lie in (0, 1/2)");
    }
    const TokenSet committed = stakes.union_all();
    if (!pool.contains_all(committed)) {
        throw ConfigError("fork settlement: staked tokens are not all in the pool");
    }
    const TokenSet free_pool = pool.set_difference(committed);
    OmegaPartition reports =
        free_pool.empty() ? OmegaPartition(space)
                          : fork(event, space, free_pool, iface, ledger);
    Outcome winner = tally_winner(space, reports, stakes, rng);
    const std::size_t burned = capped_payout(ledger, stakes, winner.label, roi);

    OmegaPartition merged = reports;
    partition_assign(merged, winner.label, committed);
    return {winner, merged, burned};
}

}  // namespace oraclesim
