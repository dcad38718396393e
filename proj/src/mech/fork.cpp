#include "oraclesim/mech/fork.hpp"

#include <algorithm>

#include "oraclesim/errors.hpp"

namespace oraclesim {

std::pair<std::string, TokenSet> report(const AgentId& agent, const std::string& event,
                                        const OutcomeSpace& space, const TokenSet& pool,
                                        const ReporterInterface& iface,
                                        const Ledger& ledger) {
    TokenSet holding = ledger.tokens_of_in(agent, pool);
    if (holding.empty()) {
        throw ConfigError("report: agent '" + agent + "' owns no tokens in the pool");
    }
    std::optional<std::string> answer = iface(agent, event, space, holding);
    std::string key = kAbstainLabel;
    if (answer.has_value() && space.contains(*answer)) key = *answer;
    return {key, holding};
}

OmegaPartition fork(const std::string& event, const OutcomeSpace& space,
                    const TokenSet& pool, const ReporterInterface& iface,
                    const Ledger& ledger) {
    if (pool.empty()) throw ConfigError("fork: empty token pool");
    OmegaPartition partition(space);
    for (const AgentId& owner : ledger.owners_of(pool)) {
        // Burned tokens cannot speak; they sit out as abstentions.
        if (owner == Ledger::burn_sink()) {
            partition_assign(partition, kAbstainLabel, ledger.tokens_of_in(owner, pool));
            continue;
        }
        auto [key, holding] = report(owner, event, space, pool, iface, ledger);
        partition_assign(partition, key, holding);
    }
    return partition;
}

void pay(Ledger& ledger, const TokenSet& pool, const Rat& fee,
         const std::optional<AgentId>& payer) {
    if (pool.empty()) throw ConfigError("pay: empty token pool");
    if (fee < 0) throw ConfigError("pay: negative fee");
    const Rat per_token = fee / Rat(static_cast<std::int64_t>(pool.size()));
    for (const AgentId& owner : ledger.owners_of(pool)) {
        const std::size_t held = ledger.tokens_of_in(owner, pool).size();
        const Rat share = per_token * Rat(static_cast<std::int64_t>(held));
        if (payer.has_value()) {
            ledger.transfer(*payer, owner, share);
        } else {
            ledger.external_credit(owner, share, "fee");
        }
    }
}

Outcome plurality_winner(const OmegaPartition& partition, Rng& rng) {
    const OutcomeSpace& space = partition.space();
    std::size_t best = 0;
    for (const Outcome& outcome : space.outcomes()) {
        best = std::max(best, partition.cell(outcome.label).size());
    }
    std::vector<Outcome> leaders;
    for (const Outcome& outcome : space.outcomes()) {
        if (partition.cell(outcome.label).size() == best) leaders.push_back(outcome);
    }
    // best == 0 leaves every outcome tied, so the draw covers the whole space.
    return leaders[rng.next_below(leaders.size())];
}

namespace {

struct WinnerShare {
    AgentId agent;
    TokenSet stake;      // their tokens in the winning cell
    Rat exact_share;     // tokens owed under exact pro rata
    std::size_t floor_share = 0;
};

// Apportions `total` whole tokens over winners pro rata by stake. Exact when
// every share is integral; largest remainder otherwise (ties to earlier
// agents in ascending id order).
std::vector<WinnerShare> apportion(const Ledger& ledger, const TokenSet& winning_cell,
                                   std::size_t total) {
    std::vector<WinnerShare> winners;
    const Rat cell_size(static_cast<std::int64_t>(winning_cell.size()));
    for (const AgentId& owner : ledger.owners_of(winning_cell)) {
        WinnerShare w;
        w.agent = owner;
        w.stake = ledger.tokens_of_in(owner, winning_cell);
        w.exact_share = Rat(static_cast<std::int64_t>(w.stake.size())) *
                        Rat(static_cast<std::int64_t>(total)) / cell_size;
        w.floor_share = static_cast<std::size_t>(rat_floor(w.exact_share).convert_to<std::uint64_t>());
        winners.push_back(std::move(w));
    }
    std::size_t assigned = 0;
    for (const auto& w : winners) assigned += w.floor_share;
    std::size_t leftover = total - assigned;
    // Hand out remaining tokens by descending fractional remainder.
    std::vector<std::size_t> order(winners.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Rat ra = winners[a].exact_share - Rat(static_cast<std::int64_t>(winners[a].floor_share));
        const Rat rb = winners[b].exact_share - Rat(static_cast<std::int64_t>(winners[b].floor_share));
        return ra > rb;
    });
    for (std::size_t i = 0; i < order.size() && leftover > 0; ++i, --leftover) {
        winners[order[i]].floor_share += 1;
    }
    return winners;
}

}  // namespace

void distribute(Ledger& ledger, const OmegaPartition& stakes, const std::string& winner) {
    const TokenSet& winning_cell = stakes.cell(winner);
    if (winning_cell.empty()) {
        throw ConfigError("distribute: winning cell '" + winner + "' is empty");
    }
    const TokenSet all = stakes.union_all();
    std::vector<WinnerShare> winners = apportion(ledger, winning_cell, all.size());

    TokenSet profit_pool = all.set_difference(winning_cell);
    for (const auto& w : winners) {
        // Own stake returns first; payouts can only add to it.
        if (w.floor_share < w.stake.size()) {
            throw InvariantError("distribute: share below own stake");
        }
        const std::size_t extra = w.floor_share - w.stake.size();
        TokenSet granted = profit_pool.take(extra);
        profit_pool = profit_pool.set_difference(granted);
        ledger.move_tokens(granted, w.agent);
    }
    if (!profit_pool.empty()) {
        throw InvariantError("distribute: undisbursed tokens remain");
    }
}

}  // namespace oraclesim
