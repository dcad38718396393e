// Dispute rounds against a tentative outcome, the geometric escalation
// sequence, and the two fork-based settlement procedures (plain payout and
// payout capped at a fixed return with the excess burned).
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oraclesim/mech/fork.hpp"

namespace oraclesim {

struct DisputeRoundView {
    std::string event;
    const OutcomeSpace* space = nullptr;
    std::string tentative;        // outcome the round may challenge
    std::size_t round = 0;        // 1-based
    std::size_t required_stake = 0;
    const OmegaPartition* stakes = nullptr;  // committed stake so far
    TokenSet free_holding;        // caller's uncommitted pool tokens
};

// Returns the outcome label to dispute in favor of, or nullopt to stay quiet.
using DisputePolicy = std::function<std::optional<std::string>(const DisputeRoundView&)>;

struct DisputeRoundResult {
    std::string outcome;   // new tentative (unchanged when nobody disputed)
    bool disputed = false;
    AgentId disputer;      // empty when not disputed
};

// Offers every owner of an uncommitted pool token the chance to stake
// `stake` tokens against the tentative outcome. Agents are polled in
// priority order and the first affordable dispute wins the round; an agent
// without enough free tokens is skipped. Disputing in favor of the tentative
// itself is rejected as a malformed policy. Accepted stake is committed into
// `stakes` under the disputed-for outcome.
DisputeRoundResult dispute_round(const std::string& event, const OutcomeSpace& space,
                                 const std::string& tentative, OmegaPartition& stakes,
                                 std::size_t stake,
                                 const std::map<AgentId, DisputePolicy>& policies,
                                 const std::vector<AgentId>& priority,
                                 const TokenSet& pool, Ledger& ledger,
                                 std::size_t round = 1);

struct DisputeSequenceResult {
    std::string outcome;       // final tentative
    bool ever_disputed = false;
    bool big_dispute = false;  // stake reached the fork threshold
    std::size_t rounds_run = 0;
    std::size_t disputes_accepted = 0;
};

// Runs dispute rounds with stakes 2d, 4d, 8d, ... (d = size of the initial
// stake cell) until a round passes quietly or the accepted stake reaches the
// threshold. threshold must exceed d.
DisputeSequenceResult dispute_sequence(const std::string& event,
                                       const OutcomeSpace& space,
                                       const std::string& tentative,
                                       OmegaPartition& stakes, std::size_t threshold,
                                       const std::map<AgentId, DisputePolicy>& policies,
                                       const std::vector<AgentId>& priority,
                                       const TokenSet& pool, Ledger& ledger);

// Moves burn_count staked tokens to the unspendable sink (losing stake burns
// first), then pays the rest to the winning cell's owners pro rata. Shares
// must come out integral; 0 < burn_count < |stakes|.
void burn_and_distribute(Ledger& ledger, const OmegaPartition& stakes,
                         const std::string& winner, std::size_t burn_count);

// Pays the winning cell's owners their stake times (1 + roi) and burns the
// surplus. A non-positive surplus burns nothing and distributes everything,
// which still yields exactly (1 + roi) per staked token when the surplus is
// zero. Fractional shares fall back to whole-token floors with the remainder
// burned. Returns the number of tokens burned.
std::size_t capped_payout(Ledger& ledger, const OmegaPartition& stakes,
                          const std::string& winner, const Rat& roi);

struct ForkSettlement {
    Outcome winner;
    OmegaPartition partition;   // cells over the whole pool; stake merged into winner
    std::size_t burned = 0;
};

// Settles an escalated dispute by forking the uncommitted remainder of the
// pool. Committed stake counts toward the tally under the outcome it backs,
// and the winner takes the whole stake via distribute. The returned partition
// has all stake merged into the winning cell.
ForkSettlement choice_by_fork(const std::string& event, const OutcomeSpace& space,
                              const TokenSet& pool, const OmegaPartition& stakes,
                              const ReporterInterface& iface, Ledger& ledger, Rng& rng);

// Same fork, but winners' return on stake is capped at roi (a fraction in
// (0, 1/2)); the surplus above (1 + roi) x winning stake is burned. When the
// surplus is zero or negative everything is distributed and nothing burns.
// Fractional caps fall back to whole-token floors with the remainder burned.
ForkSettlement choice_by_fork_capped(const std::string& event, const OutcomeSpace& space,
                                     const TokenSet& pool, const OmegaPartition& stakes,
                                     const Rat& roi, const ReporterInterface& iface,
                                     Ledger& ledger, Rng& rng);

}  // namespace oraclesim
