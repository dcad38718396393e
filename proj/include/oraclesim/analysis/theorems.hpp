// The economic conditions and reconstructed games behind the three oracle
// mechanisms: when lying pays, when honest reporting is an equilibrium, what
// a dispute escalation costs, and what it takes to bribe the holder set.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oraclesim/analysis/game.hpp"
#include "oraclesim/analysis/params.hpp"

namespace oraclesim::analysis {

// True iff the total lie benefit is strictly below half the value destroyed
// by lying: I < (1/2)(p - p')|T|. The boundary counts as unsound.
bool soundness_check(const EconomicParams& params);

struct Tenability {
    Rat x_min;          // smallest platform fee fraction that can work
    Rat implied_price;  // token price implied by fee income
    bool satisfied = false;
};

// Fee-viability check: x_min = 2Y/n, implied price = n*x*I/(Y*|T|), and
// satisfied iff soundness holds at that implied price with p' = 0.
Tenability tenability(const EconomicParams& params);

struct DeviationEv {
    Rat ev_truth;
    Rat ev_lie;
};

// Expected stage payoff for reporter j reporting truthfully versus lying,
// where q is the probability the other reporters keep the oracle truthful.
DeviationEv reporter_deviation_ev(const Rat& q, const EconomicParams& params,
                                  std::size_t j);

struct IndividualRationality {
    bool fee_covered = false;  // querier's truth benefit exceeds the fee
    bool sound = false;
    bool rational = false;     // both at once
};

IndividualRationality individual_rationality(const EconomicParams& params);

// Stage game of the fork-every-query oracle: the reporter bloc picks the
// outcome, then the querier picks which side to punish, at each branch.
// Player 0 is the bloc, player 1 the querier.
GameTree build_a0_stage_game(const EconomicParams& params);

// Profile of honest play in that game: bloc reports True, querier punishes
// false reporting at both branches.
Profile a0_honest_profile(const GameTree& game);

// Single dispute round game. Player 0 is the querier (picks the tentative
// outcome, staking d), player 1 a representative reporter (disputes at 2d or
// stays quiet); the remaining reporters are chance moves. honest_fork selects
// whether fork subgames pay out as if the true outcome wins. Token flows are
// valued at the honest price.
GameTree build_a1_dispute_game(const EconomicParams& params, bool honest_fork);

struct InductionSample {
    Rat truth_stake;  // committed stake favoring the true outcome (T_k)
    Rat false_stake;  // committed stake favoring a false outcome (F_k)
    Rat q;            // chance the remaining holders keep the oracle honest
};

struct InductionViolation {
    std::string inequality;
    std::size_t round = 0;
    InductionSample sample;
    Rat lhs;
    Rat rhs;
};

struct InductionReport {
    bool passed = false;
    std::size_t checks_run = 0;
    std::vector<InductionViolation> violations;
};

// Verifies, exactly, the four inequality families behind the escalation
// argument (final-round base cases and the induction steps for both
// tentative outcomes) over every sample and every round k <= m_max. The
// sample list must include the common-knowledge witness false_stake = 0.
// The step inequality for true tentatives fails exactly when the return cap
// reaches 1/2, so caps in [1/2, 1) are accepted and reported as violations.
InductionReport dispute_sequence_induction_check(
    const EconomicParams& params, std::size_t m_max,
    const std::vector<InductionSample>& grid);

struct CoalitionThreshold {
    Rat min_bribe_total;
    bool safe = false;
};

// Cheapest bribe that silences all n holders able to dispute at round k
// (each forgoes a return of a*2^k*d), and whether that exceeds the lie
// benefit. Boundary equality counts as unsafe.
CoalitionThreshold coalition_threshold(const Rat& lie_benefit, const Rat& roi_cap,
                                       std::uint64_t stake, std::size_t round,
                                       std::uint64_t n_holders);

// Exhaustive search over bribe allocations: a holder with at least 2^k*d
// tokens stays silent only for a bribe of at least a*2^k*d; any unbribed
// eligible holder disputes, making the lie worthless. Returns the best
// coalition profit (lie benefit minus bribes). With no eligible holders the
// lie succeeds unopposed and the profit is the full benefit. Independent
// oracle for coalition_threshold; holder count capped at 20.
Rat bribe_search(const Rat& lie_benefit, const Rat& roi_cap, std::uint64_t stake,
                 std::size_t round, const std::vector<std::uint64_t>& holder_stakes);

}  // namespace oraclesim::analysis
