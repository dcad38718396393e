#include "oraclesim/analysis/theorems.hpp"

#include <bit>

#include "oraclesim/errors.hpp"

namespace oraclesim::analysis {

namespace {

Rat pool_tokens(const EconomicParams& params) {
    return Rat(BigInt(params.pool_size));
}

Rat pow2(std::size_t k) {
    BigInt v = 1;
    v <<= k;
    return Rat(v);
}

}  // namespace

bool soundness_check(const EconomicParams& params) {
    params.validate();
    return params.lie_benefit <
           Rat(1, 2) * (params.price_honest - params.price_lying) * pool_tokens(params);
}

Tenability tenability(const EconomicParams& params) {
    params.validate();
    if (params.yield == 0) throw ConfigError("tenability: yield must be positive");
    Tenability out;
    out.x_min = Rat(2) * params.yield / Rat(BigInt(params.query_rate));
    out.implied_price = Rat(BigInt(params.query_rate)) * params.holding_cost *
                        params.lie_benefit / (params.yield * pool_tokens(params));
    EconomicParams implied = params;
    implied.price_honest = out.implied_price;
    implied.price_lying = 0;
    out.satisfied = soundness_check(implied);
    return out;
}

DeviationEv reporter_deviation_ev(const Rat& q, const EconomicParams& params,
                                  std::size_t j) {
    params.validate();
    if (q < 0 || q > 1) throw ConfigError("deviation: q must lie in [0, 1]");
    if (j >= params.reporters.size()) throw ConfigError("deviation: unknown reporter");
    const Rat r = params.reporters[j].share;
    const Rat spread = params.price_honest - params.price_lying;
    const Rat devaluation = spread * r * pool_tokens(params);

    DeviationEv out;
    out.ev_truth = r * params.fee;
    const Rat lie_caught = r * params.fee - devaluation;
    const Rat lie_unpunished =
        r * params.fee + Rat(2) * r * params.lie_benefit - devaluation;
    out.ev_lie = q * lie_caught + (Rat(1) - q) * lie_unpunished;
    return out;
}

IndividualRationality individual_rationality(const EconomicParams& params) {
    IndividualRationality out;
    out.fee_covered = params.truth_benefit > params.fee;
    out.sound = soundness_check(params);
    out.rational = out.fee_covered && out.sound;
    return out;
}

GameTree build_a0_stage_game(const EconomicParams& params) {
    params.validate();
    const Rat fee = params.fee;
    const Rat benefit = params.truth_benefit;
    const Rat lie = params.lie_benefit;
    // Minimum cost of being punished: half the pool devalues.
    const Rat punish_cost =
        Rat(1, 2) * (params.price_honest - params.price_lying) * pool_tokens(params);

    GameTree game({"reporter_bloc", "querier"});
    NodeId root = game.add_decision(ActorKind::ReporterBloc, 0, "report");
    NodeId after_true = game.add_decision(ActorKind::Querier, 1, "judge_after_true");
    NodeId after_false = game.add_decision(ActorKind::Querier, 1, "judge_after_false");
    NodeId tt = game.add_leaf("true_punish_false", {fee, -fee + benefit});
    NodeId tp = game.add_leaf("true_punish_true", {fee - punish_cost, -fee + benefit});
    NodeId ft = game.add_leaf("false_punish_false", {fee + lie - punish_cost, -fee - lie});
    NodeId fp = game.add_leaf("false_punish_true", {fee + lie, -fee - lie});

    game.add_move(root, "True", after_true);
    game.add_move(root, "False", after_false);
    game.add_move(after_true, "PunishFalse", tt);
    game.add_move(after_true, "PunishTrue", tp);
    game.add_move(after_false, "PunishFalse", ft);
    game.add_move(after_false, "PunishTrue", fp);
    game.validate();
    return game;
}

Profile a0_honest_profile(const GameTree& game) {
    // Node layout fixed by build_a0_stage_game: root, then the two querier
    // nodes; move 0 is True / PunishFalse everywhere.
    (void)game;
    return Profile{{0, 0}, {1, 0}, {2, 0}};
}

GameTree build_a1_dispute_game(const EconomicParams& params, bool honest_fork) {
    params.validate();
    const Rat stake_value = Rat(BigInt(params.stake)) * params.price_honest;
    const Rat lie = params.lie_benefit;

    GameTree game({"querier", "reporter"});
    NodeId root = game.add_decision(ActorKind::Querier, 0, "submit");
    NodeId respond_true = game.add_decision(ActorKind::Reporter, 1, "respond_to_true");
    NodeId respond_false = game.add_decision(ActorKind::Reporter, 1, "respond_to_false");
    NodeId residual_true = game.add_chance("residual_after_true");
    NodeId residual_false = game.add_chance("residual_after_false");

    // Fork leaves pay as if the true outcome wins (honest_fork) or as if the
    // disputed-for false outcome wins. The querier's lie benefit accrues
    // whenever the oracle ends up returning a false outcome.
    NodeId true_quiet = game.add_leaf("true_undisputed", {Rat(0), Rat(0)});
    NodeId true_res = honest_fork
                          ? game.add_leaf("true_disputed_by_residual",
                                          {Rat(2) * stake_value, Rat(0)})
                          : game.add_leaf("true_disputed_by_residual",
                                          {-stake_value + lie, Rat(0)});
    NodeId true_disp = honest_fork
                           ? game.add_leaf("true_disputed",
                                           {Rat(2) * stake_value, Rat(-2) * stake_value})
                           : game.add_leaf("true_disputed",
                                           {-stake_value + lie, stake_value});
    NodeId false_quiet = game.add_leaf("false_undisputed", {lie, Rat(0)});
    NodeId false_res = honest_fork
                           ? game.add_leaf("false_disputed_by_residual",
                                           {-stake_value, Rat(0)})
                           : game.add_leaf("false_disputed_by_residual",
                                           {Rat(2) * stake_value + lie, Rat(0)});
    NodeId false_disp = honest_fork
                            ? game.add_leaf("false_disputed",
                                            {-stake_value, stake_value})
                            : game.add_leaf("false_disputed",
                                            {Rat(2) * stake_value + lie,
                                             Rat(-2) * stake_value});

    game.add_move(root, "TrueTentative", respond_true);
    game.add_move(root, "FalseTentative", respond_false);
    game.add_move(respond_true, "NoDispute", residual_true);
    game.add_move(respond_true, "Dispute", true_disp);
    game.add_move(respond_false, "NoDispute", residual_false);
    game.add_move(respond_false, "Dispute", false_disp);
    // Residual reporters dispute a false tentative with certainty and never
    // dispute a true one.
    game.add_move(residual_true, "ResidualDisputes", true_res, Rat(0));
    game.add_move(residual_true, "ResidualQuiet", true_quiet, Rat(1));
    game.add_move(residual_false, "ResidualDisputes", false_res, Rat(1));
    game.add_move(residual_false, "ResidualQuiet", false_quiet, Rat(0));
    game.validate();
    return game;
}

InductionReport dispute_sequence_induction_check(
    const EconomicParams& params, std::size_t m_max,
    const std::vector<InductionSample>& grid) {
    params.validate();
    const Rat a = params.roi_cap;
    const Rat d = Rat(BigInt(params.stake));
    if (m_max < 2) throw ConfigError("induction: m_max must be at least 2");
    if (grid.empty()) throw ConfigError("induction: empty sample grid");
    bool witness = false;
    for (const auto& s : grid) {
        if (s.truth_stake < 0 || s.false_stake < 0) {
            throw ConfigError("induction: stakes must be non-negative");
        }
        if (s.q < 0 || s.q > 1) throw ConfigError("induction: q must lie in [0, 1]");
        if (s.false_stake == 0) witness = true;
    }
    if (!witness) {
        throw ConfigError("induction: grid must include the false_stake = 0 witness");
    }

    InductionReport report;
    auto check = [&](const std::string& name, std::size_t round,
                     const InductionSample& sample, const Rat& lhs, const Rat& rhs) {
        report.checks_run += 1;
        if (!(lhs > rhs)) report.violations.push_back({name, round, sample, lhs, rhs});
    };

    for (std::size_t k = 1; k <= m_max; ++k) {
        const Rat esc = pow2(k) * d;       // stake demanded of a round-k disputer
        const Rat held = pow2(k - 1) * d;  // stake already committed at round k
        for (const auto& sample : grid) {
            const Rat t = sample.truth_stake;
            const Rat f = sample.false_stake;
            // Final round, true tentative: conceding the escalation stake is
            // never better than standing pat.
            check("base-true", k, sample, a * t - f, a * t - f - esc);
            // Final round, false tentative, no false stake committed:
            // disputing for the truth beats letting the lie stand.
            check("base-false", k, sample, a * t + a * esc,
                  sample.q * a * t - (Rat(1) - sample.q) * t);
            // Induction step, true tentative: re-disputing the truth costs
            // more than the capped return recovers. Fails exactly at a = 1/2.
            check("step-true", k, sample, Rat(0), -held + a * esc);
            // Induction step, false tentative: joining the escalation adds
            // the capped return on the new stake.
            check("step-false", k, sample, a * t + a * held, a * t);
        }
    }
    report.passed = report.violations.empty();
    return report;
}

CoalitionThreshold coalition_threshold(const Rat& lie_benefit, const Rat& roi_cap,
                                       std::uint64_t stake, std::size_t round,
                                       std::uint64_t n_holders) {
    if (round < 1) throw ConfigError("coalition: round index must be at least 1");
    if (stake == 0) throw ConfigError("coalition: stake must be positive");
    if (roi_cap <= 0) throw ConfigError("coalition: return cap must be positive");
    CoalitionThreshold out;
    const Rat per_holder = roi_cap * pow2(round) * Rat(BigInt(stake));
    out.min_bribe_total = per_holder * Rat(BigInt(n_holders));
    out.safe = lie_benefit / per_holder < Rat(BigInt(n_holders));
    return out;
}

Rat bribe_search(const Rat& lie_benefit, const Rat& roi_cap, std::uint64_t stake,
                 std::size_t round, const std::vector<std::uint64_t>& holder_stakes) {
    if (round < 1) throw ConfigError("bribe search: round index must be at least 1");
    if (stake == 0) throw ConfigError("bribe search: stake must be positive");
    if (holder_stakes.size() > 20) {
        throw ConfigError("bribe search: holder count exceeds the search guard");
    }
    const Rat bond = pow2(round) * Rat(BigInt(stake));
    const Rat silence_price = roi_cap * bond;

    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < holder_stakes.size(); ++i) {
        if (Rat(BigInt(holder_stakes[i])) >= bond) eligible.push_back(i);
    }
    if (eligible.empty()) return lie_benefit;  // nobody can dispute

    // A lie survives only if every eligible holder is silenced; any cheaper
    // subset leaves a disputer and forfeits the benefit entirely.
    std::optional<Rat> best;
    const std::size_t n = eligible.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        const std::size_t bought = static_cast<std::size_t>(std::popcount(mask));
        if (bought != n) continue;  // an unbribed holder disputes
        const Rat profit =
            lie_benefit - silence_price * Rat(BigInt(static_cast<std::uint64_t>(bought)));
        if (!best || profit > *best) best = profit;
    }
    return *best;
}

}  // namespace oraclesim::analysis
