#include "oraclesim/sim/strategies.hpp"

#include "oraclesim/analysis/theorems.hpp"
#include "oraclesim/core/outcome.hpp"
#include "oraclesim/errors.hpp"

namespace oraclesim::sim {

namespace {

// Highest own payoff among the subgame-perfect profiles, first on ties.
const analysis::SpeProfile& best_spe_for(const analysis::EquilibriumResult& result,
                                         std::size_t player) {
    if (result.spe_profiles.empty()) {
        throw InvariantError("equilibrium: no subgame perfect profile found");
    }
    const analysis::SpeProfile* best = &result.spe_profiles.front();
    for (const auto& profile : result.spe_profiles) {
        if (profile.payoffs[player] > best->payoffs[player]) best = &profile;
    }
    return *best;
}

}  // namespace

StrategyEngine::StrategyEngine(const ScenarioConfig& config, const OutcomeSpace& space)
    : config_(config), space_(space) {}

std::string StrategyEngine::default_lie(const std::string& truth) const {
    for (const auto& outcome : space_.outcomes()) {
        if (outcome.label != truth && outcome.label != kInvalidLabel) return outcome.label;
    }
    return kInvalidLabel;
}

void StrategyEngine::ensure_solved() {
    if (solved_) return;
    solved_ = true;

    analysis::EquilibriumResult stage =
        analysis::solve_game(analysis::build_a0_stage_game(config_.params));
    const analysis::SpeProfile& stage_pick = best_spe_for(stage, 1);
    punish_after_truthful_ =
        stage_pick.choices.at(1) == 0 ? PunishKind::PunishFalse : PunishKind::PunishTrue;
    punish_after_false_ =
        stage_pick.choices.at(2) == 0 ? PunishKind::PunishFalse : PunishKind::PunishTrue;

    analysis::EquilibriumResult dispute =
        analysis::solve_game(analysis::build_a1_dispute_game(config_.params, true));
    tentative_truthful_ = best_spe_for(dispute, 0).choices.at(0) == 0;
    const analysis::SpeProfile& reporter_pick = best_spe_for(dispute, 1);
    disputes_true_tentative_ = reporter_pick.choices.at(1) == 1;
    disputes_false_tentative_ = reporter_pick.choices.at(2) == 1;
}

bool StrategyEngine::reporter_prefers_truth(const AgentId& agent) {
    auto cached = reporter_truthful_.find(agent);
    if (cached != reporter_truthful_.end()) return cached->second;

    auto holding = config_.genesis.find(agent);
    Rat share = holding == config_.genesis.end()
                    ? Rat(0)
                    : Rat(holding->second) / Rat(config_.params.pool_size);
    analysis::EconomicParams probe = config_.params;
    probe.reporters.clear();
    probe.reporters.push_back({share, share * config_.params.lie_benefit});
    if (share < 1) {
        probe.reporters.push_back({1 - share, (1 - share) * config_.params.lie_benefit});
    }

    // Truth must weakly win for every chance the rest of the pool stays
    // honest; one profitable lie anywhere flips the agent.
    bool truthful = true;
    for (int step = 0; step <= 4; ++step) {
        analysis::DeviationEv ev = analysis::reporter_deviation_ev(Rat(step, 4), probe, 0);
        if (ev.ev_lie > ev.ev_truth) {
            truthful = false;
            break;
        }
    }
    reporter_truthful_[agent] = truthful;
    return truthful;
}

QueryPlan StrategyEngine::plan_query(
    const std::string& truth,
    const std::optional<std::pair<std::string, std::string>>& previous) {
    QueryPlan plan;

    switch (config_.querier.kind) {
        case StrategyKind::HonestQuerier:
        case StrategyKind::GriefingQuerier:
            plan.punish = {PunishKind::PunishFalse, ""};
            break;
        case StrategyKind::DeviantQuerier:
            plan.punish = {PunishKind::PunishTrue, ""};
            break;
        case StrategyKind::BestResponseQuerier: {
            ensure_solved();
            bool prev_truthful = !previous || previous->first == previous->second;
            plan.punish = {prev_truthful ? punish_after_truthful_ : punish_after_false_, ""};
            break;
        }
        default:
            throw InvariantError("plan: querier has a reporter strategy");
    }

    switch (config_.querier.kind) {
        case StrategyKind::GriefingQuerier:
            plan.tentative = config_.querier.target;
            break;
        case StrategyKind::BestResponseQuerier:
            ensure_solved();
            plan.tentative = tentative_truthful_ ? truth : default_lie(truth);
            break;
        default:
            plan.tentative = truth;
    }

    // The querier's own tokens report and dispute according to its kind.
    if (config_.genesis.count(config_.querier.agent)) {
        const AgentId& agent = config_.querier.agent;
        if (config_.querier.kind == StrategyKind::GriefingQuerier) {
            // Griefing is stake harassment, not vote manipulation: the cheap
            // way to force forks keeps the free holding on the true side.
            std::string target = config_.querier.target;
            plan.fork_answers[agent] = truth;
            plan.dispute_policies[agent] = [target](const DisputeRoundView& view) {
                return view.tentative != target ? std::optional<std::string>(target)
                                                : std::nullopt;
            };
        } else {
            plan.fork_answers[agent] = truth;
        }
    }

    for (const auto& spec : config_.reporters) {
        switch (spec.kind) {
            case StrategyKind::TruthfulReporter:
                plan.fork_answers[spec.agent] = truth;
                break;
            case StrategyKind::LyingReporter:
                plan.fork_answers[spec.agent] = spec.target;
                break;
            case StrategyKind::AbstainingReporter:
                plan.fork_answers[spec.agent] = std::nullopt;
                break;
            case StrategyKind::ThresholdDisputer: {
                plan.fork_answers[spec.agent] = truth;
                plan.dispute_policies[spec.agent] = [truth](const DisputeRoundView& view) {
                    return view.tentative != truth ? std::optional<std::string>(truth)
                                                   : std::nullopt;
                };
                break;
            }
            case StrategyKind::BribedReporter: {
                if (spec.bribed_to_lie) {
                    plan.fork_answers[spec.agent] = spec.target;
                    break;
                }
                plan.fork_answers[spec.agent] = truth;
                // Silence is worth exactly the forgone capped return; an
                // underpaid holder still disputes a false tentative.
                Rat bribe = spec.bribe;
                Rat roi = config_.params.roi_cap;
                plan.dispute_policies[spec.agent] =
                    [truth, bribe, roi](const DisputeRoundView& view)
                    -> std::optional<std::string> {
                    if (view.tentative == truth) return std::nullopt;
                    if (bribe >= roi * Rat(view.required_stake)) return std::nullopt;
                    return truth;
                };
                break;
            }
            case StrategyKind::BestResponseReporter: {
                ensure_solved();
                bool honest = reporter_prefers_truth(spec.agent);
                plan.fork_answers[spec.agent] = honest ? truth : default_lie(truth);
                bool dispute_false = disputes_false_tentative_ && honest;
                bool dispute_true = disputes_true_tentative_ || !honest;
                std::string lie = default_lie(truth);
                plan.dispute_policies[spec.agent] =
                    [truth, lie, dispute_false, dispute_true](const DisputeRoundView& view)
                    -> std::optional<std::string> {
                    if (view.tentative != truth && dispute_false) return truth;
                    if (view.tentative == truth && dispute_true) return lie;
                    return std::nullopt;
                };
                break;
            }
            case StrategyKind::CoalitionController: {
                std::string target = spec.target;
                for (const auto& member : spec.members) {
                    plan.fork_answers[member] = target;
                    plan.dispute_policies[member] = [target](const DisputeRoundView& view)
                        -> std::optional<std::string> {
                        return view.tentative != target ? std::optional<std::string>(target)
                                                        : std::nullopt;
                    };
                }
                break;
            }
            default:
                throw InvariantError("plan: reporter has a querier strategy");
        }
    }
    return plan;
}

void StrategyEngine::credit_side_payments(Ledger& ledger) const {
    for (const auto& spec : config_.reporters) {
        if (spec.kind == StrategyKind::BribedReporter && spec.bribe > 0) {
            ledger.external_credit(spec.agent, spec.bribe * config_.params.price_honest,
                                   "bribe");
        }
        if (spec.kind == StrategyKind::CoalitionController) {
            for (const auto& [member, amount] : spec.imputation) {
                if (amount > 0) ledger.external_credit(member, amount, "imputation");
            }
        }
    }
}

}  // namespace oraclesim::sim
