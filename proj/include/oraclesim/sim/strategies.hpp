// Turns strategy specs into the concrete decisions one query needs: the
// judgment applied to the previous partition, the tentative outcome for
// staked mechanisms, each holder's fork report, and each holder's dispute
// policy. Best-response kinds consult the equilibrium solvers and cache the
// resulting plan; everything else is a fixed rule.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "oraclesim/core/ledger.hpp"
#include "oraclesim/dispute/dispute.hpp"
#include "oraclesim/mech/simple_oracle.hpp"
#include "oraclesim/sim/scenario.hpp"

namespace oraclesim::sim {

struct QueryPlan {
    PunishPolicy punish;     // applied to the previous query's partition
    std::string tentative;   // staked mechanisms only
    std::map<AgentId, std::optional<std::string>> fork_answers;
    std::map<AgentId, DisputePolicy> dispute_policies;
};

class StrategyEngine {
  public:
    StrategyEngine(const ScenarioConfig& config, const OutcomeSpace& space);

    // previous = (returned outcome, ground truth) of the prior query; empty
    // before the first one. Needed because a best-responding querier judges
    // the two branches of the stage game differently.
    QueryPlan plan_query(const std::string& truth,
                         const std::optional<std::pair<std::string, std::string>>& previous);

    // Start-of-run side payments: bribes and coalition imputations enter the
    // ledger as external inflows so conservation still balances.
    void credit_side_payments(Ledger& ledger) const;

    // First outcome that differs from the truth; what a liar with no stated
    // target reports.
    std::string default_lie(const std::string& truth) const;

  private:
    void ensure_solved();
    bool reporter_prefers_truth(const AgentId& agent);

    const ScenarioConfig& config_;
    const OutcomeSpace& space_;

    bool solved_ = false;
    PunishKind punish_after_truthful_ = PunishKind::PunishFalse;
    PunishKind punish_after_false_ = PunishKind::PunishFalse;
    bool tentative_truthful_ = true;
    bool disputes_false_tentative_ = true;
    bool disputes_true_tentative_ = false;
    std::map<AgentId, bool> reporter_truthful_;
};

}  // namespace oraclesim::sim
