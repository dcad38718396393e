// Scenario configuration: which mechanism runs, who holds tokens, what each
// agent's strategy is, and the economic parameters. Configs cross the file
// boundary as JSON with rationals encoded as "num/den" strings, and the
// parse/serialize pair is an exact round trip.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "oraclesim/analysis/params.hpp"
#include "oraclesim/core/tokens.hpp"

namespace oraclesim::sim {

enum class Mechanism { Simple, SingleDispute, DisputeLadder };

std::string mechanism_name(Mechanism m);
Mechanism mechanism_from_name(const std::string& name);

enum class StrategyKind {
    TruthfulReporter,
    LyingReporter,
    AbstainingReporter,
    BribedReporter,
    ThresholdDisputer,
    BestResponseReporter,
    CoalitionController,
    HonestQuerier,
    DeviantQuerier,
    GriefingQuerier,
    BestResponseQuerier,
};

std::string strategy_kind_name(StrategyKind kind);
StrategyKind strategy_kind_from_name(const std::string& name);
bool is_querier_kind(StrategyKind kind);

struct StrategySpec {
    AgentId agent;
    StrategyKind kind = StrategyKind::TruthfulReporter;
    std::string target;            // LyingReporter, GriefingQuerier, BribedReporter(lie),
                                   // CoalitionController
    Rat bribe = 0;                 // BribedReporter, token-value units
    bool bribed_to_lie = false;    // BribedReporter: lie vs mere silence
    std::vector<AgentId> members;  // CoalitionController
    std::map<AgentId, Rat> imputation;  // CoalitionController: payment per member

    bool operator==(const StrategySpec& other) const = default;
};

struct ScenarioConfig {
    Mechanism mechanism = Mechanism::Simple;
    std::string event = "event";
    std::vector<std::string> outcomes;  // outcome space labels
    std::vector<std::string> truths;    // ground truth per query
    std::uint64_t queries = 1;
    std::uint64_t seed = 0;
    std::map<AgentId, std::uint32_t> genesis;  // owner -> token count
    analysis::EconomicParams params;
    StrategySpec querier;
    std::vector<StrategySpec> reporters;
    std::vector<AgentId> priority;  // dispute arbitration order, optional

    bool operator==(const ScenarioConfig& other) const = default;

    // Structural checks: outcomes well formed, truths members of the space,
    // exactly one querier strategy, every genesis holder covered by exactly
    // one strategy, genesis matches the declared pool size.
    void validate() const;
};

// JSON file boundary. parse(serialize(config)) == config, exactly.
ScenarioConfig scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const ScenarioConfig& config);

// Economic parameters alone (analyze/solve config files reuse this).
analysis::EconomicParams params_from_json_text(const std::string& text);
std::string params_to_json_text(const analysis::EconomicParams& params);

// Object-level pieces shared with the CLI config readers.
nlohmann::ordered_json params_to_json(const analysis::EconomicParams& params);
analysis::EconomicParams params_from_json(const nlohmann::ordered_json& obj);
Rat rat_from_json(const nlohmann::ordered_json& value, const std::string& field);
nlohmann::ordered_json rat_to_json(const Rat& value);
std::uint64_t count_from_json(const nlohmann::ordered_json& value, const std::string& field);
void require_keys(const nlohmann::ordered_json& obj, const std::string& where,
                  const std::vector<std::string>& allowed);

}  // namespace oraclesim::sim
