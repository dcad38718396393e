#include "oraclesim/sim/scenario.hpp"

#include <algorithm>
#include <set>

#include "oraclesim/core/outcome.hpp"
#include "oraclesim/errors.hpp"

namespace oraclesim::sim {

using json = nlohmann::ordered_json;

std::string mechanism_name(Mechanism m) {
    switch (m) {
        case Mechanism::Simple: return "A0";
        case Mechanism::SingleDispute: return "A1";
        case Mechanism::DisputeLadder: return "A2";
    }
    throw ConfigError("unknown mechanism value");
}

Mechanism mechanism_from_name(const std::string& name) {
    if (name == "A0") return Mechanism::Simple;
    if (name == "A1") return Mechanism::SingleDispute;
    if (name == "A2") return Mechanism::DisputeLadder;
    throw ConfigError("mechanism: expected one of A0, A1, A2, got '" + name + "'");
}

namespace {

struct KindName {
    StrategyKind kind;
    const char* name;
    bool querier;
};

constexpr KindName kKindNames[] = {
    {StrategyKind::TruthfulReporter, "TruthfulReporter", false},
    {StrategyKind::LyingReporter, "LyingReporter", false},
    {StrategyKind::AbstainingReporter, "AbstainingReporter", false},
    {StrategyKind::BribedReporter, "BribedReporter", false},
    {StrategyKind::ThresholdDisputer, "ThresholdDisputer", false},
    {StrategyKind::BestResponseReporter, "BestResponseReporter", false},
    {StrategyKind::CoalitionController, "CoalitionController", false},
    {StrategyKind::HonestQuerier, "HonestQuerier", true},
    {StrategyKind::DeviantQuerier, "DeviantQuerier", true},
    {StrategyKind::GriefingQuerier, "GriefingQuerier", true},
    {StrategyKind::BestResponseQuerier, "BestResponseQuerier", true},
};

}  // namespace

std::string strategy_kind_name(StrategyKind kind) {
    for (const auto& entry : kKindNames) {
        if (entry.kind == kind) return entry.name;
    }
    throw ConfigError("unknown strategy kind value");
}

StrategyKind strategy_kind_from_name(const std::string& name) {
    for (const auto& entry : kKindNames) {
        if (name == entry.name) return entry.kind;
    }
    throw ConfigError("kind: unknown strategy '" + name + "'");
}

bool is_querier_kind(StrategyKind kind) {
    for (const auto& entry : kKindNames) {
        if (entry.kind == kind) return entry.querier;
    }
    return false;
}

void require_keys(const json& obj, const std::string& where,
                  const std::vector<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw ConfigError(where + ": unknown field '" + item.key() + "'");
        }
    }
}

Rat rat_from_json(const json& value, const std::string& field) {
    if (value.is_string()) {
        try {
            return rat_from_string(value.get<std::string>());
        } catch (const ConfigError& e) {
            throw ConfigError(field + ": " + e.what());
        }
    }
    if (value.is_number_integer()) {
        if (value.is_number_unsigned()) return Rat(value.get<std::uint64_t>());
        return Rat(value.get<std::int64_t>());
    }
    if (value.is_number_float()) {
        throw ConfigError(field + ": floating point is inexact, use a \"num/den\" string");
    }
    throw ConfigError(field + ": expected an integer or a \"num/den\" string");
}

json rat_to_json(const Rat& value) { return json(rat_to_string(value)); }

std::uint64_t count_from_json(const json& value, const std::string& field) {
    if (!value.is_number_integer() || (value.is_number_integer() && !value.is_number_unsigned() &&
                                       value.get<std::int64_t>() < 0)) {
        throw ConfigError(field + ": expected a non-negative integer");
    }
    return value.get<std::uint64_t>();
}

analysis::EconomicParams params_from_json(const json& obj) {
    require_keys(obj, "params",
                 {"lie_benefit", "price_honest", "price_lying", "truth_benefit", "fee",
                  "pool_size", "stake", "fork_threshold", "roi_cap", "yield", "query_rate",
                  "holding_cost", "reporters"});
    analysis::EconomicParams p;
    if (obj.contains("lie_benefit")) p.lie_benefit = rat_from_json(obj["lie_benefit"], "lie_benefit");
    if (obj.contains("price_honest")) p.price_honest = rat_from_json(obj["price_honest"], "price_honest");
    if (obj.contains("price_lying")) p.price_lying = rat_from_json(obj["price_lying"], "price_lying");
    if (obj.contains("truth_benefit")) p.truth_benefit = rat_from_json(obj["truth_benefit"], "truth_benefit");
    if (obj.contains("fee")) p.fee = rat_from_json(obj["fee"], "fee");
    if (obj.contains("pool_size")) p.pool_size = count_from_json(obj["pool_size"], "pool_size");
    if (obj.contains("stake")) p.stake = count_from_json(obj["stake"], "stake");
    if (obj.contains("fork_threshold"))
        p.fork_threshold = count_from_json(obj["fork_threshold"], "fork_threshold");
    if (obj.contains("roi_cap")) p.roi_cap = rat_from_json(obj["roi_cap"], "roi_cap");
    if (obj.contains("yield")) p.yield = rat_from_json(obj["yield"], "yield");
    if (obj.contains("query_rate")) p.query_rate = count_from_json(obj["query_rate"], "query_rate");
    if (obj.contains("holding_cost")) p.holding_cost = rat_from_json(obj["holding_cost"], "holding_cost");
    if (!obj.contains("reporters")) {
        // One reporter holding the whole pool and the whole lie benefit.
        p.reporters = {{Rat(1), p.lie_benefit}};
    } else {
        if (!obj["reporters"].is_array()) throw ConfigError("reporters: expected an array");
        p.reporters.clear();
        std::size_t index = 0;
        for (const auto& entry : obj["reporters"]) {
            const std::string where = "reporters[" + std::to_string(index) + "]";
            require_keys(entry, where, {"share", "lie_benefit"});
            analysis::ReporterShare share;
            if (entry.contains("share")) share.share = rat_from_json(entry["share"], where + ".share");
            if (entry.contains("lie_benefit"))
                share.lie_benefit = rat_from_json(entry["lie_benefit"], where + ".lie_benefit");
            p.reporters.push_back(share);
            ++index;
        }
    }
    return p;
}

json params_to_json(const analysis::EconomicParams& p) {
    json obj;
    obj["lie_benefit"] = rat_to_json(p.lie_benefit);
    obj["price_honest"] = rat_to_json(p.price_honest);
    obj["price_lying"] = rat_to_json(p.price_lying);
    obj["truth_benefit"] = rat_to_json(p.truth_benefit);
    obj["fee"] = rat_to_json(p.fee);
    obj["pool_size"] = p.pool_size;
    obj["stake"] = p.stake;
    obj["fork_threshold"] = p.fork_threshold;
    obj["roi_cap"] = rat_to_json(p.roi_cap);
    obj["yield"] = rat_to_json(p.yield);
    obj["query_rate"] = p.query_rate;
    obj["holding_cost"] = rat_to_json(p.holding_cost);
    json reporters = json::array();
    for (const auto& share : p.reporters) {
        json entry;
        entry["share"] = rat_to_json(share.share);
        entry["lie_benefit"] = rat_to_json(share.lie_benefit);
        reporters.push_back(entry);
    }
    obj["reporters"] = reporters;
    return obj;
}

namespace {

json parse_text(const std::string& text, const std::string& what) {
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) throw ConfigError(what + ": malformed JSON");
    return parsed;
}

StrategySpec strategy_from_json(const json& obj, const std::string& where) {
    require_keys(obj, where, {"agent", "kind", "target", "bribe", "mode", "members", "imputation"});
    if (!obj.contains("agent") || !obj["agent"].is_string()) {
        throw ConfigError(where + ".agent: expected a string");
    }
    if (!obj.contains("kind") || !obj["kind"].is_string()) {
        throw ConfigError(where + ".kind: expected a strategy name");
    }
    StrategySpec spec;
    spec.agent = obj["agent"].get<std::string>();
    spec.kind = strategy_kind_from_name(obj["kind"].get<std::string>());
    if (obj.contains("target")) {
        if (!obj["target"].is_string()) throw ConfigError(where + ".target: expected a string");
        spec.target = obj["target"].get<std::string>();
    }
    if (obj.contains("bribe")) spec.bribe = rat_from_json(obj["bribe"], where + ".bribe");
    if (obj.contains("mode")) {
        const std::string mode = obj["mode"].get<std::string>();
        if (mode == "lie") {
            spec.bribed_to_lie = true;
        } else if (mode == "silence") {
            spec.bribed_to_lie = false;
        } else {
            throw ConfigError(where + ".mode: expected \"silence\" or \"lie\"");
        }
    }
    if (obj.contains("members")) {
        if (!obj["members"].is_array()) throw ConfigError(where + ".members: expected an array");
        for (const auto& member : obj["members"]) {
            if (!member.is_string()) throw ConfigError(where + ".members: expected agent names");
            spec.members.push_back(member.get<std::string>());
        }
    }
    if (obj.contains("imputation")) {
        if (!obj["imputation"].is_object()) {
            throw ConfigError(where + ".imputation: expected an object of agent -> amount");
        }
        for (const auto& item : obj["imputation"].items()) {
            spec.imputation[item.key()] =
                rat_from_json(item.value(), where + ".imputation." + item.key());
        }
    }
    return spec;
}

json strategy_to_json(const StrategySpec& spec) {
    json obj;
    obj["agent"] = spec.agent;
    obj["kind"] = strategy_kind_name(spec.kind);
    if (!spec.target.empty()) obj["target"] = spec.target;
    if (spec.kind == StrategyKind::BribedReporter) {
        obj["bribe"] = rat_to_json(spec.bribe);
        obj["mode"] = spec.bribed_to_lie ? "lie" : "silence";
    }
    if (!spec.members.empty()) {
        json members = json::array();
        for (const auto& member : spec.members) members.push_back(member);
        obj["members"] = members;
    }
    if (!spec.imputation.empty()) {
        json imputation;
        for (const auto& [agent, amount] : spec.imputation) imputation[agent] = rat_to_json(amount);
        obj["imputation"] = imputation;
    }
    return obj;
}

bool kind_needs_target(StrategyKind kind) {
    return kind == StrategyKind::LyingReporter || kind == StrategyKind::GriefingQuerier ||
           kind == StrategyKind::CoalitionController;
}

}  // namespace

void ScenarioConfig::validate() const {
    OutcomeSpace space = [&] {
        try {
            return make_outcome_space(outcomes);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("outcomes: ") + e.what());
        }
    }();
    if (queries == 0) throw ConfigError("queries: must be at least 1");
    if (truths.size() != queries) {
        throw ConfigError("truth: expected one outcome per query (" + std::to_string(queries) +
                          "), got " + std::to_string(truths.size()));
    }
    for (const auto& truth : truths) {
        if (!space.contains(truth)) {
            throw ConfigError("truth: '" + truth + "' is not in the outcome space");
        }
    }
    if (genesis.empty()) throw ConfigError("genesis: at least one token holder is required");
    std::uint64_t total = 0;
    for (const auto& [agent, count] : genesis) {
        if (agent.empty()) throw ConfigError("genesis: empty agent name");
        if (count == 0) throw ConfigError("genesis: holder '" + agent + "' has zero tokens");
        total += count;
    }
    if (total != params.pool_size) {
        throw ConfigError("params.pool_size: " + std::to_string(params.pool_size) +
                          " does not match the genesis total " + std::to_string(total));
    }
    params.validate();

    if (!is_querier_kind(querier.kind)) {
        throw ConfigError("querier.kind: '" + strategy_kind_name(querier.kind) +
                          "' is a reporter strategy");
    }
    std::map<AgentId, int> covered;
    covered[querier.agent] += 1;
    for (const auto& spec : reporters) {
        if (is_querier_kind(spec.kind)) {
            throw ConfigError("reporters: '" + spec.agent + "' uses querier strategy '" +
                              strategy_kind_name(spec.kind) + "'");
        }
        if (spec.kind == StrategyKind::CoalitionController) {
            if (spec.members.empty()) {
                throw ConfigError("reporters: coalition '" + spec.agent + "' has no members");
            }
            for (const auto& member : spec.members) {
                if (!genesis.count(member)) {
                    throw ConfigError("reporters: coalition member '" + member +
                                      "' holds no tokens");
                }
                covered[member] += 1;
            }
            for (const auto& [agent, amount] : spec.imputation) {
                if (std::find(spec.members.begin(), spec.members.end(), agent) ==
                    spec.members.end()) {
                    throw ConfigError("reporters: imputation pays non-member '" + agent + "'");
                }
                if (amount < 0) throw ConfigError("reporters: negative imputation for '" + agent + "'");
            }
        } else {
            covered[spec.agent] += 1;
        }
        if (kind_needs_target(spec.kind) ||
            (spec.kind == StrategyKind::BribedReporter && spec.bribed_to_lie)) {
            if (!space.contains(spec.target)) {
                throw ConfigError("reporters: '" + spec.agent + "' needs a target outcome");
            }
        }
        if (spec.kind == StrategyKind::BribedReporter && spec.bribe < 0) {
            throw ConfigError("reporters: negative bribe for '" + spec.agent + "'");
        }
    }
    if (querier.kind == StrategyKind::GriefingQuerier &&
        !space.contains(querier.target)) {
        throw ConfigError("querier: griefing needs a target outcome");
    }
    for (const auto& [agent, count] : covered) {
        if (count > 1) throw ConfigError("strategies: agent '" + agent + "' is covered twice");
    }
    for (const auto& [agent, count] : genesis) {
        if (!covered.count(agent)) {
            throw ConfigError("strategies: holder '" + agent + "' has no strategy");
        }
    }
    if (!priority.empty()) {
        std::set<AgentId> listed(priority.begin(), priority.end());
        if (listed.size() != priority.size()) throw ConfigError("priority: duplicate agent");
        for (const auto& [agent, count] : genesis) {
            if (!listed.count(agent)) {
                throw ConfigError("priority: holder '" + agent + "' missing from the order");
            }
        }
        if (listed.size() != genesis.size()) {
            throw ConfigError("priority: lists an agent with no tokens");
        }
    }
}

ScenarioConfig scenario_from_json_text(const std::string& text) {
    json obj = parse_text(text, "scenario");
    require_keys(obj, "scenario",
                 {"mechanism", "event", "outcomes", "truth", "queries", "seed", "genesis",
                  "params", "querier", "reporters", "priority"});
    ScenarioConfig config;
    if (!obj.contains("mechanism") || !obj["mechanism"].is_string()) {
        throw ConfigError("mechanism: expected \"A0\", \"A1\", or \"A2\"");
    }
    config.mechanism = mechanism_from_name(obj["mechanism"].get<std::string>());
    if (obj.contains("event")) config.event = obj["event"].get<std::string>();
    if (!obj.contains("outcomes") || !obj["outcomes"].is_array()) {
        throw ConfigError("outcomes: expected an array of labels");
    }
    for (const auto& label : obj["outcomes"]) {
        if (!label.is_string()) throw ConfigError("outcomes: expected string labels");
        config.outcomes.push_back(label.get<std::string>());
    }
    if (obj.contains("queries")) config.queries = count_from_json(obj["queries"], "queries");
    if (obj.contains("seed")) config.seed = count_from_json(obj["seed"], "seed");
    if (!obj.contains("truth")) throw ConfigError("truth: required");
    if (obj["truth"].is_string()) {
        config.truths.assign(config.queries, obj["truth"].get<std::string>());
    } else if (obj["truth"].is_array()) {
        for (const auto& entry : obj["truth"]) {
            if (!entry.is_string()) throw ConfigError("truth: expected outcome labels");
            config.truths.push_back(entry.get<std::string>());
        }
    } else {
        throw ConfigError("truth: expected a label or an array of labels");
    }
    if (!obj.contains("genesis")) throw ConfigError("genesis: required");
    if (!obj["genesis"].is_object()) throw ConfigError("genesis: expected agent -> token count");
    for (const auto& item : obj["genesis"].items()) {
        config.genesis[item.key()] = static_cast<std::uint32_t>(
            count_from_json(item.value(), "genesis." + item.key()));
    }
    if (obj.contains("params")) {
        config.params = params_from_json(obj["params"]);
        if (!obj["params"].contains("pool_size")) {
            std::uint64_t total = 0;
            for (const auto& [agent, count] : config.genesis) total += count;
            config.params.pool_size = total;
        }
    } else {
        std::uint64_t total = 0;
        for (const auto& [agent, count] : config.genesis) total += count;
        config.params.pool_size = total;
    }
    if (!obj.contains("querier")) throw ConfigError("querier: required");
    config.querier = strategy_from_json(obj["querier"], "querier");
    if (obj.contains("reporters")) {
        if (!obj["reporters"].is_array()) throw ConfigError("reporters: expected an array");
        std::size_t index = 0;
        for (const auto& entry : obj["reporters"]) {
            config.reporters.push_back(
                strategy_from_json(entry, "reporters[" + std::to_string(index) + "]"));
            ++index;
        }
    }
    if (obj.contains("priority")) {
        if (!obj["priority"].is_array()) throw ConfigError("priority: expected an array");
        for (const auto& agent : obj["priority"]) {
            if (!agent.is_string()) throw ConfigError("priority: expected agent names");
            config.priority.push_back(agent.get<std::string>());
        }
    }
    config.validate();
    return config;
}

std::string scenario_to_json_text(const ScenarioConfig& config) {
    json obj;
    obj["mechanism"] = mechanism_name(config.mechanism);
    obj["event"] = config.event;
    json outcomes = json::array();
    for (const auto& label : config.outcomes) outcomes.push_back(label);
    obj["outcomes"] = outcomes;
    json truths = json::array();
    for (const auto& truth : config.truths) truths.push_back(truth);
    obj["truth"] = truths;
    obj["queries"] = config.queries;
    obj["seed"] = config.seed;
    json genesis;
    for (const auto& [agent, count] : config.genesis) genesis[agent] = count;
    obj["genesis"] = genesis;
    obj["params"] = params_to_json(config.params);
    obj["querier"] = strategy_to_json(config.querier);
    json reporters = json::array();
    for (const auto& spec : config.reporters) reporters.push_back(strategy_to_json(spec));
    obj["reporters"] = reporters;
    if (!config.priority.empty()) {
        json priority = json::array();
        for (const auto& agent : config.priority) priority.push_back(agent);
        obj["priority"] = priority;
    }
    return obj.dump(2) + "\n";
}

analysis::EconomicParams params_from_json_text(const std::string& text) {
    return params_from_json(parse_text(text, "params"));
}

std::string params_to_json_text(const analysis::EconomicParams& params) {
    return params_to_json(params).dump(2) + "\n";
}

}  // namespace oraclesim::sim
