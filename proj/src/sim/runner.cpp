#include "oraclesim/sim/runner.hpp"

#include <utility>

#include "oraclesim/core/outcome.hpp"
#include "oraclesim/dispute/staked_oracles.hpp"
#include "oraclesim/errors.hpp"
#include "oraclesim/rng.hpp"
#include "oraclesim/sim/strategies.hpp"

namespace oraclesim::sim {

using json = nlohmann::ordered_json;

namespace {

std::map<AgentId, std::uint64_t> pool_holdings(const Ledger& ledger, const TokenSet& pool) {
    std::map<AgentId, std::uint64_t> holdings;
    for (const auto& owner : ledger.owners_of(pool)) {
        holdings[owner] = ledger.tokens_of_in(owner, pool).size();
    }
    return holdings;
}

std::size_t nonempty_cells(const OmegaPartition& partition) {
    std::size_t count = 0;
    for (const auto& [key, cell] : partition.cells()) {
        if (!cell.empty()) ++count;
    }
    return count;
}

// All iteration below is over sorted maps, so records come out in a fixed
// order and double runs compare byte for byte.
void record_deltas(QueryRecord& record, const std::map<AgentId, Rat>& balances_before,
                   const std::map<AgentId, Rat>& balances_after,
                   const std::map<AgentId, std::uint64_t>& pool_before,
                   const std::map<AgentId, std::uint64_t>& pool_after) {
    for (const auto& [agent, after] : balances_after) {
        Rat before = 0;
        auto it = balances_before.find(agent);
        if (it != balances_before.end()) before = it->second;
        if (after != before) record.currency_delta[agent] = after - before;
    }
    std::map<AgentId, std::int64_t> deltas;
    for (const auto& [agent, count] : pool_after) {
        deltas[agent] += static_cast<std::int64_t>(count);
    }
    for (const auto& [agent, count] : pool_before) {
        deltas[agent] -= static_cast<std::int64_t>(count);
    }
    for (const auto& [agent, delta] : deltas) {
        if (delta != 0) record.pool_delta[agent] = delta;
    }
}

}  // namespace

Trace run_scenario(const ScenarioConfig& config) {
    config.validate();
    OutcomeSpace space = make_outcome_space(config.outcomes);

    Ledger ledger;
    OracleState state;
    for (const auto& [agent, count] : config.genesis) {
        state.pool.insert_all(ledger.mint(agent, count));
    }
    StrategyEngine engine(config, space);
    engine.credit_side_payments(ledger);
    Rng rng(config.seed);

    Trace trace;
    trace.mechanism = mechanism_name(config.mechanism);
    trace.seed = config.seed;

    std::optional<std::pair<std::string, std::string>> previous;
    for (std::uint64_t i = 0; i < config.queries; ++i) {
        const std::string& truth = config.truths[i];
        QueryRecord record;
        record.index = i;
        record.pool_before = state.pool.size();
        try {
            QueryPlan plan = engine.plan_query(truth, previous);
            QueryJob job{config.event + "#" + std::to_string(i), space, Outcome{truth},
                         config.params.fee, config.querier.agent, plan.punish};
            ReporterInterface iface = [&plan, &truth](const AgentId& agent, const std::string&,
                                                      const OutcomeSpace&, const TokenSet&)
                -> std::optional<std::string> {
                auto it = plan.fork_answers.find(agent);
                if (it == plan.fork_answers.end()) return truth;
                return it->second;
            };

            // Judge the previous partition now so stake selection and the
            // pre-query snapshots all see the surviving pool.
            settle_pending(state, plan.punish);
            const TokenSet pool_snapshot = state.pool;
            const auto balances_before = ledger.balances_snapshot();
            const auto holdings_before = pool_holdings(ledger, state.pool);
            const std::uint64_t sink_before =
                ledger.tokens_of_in(Ledger::burn_sink(), state.pool).size();

            switch (config.mechanism) {
                case Mechanism::Simple: {
                    Outcome out = oracle_query_simple(state, job, iface, ledger, rng);
                    record.outcome = out.label;
                    record.forked = state.pending.has_value() &&
                                    nonempty_cells(state.pending->partition) > 1;
                    break;
                }
                case Mechanism::SingleDispute: {
                    StakedQueryInputs inputs;
                    inputs.tentative = plan.tentative;
                    TokenSet free = ledger.tokens_of_in(config.querier.agent, state.pool);
                    if (free.size() < config.params.stake) {
                        throw ConfigError("querier holds " + std::to_string(free.size()) +
                                          " pool tokens, stake needs " +
                                          std::to_string(config.params.stake));
                    }
                    inputs.initial_stake = free.take(config.params.stake);
                    inputs.policies = plan.dispute_policies;
                    inputs.priority = config.priority;
                    StakedQueryResult result =
                        oracle_query_single_dispute(state, job, inputs, iface, ledger, rng);
                    record.outcome = result.outcome.label;
                    record.forked = result.forked;
                    record.dispute_rounds = result.rounds;
                    record.disputes = result.disputes;
                    record.burned = result.burned;
                    break;
                }
                case Mechanism::DisputeLadder: {
                    LadderInputs inputs;
                    inputs.tentative = plan.tentative;
                    TokenSet free = ledger.tokens_of_in(config.querier.agent, state.pool);
                    if (free.size() < config.params.stake) {
                        throw ConfigError("querier holds " + std::to_string(free.size()) +
                                          " pool tokens, stake needs " +
                                          std::to_string(config.params.stake));
                    }
                    inputs.initial_stake = free.take(config.params.stake);
                    inputs.policies = plan.dispute_policies;
                    inputs.priority = config.priority;
                    inputs.fork_threshold = config.params.fork_threshold;
                    inputs.roi = config.params.roi_cap;
                    StakedQueryResult result =
                        oracle_query_dispute_ladder(state, job, inputs, iface, ledger, rng);
                    record.outcome = result.outcome.label;
                    record.forked = result.forked;
                    record.dispute_rounds = result.rounds;
                    record.disputes = result.disputes;
                    record.burned = result.burned;
                    break;
                }
            }

            // Per-query audits. The pool's membership never changes inside a
            // query; only the settle step above may shrink it.
            ledger.audit();
            if (!(state.pool == pool_snapshot)) {
                throw InvariantError("pool membership changed inside a query");
            }
            const std::uint64_t sink_after =
                ledger.tokens_of_in(Ledger::burn_sink(), state.pool).size();
            if (sink_after - sink_before != record.burned) {
                throw InvariantError("burn accounting: sink gained " +
                                     std::to_string(sink_after - sink_before) +
                                     " tokens, query reports " +
                                     std::to_string(record.burned));
            }

            record.pool_after = state.pool.size();
            record_deltas(record, balances_before, ledger.balances_snapshot(),
                          holdings_before, pool_holdings(ledger, state.pool));
        } catch (const ConfigError& e) {
            throw ConfigError("query " + std::to_string(i) + ": " + e.what());
        } catch (const InvariantError& e) {
            throw InvariantError("query " + std::to_string(i) + ": " + e.what());
        }

        record.truthful = record.outcome == truth;
        trace.truthful_count += record.truthful ? 1 : 0;
        trace.fork_count += record.forked ? 1 : 0;
        trace.burned_total += record.burned;
        previous = std::make_pair(record.outcome, truth);
        trace.queries.push_back(std::move(record));
    }

    trace.final_pool = state.pool.size();
    trace.final_currency = ledger.balances_snapshot();
    trace.final_pool_holdings = pool_holdings(ledger, state.pool);
    return trace;
}

json trace_to_json(const Trace& trace) {
    json obj;
    obj["mechanism"] = trace.mechanism;
    obj["seed"] = trace.seed;
    json queries = json::array();
    for (const auto& record : trace.queries) {
        json entry;
        entry["index"] = record.index;
        entry["outcome"] = record.outcome;
        entry["truthful"] = record.truthful;
        entry["forked"] = record.forked;
        entry["dispute_rounds"] = record.dispute_rounds;
        entry["disputes"] = record.disputes;
        entry["burned"] = record.burned;
        entry["pool_before"] = record.pool_before;
        entry["pool_after"] = record.pool_after;
        json currency = json::object();
        for (const auto& [agent, delta] : record.currency_delta) {
            currency[agent] = rat_to_json(delta);
        }
        entry["currency_delta"] = currency;
        json pool = json::object();
        for (const auto& [agent, delta] : record.pool_delta) pool[agent] = delta;
        entry["pool_delta"] = pool;
        queries.push_back(entry);
    }
    obj["queries"] = queries;
    json summary;
    summary["truthful"] = trace.truthful_count;
    summary["forks"] = trace.fork_count;
    summary["burned"] = trace.burned_total;
    summary["final_pool"] = trace.final_pool;
    json currency = json::object();
    for (const auto& [agent, balance] : trace.final_currency) {
        currency[agent] = rat_to_json(balance);
    }
    summary["final_currency"] = currency;
    json holdings = json::object();
    for (const auto& [agent, count] : trace.final_pool_holdings) holdings[agent] = count;
    summary["final_pool_holdings"] = holdings;
    obj["summary"] = summary;
    return obj;
}

std::string trace_to_json_text(const Trace& trace) { return trace_to_json(trace).dump(2) + "\n"; }

namespace {

// Replaces the value at a dotted path inside the serialized scenario, then
// reparses so every validation rule applies to the swept config too.
ScenarioConfig apply_axis(const ScenarioConfig& base, const std::string& axis,
                          const std::string& value) {
    json doc = json::parse(scenario_to_json_text(base));
    json* cursor = &doc;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = axis.find('.', start);
        std::string key = axis.substr(start, dot == std::string::npos ? dot : dot - start);
        if (key.empty() || !cursor->is_object() || !cursor->contains(key)) {
            throw ConfigError("sweep: no config field at '" + axis + "'");
        }
        cursor = &(*cursor)[key];
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    json parsed_value = json::parse(value, nullptr, false);
    if (parsed_value.is_discarded() || parsed_value.is_object() || parsed_value.is_array()) {
        parsed_value = json(value);  // bare words and rationals sweep as strings
    }
    *cursor = parsed_value;
    return scenario_from_json_text(doc.dump());
}

}  // namespace

std::vector<SweepRow> sweep(const ScenarioConfig& base, const std::string& axis,
                            const std::vector<std::string>& values) {
    std::vector<SweepRow> rows;
    for (const auto& value : values) {
        ScenarioConfig config = apply_axis(base, axis, value);
        Trace trace = run_scenario(config);
        SweepRow row;
        row.value = value;
        row.truthful_rate = trace.queries.empty()
                                ? Rat(0)
                                : Rat(trace.truthful_count) / Rat(trace.queries.size());
        row.forks = trace.fork_count;
        row.burned = trace.burned_total;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace oraclesim::sim
