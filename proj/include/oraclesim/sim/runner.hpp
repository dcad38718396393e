// Drives a configured scenario against the chosen mechanism, one query at a
// time, auditing conservation after every query. The trace records, per
// query, what came back, whether the pool split, and exactly where every
// token and currency unit moved.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oraclesim/sim/scenario.hpp"

namespace oraclesim::sim {

struct QueryRecord {
    std::uint64_t index = 0;
    std::string outcome;
    bool truthful = false;
    bool forked = false;        // the pool genuinely split (or a staked fork ran)
    std::size_t dispute_rounds = 0;
    std::size_t disputes = 0;
    std::size_t burned = 0;     // tokens burned settling this query
    std::uint64_t pool_before = 0;  // before judging the previous partition
    std::uint64_t pool_after = 0;   // after this query
    std::map<AgentId, Rat> currency_delta;       // nonzero entries only
    std::map<AgentId, std::int64_t> pool_delta;  // pool holdings, nonzero only
};

struct Trace {
    std::string mechanism;
    std::uint64_t seed = 0;
    std::vector<QueryRecord> queries;
    std::uint64_t truthful_count = 0;
    std::uint64_t fork_count = 0;
    std::uint64_t burned_total = 0;
    std::uint64_t final_pool = 0;
    std::map<AgentId, Rat> final_currency;
    std::map<AgentId, std::uint64_t> final_pool_holdings;
};

// Runs every configured query. Conservation is audited after each one and a
// violation aborts with the failing query index and the broken invariant.
// Deterministic: the same config always produces the identical trace.
Trace run_scenario(const ScenarioConfig& config);

// Canonical serialization; byte-identical across runs of the same config.
std::string trace_to_json_text(const Trace& trace);
nlohmann::ordered_json trace_to_json(const Trace& trace);

struct SweepRow {
    std::string value;
    Rat truthful_rate = 0;
    std::uint64_t forks = 0;
    std::uint64_t burned = 0;
};

// Reruns the scenario once per value with the named config field replaced.
// The axis is a dotted path into the scenario document ("params.lie_benefit",
// "seed", ...); an unknown path is a config error. Values are parsed exactly
// like the field they replace.
std::vector<SweepRow> sweep(const ScenarioConfig& base, const std::string& axis,
                            const std::vector<std::string>& values);

}  // namespace oraclesim::sim
