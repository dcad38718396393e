// Shared fixtures: canned ledgers, scripted reporters, a worked parameter
// set, and seeded random generators for the property tests.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oraclesim/analysis/params.hpp"
#include "oraclesim/core/ledger.hpp"
#include "oraclesim/mech/fork.hpp"
#include "oraclesim/rng.hpp"

namespace testutil {

using namespace oraclesim;

struct Holding {
    AgentId agent;
    std::uint32_t count = 0;
};

// Mints each holding in order; the returned pool is the union.
inline TokenSet mint_all(Ledger& ledger, const std::vector<Holding>& holdings) {
    TokenSet pool;
    for (const auto& h : holdings) pool.insert_all(ledger.mint(h.agent, h.count));
    return pool;
}

// Reporter that answers from a fixed map; unknown agents abstain.
inline ReporterInterface respond_with(
    std::map<AgentId, std::optional<std::string>> answers) {
    return [answers = std::move(answers)](const AgentId& agent, const std::string&,
                                          const OutcomeSpace&, const TokenSet&)
               -> std::optional<std::string> {
        auto it = answers.find(agent);
        if (it == answers.end()) return std::nullopt;
        return it->second;
    };
}

inline ReporterInterface everyone_says(const std::string& label) {
    return [label](const AgentId&, const std::string&, const OutcomeSpace&,
                   const TokenSet&) -> std::optional<std::string> { return label; };
}

// A comfortably sound parameter set: the lie benefit of 100 sits well below
// the 750 destroyed by a punished lie (half of 1000 tokens at price 3/2).
inline analysis::EconomicParams sound_params() {
    analysis::EconomicParams p;
    p.lie_benefit = 100;
    p.price_honest = Rat(3, 2);
    p.price_lying = 0;
    p.truth_benefit = 5;
    p.fee = 1;
    p.pool_size = 1000;
    p.stake = 5;
    p.fork_threshold = 1024;
    p.roi_cap = Rat(2, 5);
    p.yield = Rat(3, 10);
    p.query_rate = 12;
    p.holding_cost = Rat(1, 20);
    p.reporters = {{Rat(1), Rat(100)}};
    return p;
}

inline Rat random_fraction(Rng& rng, std::uint64_t den_cap) {
    const std::uint64_t den = 1 + rng.next_below(den_cap);
    const std::uint64_t num = rng.next_below(den + 1);
    return Rat(BigInt(num), BigInt(den));
}

inline Rat random_positive(Rng& rng, std::uint64_t cap) {
    return Rat(BigInt(1 + rng.next_below(cap))) + random_fraction(rng, 97);
}

// Draws parameters satisfying the strict lie-benefit bound, with a positive
// benefit so every equilibrium comparison stays strict.
inline analysis::EconomicParams random_sound_params(Rng& rng) {
    analysis::EconomicParams p;
    p.pool_size = 2 + rng.next_below(5000);
    p.price_lying = random_fraction(rng, 13);
    p.price_honest = p.price_lying + random_positive(rng, 7);
    const Rat bound =
        Rat(1, 2) * (p.price_honest - p.price_lying) * Rat(BigInt(p.pool_size));
    const std::uint64_t den = 2 + rng.next_below(89);
    const std::uint64_t num = 1 + rng.next_below(den - 1);
    p.lie_benefit = bound * Rat(BigInt(num), BigInt(den));
    p.fee = random_fraction(rng, 19);
    p.truth_benefit = p.fee + random_positive(rng, 5);
    p.stake = 1 + rng.next_below(20);
    p.fork_threshold = (p.stake + 1) * (1 + rng.next_below(64));
    p.yield = Rat(1, 1 + rng.next_below(10));
    p.query_rate = 1 + rng.next_below(60);
    p.holding_cost = random_fraction(rng, 41);
    p.reporters = {{Rat(1), p.lie_benefit}};
    return p;
}

}  // namespace testutil
