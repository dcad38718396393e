// Economic parameters shared by the soundness, equilibrium, and coalition
// analyses. All quantities are exact rationals except whole-token counts.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oraclesim/rational.hpp"

namespace oraclesim::analysis {

struct ReporterShare {
    Rat share = 1;        // fraction of the pool this reporter holds
    Rat lie_benefit = 0;  // this reporter's slice of the total lie benefit

    bool operator==(const ReporterShare& other) const = default;
};

struct EconomicParams {
    Rat lie_benefit = 0;       // total benefit available from a false outcome (I)
    Rat price_honest = 0;      // token price while the oracle reports truthfully (p)
    Rat price_lying = 0;       // token price after a lie (p')
    Rat truth_benefit = 0;     // querier's benefit from a truthful answer (b)
    Rat fee = 0;               // per-query oracle fee (phi)
    std::uint64_t pool_size = 1;  // |T|, whole tokens
    std::uint64_t stake = 1;      // initial dispute stake d, whole tokens
    std::uint64_t fork_threshold = 2;  // stake level that forces the fork (M)
    Rat roi_cap = Rat(2, 5);   // capped dispute return (a)
    Rat yield = 0;             // fee income rate per unit time (Y)
    std::uint64_t query_rate = 1;  // queries per unit time (n)
    Rat holding_cost = 0;      // opportunity cost rate x
    std::vector<ReporterShare> reporters{{Rat(1), Rat(0)}};

    bool operator==(const EconomicParams& other) const = default;

    // Shape checks: prices ordered, shares in [0,1] summing to 1, reporter
    // lie benefits summing to the total, counts positive, cap in (0, 1).
    void validate() const;
};

}  // namespace oraclesim::analysis
