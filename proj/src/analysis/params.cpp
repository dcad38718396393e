#include "oraclesim/analysis/params.hpp"

#include "oraclesim/errors.hpp"

namespace oraclesim::analysis {

void EconomicParams::validate() const {
    if (lie_benefit < 0) throw ConfigError("params: lie benefit must be >= 0");
    if (price_lying < 0) throw ConfigError("params: prices must be >= 0");
    if (price_honest < price_lying) {
        throw ConfigError("params: honest price must be >= lying price");
    }
    if (fee < 0) throw ConfigError("params: fee must be >= 0");
    if (pool_size == 0) throw ConfigError("params: pool size must be positive");
    if (stake == 0) throw ConfigError("params: stake must be positive");
    if (roi_cap <= 0 || roi_cap >= 1) {
        throw ConfigError("params: return cap must lie in (0, 1)");
    }
    if (yield < 0) throw ConfigError("params: yield must be >= 0");
    if (query_rate == 0) throw ConfigError("params: query rate must be positive");
    if (holding_cost < 0) throw ConfigError("params: holding cost must be >= 0");
    if (reporters.empty()) throw ConfigError("params: at least one reporter share");
    Rat share_sum = 0;
    Rat benefit_sum = 0;
    for (const auto& r : reporters) {
        if (r.share < 0 || r.share > 1) {
            throw ConfigError("params: reporter share outside [0, 1]");
        }
        if (r.lie_benefit < 0) {
            throw ConfigError("params: reporter lie benefit must be >= 0");
        }
        share_sum += r.share;
        benefit_sum += r.lie_benefit;
    }
    if (share_sum != 1) throw ConfigError("params: reporter shares must sum to 1");
    if (benefit_sum != lie_benefit) {
        throw ConfigError("params: reporter lie benefits must sum to the total");
    }
}

}  // namespace oraclesim::analysis
