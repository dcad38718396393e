#include "oraclesim/core/outcome.hpp"

#include <set>

#include "oraclesim/errors.hpp"

namespace oraclesim {

bool OutcomeSpace::contains(const std::string& label) const {
    for (const auto& o : outcomes_) {
        if (o.label == label) return true;
    }
    return false;
}

OutcomeSpace make_outcome_space(const std::vector<std::string>& labels) {
    if (labels.empty()) throw ConfigError("outcome space: label list is empty");
    std::set<std::string> seen;
    OutcomeSpace space;
    for (const auto& label : labels) {
        if (label.empty()) throw ConfigError("outcome space: empty label");
        if (label == kAbstainLabel) {
            throw ConfigError("outcome space: '" + kAbstainLabel +
                              "' is a reporting state, not an outcome");
        }
        if (!seen.insert(label).second) {
            throw ConfigError("outcome space: duplicate label '" + label + "'");
        }
        space.outcomes_.push_back(Outcome{label});
    }
    if (!seen.count(kInvalidLabel)) space.outcomes_.push_back(Outcome{kInvalidLabel});
    return space;
}

}  // namespace oraclesim
