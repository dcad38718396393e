// Outcome spaces for oracle events. Every space contains the reserved
// Invalid outcome; Abstain is a reporting state, never a member outcome.
#pragma once

#include <string>
#include <vector>

namespace oraclesim {

inline const std::string kInvalidLabel = "Invalid";
inline const std::string kAbstainLabel = "Abstain";

struct Outcome {
    std::string label;

    bool operator==(const Outcome& other) const = default;
    auto operator<=>(const Outcome& other) const = default;
};

class OutcomeSpace {
  public:
    OutcomeSpace() = default;

    const std::vector<Outcome>& outcomes() const { return outcomes_; }
    std::size_t size() const { return outcomes_.size(); }
    bool contains(const std::string& label) const;
    Outcome invalid() const { return Outcome{kInvalidLabel}; }

  private:
    friend OutcomeSpace make_outcome_space(const std::vector<std::string>& labels);
    std::vector<Outcome> outcomes_;
};

// Builds a finite outcome space from candidate labels. The Invalid outcome is
// appended when absent. Rejects an empty list, duplicate or empty labels, and
// the reserved Abstain label.
OutcomeSpace make_outcome_space(const std::vector<std::string>& labels);

}  // namespace oraclesim
