#pragma once

#include <stdexcept>
#include <string>

namespace oraclesim {

// Bad user input: malformed config, precondition failures induced by the
// caller's data. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency failure: a conservation audit or structural invariant
// broke mid-run. CLI maps this to exit code 1.
class InvariantError : public std::runtime_error {
  public:
    explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace oraclesim
