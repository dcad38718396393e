// The three commands behind the CLI binary. Each reads a JSON config file
// and returns a RunReport; input problems surface as ConfigError, broken
// run invariants as InvariantError.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "oraclesim/cli/report.hpp"

namespace oraclesim::cli {

// Runs a scenario (or a one-axis sweep: "FIELD=v1,v2,..."). The seed
// override replaces the config's seed before the run.
RunReport cmd_simulate(const std::string& config_path,
                       std::optional<std::uint64_t> seed_override,
                       const std::optional<std::string>& sweep_spec);

// Economic conditions for one parameter set: soundness, fee viability,
// individual rationality, and the bribe cost of silencing each dispute round.
RunReport cmd_analyze(const std::string& config_path);

// Equilibria of the reconstructed games: "a0-stage", "a1-dispute" (both fork
// regimes), or "a2-sequence" (the escalation inequalities).
RunReport cmd_solve(const std::string& game_spec, const std::string& config_path);

}  // namespace oraclesim::cli
