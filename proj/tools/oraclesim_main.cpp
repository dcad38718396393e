// Command-line front end: simulate scenarios, analyze parameter sets, solve
// the reconstructed games. Exit codes: 0 success, 1 broken run invariant,
// 2 bad input.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "oraclesim/cli/commands.hpp"
#include "oraclesim/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"token-pool oracle simulator and equilibrium checker"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format = "table";
    std::string game_spec;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> sweep_spec;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file")->required();
        cmd->add_option("--out", out_path, "write the report to this file");
        cmd->add_option("--format", format, "report format")
            ->check(CLI::IsMember({"table", "machine"}));
    };

    CLI::App* simulate = app.add_subcommand("simulate", "run a configured scenario");
    add_common(simulate);
    simulate->add_option("--seed", seed, "override the config seed");
    simulate->add_option("--sweep", sweep_spec,
                         "rerun per value of one config field: FIELD=v1,v2,...");

    CLI::App* analyze =
        app.add_subcommand("analyze", "economic conditions for a parameter set");
    add_common(analyze);

    CLI::App* solve = app.add_subcommand("solve", "equilibria of the oracle games");
    add_common(solve);
    solve->add_option("game", game_spec, "a0-stage | a1-dispute | a2-sequence")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        oraclesim::cli::RunReport report;
        if (simulate->parsed()) {
            report = oraclesim::cli::cmd_simulate(config_path, seed, sweep_spec);
        } else if (analyze->parsed()) {
            report = oraclesim::cli::cmd_analyze(config_path);
        } else {
            report = oraclesim::cli::cmd_solve(game_spec, config_path);
        }
        std::string text = format == "machine"
                               ? oraclesim::cli::report_to_machine_text(report)
                               : oraclesim::cli::report_to_table_text(report);
        if (!out_path.empty()) {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw oraclesim::ConfigError("cannot write to '" + out_path + "'");
            out << text;
        } else {
            std::cout << text;
        }
        return 0;
    } catch (const oraclesim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const oraclesim::InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}
