// Drives the installed binary end to end: exit codes, report formats, seed
// override, sweeps, and the error channel. Exit 1 (broken invariant) has no
// config-reachable trigger by construction, so only 0 and 2 appear here; the
// mapping itself is covered where InvariantError is thrown in-process.
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path path =
            fs::temp_directory_path() / ("oraclesim_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
        return path;
    }();
    return dir;
}

fs::path scratch_file(const std::string& stem) {
    static int counter = 0;
    return scratch_dir() / (stem + "_" + std::to_string(counter++));
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

fs::path write_config(const std::string& text) {
    fs::path path = scratch_file("config");
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path;
}

CliResult run_cli(const std::string& args) {
    fs::path out_path = scratch_file("stdout");
    fs::path err_path = scratch_file("stderr");
    std::string command = std::string(ORACLESIM_CLI_PATH) + " " + args + " > " +
                          out_path.string() + " 2> " + err_path.string();
    int status = std::system(command.c_str());
    CliResult result;
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    fs::remove(out_path);
    fs::remove(err_path);
    return result;
}

const char* kHonestScenario = R"({
  "mechanism": "A0",
  "outcomes": ["True", "False"],
  "truth": "True",
  "queries": 5,
  "seed": 7,
  "genesis": {"alice": 6, "bob": 4},
  "params": {"fee": "1", "lie_benefit": "1", "price_honest": "2", "price_lying": "0"},
  "querier": {"agent": "quentin", "kind": "HonestQuerier"},
  "reporters": [
    {"agent": "alice", "kind": "TruthfulReporter"},
    {"agent": "bob", "kind": "TruthfulReporter"}
  ]
})";

const char* kBestResponseScenario = R"({
  "mechanism": "A0",
  "outcomes": ["True", "False"],
  "truth": "True",
  "queries": 1,
  "seed": 2,
  "genesis": {"bob": 1000},
  "params": {
    "lie_benefit": "100", "price_honest": "3/2", "price_lying": "0",
    "truth_benefit": "5", "fee": "1", "stake": 5, "fork_threshold": 1024,
    "roi_cap": "2/5", "yield": "3/10", "query_rate": 12, "holding_cost": "1/20"
  },
  "querier": {"agent": "quentin", "kind": "HonestQuerier"},
  "reporters": [{"agent": "bob", "kind": "BestResponseReporter"}]
})";

const char* kSoundParams = R"({
  "lie_benefit": "100", "price_honest": "3/2", "price_lying": "0",
  "truth_benefit": "5", "fee": "1", "pool_size": 1000, "stake": 5,
  "fork_threshold": 1024, "roi_cap": "2/5", "yield": "3/10",
  "query_rate": 12, "holding_cost": "1/20"
})";

}  // namespace

TEST_CASE("simulate emits a machine report on stdout") {
    fs::path config = write_config(kHonestScenario);
    CliResult result = run_cli("simulate --config " + config.string() + " --format machine");
    CHECK(result.code == 0);
    CHECK(result.err.empty());
    json doc = json::parse(result.out);
    CHECK(doc["mode"] == "simulate");
    CHECK(doc["seed"] == 7);
    CHECK(doc["config"]["mechanism"] == "A0");
    CHECK(doc["results"]["summary"]["truthful"] == 5);
    CHECK(doc["results"]["summary"]["final_currency"]["quentin"] == "-5");
    CHECK(doc["audits"]["ledger_conservation"] == "pass");
    CHECK(doc["audits"]["pool_membership"] == "pass");
    CHECK(doc["audits"]["burn_accounting"] == "pass");
    CHECK(doc["audits"]["queries_audited"] == 5);
}

TEST_CASE("the table format renders the same report for humans") {
    fs::path config = write_config(kHonestScenario);
    CliResult result = run_cli("simulate --config " + config.string());
    CHECK(result.code == 0);
    CHECK(result.out.rfind("== simulate ==\nseed: 7\n", 0) == 0);
    CHECK(result.out.find("[results.summary]") != std::string::npos);
    CHECK(result.out.find("truthful") != std::string::npos);
}

TEST_CASE("--seed overrides the config and --out runs stay byte-identical") {
    fs::path config = write_config(kHonestScenario);
    fs::path first = scratch_file("report");
    fs::path second = scratch_file("report");
    for (const fs::path& out : {first, second}) {
        CliResult result = run_cli("simulate --config " + config.string() +
                                   " --format machine --seed 99 --out " + out.string());
        CHECK(result.code == 0);
        CHECK(result.out.empty());
    }
    std::string a = slurp(first);
    std::string b = slurp(second);
    REQUIRE_FALSE(a.empty());
    CHECK(a == b);
    CHECK(json::parse(a)["seed"] == 99);
}

TEST_CASE("--sweep reruns the scenario per value of one field") {
    fs::path config = write_config(kBestResponseScenario);
    CliResult result = run_cli("simulate --config " + config.string() +
                               " --format machine --sweep params.price_lying=0,3/2");
    CHECK(result.code == 0);
    json doc = json::parse(result.out);
    const json& rows = doc["results"]["sweep"];
    REQUIRE(rows.size() == 2);
    CHECK(rows[0]["value"] == "0");
    CHECK(rows[0]["truthful_rate"] == "1");  // sound: lying devalues too much
    CHECK(rows[1]["value"] == "3/2");
    CHECK(rows[1]["truthful_rate"] == "0");  // no devaluation left, lie pays
    CHECK(doc["audits"]["queries_audited"] == 2);
}

TEST_CASE("analyze reports the economic conditions of a parameter file") {
    fs::path config = write_config(kSoundParams);
    CliResult result = run_cli("analyze --config " + config.string() + " --format machine");
    CHECK(result.code == 0);
    json doc = json::parse(result.out);
    CHECK(doc["mode"] == "analyze");
    CHECK(doc["results"]["soundness"]["sound"] == true);
    CHECK(doc["results"]["soundness"]["threshold"] == "750");
    CHECK(doc["results"]["tenability"]["applicable"] == true);
    CHECK(doc["results"]["tenability"]["x_min"] == "1/20");
    CHECK(doc["results"]["individual_rationality"]["rational"] == true);
    CHECK(doc["audits"]["params"] == "validated");
}

TEST_CASE("solve reports the stage game equilibria") {
    fs::path config = write_config(kSoundParams);
    CliResult result =
        run_cli("solve a0-stage --config " + config.string() + " --format machine");
    CHECK(result.code == 0);
    json doc = json::parse(result.out);
    CHECK(doc["mode"] == "solve");
    CHECK(doc["audits"]["game"] == "a0-stage");
    CHECK(doc["results"]["honest_is_spe"] == true);
}

TEST_CASE("help exits zero and lists the subcommands") {
    CliResult result = run_cli("--help");
    CHECK(result.code == 0);
    CHECK(result.out.find("simulate") != std::string::npos);
    CHECK(result.out.find("analyze") != std::string::npos);
    CHECK(result.out.find("solve") != std::string::npos);
}

TEST_CASE("bad invocations and bad configs exit with code two") {
    CliResult result = run_cli("");
    CHECK(result.code == 2);  // a subcommand is required

    fs::path honest = write_config(kHonestScenario);
    result = run_cli("simulate --config " + honest.string() + " --format yaml");
    CHECK(result.code == 2);  // unknown format

    result = run_cli("simulate --config " + scratch_file("missing").string());
    CHECK(result.code == 2);
    CHECK(result.err.find("config error:") != std::string::npos);

    fs::path garbled = write_config("not json at all");
    result = run_cli("simulate --config " + garbled.string());
    CHECK(result.code == 2);
    CHECK(result.err.find("scenario: malformed JSON") != std::string::npos);

    json doc = json::parse(std::string(kHonestScenario));
    doc["bogus"] = 1;
    fs::path unknown_field = write_config(doc.dump());
    result = run_cli("simulate --config " + unknown_field.string());
    CHECK(result.code == 2);
    CHECK(result.err.find("scenario: unknown field 'bogus'") != std::string::npos);

    doc = json::parse(std::string(kHonestScenario));
    doc["outcomes"] = {"True", "Abstain"};
    fs::path reserved = write_config(doc.dump());
    result = run_cli("simulate --config " + reserved.string());
    CHECK(result.code == 2);
    CHECK(result.err.find("'Abstain' is a reporting state, not an outcome") !=
          std::string::npos);

    fs::path params = write_config(kSoundParams);
    result = run_cli("solve a9-bogus --config " + params.string());
    CHECK(result.code == 2);
    CHECK(result.err.find("solve: unknown game 'a9-bogus'") != std::string::npos);
}
