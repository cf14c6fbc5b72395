#include "ptspec/cli.hpp"

#include "ptspec/eigensolve.hpp"
#include "ptspec/report.hpp"

#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

using namespace ptspec;
using cli::Command;
using cli::OutputFormat;
using cli::parse_config;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PTSPEC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult result;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

struct EnvGuard {
  explicit EnvGuard(const char* value) { setenv("PTSPEC_DIMS", value, 1); }
  ~EnvGuard() { unsetenv("PTSPEC_DIMS"); }
};

}  // namespace

TEST_CASE("defaults fill in when only the command is given") {
  const auto cfg = parse_config({"verify"});
  CHECK(cfg.command == Command::verify);
  CHECK(cfg.omega == 1.0);
  CHECK(cfg.g == 0.0);
  CHECK(cfg.k == 3);
  CHECK(cfg.levels == 6);
  CHECK(cfg.dims == default_dimension_ladder());
  CHECK(cfg.dims_source == "default");
  CHECK(cfg.format == OutputFormat::json);
}

TEST_CASE("flags land in the config") {
  const auto cfg = parse_config({"spectrum", "--k", "5", "--g", "-1.5", "--omega", "2.5",
                                 "--levels", "3", "--tol", "1e-10", "--dims", "16,24,32",
                                 "--out", "report.json"});
  CHECK(cfg.command == Command::spectrum);
  CHECK(cfg.k == 5);
  CHECK(cfg.g == -1.5);
  CHECK(cfg.omega == 2.5);
  CHECK(cfg.levels == 3);
  CHECK(cfg.tol == 1e-10);
  CHECK(cfg.dims == std::vector<int>{16, 24, 32});
  CHECK(cfg.dims_source == "flag");
  CHECK(cfg.out_path == "report.json");
}

TEST_CASE("dimension ladder falls back to the environment") {
  EnvGuard guard("20,28");
  const auto cfg = parse_config({"spectrum"});
  CHECK(cfg.dims == std::vector<int>{20, 28});
  CHECK(cfg.dims_source == "env");

  const auto flagged = parse_config({"spectrum", "--dims", "16"});
  CHECK(flagged.dims == std::vector<int>{16});
  CHECK(flagged.dims_source == "flag");
}

TEST_CASE("malformed environment ladders are usage errors") {
  EnvGuard guard("16,oops");
  CHECK_THROWS_AS(parse_config({"spectrum"}), cli::UsageError);
}

TEST_CASE("invalid invocations are usage errors") {
  CHECK_THROWS_AS(parse_config({}), cli::UsageError);
  CHECK_THROWS_AS(parse_config({"conjure"}), cli::UsageError);
  CHECK_THROWS_AS(parse_config({"spectrum", "--bogus"}), cli::UsageError);
  CHECK_THROWS_AS(parse_config({"spectrum", "--omega", "-2"}), cli::UsageError);
  CHECK_THROWS_AS(parse_config({"spectrum", "--k", "0"}), cli::UsageError);
  CHECK_THROWS_AS(parse_config({"spectrum", "--tol", "0"}), cli::UsageError);
  CHECK_THROWS_AS(parse_config({"spectrum", "--dims", "0"}), cli::UsageError);
  CHECK_THROWS_AS(parse_config({"spectrum", "--dims", "1024"}), cli::UsageError);
  CHECK_THROWS_AS(parse_config({"spectrum", "--format", "csv"}), cli::UsageError);
  CHECK_THROWS_AS(parse_config({"sweep"}), cli::UsageError);
  CHECK_THROWS_AS(parse_config({"perturb", "--order", "9"}), cli::UsageError);
  CHECK_THROWS_AS(parse_config({"sweep", "--g-grid", "0.1", "--jobs", "0"}), cli::UsageError);
}

TEST_CASE("help raises the carrier with usage text") {
  try {
    parse_config({"--help"});
    FAIL("expected HelpRequested");
  } catch (const cli::HelpRequested& help) {
    CHECK(help.text.find("ptspec") != std::string::npos);
    CHECK(help.text.find("--dims") != std::string::npos);
  }
}

TEST_CASE("seventeen-digit rendering round-trips doubles") {
  CHECK(format17(1.0) == "1.0");
  CHECK(format17(0.0) == "0.0");
  CHECK(format17(0.1) == "0.10000000000000001");
  for (double v : {0.1, 1.0 / 3.0, -2.5e-13, 6.62607e-34, -1.75e300}) {
    CHECK(std::stod(format17(v)) == v);
  }

  nlohmann::ordered_json doc{{"a", 0.1}, {"b", 1.0}, {"n", nullptr}};
  const std::string text = dump_json17(doc);
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.find("\"b\": 1.0") != std::string::npos);
}

TEST_CASE("timestamps are ISO 8601 UTC") {
  const std::string ts = utc_timestamp();
  CHECK(ts.size() == 20);
  CHECK(ts[4] == '-');
  CHECK(ts[10] == 'T');
  CHECK(ts.back() == 'Z');
}

TEST_CASE("reports carry config, results and provenance") {
  auto cfg = parse_config({"algebra", "--k", "3"});
  const auto report = cli::execute(cfg);
  CHECK(report.success);
  REQUIRE(report.doc.contains("config"));
  REQUIRE(report.doc.contains("results"));
  REQUIRE(report.doc.contains("provenance"));
  CHECK(report.doc["config"]["command"] == "algebra");
  CHECK(report.doc["provenance"]["artifact"] == "ptspec");
  CHECK(report.doc["provenance"]["basis"] == "orthonormal");
  CHECK(report.doc["results"]["commutators_exact"] == true);
  CHECK(report.doc["results"]["frequency_components"].size() == 4);

  // identical configs render identical results
  const auto again = cli::execute(cfg);
  CHECK(report.doc["results"] == again.doc["results"]);
}

TEST_CASE("spectrum command exits cleanly with a parseable report") {
  const auto r = run_cli("spectrum --k 3 --g 0 --levels 2 --dims 16,24");
  CHECK(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["results"]["levels"][0]["re"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(doc["results"]["levels"][1]["re"].get<double>() == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(doc["results"]["levels"][0]["converged"].get<bool>());
}

TEST_CASE("environment ladder reaches the subprocess provenance") {
  const auto r = run_cli("spectrum --k 3 --g 0 --levels 2");
  CHECK(r.exit_code == 0);

  const std::string cmd =
      "PTSPEC_DIMS=16,24 " + std::string(PTSPEC_CLI_PATH) + " spectrum --k 3 --g 0 --levels 2";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  pclose(pipe);
  const auto doc = nlohmann::json::parse(out);
  CHECK(doc["provenance"]["dims_source"] == "env");
  CHECK(doc["config"]["dims"] == nlohmann::json::array({16, 24}));
}

TEST_CASE("usage problems exit with code 2") {
  CHECK(run_cli("conjure").exit_code == 2);
  CHECK(run_cli("spectrum --omega -1").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("computational failures exit with code 1 and report the error") {
  const auto r = run_cli("perturb --k 2 --levels 1");
  CHECK(r.exit_code == 1);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.contains("error"));
  CHECK(doc["error"]["command"] == "perturb");
}

TEST_CASE("help exits zero") {
  const auto r = run_cli("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("--dims") != std::string::npos);
}

TEST_CASE("sweep renders CSV with one row per grid point") {
  const auto r = run_cli("sweep --k 3 --g-grid 0,0.2 --levels 2 --dims 16,24 --format csv --jobs 2");
  CHECK(r.exit_code == 0);
  REQUIRE(!r.out.empty());

  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < r.out.size()) {
    const auto end = r.out.find('\n', start);
    if (end == std::string::npos) break;
    lines.push_back(r.out.substr(start, end - start));
    start = end + 1;
  }
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "g,status,max_imag,min_eta_norm,E0_re,E0_im,E1_re,E1_im");
  CHECK(lines[1].substr(0, 4) == "0.0,");
  CHECK(lines[2].find("ok") != std::string::npos);
}

TEST_CASE("norms command reports signs and orthogonality") {
  const auto r = run_cli("norms --k 3 --g 0.3 --levels 4 --dims 48");
  CHECK(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  const auto& levels = doc["results"]["levels"];
  REQUIRE(levels.size() == 4);
  for (int n = 0; n < 4; ++n) {
    CHECK(levels[n]["sign"].get<int>() == ((n % 2 == 0) ? 1 : -1));
  }
  CHECK(doc["results"]["orthogonality"]["defect"].get<double>() < 1e-8);
}

TEST_CASE("reports can be written to a file") {
  const std::string path = "/tmp/ptspec_test_report.json";
  std::remove(path.c_str());
  const auto r = run_cli("algebra --k 1 --out " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  FILE* f = std::fopen(path.c_str(), "r");
  REQUIRE(f != nullptr);
  std::fclose(f);
  std::remove(path.c_str());
}
