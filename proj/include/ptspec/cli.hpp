#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace ptspec::cli {

// Invalid invocation or flag values; the binary maps this to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when the user asked for --help; carries the text to print.
struct HelpRequested {
  std::string text;
};

enum class Command { spectrum, verify, sweep, norms, algebra, perturb };
enum class OutputFormat { json, csv };

const char* command_name(Command c);

struct RunConfig {
  Command command = Command::verify;
  double omega = 1.0;
  double g = 0.0;
  int k = 3;
  int levels = 6;
  double tol = 1e-9;
  std::vector<int> dims;           // dimension ladder
  std::string dims_source = "default";  // "flag", "env" (PTSPEC_DIMS) or "default"
  std::vector<double> g_grid;
  int order = 2;
  OutputFormat format = OutputFormat::json;
  std::string out_path;
  int jobs = 1;
};

// Parses command-line arguments (without the program name).  Throws UsageError
// on invalid input and HelpRequested for --help.
RunConfig parse_config(const std::vector<std::string>& args);

struct Report {
  nlohmann::ordered_json doc;
  std::string rendered;   // JSON (or CSV for sweep) ready to write
  bool success = true;    // false marks a computational failure (exit code 1)
};

// Runs the command and assembles the report.  Reports are byte-identical for
// identical configs except for the provenance timestamp.
Report execute(const RunConfig& config);

}  // namespace ptspec::cli
