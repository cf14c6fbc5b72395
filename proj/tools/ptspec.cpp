#include "ptspec/cli.hpp"
#include "ptspec/report.hpp"

#include <fstream>
#include <iostream>

namespace {

int write_report(const ptspec::cli::Report& report, const ptspec::cli::RunConfig& cfg) {
  if (cfg.out_path.empty()) {
    std::cout << report.rendered;
  } else {
    std::ofstream out(cfg.out_path);
    if (!out) {
      std::cerr << "ptspec: cannot open '" << cfg.out_path << "' for writing\n";
      return 1;
    }
    out << report.rendered;
  }
  return report.success ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  ptspec::cli::RunConfig cfg;
  try {
    cfg = ptspec::cli::parse_config({argv + 1, argv + argc});
  } catch (const ptspec::cli::HelpRequested& help) {
    std::cout << help.text;
    return 0;
  } catch (const ptspec::cli::UsageError& e) {
    std::cerr << "ptspec: " << e.what() << "\n";
    return 2;
  }

  try {
    return write_report(ptspec::cli::execute(cfg), cfg);
  } catch (const std::exception& e) {
    nlohmann::ordered_json failure{
        {"error", {{"command", ptspec::cli::command_name(cfg.command)}, {"message", e.what()}}}};
    std::cout << ptspec::dump_json17(failure);
    std::cerr << "ptspec: " << e.what() << "\n";
    return 1;
  }
}
