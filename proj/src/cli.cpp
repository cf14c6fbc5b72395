#include "ptspec/cli.hpp"

#include "ptspec/eigensolve.hpp"
#include "ptspec/metric.hpp"
#include "ptspec/perturbation.hpp"
#include "ptspec/report.hpp"
#include "ptspec/verify.hpp"
#include "ptspec/version.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <thread>

namespace ptspec::cli {

namespace {

using nlohmann::ordered_json;

std::vector<int> parse_dims_list(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int value = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      dims.push_back(value);
    } catch (const std::exception&) {
      throw UsageError("invalid dimension list entry '" + item + "'");
    }
  }
  if (dims.empty()) throw UsageError("empty dimension list");
  return dims;
}

void validate(RunConfig& cfg) {
  if (!(cfg.omega > 0) || !std::isfinite(cfg.omega)) throw UsageError("--omega must be positive");
  if (!std::isfinite(cfg.g)) throw UsageError("--g must be finite");
  if (cfg.k < 1) throw UsageError("--k must be at least 1");
  if (cfg.levels < 1) throw UsageError("--levels must be at least 1");
  if (!(cfg.tol > 0) || !std::isfinite(cfg.tol)) throw UsageError("--tol must be positive");
  if (cfg.order < 0 || cfg.order > 6) throw UsageError("--order must lie in [0, 6]");
  if (cfg.jobs < 1) throw UsageError("--jobs must be at least 1");
  for (int n : cfg.dims)
    if (n < 1 || n > 512) throw UsageError("--dims entries must lie in [1, 512]");
  for (double g : cfg.g_grid)
    if (!std::isfinite(g)) throw UsageError("--g-grid entries must be finite");
  if (cfg.format == OutputFormat::csv && cfg.command != Command::sweep)
    throw UsageError("csv output is only available for sweep");
  if (cfg.command == Command::sweep && cfg.g_grid.empty())
    throw UsageError("sweep requires --g-grid");
}

ordered_json complex_json(const std::complex<double>& z) {
  return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

ordered_json spectrum_results(const RunConfig& cfg, bool& success) {
  OscillatorSpec spec{cfg.omega, cfg.g, cfg.k};
  const auto spectrum = converged_spectrum(spec, cfg.levels, cfg.tol, cfg.dims);

  ordered_json levels = ordered_json::array();
  bool all_converged = true;
  bool any_converged = false;
  for (const auto& lvl : spectrum.levels) {
    all_converged = all_converged && lvl.converged;
    any_converged = any_converged || lvl.converged;
    levels.push_back({{"n", lvl.index},
                      {"re", lvl.value.real()},
                      {"im", lvl.value.imag()},
                      {"converged", lvl.converged},
                      {"dims_used", lvl.dims_used},
                      {"deltas", lvl.deltas}});
  }
  ordered_json results{{"final_dim", spectrum.final_dim}, {"levels", levels}};
  if (any_converged) {
    const auto reality = reality_report(spectrum);
    results["max_imag"] = reality.max_imag;
  } else {
    results["max_imag"] = nullptr;
  }
  success = all_converged;
  return results;
}

ordered_json verify_results(ordered_json& checks, bool& success) {
  int passed = 0;
  const auto outcomes = run_verification();
  for (const auto& check : outcomes) {
    checks.push_back({{"name", check.name},
                      {"status", check.pass ? "pass" : "fail"},
                      {"measured", check.measured},
                      {"threshold", check.threshold}});
    if (check.pass) ++passed;
  }
  success = passed == static_cast<int>(outcomes.size());
  return ordered_json{{"passed", passed},
                      {"failed", static_cast<int>(outcomes.size()) - passed}};
}

ordered_json sweep_point(const RunConfig& cfg, double g) {
  OscillatorSpec spec{cfg.omega, g, cfg.k};
  const auto spectrum = converged_spectrum(spec, cfg.levels, cfg.tol, cfg.dims);
  ordered_json levels = ordered_json::array();
  double max_imag = 0.0;
  bool all_converged = true;
  for (const auto& lvl : spectrum.levels) {
    all_converged = all_converged && lvl.converged;
    max_imag = std::max(max_imag, std::abs(lvl.value.imag()));
    levels.push_back({{"n", lvl.index},
                      {"re", lvl.value.real()},
                      {"im", lvl.value.imag()},
                      {"converged", lvl.converged}});
  }
  ordered_json point{{"g", g},
                     {"status", all_converged ? "ok" : "unconverged"},
                     {"levels", levels},
                     {"max_imag", max_imag}};
  if (cfg.k % 2 == 1) {
    const int dim = *std::max_element(cfg.dims.begin(), cfg.dims.end());
    double min_norm = std::numeric_limits<double>::infinity();
    for (const auto& lvl : eigen_norms(spec, cfg.levels, dim)) {
      min_norm = std::min(min_norm, std::abs(lvl.eta_norm));
    }
    point["min_eta_norm"] = min_norm;
  } else {
    point["min_eta_norm"] = nullptr;
  }
  return point;
}

ordered_json sweep_results(const RunConfig& cfg, bool& success) {
  std::vector<ordered_json> points(cfg.g_grid.size());
  std::atomic<std::size_t> cursor{0};
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), cfg.g_grid.size());

  auto work = [&]() {
    for (;;) {
      const std::size_t idx = cursor.fetch_add(1);
      if (idx >= cfg.g_grid.size()) return;
      try {
        points[idx] = sweep_point(cfg, cfg.g_grid[idx]);
      } catch (const std::exception& e) {
        points[idx] =
            ordered_json{{"g", cfg.g_grid[idx]}, {"status", "error"}, {"error", e.what()}};
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  ordered_json rows = ordered_json::array();
  ordered_json failures = ordered_json::array();
  for (const auto& point : points) {
    rows.push_back(point);
    if (point.at("status") != "ok") {
      failures.push_back({{"g", point.at("g")}, {"status", point.at("status")}});
    }
  }
  success = failures.empty();
  return ordered_json{{"points", rows}, {"failures", failures}};
}

ordered_json norms_results(const RunConfig& cfg) {
  OscillatorSpec spec{cfg.omega, cfg.g, cfg.k};
  const int dim = *std::max_element(cfg.dims.begin(), cfg.dims.end());
  const auto levels = eigen_norms(spec, cfg.levels, dim);
  ordered_json rows = ordered_json::array();
  for (const auto& lvl : levels) {
    rows.push_back({{"n", lvl.unperturbed_index},
                    {"re", lvl.pair.value.real()},
                    {"im", lvl.pair.value.imag()},
                    {"eta_norm", lvl.eta_norm},
                    {"sign", lvl.sign},
                    {"near_zero", lvl.near_zero},
                    {"residual", lvl.pair.residual}});
  }
  const auto ortho = eta_orthogonality_defect(levels);
  return ordered_json{{"dim", dim},
                      {"levels", rows},
                      {"orthogonality",
                       {{"defect", ortho.defect},
                        {"pairs_checked", ortho.pairs_checked},
                        {"pairs_skipped", static_cast<int>(ortho.skipped.size())}}}};
}

ordered_json algebra_results(const RunConfig& cfg) {
  const LadderPolynomial xk = LadderPolynomial::position(Sector::standard).pow(cfg.k);
  const LadderPolynomial interaction = LadderPolynomial::position(Sector::tilde)
                                           .scaled(ExactScalar::imaginary_unit())
                                           .pow(cfg.k)
                                           .scaled(ExactScalar::integer(-1));
  ordered_json components = ordered_json::array();
  const auto decomposition = interaction_picture(interaction);
  for (const auto& comp : decomposition.components) {
    components.push_back({{"net_degree", comp.net_degree},
                          {"frequency", comp.frequency(cfg.omega)},
                          {"form", comp.part.str()}});
  }
  ordered_json pair_products = ordered_json::array();
  for (const auto& comp : decomposition.components) {
    if (comp.net_degree <= 0) continue;
    if (const auto* partner = decomposition.find(-comp.net_degree)) {
      pair_products.push_back(
          {{"net_degrees", {comp.net_degree, -comp.net_degree}},
           {"number_polynomial", is_number_polynomial(comp.part * *partner)}});
    }
  }
  const bool commutators_exact =
      commutator(LadderPolynomial::lowering(Sector::standard),
                 LadderPolynomial::raising(Sector::standard)) ==
          LadderPolynomial::unit(Sector::standard) &&
      commutator(LadderPolynomial::lowering(Sector::tilde),
                 LadderPolynomial::raising(Sector::tilde)) == LadderPolynomial::unit(Sector::tilde);
  return ordered_json{{"position_power", xk.str()},
                      {"interaction", interaction.str()},
                      {"interaction_sector", sector_name(interaction.sector())},
                      {"frequency_components", components},
                      {"pair_products", pair_products},
                      {"commutators_exact", commutators_exact},
                      {"adjoint_letters", "c = creation, a = annihilation"}};
}

ordered_json perturb_results(const RunConfig& cfg) {
  OscillatorSpec spec{cfg.omega, cfg.g, cfg.k};
  ordered_json rows = ordered_json::array();
  for (int n = 0; n < cfg.levels; ++n) {
    const auto series = rs_series(spec, n, cfg.order);
    ordered_json row{{"n", n},
                     {"energy_coeffs", series.energy_coeffs},
                     {"energy_at_g", series.energy_at(cfg.g)}};
    const auto norms = gml_norm_check(spec, n, std::min(cfg.order, 4));
    row["eta_norm_series"] = norms.eta_norm_series;
    row["norm_sign_prediction"] = norms.sign_prediction;
    ordered_json amplitudes = ordered_json::array();
    for (double eps : {1e-2, 1e-3}) {
      const auto amp = adiabatic_diagonal_order2(spec, n, eps);
      amplitudes.push_back({{"epsilon", eps},
                            {"value", complex_json(amp.value)},
                            {"pole_coeff", complex_json(amp.pole_coeff)},
                            {"finite_part", complex_json(amp.finite_part)}});
    }
    row["adiabatic"] = amplitudes;
    rows.push_back(row);
  }
  return ordered_json{{"levels", rows}};
}

std::string render_sweep_csv(const RunConfig& cfg, const ordered_json& results) {
  std::string out = "g,status,max_imag,min_eta_norm";
  for (int n = 0; n < cfg.levels; ++n) {
    out += ",E" + std::to_string(n) + "_re,E" + std::to_string(n) + "_im";
  }
  out += "\n";
  for (const auto& point : results.at("points")) {
    out += format17(point.at("g").get<double>());
    out += "," + point.at("status").get<std::string>();
    if (point.at("status") == "error") {
      out += "\n";
      continue;
    }
    out += "," + format17(point.at("max_imag").get<double>());
    out += ",";
    if (!point.at("min_eta_norm").is_null())
      out += format17(point.at("min_eta_norm").get<double>());
    for (const auto& lvl : point.at("levels")) {
      out += "," + format17(lvl.at("re").get<double>());
      out += "," + format17(lvl.at("im").get<double>());
    }
    out += "\n";
  }
  return out;
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::spectrum: return "spectrum";
    case Command::verify: return "verify";
    case Command::sweep: return "sweep";
    case Command::norms: return "norms";
    case Command::algebra: return "algebra";
    case Command::perturb: return "perturb";
  }
  return "unknown";
}

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig cfg;

  CLI::App app{"PT-invariant oscillator spectra under the indefinite metric"};
  app.name("ptspec");
  app.fallthrough();
  app.require_subcommand(1);

  app.add_option("--omega", cfg.omega, "oscillator frequency (positive)");
  app.add_option("--g", cfg.g, "coupling strength");
  app.add_option("--k", cfg.k, "interaction power in (ix)^k");
  app.add_option("--levels", cfg.levels, "number of levels");
  app.add_option("--tol", cfg.tol, "convergence tolerance");
  std::vector<int> dims_flag;
  app.add_option("--dims", dims_flag, "dimension ladder")->delimiter(',');
  app.add_option("--g-grid", cfg.g_grid, "coupling grid for sweep")->delimiter(',');
  app.add_option("--order", cfg.order, "perturbation order");
  std::map<std::string, OutputFormat> format_map{{"json", OutputFormat::json},
                                                 {"csv", OutputFormat::csv}};
  app.add_option("--format", cfg.format, "report format")
      ->transform(CLI::CheckedTransformer(format_map, CLI::ignore_case));
  app.add_option("--out", cfg.out_path, "write the report to this path");
  app.add_option("--jobs", cfg.jobs, "worker threads for sweep");

  const std::map<std::string, Command> commands{
      {"spectrum", Command::spectrum}, {"verify", Command::verify}, {"sweep", Command::sweep},
      {"norms", Command::norms},       {"algebra", Command::algebra}, {"perturb", Command::perturb}};
  for (const auto& [name, cmd] : commands) {
    app.add_subcommand(name, std::string("run the ") + name + " command");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const auto chosen = app.get_subcommands();
  cfg.command = commands.at(chosen.front()->get_name());

  if (!dims_flag.empty()) {
    cfg.dims = dims_flag;
    cfg.dims_source = "flag";
  } else if (const char* env = std::getenv("PTSPEC_DIMS"); env != nullptr && *env != '\0') {
    cfg.dims = parse_dims_list(env);
    cfg.dims_source = "env";
  } else {
    cfg.dims = default_dimension_ladder();
    cfg.dims_source = "default";
  }

  validate(cfg);
  return cfg;
}

Report execute(const RunConfig& cfg) {
  Report report;
  ordered_json checks = ordered_json::array();
  ordered_json results;

  switch (cfg.command) {
    case Command::spectrum: results = spectrum_results(cfg, report.success); break;
    case Command::verify: results = verify_results(checks, report.success); break;
    case Command::sweep: results = sweep_results(cfg, report.success); break;
    case Command::norms: results = norms_results(cfg); break;
    case Command::algebra: results = algebra_results(cfg); break;
    case Command::perturb: results = perturb_results(cfg); break;
  }

  report.doc = ordered_json{
      {"config",
       {{"command", command_name(cfg.command)},
        {"omega", cfg.omega},
        {"g", cfg.g},
        {"k", cfg.k},
        {"levels", cfg.levels},
        {"tol", cfg.tol},
        {"dims", cfg.dims},
        {"g_grid", cfg.g_grid},
        {"order", cfg.order},
        {"format", cfg.format == OutputFormat::json ? "json" : "csv"},
        {"out", cfg.out_path},
        {"jobs", cfg.jobs}}},
      {"results", results},
      {"checks", checks},
      {"provenance",
       {{"artifact", "ptspec"},
        {"version", PTSPEC_VERSION},
        {"timestamp", utc_timestamp()},
        {"dims_source", cfg.dims_source},
        {"basis", basis_convention().normalization}}}};

  report.rendered = (cfg.format == OutputFormat::csv) ? render_sweep_csv(cfg, results)
                                                      : dump_json17(report.doc);
  return report;
}

}  // namespace ptspec::cli
