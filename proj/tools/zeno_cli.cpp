// Command-line front end: runs a survival-probability experiment and writes
// CSV curves, an SVG chart and a JSON report.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical-accuracy failure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "zeno/errors.hpp"
#include "zeno/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

void print_summary(const zeno::RunReport& report) {
  const auto& c = report.config;
  std::printf("mode %s, projector %s, omega01 %g, omega12 %g, T_P %.12g\n",
              zeno::to_string(c.mode).c_str(), zeno::to_string(c.projector).c_str(), c.omega01,
              c.omega12, report.t_poincare);
  for (const auto& m : report.measured) {
    std::printf("n = %-4d regime %-5s margin %.6f", m.n, zeno::to_string(m.verdict.regime).c_str(),
                m.verdict.margin);
    for (const auto& i : m.verdict.intervals) {
      std::printf("  %s[%.4f, %.4f]", zeno::to_string(i.kind).c_str(), i.tau_begin, i.tau_end);
    }
    std::printf("\n");
  }
  for (const auto& w : report.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  std::printf("wall time %.3f s\n", report.wall_seconds);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Zeno / inverse Zeno survival-probability simulator"};

  // Flags are collected as text and applied on top of the config file, so both
  // sources share one parser and one set of error messages.
  std::vector<std::pair<std::string, std::optional<std::string>>> flags = {
      {"omega01", {}}, {"omega12", {}}, {"phi01", {}},   {"phi12", {}},   {"projector", {}},
      {"n", {}},       {"mode", {}},    {"weight", {}},  {"width", {}},   {"grid", {}},
      {"tau-max", {}}, {"epsilon", {}}, {"csv", {}},     {"svg", {}},     {"report", {}},
  };
  const std::vector<std::string> help = {
      "Rabi frequency of the 0-1 transition (rad / time)",
      "Rabi frequency of the 1-2 transition (rad / time)",
      "phase of the 0-1 coupling (rad)",
      "phase of the 1-2 coupling (rad)",
      "measurement projectors: partial ({0,1} vs {2}) or full (one per level)",
      "comma-separated measurement counts; n means n + 1 reductions at t_k = k T / n",
      "free | projective | lindblad",
      "integrated rate per smoothed measurement event (lindblad mode)",
      "Gaussian width of each event, in units of T_P (lindblad mode)",
      "number of grid points over [0, tau-max]",
      "curve length in Poincare times",
      "detector margin for QZE / IZE intervals",
      "directory for per-curve CSV files",
      "path for the SVG chart",
      "path for the JSON report",
  };
  for (std::size_t i = 0; i < flags.size(); ++i) {
    app.add_option("--" + flags[i].first, flags[i].second, help[i]);
  }
  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");
  bool raw_time = false;
  app.add_flag("--raw-time", raw_time, "add a raw time column t to the CSV output");
  std::optional<std::string> tol_unitarity, tol_positivity, tol_oracle;
  app.add_option("--tol-unitarity", tol_unitarity, "unitarity / Hermiticity / trace tolerance");
  app.add_option("--tol-positivity", tol_positivity, "allowed negative eigenvalue magnitude");
  app.add_option("--tol-oracle", tol_oracle, "closed form vs eigendecomposition tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  zeno::RunReport report;
  try {
    zeno::ExperimentConfig config;
    if (!config_path.empty()) zeno::apply_config_file(config, config_path);
    for (const auto& [key, value] : flags) {
      if (value) zeno::apply_setting(config, key, *value);
    }
    if (raw_time) config.raw_time = true;
    if (tol_unitarity) zeno::apply_setting(config, "tol-unitarity", *tol_unitarity);
    if (tol_positivity) zeno::apply_setting(config, "tol-positivity", *tol_positivity);
    if (tol_oracle) zeno::apply_setting(config, "tol-oracle", *tol_oracle);

    report = zeno::run_experiment(config);
    zeno::emit_outputs(report);
  } catch (const zeno::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const zeno::ValidationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  print_summary(report);
  return kExitOk;
}
