#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zeno/analysis.hpp"
#include "zeno/linalg.hpp"
#include "zeno/measurement.hpp"

namespace zeno {

enum class Mode { free, projective, lindblad };

std::string to_string(Mode mode);
std::string to_string(ProjectorKind kind);

/// Everything needed to reproduce a run. Times are in units of the Poincare
/// time (tau = t / T_P), including the delta-train `width`.
struct ExperimentConfig {
  double omega01 = 1.0;
  double omega12 = 3.872983346207417;  // sqrt(15)
  double phi01 = 0.0;
  double phi12 = 0.0;
  ProjectorKind projector = ProjectorKind::partial_01_vs_2;
  std::vector<int> n{1, 2, 4, 8, 16, 64};
  Mode mode = Mode::projective;
  double weight = 50.0;
  double width = 1.0 / 2000.0;
  std::size_t grid = 401;
  double tau_max = 1.0;
  double epsilon = 1e-3;
  bool raw_time = false;
  std::string csv_dir;
  std::string svg_path;
  std::string report_path;
  Tolerances tolerances;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Sets one field from its textual form. Keys use the command-line flag
/// spelling without dashes (`tau-max`); underscores are accepted too.
/// Throws ConfigError on unknown keys or malformed values.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Flat `key = value` text, one key per line, `#` starts a comment.
void apply_config_text(ExperimentConfig& config, std::string_view text);
void apply_config_file(ExperimentConfig& config, const std::string& path);

/// Inverse of apply_config_text: every field, with doubles in round-trip
/// precision.
std::string to_config_text(const ExperimentConfig& config);

struct CurveDefects {
  double max_trace_defect = 0.0;   // over the checked states
  double min_eigenvalue = 1.0;     // over the checked states
  double oracle_distance = 0.0;    // closed form vs eigendecomposition propagator
  double integration_defect = 0.0; // lindblad mode: worst pre-correction defect
};

struct CurveResult {
  int n = 0;
  SurvivalCurve curve;
  ZenoVerdict verdict;
  CurveDefects defects;
};

struct RunReport {
  ExperimentConfig config;
  double t_poincare = 0.0;
  SurvivalCurve free;
  CurveDefects free_defects;
  std::vector<CurveResult> measured;  // ordered as config.n
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;
};

/// Free curve plus one measured curve per requested n, each compared against
/// the free curve on the tau <= 1 part of the grid.
RunReport run_experiment(const ExperimentConfig& config);

/// Decimal (never exponential) rendering rounded to `significant` digits,
/// trailing zeros removed.
std::string format_decimal(double value, int significant = 12);

/// Header `tau,P0,P1,P2` (or `tau,t,P0,P1,P2` when `t_poincare` is given),
/// then one row per sample.
void write_curve_csv(std::ostream& out, const SurvivalCurve& curve,
                     std::optional<double> t_poincare = std::nullopt);
SurvivalCurve read_curve_csv(std::istream& in);

void write_svg(std::ostream& out, const RunReport& report);
void write_report_json(std::ostream& out, const RunReport& report);

/// Writes `free.csv` and `n<k>.csv` into `config.csv_dir`, the chart to
/// `config.svg_path` and the JSON report to `config.report_path`; empty paths
/// are skipped. Throws std::runtime_error on unwritable paths.
void emit_outputs(const RunReport& report);

}  // namespace zeno
