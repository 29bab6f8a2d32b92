#pragma once

#include <span>
#include <string>
#include <vector>

#include "zeno/dynamics.hpp"
#include "zeno/measurement.hpp"

namespace zeno {

/// 2*pi / omega. Throws ValidationError when both couplings vanish.
double poincare_time(const RabiModel& model);

/// Limit curves for survival in |0>, sampled on a tau grid.
struct ReferenceCurves {
  std::vector<double> tau;
  /// cos^2(omega01 * T_P * tau): plain Rabi flopping on 0-1, the limit of
  /// infinitely frequent partial measurements.
  std::vector<double> rabi_limit;
  /// |U_00(tau * T_P)|^2: the unmeasured evolution.
  std::vector<double> free;
};

double rabi_limit_survival(const RabiModel& model, double tau);
double free_survival(const RabiModel& model, double tau);

ReferenceCurves reference_curves(const RabiModel& model, std::span<const double> grid);

enum class Regime { none, qze, ize, mixed };

std::string to_string(Regime regime);

struct ZenoInterval {
  Regime kind = Regime::none;  // qze or ize
  double tau_begin = 0.0;
  double tau_end = 0.0;
  std::size_t first = 0;  // grid indices, inclusive
  std::size_t last = 0;
  double peak = 0.0;  // max |P_measured - P_free| inside the interval
};

struct ZenoVerdict {
  Regime regime = Regime::none;
  std::vector<ZenoInterval> intervals;
  double margin = 0.0;  // max peak over all reported intervals

  bool displays(Regime kind) const;
  double peak_of(Regime kind) const;
};

struct DetectorOptions {
  double epsilon = 1e-3;
  std::size_t min_points = 3;
};

/// Finds maximal runs of grid points where the measured survival probability
/// exceeds the free one by more than epsilon (QZE) or falls below it by more
/// than epsilon (IZE). Runs shorter than `min_points` are dropped.
///
/// `regime` is the kind of the interval with the largest peak deviation; it is
/// `mixed` only when both kinds occur and their peaks agree within epsilon.
/// `displays()` answers the existence question for each kind separately.
///
/// Both curves must share the same grid, and the grid may not extend past one
/// Poincare time (tau <= 1).
ZenoVerdict detect_zeno_regime(const SurvivalCurve& free, const SurvivalCurve& measured,
                               const DetectorOptions& options = {});

/// max_i |curve.p0[i] - reference[i]|.
double sup_distance(const SurvivalCurve& curve, std::span<const double> reference);

}  // namespace zeno
