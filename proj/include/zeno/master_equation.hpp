#pragma once

#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "zeno/dynamics.hpp"
#include "zeno/linalg.hpp"
#include "zeno/measurement.hpp"

namespace zeno {

/// Measurement rate D(t) >= 0 (events per unit time).
class RateFunction {
 public:
  struct Constant {
    double value = 0.0;
  };

  /// Sum of Gaussian bumps of standard deviation `width`, each carrying
  /// integrated rate `weight`. Bumps are truncated to [window_begin,
  /// window_end] and renormalized there, so an event at a window edge still
  /// deposits its full weight inside the window.
  struct DeltaTrain {
    std::vector<double> times;
    double width = 0.0;
    double weight = 0.0;
    double window_begin = -std::numeric_limits<double>::infinity();
    double window_end = std::numeric_limits<double>::infinity();
  };

  struct Custom {
    std::function<double(double)> rate;
    std::string name;
  };

  using Description = std::variant<Constant, DeltaTrain, Custom>;

  static RateFunction constant(double value);
  static RateFunction custom(std::function<double(double)> rate, std::string name = "custom");
  static RateFunction delta_train(DeltaTrain train);

  /// Throws ValidationError if a custom rate returns a negative or non-finite value.
  double operator()(double t) const;

  const Description& description() const { return description_; }
  bool is_delta_train() const { return std::holds_alternative<DeltaTrain>(description_); }

  /// Non-fatal diagnostics gathered at construction (e.g. overlapping bumps).
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  explicit RateFunction(Description d) : description_(std::move(d)) {}

  Description description_;
  std::vector<double> bump_scale_;  // weight / (truncated Gaussian area), per event
  std::vector<std::string> warnings_;
};

/// Smoothed version of a train of instantaneous measurements at `times`.
///
/// Errors: width <= 0, weight <= 0, or an event outside the window. Bumps
/// closer than 6 * width produce a warning.
RateFunction delta_train_rate(std::vector<double> times, double width, double weight,
                              double window_begin = -std::numeric_limits<double>::infinity(),
                              double window_end = std::numeric_limits<double>::infinity());

/// d(rho)/dt = -i [M, rho] - (rate / 2) * sum_i [P_i, [P_i, rho]].
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& generator, double rate,
                           const ProjectorSet& set);

struct IntegrationOptions {
  /// Requested step; 0 selects min(T_P / 4096, width / 10). The actual step is
  /// the largest value <= the requested one that tiles each segment evenly.
  double step = 0.0;
  /// Times in (0, t_end] at which to record the state before correction.
  std::vector<double> sample_times;
  /// Hard limit on the pre-correction trace and Hermiticity defects.
  double max_defect = 1e-6;
};

struct IntegrationSample {
  double t = 0.0;
  ComplexMatrix rho;
};

struct IntegrationResult {
  DensityMatrix rho;
  double trace_defect = 0.0;        // before renormalization
  double hermiticity_defect = 0.0;  // before Hermitization
  double step = 0.0;
  long steps = 0;
  std::vector<IntegrationSample> samples;
};

inline constexpr long kDefaultStepsPerPoincare = 4096;

/// Classical RK4 integration of the measurement master equation from t = 0 to
/// t_end. The final state is Hermitized and trace-renormalized once; the run
/// fails with NumericalError if either correction exceeds `max_defect`.
IntegrationResult integrate(const DensityMatrix& rho0, const RabiModel& model,
                            const ProjectorSet& set, const RateFunction& rate, double t_end,
                            const IntegrationOptions& options = {});

}  // namespace zeno
