#include "zeno/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

// Rounding slack on the tau <= 1 recurrence bound.
constexpr double kTauSlack = 1e-12;

}  // namespace

double poincare_time(const RabiModel& model) {
  const auto tp = model.t_poincare();
  if (!tp) throw ValidationError("poincare_time: undefined recurrence (omega = 0)");
  return *tp;
}

double rabi_limit_survival(const RabiModel& model, double tau) {
  const double c = std::cos(model.omega01() * poincare_time(model) * tau);
  return c * c;
}

double free_survival(const RabiModel& model, double tau) {
  return std::norm(closed_form_propagator(model, tau * poincare_time(model))(0, 0));
}

ReferenceCurves reference_curves(const RabiModel& model, std::span<const double> grid) {
  ReferenceCurves out;
  out.tau.assign(grid.begin(), grid.end());
  for (double tau : grid) {
    out.rabi_limit.push_back(rabi_limit_survival(model, tau));
    out.free.push_back(free_survival(model, tau));
  }
  return out;
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::none: return "none";
    case Regime::qze: return "QZE";
    case Regime::ize: return "IZE";
    case Regime::mixed: return "mixed";
  }
  return "unknown";
}

bool ZenoVerdict::displays(Regime kind) const {
  return std::any_of(intervals.begin(), intervals.end(),
                     [kind](const ZenoInterval& i) { return i.kind == kind; });
}

double ZenoVerdict::peak_of(Regime kind) const {
  double peak = 0.0;
  for (const auto& i : intervals) {
    if (i.kind == kind) peak = std::max(peak, i.peak);
  }
  return peak;
}

ZenoVerdict detect_zeno_regime(const SurvivalCurve& free, const SurvivalCurve& measured,
                               const DetectorOptions& options) {
  if (free.size() != measured.size()) {
    throw ValidationError("detect_zeno_regime: curves have different grid sizes");
  }
  for (std::size_t i = 0; i < free.size(); ++i) {
    if (free.tau[i] != measured.tau[i]) {
      throw ValidationError("detect_zeno_regime: curves are sampled on different grids");
    }
  }
  if (!(options.epsilon >= 0.0)) throw ValidationError("detect_zeno_regime: epsilon must be >= 0");
  if (!free.tau.empty() && free.tau.back() > 1.0 + kTauSlack) {
    throw ValidationError(
        "detect_zeno_regime: grid extends past one Poincare time (tau > 1)");
  }

  auto sign_at = [&](std::size_t i) {
    const double d = measured.p0[i] - free.p0[i];
    if (d > options.epsilon) return 1;
    if (d < -options.epsilon) return -1;
    return 0;
  };

  ZenoVerdict verdict;
  const std::size_t n = free.size();
  std::size_t i = 0;
  while (i < n) {
    const int s = sign_at(i);
    std::size_t j = i;
    double peak = 0.0;
    while (j < n && sign_at(j) == s) {
      peak = std::max(peak, std::abs(measured.p0[j] - free.p0[j]));
      ++j;
    }
    if (s != 0 && j - i >= std::max<std::size_t>(options.min_points, 1)) {
      verdict.intervals.push_back(
          {s > 0 ? Regime::qze : Regime::ize, free.tau[i], free.tau[j - 1], i, j - 1, peak});
      verdict.margin = std::max(verdict.margin, peak);
    }
    i = j;
  }

  const double qze = verdict.peak_of(Regime::qze);
  const double ize = verdict.peak_of(Regime::ize);
  const bool has_qze = verdict.displays(Regime::qze);
  const bool has_ize = verdict.displays(Regime::ize);
  if (has_qze && has_ize) {
    if (std::abs(qze - ize) <= options.epsilon) {
      verdict.regime = Regime::mixed;
    } else {
      verdict.regime = qze > ize ? Regime::qze : Regime::ize;
    }
  } else if (has_qze) {
    verdict.regime = Regime::qze;
  } else if (has_ize) {
    verdict.regime = Regime::ize;
  }
  return verdict;
}

double sup_distance(const SurvivalCurve& curve, std::span<const double> reference) {
  if (reference.size() != curve.size()) {
    throw ValidationError("sup_distance: reference length differs from curve");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    d = std::max(d, std::abs(curve.p0[i] - reference[i]));
  }
  return d;
}

}  // namespace zeno
