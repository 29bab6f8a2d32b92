#include "zeno/master_equation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

ComplexMatrix rhs_with(const ComplexMatrix& rho, const ComplexMatrix& generator, double rate,
                       const std::vector<ComplexMatrix>& projectors) {
  ComplexMatrix out = -kI * commutator(generator, rho);
  if (rate != 0.0) {
    ComplexMatrix dephasing = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (const auto& p : projectors) dephasing += commutator(p, commutator(p, rho));
    out -= 0.5 * rate * dephasing;
  }
  return out;
}

}  // namespace

RateFunction RateFunction::constant(double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw ValidationError("RateFunction::constant: rate must be finite and >= 0");
  }
  return RateFunction(Constant{value});
}

RateFunction RateFunction::custom(std::function<double(double)> rate, std::string name) {
  if (!rate) throw ValidationError("RateFunction::custom: empty callable");
  return RateFunction(Custom{std::move(rate), std::move(name)});
}

RateFunction RateFunction::delta_train(DeltaTrain train) {
  if (!std::isfinite(train.width) || train.width <= 0.0) {
    throw ValidationError("delta_train_rate: width must be finite and > 0");
  }
  if (!std::isfinite(train.weight) || train.weight <= 0.0) {
    throw ValidationError("delta_train_rate: weight must be finite and > 0");
  }
  if (!(train.window_begin < train.window_end)) {
    throw ValidationError("delta_train_rate: empty window");
  }
  std::sort(train.times.begin(), train.times.end());
  for (double t : train.times) {
    if (!std::isfinite(t) || t < train.window_begin || t > train.window_end) {
      std::ostringstream os;
      os << "delta_train_rate: event time " << t << " outside the window";
      throw ValidationError(os.str());
    }
  }

  const double sigma = train.width;
  std::vector<double> scale;
  scale.reserve(train.times.size());
  for (double tk : train.times) {
    const double area = normal_cdf((train.window_end - tk) / sigma) -
                        normal_cdf((train.window_begin - tk) / sigma);
    scale.push_back(train.weight / (sigma * std::sqrt(2.0 * std::numbers::pi) * area));
  }

  std::vector<std::string> warnings;
  for (std::size_t k = 1; k < train.times.size(); ++k) {
    const double spacing = train.times[k] - train.times[k - 1];
    if (spacing < 6.0 * sigma) {
      std::ostringstream os;
      os << "delta_train_rate: events at " << train.times[k - 1] << " and " << train.times[k]
         << " are closer than 6 * width; bumps overlap";
      warnings.push_back(os.str());
    }
  }

  RateFunction rate(std::move(train));
  rate.bump_scale_ = std::move(scale);
  rate.warnings_ = std::move(warnings);
  return rate;
}

double RateFunction::operator()(double t) const {
  if (const auto* c = std::get_if<Constant>(&description_)) return c->value;
  if (const auto* c = std::get_if<Custom>(&description_)) {
    const double v = c->rate(t);
    if (!std::isfinite(v) || v < 0.0) {
      std::ostringstream os;
      os << "RateFunction '" << c->name << "': invalid rate " << v << " at t = " << t;
      throw ValidationError(os.str());
    }
    return v;
  }
  const auto& train = std::get<DeltaTrain>(description_);
  if (t < train.window_begin || t > train.window_end) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < train.times.size(); ++k) {
    const double z = (t - train.times[k]) / train.width;
    if (std::abs(z) < 40.0) sum += bump_scale_[k] * std::exp(-0.5 * z * z);
  }
  return sum;
}

RateFunction delta_train_rate(std::vector<double> times, double width, double weight,
                              double window_begin, double window_end) {
  return RateFunction::delta_train(
      RateFunction::DeltaTrain{std::move(times), width, weight, window_begin, window_end});
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& generator, double rate,
                           const ProjectorSet& set) {
  if (!std::isfinite(rate) || rate < 0.0) {
    throw ValidationError("lindblad_rhs: rate must be finite and >= 0");
  }
  if (rho.rows() != set.dim() || rho.cols() != set.dim() || generator.rows() != set.dim() ||
      generator.cols() != set.dim()) {
    throw ValidationError("lindblad_rhs: dimension mismatch");
  }
  return rhs_with(rho, generator, rate, set.projectors());
}

IntegrationResult integrate(const DensityMatrix& rho0, const RabiModel& model,
                            const ProjectorSet& set, const RateFunction& rate, double t_end,
                            const IntegrationOptions& options) {
  if (rho0.dim() != 3 || set.dim() != 3) {
    throw ValidationError("integrate: expected a 3-level state and projector set");
  }
  if (!std::isfinite(t_end) || t_end <= 0.0) {
    throw ValidationError("integrate: t_end must be finite and > 0");
  }
  if (!std::isfinite(options.step) || options.step < 0.0) {
    throw ValidationError("integrate: step must be finite and > 0");
  }

  const auto* train = std::get_if<RateFunction::DeltaTrain>(&rate.description());
  const double base = model.t_poincare().value_or(t_end);
  double step = options.step;
  if (step == 0.0) {
    step = base / static_cast<double>(kDefaultStepsPerPoincare);
    if (train) step = std::min(step, train->width / 10.0);
  } else if (train && step > train->width / 10.0 * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "integrate: step " << step << " too coarse for delta-train width " << train->width
       << " (need step <= width / 10)";
    throw ValidationError(os.str());
  }

  std::vector<double> stops = options.sample_times;
  std::sort(stops.begin(), stops.end());
  for (double t : stops) {
    if (!std::isfinite(t) || t <= 0.0 || t > t_end) {
      throw ValidationError("integrate: sample times must lie in (0, t_end]");
    }
  }
  const std::size_t sample_count = stops.size();
  stops.push_back(t_end);

  const ComplexMatrix generator = rwa_hamiltonian(model);
  const std::vector<ComplexMatrix> projectors = set.projectors();
  auto f = [&](double t, const ComplexMatrix& rho) {
    return rhs_with(rho, generator, rate(t), projectors);
  };

  IntegrationResult result{rho0, 0.0, 0.0, 0.0, 0, {}};
  result.samples.reserve(sample_count);
  ComplexMatrix rho = rho0.matrix();
  double t0 = 0.0;
  for (std::size_t s = 0; s < stops.size(); ++s) {
    const double t1 = stops[s];
    const double span = t1 - t0;
    if (span > 0.0) {
      const long n = std::max(1L, static_cast<long>(std::ceil(span / step - 1e-9)));
      const double h = span / static_cast<double>(n);
      result.step = std::max(result.step, h);
      for (long i = 0; i < n; ++i) {
        const double t = t0 + static_cast<double>(i) * h;
        const ComplexMatrix k1 = f(t, rho);
        const ComplexMatrix k2 = f(t + 0.5 * h, rho + (0.5 * h) * k1);
        const ComplexMatrix k3 = f(t + 0.5 * h, rho + (0.5 * h) * k2);
        const ComplexMatrix k4 = f(t + h, rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      result.steps += n;
      t0 = t1;
    }
    if (s < sample_count) result.samples.push_back({t1, rho});
  }

  result.trace_defect = std::abs(rho.trace() - Complex(1.0, 0.0));
  result.hermiticity_defect = hermiticity_defect(rho);
  if (!(result.trace_defect < options.max_defect) ||
      !(result.hermiticity_defect < options.max_defect)) {
    std::ostringstream os;
    os << "integrate: accuracy failure (trace defect " << result.trace_defect
       << ", hermiticity defect " << result.hermiticity_defect << ", limit " << options.max_defect
       << ")";
    throw NumericalError(os.str());
  }
  ComplexMatrix corrected = 0.5 * (rho + rho.adjoint());
  corrected /= corrected.trace().real();
  try {
    result.rho = DensityMatrix(std::move(corrected));
  } catch (const ValidationError& e) {
    throw NumericalError(std::string("integrate: final state is not a density matrix: ") + e.what());
  }
  return result;
}

}  // namespace zeno
