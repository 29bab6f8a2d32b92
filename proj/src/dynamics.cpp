#include "zeno/dynamics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw ValidationError(std::string("RabiModel: ") + name + " must be finite");
  }
}

}  // namespace

RabiModel::RabiModel(double omega01, double omega12, double phi01, double phi12)
    : omega01_(omega01), omega12_(omega12), phi01_(phi01), phi12_(phi12) {
  require_finite(omega01, "omega01");
  require_finite(omega12, "omega12");
  require_finite(phi01, "phi01");
  require_finite(phi12, "phi12");
  if (omega01 < 0.0) throw ValidationError("RabiModel: omega01 must be >= 0");
  if (omega12 < 0.0) throw ValidationError("RabiModel: omega12 must be >= 0");
  omega_ = std::sqrt(omega01 * omega01 + omega12 * omega12);
}

std::optional<double> RabiModel::t_poincare() const {
  if (omega_ <= 0.0) return std::nullopt;
  return 2.0 * std::numbers::pi / omega_;
}

RabiModel reference_model(double omega01) {
  return RabiModel(omega01, std::sqrt(15.0) * omega01);
}

double AtomLevels::operator[](int level) const {
  switch (level) {
    case 0: return omega0;
    case 1: return omega1;
    case 2: return omega2;
    default: throw ValidationError("AtomLevels: level index out of range");
  }
}

ComplexMatrix rwa_hamiltonian(const RabiModel& model) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 1) = std::polar(model.omega01(), model.phi01());
  m(1, 0) = std::conj(m(0, 1));
  m(1, 2) = std::polar(model.omega12(), model.phi12());
  m(2, 1) = std::conj(m(1, 2));
  return m;
}

ComplexMatrix closed_form_propagator(const RabiModel& model, double dt) {
  if (!std::isfinite(dt)) throw ValidationError("closed_form_propagator: dt must be finite");
  const double w = model.omega();
  if (w <= 0.0) return ComplexMatrix::Identity(3, 3);

  // M^3 = w^2 M, so exp(-i M dt) = I - i sin(a) M / w + (cos(a) - 1) M^2 / w^2.
  const double a = w * dt;
  const double c = std::cos(a);
  const double s = std::sin(a);
  const double w01 = model.omega01();
  const double w12 = model.omega12();
  const double w2 = w * w;
  const Complex e01 = std::polar(1.0, model.phi01());
  const Complex e12 = std::polar(1.0, model.phi12());

  ComplexMatrix u(3, 3);
  u(0, 0) = (w12 * w12 + w01 * w01 * c) / w2;
  u(0, 1) = -kI * (w01 / w) * e01 * s;
  u(0, 2) = -(w01 * w12 / w2) * e01 * e12 * (1.0 - c);
  u(1, 0) = -kI * (w01 / w) * std::conj(e01) * s;
  u(1, 1) = c;
  u(1, 2) = -kI * (w12 / w) * e12 * s;
  u(2, 0) = -(w01 * w12 / w2) * std::conj(e01 * e12) * (1.0 - c);
  u(2, 1) = -kI * (w12 / w) * std::conj(e12) * s;
  u(2, 2) = (w01 * w01 + w12 * w12 * c) / w2;
  return u;
}

StateVector pure_state_evolve(const RabiModel& model, const StateVector& psi0, double t) {
  if (psi0.dim() != 3) {
    std::ostringstream os;
    os << "pure_state_evolve: expected a 3-level state, got dimension " << psi0.dim();
    throw ValidationError(os.str());
  }
  ComplexVector out = closed_form_propagator(model, t) * psi0.amplitudes();
  // Rounding in U can move the norm by a few ulps; the state invariant is 1e-12.
  return StateVector(out / out.norm());
}

ComplexMatrix interaction_transform(const ComplexMatrix& x, const AtomLevels& levels, double t,
                                    PictureDirection direction) {
  if (x.rows() != 3 || x.cols() != 3) {
    throw ValidationError("interaction_transform: expected a 3x3 matrix");
  }
  if (!std::isfinite(levels.omega0) || !std::isfinite(levels.omega1) ||
      !std::isfinite(levels.omega2) || !std::isfinite(t)) {
    throw ValidationError("interaction_transform: level frequencies and time must be finite");
  }
  const double sign = direction == PictureDirection::to_interaction ? 1.0 : -1.0;
  ComplexMatrix out(3, 3);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      out(j, k) = x(j, k) * std::polar(1.0, sign * (levels[j] - levels[k]) * t);
    }
  }
  return out;
}

RwaReport validate_rwa(const AtomLevels& levels, const RabiModel& model, double ratio_threshold) {
  if (!(ratio_threshold > 1.0)) {
    throw ValidationError("validate_rwa: ratio_threshold must be > 1");
  }
  RwaReport report;
  report.coupling_scale = model.max_coupling();
  report.threshold = ratio_threshold;
  report.passed = true;

  auto add = [&](std::string label, double magnitude) {
    const double ratio = report.coupling_scale > 0.0
                             ? magnitude / report.coupling_scale
                             : std::numeric_limits<double>::infinity();
    const bool ok = ratio >= ratio_threshold;
    report.passed = report.passed && ok;
    report.ratios.push_back({std::move(label), ratio, ok});
  };
  auto name = [](int i, int j) { return "w" + std::to_string(i) + std::to_string(j); };

  // Splittings against the coupling.
  const std::array<std::pair<int, int>, 3> splittings{{{1, 0}, {2, 1}, {2, 0}}};
  for (auto [i, j] : splittings) {
    add("|" + name(i, j) + "|", std::abs(levels[i] - levels[j]));
  }

  // Differences between transition frequencies of distinct level pairs.
  std::vector<std::pair<int, int>> ordered;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) ordered.emplace_back(i, j);
    }
  }
  for (std::size_t a = 0; a < ordered.size(); ++a) {
    for (std::size_t b = a + 1; b < ordered.size(); ++b) {
      auto [i, j] = ordered[a];
      auto [k, l] = ordered[b];
      const bool same_pair = (i == k && j == l) || (i == l && j == k);
      if (same_pair) continue;
      const double wij = levels[i] - levels[j];
      const double wkl = levels[k] - levels[l];
      add("|" + name(i, j) + " - " + name(k, l) + "|", std::abs(wij - wkl));
    }
  }
  return report;
}

}  // namespace zeno
