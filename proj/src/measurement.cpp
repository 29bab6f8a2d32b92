#include "zeno/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

// Slack when deciding whether a grid time has reached a scheduled reduction.
// Grid values such as 0.25 * T_P land on t_k only up to rounding.
constexpr double kScheduleSlack = 1e-9;

void require_three_levels(Index dim, const char* what) {
  if (dim != 3) {
    std::ostringstream os;
    os << what << ": expected a 3-level system, got dimension " << dim;
    throw ValidationError(os.str());
  }
}

ComplexMatrix evolve(const ComplexMatrix& u, const ComplexMatrix& rho) {
  return u * rho * u.adjoint();
}

}  // namespace

ProjectorSet::ProjectorSet(std::vector<int> sector_of, std::vector<std::string> labels)
    : sector_of_(std::move(sector_of)), labels_(std::move(labels)) {}

ProjectorSet ProjectorSet::from_diagonal_masks(const std::vector<std::vector<int>>& masks,
                                               std::vector<std::string> labels) {
  if (masks.empty()) throw ValidationError("ProjectorSet: no projectors given");
  const std::size_t dim = masks.front().size();
  if (dim == 0) throw ValidationError("ProjectorSet: empty mask");
  if (!labels.empty() && labels.size() != masks.size()) {
    throw ValidationError("ProjectorSet: label count does not match projector count");
  }

  std::vector<int> sector_of(dim, -1);
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const auto& mask = masks[i];
    if (mask.size() != dim) throw ValidationError("ProjectorSet: masks differ in dimension");
    bool any = false;
    for (std::size_t level = 0; level < dim; ++level) {
      if (mask[level] != 0 && mask[level] != 1) {
        throw ValidationError("ProjectorSet: mask entries must be 0 or 1");
      }
      if (mask[level] == 1) {
        if (sector_of[level] != -1) {
          std::ostringstream os;
          os << "ProjectorSet: level " << level << " covered by projectors " << sector_of[level]
             << " and " << i << " (not orthogonal)";
          throw ValidationError(os.str());
        }
        sector_of[level] = static_cast<int>(i);
        any = true;
      }
    }
    if (!any) throw ValidationError("ProjectorSet: zero projector");
  }
  for (std::size_t level = 0; level < dim; ++level) {
    if (sector_of[level] == -1) {
      std::ostringstream os;
      os << "ProjectorSet: level " << level << " not covered (set is incomplete)";
      throw ValidationError(os.str());
    }
  }

  if (labels.empty()) {
    for (const auto& mask : masks) {
      std::string label = "P";
      for (std::size_t level = 0; level < dim; ++level) {
        if (mask[level] == 1) label += std::to_string(level);
      }
      labels.push_back(std::move(label));
    }
  }
  return ProjectorSet(std::move(sector_of), std::move(labels));
}

ComplexMatrix ProjectorSet::projector(std::size_t i) const {
  if (i >= size()) throw ValidationError("ProjectorSet::projector: index out of range");
  ComplexMatrix p = ComplexMatrix::Zero(dim(), dim());
  for (Index level = 0; level < dim(); ++level) {
    if (sector_of(level) == static_cast<int>(i)) p(level, level) = 1.0;
  }
  return p;
}

std::vector<ComplexMatrix> ProjectorSet::projectors() const {
  std::vector<ComplexMatrix> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(projector(i));
  return out;
}

ProjectorDefects ProjectorSet::defects() const {
  ProjectorDefects d;
  const auto ps = projectors();
  ComplexMatrix sum = ComplexMatrix::Zero(dim(), dim());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    d.idempotence = std::max(d.idempotence, max_abs(ps[i] * ps[i] - ps[i]));
    d.hermiticity = std::max(d.hermiticity, hermiticity_defect(ps[i]));
    for (std::size_t j = 0; j < ps.size(); ++j) {
      if (i != j) d.orthogonality = std::max(d.orthogonality, max_abs(ps[i] * ps[j]));
    }
    sum += ps[i];
  }
  d.completeness = max_abs(sum - ComplexMatrix::Identity(dim(), dim()));
  return d;
}

ProjectorSet projector_set(ProjectorKind kind, Index dim) {
  switch (kind) {
    case ProjectorKind::partial_01_vs_2:
      require_three_levels(dim, "projector_set(partial_01_vs_2)");
      return ProjectorSet::from_diagonal_masks({{1, 1, 0}, {0, 0, 1}}, {"P01", "P2"});
    case ProjectorKind::full_dephasing: {
      if (dim <= 0) throw ValidationError("projector_set: dim must be positive");
      std::vector<std::vector<int>> masks;
      for (Index level = 0; level < dim; ++level) {
        std::vector<int> mask(static_cast<std::size_t>(dim), 0);
        mask[static_cast<std::size_t>(level)] = 1;
        masks.push_back(std::move(mask));
      }
      return ProjectorSet::from_diagonal_masks(masks);
    }
  }
  throw ValidationError("projector_set: unknown kind");
}

ComplexMatrix reduce(const ComplexMatrix& rho, const ProjectorSet& set) {
  if (rho.rows() != set.dim() || rho.cols() != set.dim()) {
    throw ValidationError("reduce: state and projector set differ in dimension");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& p : set.projectors()) out += p * rho * p;
  return out;
}

DensityMatrix reduce(const DensityMatrix& rho, const ProjectorSet& set) {
  return DensityMatrix(reduce(rho.matrix(), set));
}

DiscreteSchedule::DiscreteSchedule(int count, double window) : count_(count), window_(window) {
  if (count < 1) throw ValidationError("DiscreteSchedule: count must be >= 1");
  if (!std::isfinite(window) || window <= 0.0) {
    throw ValidationError("DiscreteSchedule: window must be finite and > 0");
  }
}

std::vector<double> DiscreteSchedule::times() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count_) + 1);
  for (int k = 0; k <= count_; ++k) out.push_back(time(k));
  return out;
}

DensityMatrix evolve_with_measurements(const RabiModel& model, const ProjectorSet& set,
                                       const DiscreteSchedule& schedule,
                                       const DensityMatrix& rho0) {
  require_three_levels(rho0.dim(), "evolve_with_measurements");
  require_three_levels(set.dim(), "evolve_with_measurements");

  const ComplexMatrix u = closed_form_propagator(model, schedule.interval());
  ComplexMatrix rho = reduce(rho0.matrix(), set);
  for (int k = 1; k <= schedule.count(); ++k) {
    rho = reduce(evolve(u, rho), set);
  }
  return DensityMatrix(std::move(rho));
}

double survival_probability(const DensityMatrix& rho, const StateVector& psi0,
                            const Tolerances& tol) {
  if (rho.dim() != psi0.dim()) {
    throw ValidationError("survival_probability: state and reference differ in dimension");
  }
  const ComplexVector& a = psi0.amplitudes();
  const Complex value = a.dot(rho.matrix() * a);  // dot conjugates the left operand
  if (std::abs(value.imag()) > tol.unitarity) {
    std::ostringstream os;
    os << "survival_probability: imaginary part " << value.imag() << " exceeds tolerance";
    throw NumericalError(os.str());
  }
  return value.real();
}

void SurvivalCurve::validate(double tol) const {
  const std::size_t n = tau.size();
  if (p0.size() != n || p1.size() != n || p2.size() != n) {
    throw ValidationError("SurvivalCurve: column lengths differ");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && !(tau[i] > tau[i - 1])) {
      throw ValidationError("SurvivalCurve: tau must be strictly increasing");
    }
    for (double p : {p0[i], p1[i], p2[i]}) {
      if (!(p >= -tol && p <= 1.0 + tol)) {
        std::ostringstream os;
        os << "SurvivalCurve: population " << p << " outside [0, 1] at tau = " << tau[i];
        throw ValidationError(os.str());
      }
    }
    if (std::abs(p0[i] + p1[i] + p2[i] - 1.0) > tol) {
      std::ostringstream os;
      os << "SurvivalCurve: populations do not sum to 1 at tau = " << tau[i];
      throw ValidationError(os.str());
    }
  }
}

std::vector<double> uniform_grid(std::size_t points, double tau_max) {
  if (points < 2) throw ValidationError("uniform_grid: need at least 2 points");
  if (!std::isfinite(tau_max) || tau_max <= 0.0) {
    throw ValidationError("uniform_grid: tau_max must be finite and > 0");
  }
  std::vector<double> grid(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = tau_max * static_cast<double>(i) / last;
  return grid;
}

SurvivalCurve survival_curve(const RabiModel& model, const std::optional<ProjectorSet>& set,
                             const std::optional<DiscreteSchedule>& schedule,
                             std::span<const double> grid, const DensityMatrix& rho0) {
  require_three_levels(rho0.dim(), "survival_curve");
  if (set.has_value() != schedule.has_value()) {
    throw ValidationError("survival_curve: projector set and schedule must be given together");
  }
  const auto t_poincare = model.t_poincare();
  if (!t_poincare) {
    throw ValidationError("survival_curve: Poincare time undefined (both couplings are zero)");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0) {
      throw ValidationError("survival_curve: grid values must be finite and >= 0");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw ValidationError("survival_curve: grid must be sorted strictly increasing");
    }
  }

  // States right after the k-th reduction, k = 0..n.
  std::vector<ComplexMatrix> after_reduction;
  double tau_window = 0.0;
  if (set) {
    require_three_levels(set->dim(), "survival_curve");
    tau_window = schedule->window() / *t_poincare;
    if (!grid.empty() && grid.back() > tau_window * (1.0 + kScheduleSlack)) {
      throw ValidationError("survival_curve: grid extends beyond the measurement window");
    }
    const ComplexMatrix u = closed_form_propagator(model, schedule->interval());
    after_reduction.reserve(static_cast<std::size_t>(schedule->count()) + 1);
    after_reduction.push_back(reduce(rho0.matrix(), *set));
    for (int k = 1; k <= schedule->count(); ++k) {
      after_reduction.push_back(reduce(evolve(u, after_reduction.back()), *set));
    }
  }

  SurvivalCurve curve;
  curve.tau.assign(grid.begin(), grid.end());
  for (double tau : grid) {
    const double t = tau * *t_poincare;
    ComplexMatrix rho;
    if (set) {
      const int n = schedule->count();
      const double position = n * tau / tau_window;
      const int k = std::clamp(static_cast<int>(std::floor(position + kScheduleSlack)), 0, n);
      rho = evolve(closed_form_propagator(model, t - schedule->time(k)),
                   after_reduction[static_cast<std::size_t>(k)]);
    } else {
      rho = evolve(closed_form_propagator(model, t), rho0.matrix());
    }
    curve.p0.push_back(rho(0, 0).real());
    curve.p1.push_back(rho(1, 1).real());
    curve.p2.push_back(rho(2, 2).real());
  }
  curve.validate();
  return curve;
}

}  // namespace zeno
