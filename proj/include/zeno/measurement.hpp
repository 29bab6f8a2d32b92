#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zeno/dynamics.hpp"
#include "zeno/linalg.hpp"

namespace zeno {

enum class ProjectorKind {
  partial_01_vs_2,  // {diag(1,1,0), diag(0,0,1)}: "is the atom on level 2?"
  full_dephasing,   // one rank-1 projector per level
};

struct ProjectorDefects {
  double idempotence = 0.0;    // max_i |P_i^2 - P_i|
  double hermiticity = 0.0;    // max_i |P_i - P_i^dagger|
  double orthogonality = 0.0;  // max_{i != j} |P_i P_j|
  double completeness = 0.0;   // |sum_i P_i - I|
};

/// Complete set of orthogonal projectors, each diagonal in the free-Hamiltonian
/// eigenbasis (and therefore commuting with it).
///
/// Only 0/1 diagonal projectors can be built, so the set is fully described by
/// which sector each level belongs to.
class ProjectorSet {
 public:
  /// One 0/1 mask per projector. Every level must be covered by exactly one
  /// mask and no mask may be empty.
  static ProjectorSet from_diagonal_masks(const std::vector<std::vector<int>>& masks,
                                          std::vector<std::string> labels = {});

  Index dim() const { return static_cast<Index>(sector_of_.size()); }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  int sector_of(Index level) const { return sector_of_.at(static_cast<std::size_t>(level)); }

  ComplexMatrix projector(std::size_t i) const;
  std::vector<ComplexMatrix> projectors() const;

  ProjectorDefects defects() const;

 private:
  ProjectorSet(std::vector<int> sector_of, std::vector<std::string> labels);

  std::vector<int> sector_of_;
  std::vector<std::string> labels_;
};

ProjectorSet projector_set(ProjectorKind kind, Index dim = 3);

/// Non-selective ideal measurement: rho -> sum_i P_i rho P_i.
DensityMatrix reduce(const DensityMatrix& rho, const ProjectorSet& set);
ComplexMatrix reduce(const ComplexMatrix& rho, const ProjectorSet& set);

/// Uniform measurement times t_k = k * window / count, k = 0..count.
///
/// "n measurements" means count = n: there are n + 1 reduction events, one at
/// each end of the window and n - 1 in between.
class DiscreteSchedule {
 public:
  DiscreteSchedule(int count, double window);

  int count() const { return count_; }
  double window() const { return window_; }
  double interval() const { return window_ / count_; }
  double time(int k) const { return k * window_ / count_; }
  std::vector<double> times() const;

 private:
  int count_;
  double window_;
};

/// R U(t_n, t_{n-1}) R ... R U(t_1, t_0) R rho0 with the closed-form propagator.
DensityMatrix evolve_with_measurements(const RabiModel& model, const ProjectorSet& set,
                                       const DiscreteSchedule& schedule, const DensityMatrix& rho0);

/// <psi0| rho |psi0>. Throws NumericalError if the imaginary part exceeds
/// `tol.unitarity`.
double survival_probability(const DensityMatrix& rho, const StateVector& psi0,
                            const Tolerances& tol = {});

/// Level populations sampled on a grid of tau = t / T_P.
struct SurvivalCurve {
  std::vector<double> tau;
  std::vector<double> p0;
  std::vector<double> p1;
  std::vector<double> p2;

  std::size_t size() const { return tau.size(); }

  /// Throws ValidationError if lengths differ, tau is not strictly increasing,
  /// or populations fall outside [0, 1] / do not sum to one within `tol`.
  void validate(double tol = 1e-10) const;
};

/// `points` evenly spaced values covering [0, tau_max].
std::vector<double> uniform_grid(std::size_t points, double tau_max = 1.0);

/// Populations at each grid point tau.
///
/// With a set and schedule, every reduction scheduled at t_k <= tau * T_P is
/// applied (including t_0 = 0), then the state evolves freely to tau * T_P with
/// no trailing reduction. Without them the free curve is produced. The
/// schedule window must equal tau_max * T_P for the largest grid value.
SurvivalCurve survival_curve(const RabiModel& model, const std::optional<ProjectorSet>& set,
                             const std::optional<DiscreteSchedule>& schedule,
                             std::span<const double> grid, const DensityMatrix& rho0);

}  // namespace zeno
