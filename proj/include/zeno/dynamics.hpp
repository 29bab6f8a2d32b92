#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zeno/linalg.hpp"

namespace zeno {

/// Resonant double-Rabi drive of a three-level ladder |0> - |1> - |2>.
///
/// Frequencies are angular (rad per unit time) with hbar = 1. The composite
/// frequency is omega = sqrt(omega01^2 + omega12^2) and the free evolution
/// recurs after the Poincare time 2*pi/omega.
class RabiModel {
 public:
  RabiModel(double omega01, double omega12, double phi01 = 0.0, double phi12 = 0.0);

  double omega01() const { return omega01_; }
  double omega12() const { return omega12_; }
  double phi01() const { return phi01_; }
  double phi12() const { return phi12_; }

  double omega() const { return omega_; }
  double max_coupling() const { return omega01_ > omega12_ ? omega01_ : omega12_; }

  /// Empty when both couplings vanish (no recurrence).
  std::optional<double> t_poincare() const;

 private:
  double omega01_;
  double omega12_;
  double phi01_;
  double phi12_;
  double omega_;
};

/// The omega12 = sqrt(15) * omega01 scenario, for which omega = 4 * omega01.
RabiModel reference_model(double omega01 = 1.0);

/// Level frequencies of the free Hamiltonian diag(w0, w1, w2).
struct AtomLevels {
  double omega0 = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;

  double operator[](int level) const;
};

/// Generator M of da/dt = -i M a in the rotating frame.
ComplexMatrix rwa_hamiltonian(const RabiModel& model);

/// Closed-form U(dt) = exp(-i M dt) for the three-level ladder.
ComplexMatrix closed_form_propagator(const RabiModel& model, double dt);

StateVector pure_state_evolve(const RabiModel& model, const StateVector& psi0, double t);

enum class PictureDirection { to_interaction, from_interaction };

/// Conjugation by exp(+-i H0 t): `to_interaction` maps X to
/// exp(i H0 t) X exp(-i H0 t), `from_interaction` inverts it.
ComplexMatrix interaction_transform(const ComplexMatrix& x, const AtomLevels& levels, double t,
                                    PictureDirection direction);

struct RwaRatio {
  std::string label;  // e.g. "|w10|" or "|w10 - w21|"
  double value = 0.0;
  bool passed = false;
};

struct RwaReport {
  double coupling_scale = 0.0;  // max(omega01, omega12)
  double threshold = 0.0;
  std::vector<RwaRatio> ratios;
  bool passed = false;
};

inline constexpr double kDefaultRwaThreshold = 100.0;

/// Advisory check that level splittings, and differences between them, dominate
/// the Rabi couplings by at least `ratio_threshold`.
RwaReport validate_rwa(const AtomLevels& levels, const RabiModel& model,
                       double ratio_threshold = kDefaultRwaThreshold);

}  // namespace zeno
