#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace zeno {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

/// Numerical tolerances shared by the validity checks.
///
/// `unitarity` bounds Hermiticity, trace and unitarity defects; `positivity`
/// bounds how negative the smallest eigenvalue of a state may be; `oracle` is
/// the agreement required between two independent computations of the same
/// quantity.
struct Tolerances {
  double unitarity = 1e-12;
  double positivity = 1e-10;
  double oracle = 1e-10;
};

// Elementwise helpers. All return max-norm (largest entry magnitude) defects.
double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double hermiticity_defect(const ComplexMatrix& m);
double unitarity_defect(const ComplexMatrix& u);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Throws ValidationError unless `m` is square, non-empty and finite.
void require_square_finite(const ComplexMatrix& m, std::string_view what);

/// exp(-i * generator * duration) for a Hermitian generator, computed by
/// eigendecomposition. Throws ValidationError when the generator is not
/// Hermitian within `tol.unitarity` or the duration is not finite.
ComplexMatrix hermitian_propagator(const ComplexMatrix& generator, double duration,
                                   const Tolerances& tol = {});

struct DensityReport {
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;
  double min_eigenvalue = 0.0;  // of the Hermitian part
  bool passed = false;
};

/// Reports how far `rho` is from a valid density matrix. Never throws for a
/// square input.
DensityReport check_density(const ComplexMatrix& rho, const Tolerances& tol = {});
DensityReport check_density(const ComplexMatrix& rho, double tol);

/// A normalized pure state.
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes, const Tolerances& tol = {});

  static StateVector basis(Index dim, Index level);

  Index dim() const { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex operator[](Index i) const { return amplitudes_(i); }

 private:
  ComplexVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix. The constructor
/// validates and throws ValidationError on any violated invariant.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, const Tolerances& tol = {});

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix basis(Index dim, Index level);
  static DensityMatrix maximally_mixed(Index dim);

  Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex operator()(Index i, Index j) const { return matrix_(i, j); }
  double population(Index level) const { return matrix_(level, level).real(); }

 private:
  ComplexMatrix matrix_;
};

}  // namespace zeno
