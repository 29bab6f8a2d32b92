#include "zeno/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

#include "zeno/errors.hpp"

namespace zeno {

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("max_abs_diff: shape mismatch");
  }
  return max_abs(a - b);
}

double hermiticity_defect(const ComplexMatrix& m) { return max_abs(m - m.adjoint()); }

double unitarity_defect(const ComplexMatrix& u) {
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

void require_square_finite(const ComplexMatrix& m, std::string_view what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw ValidationError(os.str());
  }
  if (!m.allFinite()) {
    throw ValidationError(std::string(what) + ": matrix has non-finite entries");
  }
}

ComplexMatrix hermitian_propagator(const ComplexMatrix& generator, double duration,
                                   const Tolerances& tol) {
  require_square_finite(generator, "hermitian_propagator");
  if (!std::isfinite(duration)) {
    throw ValidationError("hermitian_propagator: duration must be finite");
  }
  const double defect = hermiticity_defect(generator);
  if (defect > tol.unitarity) {
    std::ostringstream os;
    os << "hermitian_propagator: generator is not Hermitian (max |M - M^dagger| = " << defect
       << ")";
    throw ValidationError(os.str());
  }

  // Symmetrize so rounding in the input cannot leak into the eigenbasis.
  const ComplexMatrix h = 0.5 * (generator + generator.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_propagator: eigendecomposition failed");
  }
  const auto& vecs = solver.eigenvectors();
  ComplexVector phases = (-kI * duration * solver.eigenvalues().cast<Complex>()).array().exp();
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

DensityReport check_density(const ComplexMatrix& rho, const Tolerances& tol) {
  if (rho.rows() == 0 || rho.rows() != rho.cols()) {
    throw ValidationError("check_density: expected a non-empty square matrix");
  }
  DensityReport report;
  if (!rho.allFinite()) {
    report.hermiticity_defect = report.trace_defect = std::numeric_limits<double>::infinity();
    report.min_eigenvalue = -std::numeric_limits<double>::infinity();
    return report;
  }
  report.hermiticity_defect = hermiticity_defect(rho);
  report.trace_defect = std::abs(rho.trace() - Complex(1.0, 0.0));
  const ComplexMatrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = solver.eigenvalues().minCoeff();
  report.passed = report.hermiticity_defect <= tol.unitarity &&
                  report.trace_defect <= tol.unitarity &&
                  report.min_eigenvalue >= -tol.positivity;
  return report;
}

DensityReport check_density(const ComplexMatrix& rho, double tol) {
  return check_density(rho, Tolerances{tol, tol, tol});
}

StateVector::StateVector(ComplexVector amplitudes, const Tolerances& tol)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw ValidationError("StateVector: empty");
  if (!amplitudes_.allFinite()) throw ValidationError("StateVector: non-finite amplitudes");
  const double norm_defect = std::abs(amplitudes_.norm() - 1.0);
  if (norm_defect > tol.unitarity) {
    std::ostringstream os;
    os << "StateVector: not normalized (|norm - 1| = " << norm_defect << ")";
    throw ValidationError(os.str());
  }
}

StateVector StateVector::basis(Index dim, Index level) {
  if (dim <= 0 || level < 0 || level >= dim) {
    throw ValidationError("StateVector::basis: level out of range");
  }
  ComplexVector v = ComplexVector::Zero(dim);
  v(level) = 1.0;
  return StateVector(std::move(v));
}

DensityMatrix::DensityMatrix(ComplexMatrix m, const Tolerances& tol) : matrix_(std::move(m)) {
  require_square_finite(matrix_, "DensityMatrix");
  const DensityReport r = check_density(matrix_, tol);
  if (!r.passed) {
    std::ostringstream os;
    os << "DensityMatrix: invalid state (hermiticity defect " << r.hermiticity_defect
       << ", trace defect " << r.trace_defect << ", min eigenvalue " << r.min_eigenvalue << ")";
    throw ValidationError(os.str());
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const ComplexVector& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

DensityMatrix DensityMatrix::basis(Index dim, Index level) {
  return pure(StateVector::basis(dim, level));
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  if (dim <= 0) throw ValidationError("DensityMatrix::maximally_mixed: dim must be positive");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

}  // namespace zeno
