#include "cqm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cqm/errors.hpp"
#include "cqm/tolerances.hpp"

namespace cqm {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionError(os.str());
  }
}

double scaled_hermitian_tolerance(const Matrix& m) {
  const double scale = m.size() == 0 ? 1.0 : std::max(1.0, m.cwiseAbs().maxCoeff());
  return Tolerances::hermitian * scale;
}

}  // namespace

Basis Basis::fock(std::size_t truncation) {
  if (truncation < 1) throw DomainError("Fock truncation must be positive");
  return Basis(Kind::Fock, truncation);
}

Basis Basis::qubit_fock(std::size_t truncation) {
  if (truncation < 1) throw DomainError("Fock truncation must be positive");
  return Basis(Kind::QubitTensorFock, truncation);
}

std::size_t Basis::dim() const {
  switch (kind_) {
    case Kind::Qubit:
      return 2;
    case Kind::Fock:
      return truncation_;
    case Kind::QubitTensorFock:
      return 2 * truncation_;
  }
  return 0;
}

StateVector::StateVector(Basis basis, Vector amplitudes)
    : basis_(basis), amplitudes_(std::move(amplitudes)) {
  require_same_dim(basis_.dim(), dim(), "StateVector");
  const double n = amplitudes_.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > Tolerances::norm) {
    std::ostringstream os;
    os << "StateVector: norm " << n << " deviates from 1";
    throw NumericalError(os.str());
  }
}

StateVector StateVector::normalized(Basis basis, Vector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw NumericalError("StateVector: cannot normalize a zero vector");
  amplitudes /= n;
  return StateVector(basis, std::move(amplitudes));
}

Operator::Operator(Matrix entries, bool hermitian) : entries_(std::move(entries)), hermitian_(hermitian) {
  if (entries_.rows() != entries_.cols()) throw DimensionError("Operator: matrix is not square");
  if (entries_.rows() == 0) throw DimensionError("Operator: empty matrix");
  if (hermitian_) {
    const double defect = hermitian_defect(entries_);
    if (!(defect <= scaled_hermitian_tolerance(entries_))) {
      std::ostringstream os;
      os << "Operator flagged Hermitian has max|A - A^dagger| = " << defect;
      throw NotHermitianError(os.str(), defect);
    }
  }
}

Operator Operator::zero(std::size_t dim) {
  return Operator(Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)), true);
}

Operator Operator::identity(std::size_t dim) {
  return Operator(Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)), true);
}

Operator Operator::operator+(const Operator& other) const {
  require_same_dim(dim(), other.dim(), "Operator +");
  return Operator(entries_ + other.entries_, hermitian_ && other.hermitian_);
}

Operator Operator::operator-(const Operator& other) const {
  require_same_dim(dim(), other.dim(), "Operator -");
  return Operator(entries_ - other.entries_, hermitian_ && other.hermitian_);
}

Operator Operator::scaled(double factor) const { return Operator(entries_ * factor, hermitian_); }

double hermitian_defect(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("hermitian_defect: matrix is not square");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix hermitize(const Matrix& m) {
  const double defect = hermitian_defect(m);
  if (!(defect <= scaled_hermitian_tolerance(m))) {
    std::ostringstream os;
    os << "hermitize: max|A - A^dagger| = " << defect;
    throw NotHermitianError(os.str(), defect);
  }
  return (m + m.adjoint()) * 0.5;
}

double EigenDecomposition::min_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 1; k < eigenvalues.size(); ++k) gap = std::min(gap, eigenvalues(k) - eigenvalues(k - 1));
  return gap;
}

EigenDecomposition eigh(const Operator& op) {
  if (!op.is_hermitian()) throw NotHermitianError("eigh: operator is not flagged Hermitian", hermitian_defect(op.entries()));

  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.entries());
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eigh: eigensolver did not converge (dim " << op.dim() << ", max|A| = "
       << op.entries().cwiseAbs().maxCoeff() << ")";
    throw NumericalError(os.str());
  }

  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < out.eigenvectors.cols(); ++k) {
    auto col = out.eigenvectors.col(k);
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      const double a = std::abs(col(i));
      if (a > best_abs * (1.0 + 1e-12)) {
        best_abs = a;
        best = i;
      }
    }
    col *= std::conj(col(best)) / best_abs;
    col(best) = cplx(col(best).real(), 0.0);
  }

  const double scale = std::max(1.0, out.eigenvalues.cwiseAbs().maxCoeff());
  const Matrix residual = op.entries() * out.eigenvectors - out.eigenvectors * out.eigenvalues.asDiagonal();
  const double worst = residual.colwise().norm().maxCoeff();
  if (!(worst <= Tolerances::eigen_residual * scale)) {
    std::ostringstream os;
    os << "eigh: eigenvector residual " << worst << " exceeds tolerance (dim " << op.dim()
       << ", spectral radius " << scale << ", min gap " << out.min_gap() << ")";
    throw NumericalError(os.str());
  }
  return out;
}

Matrix expm(const Operator& op, cplx scale) {
  const EigenDecomposition d = eigh(op);
  Vector phases(d.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::exp(scale * d.eigenvalues(k));
  return d.eigenvectors * phases.asDiagonal() * d.eigenvectors.adjoint();
}

StateVector expm_apply(const Operator& op, cplx scale, const StateVector& psi) {
  require_same_dim(op.dim(), psi.dim(), "expm_apply");
  const EigenDecomposition d = eigh(op);
  Vector coeffs = d.eigenvectors.adjoint() * psi.amplitudes();
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs(k) *= std::exp(scale * d.eigenvalues(k));
  return StateVector(psi.basis(), d.eigenvectors * coeffs);
}

cplx overlap(const StateVector& a, const StateVector& b) {
  require_same_dim(a.dim(), b.dim(), "overlap");
  // Explicit loop so that overlap(b, a) is the exact conjugate of overlap(a, b).
  double re = 0.0;
  double im = 0.0;
  const Vector& x = a.amplitudes();
  const Vector& y = b.amplitudes();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    re += x(i).real() * y(i).real() + x(i).imag() * y(i).imag();
    im += x(i).real() * y(i).imag() - x(i).imag() * y(i).real();
  }
  return {re, im};
}

double fidelity(const StateVector& a, const StateVector& b) {
  const cplx c = overlap(a, b);
  return std::min(1.0, c.real() * c.real() + c.imag() * c.imag());
}

cplx expectation(const Operator& op, const StateVector& psi) {
  require_same_dim(op.dim(), psi.dim(), "expectation");
  return psi.amplitudes().dot(op.entries() * psi.amplitudes());
}

double variance(const Operator& op, const StateVector& psi) {
  require_same_dim(op.dim(), psi.dim(), "variance");
  const Vector a_psi = op.entries() * psi.amplitudes();
  if (op.is_hermitian()) {
    // |(A - <A>) psi|^2 is non-negative by construction.
    const cplx mean = psi.amplitudes().dot(a_psi);
    return (a_psi - mean.real() * psi.amplitudes()).squaredNorm();
  }
  const cplx mean = psi.amplitudes().dot(a_psi);
  const cplx second = psi.amplitudes().dot(op.entries() * a_psi);
  return (second - mean * mean).real();
}

double phase_distance(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError("phase_distance: dimension mismatch");
  const cplx c = a.dot(b);
  const double mag = std::abs(c);
  const cplx phase = mag > 0.0 ? c / mag : cplx(1.0, 0.0);
  return (b - phase * a).norm();
}

}  // namespace cqm
