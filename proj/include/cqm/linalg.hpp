#pragma once

// Dense complex linear algebra over small Hilbert spaces.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace cqm {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr cplx kI{0.0, 1.0};

// Labels the Hilbert space a state lives in.
class Basis {
 public:
  enum class Kind { Qubit, Fock, QubitTensorFock };

  static Basis qubit() { return Basis(Kind::Qubit, 0); }
  static Basis fock(std::size_t truncation);
  static Basis qubit_fock(std::size_t truncation);

  Kind kind() const { return kind_; }
  std::size_t truncation() const { return truncation_; }
  std::size_t dim() const;

  bool operator==(const Basis&) const = default;

 private:
  Basis(Kind kind, std::size_t truncation) : kind_(kind), truncation_(truncation) {}

  Kind kind_;
  std::size_t truncation_;
};

// Unit-norm amplitude vector. Construction rejects vectors whose norm is off
// by more than Tolerances::norm; use normalized() to rescale explicitly.
class StateVector {
 public:
  StateVector(Basis basis, Vector amplitudes);

  static StateVector normalized(Basis basis, Vector amplitudes);

  const Basis& basis() const { return basis_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  cplx operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

 private:
  Basis basis_;
  Vector amplitudes_;
};

class Operator {
 public:
  // With hermitian = true the entries are checked against their adjoint.
  Operator(Matrix entries, bool hermitian);

  static Operator hermitian(Matrix entries) { return Operator(std::move(entries), true); }
  static Operator general(Matrix entries) { return Operator(std::move(entries), false); }
  static Operator zero(std::size_t dim);
  static Operator identity(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  bool is_hermitian() const { return hermitian_; }

  Operator operator+(const Operator& other) const;
  Operator operator-(const Operator& other) const;
  Operator scaled(double factor) const;

 private:
  Matrix entries_;
  bool hermitian_;
};

// Largest entrywise |A - A^dagger|.
double hermitian_defect(const Matrix& m);

// Returns (m + m^dagger)/2 after checking the defect is within tolerance.
Matrix hermitize(const Matrix& m);

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;  // ascending
  Matrix eigenvectors;          // column k belongs to eigenvalues(k)

  std::size_t dim() const { return static_cast<std::size_t>(eigenvalues.size()); }
  double ground_energy() const { return eigenvalues(0); }
  Vector ground_state() const { return eigenvectors.col(0); }
  // Smallest spacing between consecutive eigenvalues.
  double min_gap() const;
};

// Full spectral decomposition of a Hermitian operator. Each eigenvector has
// its largest-magnitude entry made real and positive; ties resolve to the
// lowest index.
EigenDecomposition eigh(const Operator& op);

// exp(scale * op) via the spectral decomposition of the Hermitian op.
Matrix expm(const Operator& op, cplx scale);

// exp(scale * op) psi via the spectral decomposition. The result must be unit
// norm, which holds whenever scale is purely imaginary.
StateVector expm_apply(const Operator& op, cplx scale, const StateVector& psi);

cplx overlap(const StateVector& a, const StateVector& b);  // <a|b>
double fidelity(const StateVector& a, const StateVector& b);
cplx expectation(const Operator& op, const StateVector& psi);
double variance(const Operator& op, const StateVector& psi);

// Distance between two states modulo a global phase, min_phi |b - e^{i phi} a|.
double phase_distance(const Vector& a, const Vector& b);

}  // namespace cqm
