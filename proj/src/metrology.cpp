#include "cqm/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cqm/errors.hpp"
#include "cqm/tolerances.hpp"

namespace cqm {

namespace {

// Applies the negative-value and precision-floor conventions to a raw value.
QFIEstimate finalize(double raw, QFIMethod method, double step) {
  QFIEstimate e;
  e.method = method;
  e.delta_step = step;
  if (raw < 0.0) {
    if (raw < -Tolerances::negative_qfi) {
      std::ostringstream os;
      os << "QFI estimate " << raw << " is negative beyond tolerance";
      throw NumericalError(os.str());
    }
    e.flags.clipped_negative = true;
    raw = 0.0;
  }
  if (raw < Tolerances::qfi_floor) {
    e.flags.precision_floor = raw != 0.0 || e.flags.clipped_negative;
    raw = 0.0;
  }
  e.value = raw;
  return e;
}

// 1 - |<a|b>|^2 as the squared residual of b after projecting out a, which
// keeps relative precision when the overlap is close to 1.
double infidelity(const Vector& a, const Vector& b) {
  const cplx c = a.dot(b) / a.squaredNorm();
  return (b - c * a).squaredNorm() / b.squaredNorm();
}

}  // namespace

std::string_view to_string(QFIMethod m) {
  switch (m) {
    case QFIMethod::PureStateDerivative:
      return "pure_state_derivative";
    case QFIMethod::OverlapFiniteDifference:
      return "overlap_finite_difference";
    case QFIMethod::Spectral:
      return "spectral";
    case QFIMethod::ThreeTermDecomposition:
      return "three_term_decomposition";
  }
  return "unknown";
}

std::optional<double> QFIEstimate::reportable() const {
  if (flags.precision_floor) return std::nullopt;
  return value;
}

QFIEstimate qfi_pure(const StateVector& psi, const Vector& dpsi) {
  if (static_cast<std::size_t>(dpsi.size()) != psi.dim()) throw DimensionError("qfi_pure: dimension mismatch");
  const Vector& v = psi.amplitudes();
  const cplx c = v.dot(dpsi);
  // |dpsi - <psi|dpsi> psi|^2 equals <dpsi|dpsi> - |<dpsi|psi>|^2 without the cancellation.
  return finalize(4.0 * (dpsi - c * v).squaredNorm(), QFIMethod::PureStateDerivative, 0.0);
}

QFIEstimate qfi_overlap(const StateVector& psi_minus, const StateVector& psi_plus, double delta) {
  if (psi_minus.dim() != psi_plus.dim()) throw DimensionError("qfi_overlap: dimension mismatch");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("qfi_overlap: delta must be positive");
  const double loss = infidelity(psi_minus.amplitudes(), psi_plus.amplitudes());
  if (loss < Tolerances::overlap_floor) {
    QFIEstimate e = finalize(0.0, QFIMethod::OverlapFiniteDifference, delta);
    e.flags.precision_floor = loss != 0.0 || psi_minus.amplitudes() != psi_plus.amplitudes();
    return e;
  }
  return finalize(4.0 * loss / (delta * delta), QFIMethod::OverlapFiniteDifference, delta);
}

QFIEstimate qfi_overlap_richardson(const std::function<StateVector(double)>& path, double center, double delta) {
  QFIEstimate coarse = qfi_overlap(path(center - 0.5 * delta), path(center + 0.5 * delta), delta);
  const QFIEstimate fine = qfi_overlap(path(center - 0.25 * delta), path(center + 0.25 * delta), 0.5 * delta);
  if (coarse.flags.precision_floor || fine.flags.precision_floor) {
    coarse.flags.precision_floor = true;
    return coarse;
  }
  const double extrapolated = (4.0 * fine.value - coarse.value) / 3.0;
  coarse.richardson = extrapolated;
  const double scale = std::max(std::abs(extrapolated), std::abs(coarse.value));
  if (std::abs(extrapolated - coarse.value) > Tolerances::richardson_agreement * scale) coarse.flags.unstable = true;
  return coarse;
}

QFIEstimate qfi_spectral(const EigenDecomposition& decomp, const Operator& dh) {
  if (decomp.dim() != dh.dim()) throw DimensionError("qfi_spectral: dimension mismatch");
  if (decomp.dim() < 2) return finalize(0.0, QFIMethod::Spectral, 0.0);
  const double gap = decomp.eigenvalues(1) - decomp.eigenvalues(0);
  if (gap < Tolerances::degenerate_gap) {
    std::ostringstream os;
    os << "qfi_spectral: ground-state gap " << gap << " below " << Tolerances::degenerate_gap;
    throw DegeneracyError(os.str(), gap);
  }
  const Vector coupling = decomp.eigenvectors.adjoint() * (dh.entries() * decomp.ground_state());
  double sum = 0.0;
  for (Eigen::Index n = 1; n < coupling.size(); ++n) {
    const double e = decomp.eigenvalues(n) - decomp.eigenvalues(0);
    sum += std::norm(coupling(n)) / (e * e);
  }
  return finalize(4.0 * sum, QFIMethod::Spectral, 0.0);
}

QFIEstimate qfi_three_term(const Matrix& u_minus, const Matrix& u_plus, const StateVector& psi0_minus,
                           const StateVector& psi0_plus, double delta) {
  const auto d = static_cast<Eigen::Index>(psi0_minus.dim());
  if (psi0_plus.dim() != psi0_minus.dim() || u_minus.rows() != d || u_minus.cols() != d || u_plus.rows() != d ||
      u_plus.cols() != d) {
    throw DimensionError("qfi_three_term: dimension mismatch");
  }
  if (!(delta > 0.0)) throw DomainError("qfi_three_term: delta must be positive");

  // Remove the arbitrary relative phase of the two initial states.
  const Vector& a = psi0_minus.amplitudes();
  Vector b = psi0_plus.amplitudes();
  const cplx c = a.dot(b);
  if (std::abs(c) > 0.0) b *= std::conj(c) / std::abs(c);

  // Central differences and midpoints. With these, (U+ psi+ - U- psi-)/delta
  // equals dU psi + U dpsi exactly.
  const Vector psi_mid = 0.5 * (a + b);
  const Matrix u_mid = 0.5 * (u_minus + u_plus);
  const Vector dpsi = (b - a) / delta;
  const Matrix du = (u_plus - u_minus) / delta;

  const double psi_norm = psi_mid.norm();
  const Vector psi = psi_mid / psi_norm;
  const Vector dpsi_n = dpsi / psi_norm;
  const Vector phi_raw = u_mid * psi;
  const double phi_norm = phi_raw.norm();
  const Vector phi = phi_raw / phi_norm;
  const Vector du_psi = du * psi / phi_norm;
  const Vector u_dpsi = u_mid * dpsi_n / phi_norm;

  const cplx big_a = phi.dot(du_psi);
  const cplx big_b = phi.dot(u_dpsi);

  QFIComponents parts{};
  parts.unitary = 4.0 * (du_psi.squaredNorm() - std::norm(big_a));
  parts.initial = 4.0 * (u_dpsi.squaredNorm() - std::norm(big_b));
  parts.cross = 8.0 * du_psi.dot(u_dpsi).real() - 8.0 * (std::conj(big_a) * big_b).real();

  QFIEstimate e = finalize(parts.unitary + parts.initial + parts.cross, QFIMethod::ThreeTermDecomposition, delta);
  e.components = parts;
  return e;
}

double qfi_upper_bound(const StateVector& psi0, const Operator& h_omega, double duration) {
  if (!h_omega.is_hermitian()) throw NotHermitianError("qfi_upper_bound: generator is not Hermitian", hermitian_defect(h_omega.entries()));
  return 4.0 * duration * duration * variance(h_omega, psi0);
}

double BoundCurve::evaluate(double duration) const {
  if (!(duration >= 0.0)) throw DomainError("BoundCurve: duration must be non-negative");
  const double t2 = duration * duration;
  switch (kind) {
    case Kind::SQL:
      return t2;
    case Kind::HL:
      return 8.0 * t2 * (resources * resources + resources);
    case Kind::CriticalBound:
      return 4.0 * t2 * resources;
  }
  return 0.0;
}

double qsl_general(const Operator& h, const StateVector& psi0, const StateVector& psit) {
  if (!h.is_hermitian()) throw NotHermitianError("qsl_general: Hamiltonian is not Hermitian", hermitian_defect(h.entries()));
  const double ov = std::min(1.0, std::abs(overlap(psi0, psit)));
  const double angle = std::acos(ov);
  const double spread = std::sqrt(std::max(0.0, variance(h, psi0)));
  const double mean = expectation(h, psi0).real() - eigh(h).ground_energy();

  const bool has_mt = spread > Tolerances::qsl_denominator;
  const bool has_ml = mean > Tolerances::qsl_denominator;
  if (!has_mt && !has_ml) {
    if (angle == 0.0) return 0.0;
    throw NumericalError("qsl_general: energy spread and mean energy both vanish");
  }
  double tau = 0.0;
  if (has_mt) tau = std::max(tau, angle / spread);
  if (has_ml) tau = std::max(tau, (2.0 / M_PI) * std::acos(ov * ov) / mean);
  return tau;
}

}  // namespace cqm
