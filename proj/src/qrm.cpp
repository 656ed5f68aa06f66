#include "cqm/qrm.hpp"

#include <cmath>
#include <sstream>

#include "cqm/errors.hpp"

namespace cqm {

namespace {

void require_normal_phase(const QRMParams& p, const char* what) {
  p.validate();
  if (!(p.g < p.gc())) {
    std::ostringstream os;
    os << what << ": g = " << p.g << " is not below g_c = " << p.gc();
    throw DomainError(os.str());
  }
}

double cd_coefficient(double gc_estimate, double g, double gdot) {
  const double gc2 = gc_estimate * gc_estimate;
  const double gap = gc2 - g * g;
  if (!(gap > Tolerances::cd_singularity * gc2)) {
    std::ostringstream os;
    os << "qrm_cd_term: g = " << g << " too close to (or above) the estimated critical coupling " << gc_estimate;
    throw DomainError(os.str());
  }
  return g * gdot / (4.0 * gap);
}

// i (a^dagger^2 - a^2), Hermitian.
Operator squeeze_generator(const FockSpace& space) {
  return Operator::hermitian(kI * (creation_squared(space) - annihilation_squared(space)));
}

}  // namespace

double QRMParams::gc() const { return std::sqrt(delta * omega); }
double QRMParams::gc_estimate() const { return std::sqrt(estimate * omega); }

QRMParams QRMParams::with_delta(double d) const {
  QRMParams q = *this;
  q.delta = d;
  return q;
}

void QRMParams::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("QRMParams: delta must be positive");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("QRMParams: omega must be positive");
  if (!(estimate > 0.0) || !std::isfinite(estimate)) throw DomainError("QRMParams: estimate must be positive");
  if (!(g >= 0.0) || !std::isfinite(g)) throw DomainError("QRMParams: g must be non-negative");
}

Operator qrm_pulse_hamiltonian(double delta, double omega, double g, const FockSpace& space) {
  const Ladder l = ladder(space);
  return Operator::hermitian(delta * l.n.entries() - (g * g / (4.0 * omega)) * quadrature_squared(space));
}

Operator qrm_sw_hamiltonian(const QRMParams& p, const FockSpace& space) {
  require_normal_phase(p, "qrm_sw_hamiltonian");
  return qrm_pulse_hamiltonian(p.delta, p.omega, p.g, space);
}

SqueezeParams qrm_squeeze(const QRMParams& p) {
  require_normal_phase(p, "qrm_squeeze");
  const double u = (p.g / p.gc()) * (p.g / p.gc());
  return SqueezeParams{0.25 * std::abs(std::log1p(-u)), M_PI};
}

StateVector qrm_ground_state(const QRMParams& p, const FockSpace& space) {
  return squeezed_vacuum(space, qrm_squeeze(p));
}

std::size_t qrm_truncation(const QRMParams& p, std::size_t start) {
  return truncation_for_squeezing(qrm_squeeze(p).r, start);
}

double qrm_qfi_critical_approx(const QRMParams& p) {
  require_normal_phase(p, "qrm_qfi_critical_approx");
  const double x = 1.0 - p.g / p.gc();
  return 1.0 / (32.0 * p.delta * p.delta * x * x);
}

double qrm_qfi_exact(const QRMParams& p) {
  require_normal_phase(p, "qrm_qfi_exact");
  const double u = (p.g / p.gc()) * (p.g / p.gc());
  return u * u / (8.0 * p.delta * p.delta * (1.0 - u) * (1.0 - u));
}

double qrm_mean_photons(const QRMParams& p) {
  const double s = std::sinh(qrm_squeeze(p).r);
  return s * s;
}

Operator qrm_cd_term(const QRMParams& p, double gdot, const FockSpace& space) {
  p.validate();
  return squeeze_generator(space).scaled(cd_coefficient(p.gc_estimate(), p.g, gdot));
}

double qrm_hl_curve(double n_mean, double duration) {
  if (!(n_mean >= 0.0) || !(duration >= 0.0)) throw DomainError("qrm_hl_curve: arguments must be non-negative");
  return 8.0 * duration * duration * (n_mean * n_mean + n_mean);
}

Operator qrm_delta_generator(const FockSpace& space) { return ladder(space).n; }

TimeDependentHamiltonian qrm_driving(const QRMParams& p, const FockSpace& space, bool cd_enabled) {
  p.validate();
  const double delta = p.delta;
  const double omega = p.omega;
  const double gce = p.gc_estimate();
  std::vector<HamiltonianTerm> terms;
  terms.push_back({ladder(space).n, [delta](double, double) { return delta; }, false});
  terms.push_back({Operator::hermitian(quadrature_squared(space)), [omega](double g, double) { return -g * g / (4.0 * omega); }, false});
  terms.push_back({squeeze_generator(space), [gce](double g, double gdot) { return cd_coefficient(gce, g, gdot); }, true});
  return TimeDependentHamiltonian(std::move(terms), cd_enabled, p.estimate);
}

}  // namespace cqm
