#pragma once

// Boson sector of the Rabi model after the Schrieffer-Wolff transformation,
// with the qubit frozen in its lower sigma_z state:
//   H = delta n - (g^2 / 4 omega) (a + a^dagger)^2,   g_c = sqrt(delta omega).

#include <cstddef>

#include "cqm/dynamics.hpp"
#include "cqm/linalg.hpp"
#include "cqm/quantum_ops.hpp"

namespace cqm {

struct QRMParams {
  double delta = 0.01;     // boson frequency, the estimated parameter
  double omega = 100.0;    // qubit splitting
  double estimate = 0.01;  // controller's guess of delta
  double g = 0.0;

  double gc() const;
  double gc_estimate() const;
  QRMParams with_delta(double d) const;
  // True when delta/omega is too large for the effective model to be trusted.
  bool outside_dispersive_regime() const { return delta / omega > 0.01; }
  void validate() const;
};

// Requires g < g_c.
Operator qrm_sw_hamiltonian(const QRMParams& p, const FockSpace& space);

// Same operator without the normal-phase check, for pulses such as g^2 = 2 delta omega.
Operator qrm_pulse_hamiltonian(double delta, double omega, double g, const FockSpace& space);

// r = |ln(1 - (g/g_c)^2)| / 4 and phi = pi, which puts the long axis of the
// state along Re(alpha) and the reduced noise in the conjugate quadrature.
SqueezeParams qrm_squeeze(const QRMParams& p);

StateVector qrm_ground_state(const QRMParams& p, const FockSpace& space);

// Truncation that holds the ground state, doubling from `start`.
std::size_t qrm_truncation(const QRMParams& p, std::size_t start = Tolerances::default_truncation);

// 1 / (32 delta^2 (1 - g/g_c)^2), accurate close to g_c.
double qrm_qfi_critical_approx(const QRMParams& p);

// u^2 / (8 delta^2 (1 - u)^2) with u = (g/g_c)^2.
double qrm_qfi_exact(const QRMParams& p);

// sinh^2 r
double qrm_mean_photons(const QRMParams& p);

// i g gdot / (4 (g~_c^2 - g^2)) (a^dagger^2 - a^2), built from the estimate.
Operator qrm_cd_term(const QRMParams& p, double gdot, const FockSpace& space);

// 8 T^2 (n^2 + n)
double qrm_hl_curve(double n_mean, double duration);

// dH/d(delta) = n
Operator qrm_delta_generator(const FockSpace& space);

TimeDependentHamiltonian qrm_driving(const QRMParams& p, const FockSpace& space, bool cd_enabled);

}  // namespace cqm
