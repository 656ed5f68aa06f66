#pragma once

// Landau-Zener two-level model H = (delta/2) sigma_x + (g/2) sigma_z.

#include "cqm/dynamics.hpp"
#include "cqm/linalg.hpp"

namespace cqm {

struct LZParams {
  double delta = 0.05;     // level splitting at g = 0, the estimated parameter
  double estimate = 0.05;  // controller's guess of delta, used only by the CD term
  double g = 0.0;

  void validate() const;
};

Operator lz_hamiltonian(const LZParams& p);

// Lowest eigenvector of lz_hamiltonian from eigh.
StateVector lz_ground_state(const LZParams& p);

// g^2 / (delta^2 + g^2)^2
double lz_qfi_adiabatic(const LZParams& p);

// (2/delta) arccos |<down|psi_0(target_g)>|, starting from spin down.
double lz_qsl_time(const LZParams& p, double target_g);

// -(gdot estimate / (2 (estimate^2 + g^2))) sigma_y
Operator lz_cd_term(const LZParams& p, double gdot);

// dH/d(delta) = sigma_x / 2
Operator lz_delta_generator();

// Driven Hamiltonian for propagation at the given true delta; the CD term uses p.estimate.
TimeDependentHamiltonian lz_driving(const LZParams& p, bool cd_enabled);

}  // namespace cqm
