#include "cqm/lz.hpp"

#include <algorithm>
#include <cmath>

#include "cqm/errors.hpp"
#include "cqm/quantum_ops.hpp"

namespace cqm {

void LZParams::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("LZParams: delta must be positive");
  if (!(estimate > 0.0) || !std::isfinite(estimate)) throw DomainError("LZParams: estimate must be positive");
  if (!std::isfinite(g)) throw DomainError("LZParams: g must be finite");
}

Operator lz_hamiltonian(const LZParams& p) {
  p.validate();
  return Operator::hermitian(0.5 * p.delta * pauli(Axis::X).entries() + 0.5 * p.g * pauli(Axis::Z).entries());
}

StateVector lz_ground_state(const LZParams& p) {
  const EigenDecomposition d = eigh(lz_hamiltonian(p));
  return StateVector(Basis::qubit(), d.ground_state());
}

double lz_qfi_adiabatic(const LZParams& p) {
  p.validate();
  const double s = p.delta * p.delta + p.g * p.g;
  return p.g * p.g / (s * s);
}

double lz_qsl_time(const LZParams& p, double target_g) {
  LZParams target = p;
  target.g = target_g;
  const double c = std::min(1.0, std::abs(overlap(spin_down(), lz_ground_state(target))));
  return 2.0 / p.delta * std::acos(c);
}

Operator lz_cd_term(const LZParams& p, double gdot) {
  p.validate();
  const double coeff = -gdot * p.estimate / (2.0 * (p.estimate * p.estimate + p.g * p.g));
  return pauli(Axis::Y).scaled(coeff);
}

Operator lz_delta_generator() { return pauli(Axis::X).scaled(0.5); }

TimeDependentHamiltonian lz_driving(const LZParams& p, bool cd_enabled) {
  p.validate();
  const double delta = p.delta;
  const double est = p.estimate;
  std::vector<HamiltonianTerm> terms;
  terms.push_back({pauli(Axis::X), [delta](double, double) { return 0.5 * delta; }, false});
  terms.push_back({pauli(Axis::Z), [](double g, double) { return 0.5 * g; }, false});
  terms.push_back({pauli(Axis::Y), [est](double g, double gdot) { return -gdot * est / (2.0 * (est * est + g * g)); }, true});
  return TimeDependentHamiltonian(std::move(terms), cd_enabled, est);
}

}  // namespace cqm
