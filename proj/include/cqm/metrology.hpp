#pragma once

// Quantum Fisher information estimators, bounds and speed limits.

#include <functional>
#include <optional>
#include <string_view>

#include "cqm/linalg.hpp"

namespace cqm {

enum class QFIMethod { PureStateDerivative, OverlapFiniteDifference, Spectral, ThreeTermDecomposition };

std::string_view to_string(QFIMethod m);

struct QFIComponents {
  double unitary;  // I_U, from the parameter dependence of the propagator
  double initial;  // I_psi0, from the parameter dependence of the initial state
  double cross;
};

struct QFIFlags {
  bool clipped_negative = false;  // a slightly negative value was set to 0
  bool precision_floor = false;   // 1 - |overlap|^2 or the value itself below the resolvable floor
  bool unstable = false;          // Richardson and raw values disagree
};

struct QFIEstimate {
  double value = 0.0;
  QFIMethod method = QFIMethod::PureStateDerivative;
  double delta_step = 0.0;
  std::optional<QFIComponents> components;
  std::optional<double> richardson;
  QFIFlags flags;

  // Value to report, or nothing when it sits on the precision floor.
  std::optional<double> reportable() const;
};

// 4 (<dpsi|dpsi> - |<dpsi|psi>|^2) for a unit psi and unnormalized derivative dpsi.
QFIEstimate qfi_pure(const StateVector& psi, const Vector& dpsi);

// (4/delta^2)(1 - |<psi_-|psi_+>|^2) for states at theta -/+ delta/2.
QFIEstimate qfi_overlap(const StateVector& psi_minus, const StateVector& psi_plus, double delta);

// qfi_overlap at delta, plus the Richardson combination with delta/2 in `richardson`.
// The estimate is flagged unstable if the two differ by more than Tolerances::richardson_agreement.
QFIEstimate qfi_overlap_richardson(const std::function<StateVector(double)>& path, double center, double delta);

// 4 sum_{n>0} |<n|dH|0>|^2 / (E_n - E_0)^2
QFIEstimate qfi_spectral(const EigenDecomposition& decomp, const Operator& dh);

// Splits the QFI of U(theta) psi0(theta) into propagator, initial-state and
// cross contributions, from the pair of propagators and initial states at
// theta -/+ delta/2. `value` is the sum of the three.
QFIEstimate qfi_three_term(const Matrix& u_minus, const Matrix& u_plus, const StateVector& psi0_minus,
                           const StateVector& psi0_plus, double delta);

// 4 T^2 Var[H_omega] in psi0.
double qfi_upper_bound(const StateVector& psi0, const Operator& h_omega, double duration);

struct BoundCurve {
  enum class Kind { SQL, HL, CriticalBound };

  Kind kind;
  // SQL: unused. HL: mean photon number. CriticalBound: largest Var[H_omega] along the protocol.
  double resources = 0.0;

  double evaluate(double duration) const;
};

// Larger of the variance-based and mean-energy-based limits; the mean energy
// is measured from the ground energy of h.
double qsl_general(const Operator& h, const StateVector& psi0, const StateVector& psit);

}  // namespace cqm
