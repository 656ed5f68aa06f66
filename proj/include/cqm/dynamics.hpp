#pragma once

// Time-dependent propagation, counter-diabatic terms and the bang-off protocol.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cqm/kernels.hpp"
#include "cqm/linalg.hpp"
#include "cqm/ramp.hpp"
#include "cqm/tolerances.hpp"

namespace cqm {

// One fixed Hermitian operator scaled by a real coefficient c(g, gdot).
struct HamiltonianTerm {
  Operator op;
  std::function<double(double g, double gdot)> coefficient;
  bool counter_diabatic = false;
};

// H(t) = sum_k c_k(g(t), gdot(t)) M_k. Terms flagged counter_diabatic only
// contribute when cd_enabled is set. `estimate` records the parameter value
// the counter-diabatic terms were built from.
class TimeDependentHamiltonian {
 public:
  TimeDependentHamiltonian(std::vector<HamiltonianTerm> terms, bool cd_enabled, double estimate);

  std::size_t dim() const { return dim_; }
  bool cd_enabled() const { return cd_enabled_; }
  double estimate() const { return estimate_; }

  Operator bare(double g) const;
  Operator counter_diabatic(double g, double gdot) const;
  Operator at(double g, double gdot) const;

  // Same value as at(), assembled sparse for the propagation loop.
  kernels::SparseMatrix sparse_at(double g, double gdot) const;

 private:
  std::vector<HamiltonianTerm> terms_;
  std::vector<kernels::SparseMatrix> sparse_terms_;
  std::size_t dim_;
  bool cd_enabled_;
  double estimate_;
};

struct PropagationConfig {
  enum class Method { MidpointExponential };

  std::size_t steps = Tolerances::initial_steps;
  Method method = Method::MidpointExponential;
  bool record_trajectory = false;
  // With adaptive set, steps is only the starting point; otherwise it is used as given.
  bool adaptive = true;
  double tolerance = Tolerances::propagation_change;
  std::size_t max_steps = Tolerances::max_steps;
  std::size_t trajectory_samples = 201;
  // Variance of this operator is tracked over every step.
  std::optional<Operator> monitored;
};

struct ConvergenceCertificate {
  std::size_t steps = 0;
  // Phase-insensitive distance between the runs with steps/2 and steps; NaN if not checked.
  double change = 0.0;
  bool checked = false;
};

struct TrajectoryPoint {
  double t;
  double g;
  double fidelity_to_ground;
  double norm;
};

struct PropagationResult {
  StateVector state;
  ConvergenceCertificate certificate;
  std::vector<TrajectoryPoint> trajectory;
  double max_norm_deviation = 0.0;
  double max_monitored_variance = 0.0;
};

// psi_f = prod_k exp(-i dt_k H(t_k + dt_k/2)) psi0 on the ramp's step grid.
// Adaptive runs double the step count (jumping ahead by the dt^2 error
// estimate) until two successive runs agree within cfg.tolerance.
PropagationResult propagate(const TimeDependentHamiltonian& h, const RampSchedule& ramp, const StateVector& psi0,
                            const PropagationConfig& cfg);

// Propagator matrix with exactly cfg.steps steps.
Matrix propagate_unitary(const TimeDependentHamiltonian& h, const RampSchedule& ramp, const PropagationConfig& cfg);

// i sum_{m != n} |m><m|dH|n><n| / (E_n - E_m) in the eigenbasis of h_bare.
// Throws DegeneracyError when two levels are closer than Tolerances::degenerate_gap.
Operator cd_spectral(const Operator& h_bare, const Operator& dh_dt);

struct BangOffProtocol {
  RampSchedule schedule;
  double g_bang;
  double t_bang;
  double t_off;
  double tau_qsl;
};

// Squeezing pulse at g_bang = sqrt(2 delta omega) for -ln(1 - (g/g_c)^2)/(4 delta),
// then free rotation at g = 0 for pi/(4 delta).
BangOffProtocol bang_off_schedule(double delta, double omega, double g_target);

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& trajectory);

}  // namespace cqm
