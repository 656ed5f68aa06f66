#pragma once

// Figure-style experiments built from the library operations. Each sweep row
// can be recomputed by calling run_protocol (or the model functions) directly.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "cqm/dynamics.hpp"
#include "cqm/metrology.hpp"
#include "cqm/quantum_ops.hpp"
#include "cqm/run_config.hpp"
#include "cqm/sweep_result.hpp"

namespace cqm {

// Everything needed to propagate one protocol at the true delta and at
// delta +/- step/2 with identical controls. Control couplings are fixed in
// units of the estimate, so they do not move when delta does.
struct ProtocolSetup {
  ModelKind model;
  double delta;
  double fd_step;  // absolute
  std::function<TimeDependentHamiltonian(double delta, bool cd)> driving;
  std::function<StateVector(double delta)> initial_state;
  std::function<RampSchedule(double duration)> ramp;
  StateVector target;  // ground state at the final coupling, true delta
  Operator generator;  // dH/d(delta)
  PropagationConfig propagation;
};

ProtocolSetup make_protocol(const RunConfig& cfg);

struct ProtocolOutcome {
  QFIEstimate qfi;
  double fidelity;
  double max_variance;    // of the generator, over the states visited at the true delta
  double bound_critical;  // 4 T^2 max_variance
  ConvergenceCertificate certificate;
  StateVector final_state;
  std::vector<TrajectoryPoint> trajectory;
};

// Adaptive propagation at delta fixes the step count; the finite-difference
// pair then reuses exactly that count.
ProtocolOutcome run_protocol(const ProtocolSetup& setup, double duration, bool cd, bool record_trajectory = false);

// Least-squares slope of log y against log x over points with x <= x_max and y > 0.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y, double x_max);

SweepResult run_fig1(const RunConfig& cfg);
SweepResult run_fig2(const RunConfig& cfg);
SweepResult run_fig3(const RunConfig& cfg);
SweepResult run_fig4(const RunConfig& cfg);

struct HusimiPanel {
  std::string label;
  double time;
  StateVector state;
  std::vector<double> q;
  QuadratureMoments moments;
};

struct Fig6Result {
  BangOffProtocol protocol;
  std::vector<cplx> grid;
  std::array<HusimiPanel, 3> panels;  // initial, after the pulse, after the free rotation
  double fidelity;                    // final state against the target ground state
  SweepResult summary;
};

Fig6Result run_fig6(const RunConfig& cfg);

struct CustomResult {
  SweepResult sweep;
  // One CD trajectory per row when cfg.trajectory is set.
  std::vector<std::vector<TrajectoryPoint>> trajectories;
};

CustomResult run_custom(const RunConfig& cfg);

// Runs cfg.experiment and writes its CSV files into cfg.output_dir. Returns the
// written paths; `row_failures` counts rows lost to numerical errors.
std::vector<std::string> run_and_write(const RunConfig& cfg, std::size_t& row_failures);

}  // namespace cqm
