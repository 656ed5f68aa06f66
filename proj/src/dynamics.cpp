#include "cqm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "cqm/csv.hpp"
#include "cqm/errors.hpp"

namespace cqm {

namespace {

double checked_coefficient(const HamiltonianTerm& term, double g, double gdot) {
  const double c = term.coefficient(g, gdot);
  if (!std::isfinite(c)) {
    std::ostringstream os;
    os << "TimeDependentHamiltonian: non-finite coefficient at g = " << g << ", gdot = " << gdot;
    throw NumericalError(os.str());
  }
  return c;
}

}  // namespace

TimeDependentHamiltonian::TimeDependentHamiltonian(std::vector<HamiltonianTerm> terms, bool cd_enabled, double estimate)
    : terms_(std::move(terms)), cd_enabled_(cd_enabled), estimate_(estimate) {
  if (terms_.empty()) throw DomainError("TimeDependentHamiltonian: no terms");
  dim_ = terms_.front().op.dim();
  for (const auto& t : terms_) {
    if (t.op.dim() != dim_) throw DimensionError("TimeDependentHamiltonian: terms differ in dimension");
    if (!t.op.is_hermitian()) throw NotHermitianError("TimeDependentHamiltonian: term is not Hermitian", hermitian_defect(t.op.entries()));
    if (!t.coefficient) throw DomainError("TimeDependentHamiltonian: term without coefficient");
    sparse_terms_.push_back(t.op.entries().sparseView());
  }
}

Operator TimeDependentHamiltonian::bare(double g) const {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (const auto& t : terms_) {
    if (!t.counter_diabatic) m += checked_coefficient(t, g, 0.0) * t.op.entries();
  }
  return Operator::hermitian(std::move(m));
}

Operator TimeDependentHamiltonian::counter_diabatic(double g, double gdot) const {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (const auto& t : terms_) {
    if (t.counter_diabatic) m += checked_coefficient(t, g, gdot) * t.op.entries();
  }
  return Operator::hermitian(std::move(m));
}

Operator TimeDependentHamiltonian::at(double g, double gdot) const {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (const auto& t : terms_) {
    if (t.counter_diabatic && !cd_enabled_) continue;
    m += checked_coefficient(t, g, gdot) * t.op.entries();
  }
  return Operator::hermitian(std::move(m));
}

kernels::SparseMatrix TimeDependentHamiltonian::sparse_at(double g, double gdot) const {
  kernels::SparseMatrix m(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (terms_[k].counter_diabatic && !cd_enabled_) continue;
    const double c = checked_coefficient(terms_[k], g, gdot);
    if (c != 0.0) m += c * sparse_terms_[k];
  }
  return m;
}

namespace {

struct Run {
  Vector state;
  std::vector<TrajectoryPoint> trajectory;
  double max_norm_deviation = 0.0;
  double max_monitored_variance = 0.0;
};

class Stepper {
 public:
  Stepper(const TimeDependentHamiltonian& h, const RampSchedule& ramp, const PropagationConfig& cfg)
      : h_(h), ramp_(ramp), cfg_(cfg) {
    if (cfg.monitored) {
      if (cfg.monitored->dim() != h.dim()) throw DimensionError("propagate: monitored operator dimension mismatch");
      if (!cfg.monitored->is_hermitian()) throw NotHermitianError("propagate: monitored operator is not Hermitian", 0.0);
      monitored_ = cfg.monitored->entries().sparseView();
    }
  }

  Run run(const Vector& psi0, std::size_t steps, bool record) const {
    Run out;
    out.state = psi0;
    observe(out, 0.0, record);
    if (ramp_.family() == RampSchedule::Family::BangOff) {
      run_segments(out, record);
    } else {
      run_ramp(out, steps, record);
    }
    return out;
  }

 private:
  void run_ramp(Run& out, std::size_t steps, bool record) const {
    const double n = static_cast<double>(steps);
    const std::size_t every = record ? std::max<std::size_t>(1, steps / std::max<std::size_t>(1, cfg_.trajectory_samples - 1)) : 0;
    double t0 = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
      const double t1 = k + 1 == steps ? ramp_.duration() : ramp_.grid_time(static_cast<double>(k + 1) / n);
      const double tm = 0.5 * (t0 + t1);
      const kernels::SparseMatrix hm = h_.sparse_at(ramp_.value(tm), ramp_.derivative(tm));
      out.state = kernels::expm_multiply(hm, cplx(0.0, -(t1 - t0)), out.state);
      t0 = t1;
      const bool sample = record && ((k + 1) % every == 0 || k + 1 == steps);
      observe(out, t1, sample);
    }
  }

  // Constant Hamiltonian per segment, so the step count only sets the sampling.
  void run_segments(Run& out, bool record) const {
    const std::size_t pieces = record ? std::max<std::size_t>(1, cfg_.trajectory_samples / ramp_.segments().size()) : 1;
    double t = 0.0;
    for (const auto& seg : ramp_.segments()) {
      if (seg.duration == 0.0) continue;
      const kernels::SparseMatrix hm = h_.sparse_at(seg.g, 0.0);
      const double dt = seg.duration / static_cast<double>(pieces);
      for (std::size_t p = 0; p < pieces; ++p) {
        out.state = kernels::expm_multiply(hm, cplx(0.0, -dt), out.state);
        t += dt;
        observe(out, t, record);
      }
    }
  }

  void observe(Run& out, double t, bool sample) const {
    const double norm = out.state.norm();
    out.max_norm_deviation = std::max(out.max_norm_deviation, std::abs(norm - 1.0));
    if (monitored_) {
      const Vector av = *monitored_ * out.state;
      const double mean = out.state.dot(av).real() / (norm * norm);
      out.max_monitored_variance =
          std::max(out.max_monitored_variance, (av - mean * out.state).squaredNorm() / (norm * norm));
    }
    if (sample) {
      const double g = ramp_.value(t);
      const EigenDecomposition d = eigh(h_.bare(g));
      const double fid = std::min(1.0, std::norm(d.ground_state().dot(out.state)) / (norm * norm));
      out.trajectory.push_back(TrajectoryPoint{t, g, fid, norm});
    }
  }

  const TimeDependentHamiltonian& h_;
  const RampSchedule& ramp_;
  const PropagationConfig& cfg_;
  std::optional<kernels::SparseMatrix> monitored_;
};

std::size_t next_power_of_two_factor(double factor) {
  std::size_t f = 1;
  while (static_cast<double>(f) < factor) f *= 2;
  return f;
}

PropagationResult finish(const StateVector& psi0, Run run, ConvergenceCertificate cert) {
  if (!(run.max_norm_deviation <= Tolerances::trajectory_norm)) {
    std::ostringstream os;
    os << "propagate: norm drifted by " << run.max_norm_deviation;
    throw NumericalError(os.str());
  }
  return PropagationResult{StateVector::normalized(psi0.basis(), std::move(run.state)), cert, std::move(run.trajectory),
                           run.max_norm_deviation, run.max_monitored_variance};
}

}  // namespace

PropagationResult propagate(const TimeDependentHamiltonian& h, const RampSchedule& ramp, const StateVector& psi0,
                            const PropagationConfig& cfg) {
  if (psi0.dim() != h.dim()) throw DimensionError("propagate: state and Hamiltonian dimensions differ");
  if (cfg.steps < 1) throw DomainError("propagate: steps must be at least 1");
  const Stepper stepper(h, ramp, cfg);
  const Vector& v0 = psi0.amplitudes();

  if (!cfg.adaptive || ramp.family() == RampSchedule::Family::BangOff) {
    Run r = stepper.run(v0, cfg.steps, cfg.record_trajectory);
    const bool exact = ramp.family() == RampSchedule::Family::BangOff;
    return finish(psi0, std::move(r), ConvergenceCertificate{cfg.steps, exact ? 0.0 : std::numeric_limits<double>::quiet_NaN(), exact});
  }

  std::size_t n = cfg.steps;
  if (2 * n > cfg.max_steps) throw ConfigError("propagate: initial step count exceeds the cap");
  Run coarse = stepper.run(v0, n, false);
  for (;;) {
    Run fine = stepper.run(v0, 2 * n, cfg.record_trajectory);
    const double change = phase_distance(coarse.state, fine.state);
    if (change < cfg.tolerance) return finish(psi0, std::move(fine), ConvergenceCertificate{2 * n, change, true});
    if (4 * n > cfg.max_steps) {
      std::ostringstream os;
      os << "propagate: no convergence within " << cfg.max_steps << " steps (last change " << change << ")";
      throw ConvergenceError(os.str(), change);
    }
    // The midpoint rule converges as dt^2.
    std::size_t m = n * next_power_of_two_factor(std::sqrt(change / cfg.tolerance) * 1.25);
    m = std::clamp(m, 2 * n, cfg.max_steps / 2);
    coarse = m == 2 * n ? std::move(fine) : stepper.run(v0, m, false);
    n = m;
  }
}

Matrix propagate_unitary(const TimeDependentHamiltonian& h, const RampSchedule& ramp, const PropagationConfig& cfg) {
  if (cfg.steps < 1) throw DomainError("propagate_unitary: steps must be at least 1");
  PropagationConfig fixed;
  fixed.steps = cfg.steps;
  fixed.adaptive = false;
  const Stepper stepper(h, ramp, fixed);
  const auto d = static_cast<Eigen::Index>(h.dim());
  Matrix u(d, d);
  for (Eigen::Index k = 0; k < d; ++k) u.col(k) = stepper.run(Vector::Unit(d, k), cfg.steps, false).state;
  return u;
}

Operator cd_spectral(const Operator& h_bare, const Operator& dh_dt) {
  if (h_bare.dim() != dh_dt.dim()) throw DimensionError("cd_spectral: dimension mismatch");
  const EigenDecomposition d = eigh(h_bare);
  const double gap = d.min_gap();
  if (gap < Tolerances::degenerate_gap) {
    std::ostringstream os;
    os << "cd_spectral: spectrum has a gap of " << gap << " below " << Tolerances::degenerate_gap;
    throw DegeneracyError(os.str(), gap);
  }
  const Matrix& v = d.eigenvectors;
  Matrix m = v.adjoint() * dh_dt.entries() * v;
  const Eigen::Index n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = i == j ? cplx(0.0, 0.0) : kI * m(i, j) / (d.eigenvalues(j) - d.eigenvalues(i));
    }
  }
  const Matrix out = v * m * v.adjoint();
  return Operator::hermitian(0.5 * (out + out.adjoint()));
}

BangOffProtocol bang_off_schedule(double delta, double omega, double g_target) {
  if (!(delta > 0.0) || !(omega > 0.0)) throw DomainError("bang_off_schedule: delta and omega must be positive");
  const double gc = std::sqrt(delta * omega);
  if (!(g_target >= 0.0) || !(g_target < gc)) throw DomainError("bang_off_schedule: target coupling must lie in [0, g_c)");
  const double u = (g_target / gc) * (g_target / gc);
  const double g_bang = std::sqrt(2.0 * delta * omega);
  const double t_bang = -std::log1p(-u) / (4.0 * delta);
  const double t_off = M_PI / (4.0 * delta);
  return BangOffProtocol{RampSchedule::bang_off({{g_bang, t_bang}, {0.0, t_off}}), g_bang, t_bang, t_off, t_bang + t_off};
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& trajectory) {
  os << "t,g,fidelity_to_instantaneous_ground,norm\n";
  for (const auto& p : trajectory) {
    os << csv::format_number(p.t) << ',' << csv::format_number(p.g) << ',' << csv::format_number(p.fidelity_to_ground)
       << ',' << csv::format_number(p.norm) << '\n';
  }
}

}  // namespace cqm
