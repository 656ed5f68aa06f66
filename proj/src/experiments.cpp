#include "cqm/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>

#include "cqm/csv.hpp"
#include "cqm/errors.hpp"
#include "cqm/kernels.hpp"
#include "cqm/lz.hpp"
#include "cqm/qrm.hpp"

namespace cqm {

namespace {

std::string num(double v) { return csv::format_number(v); }

std::string_view ramp_name(RampSchedule::Family f) {
  switch (f) {
    case RampSchedule::Family::PowerLaw:
      return "power_law";
    case RampSchedule::Family::SqrtRamp:
      return "sqrt";
    case RampSchedule::Family::BangOff:
      return "bang_off";
  }
  return "";
}

RampSchedule make_ramp(const RunConfig& cfg, double g0, double gf, double duration) {
  if (cfg.ramp == RampSchedule::Family::SqrtRamp) return RampSchedule::sqrt_ramp(g0, gf, duration);
  return RampSchedule::power_law(g0, gf, duration, cfg.exponent);
}

// Couplings are fixed by the estimate so that the controls do not depend on delta.
double coupling_unit(const RunConfig& cfg) {
  return cfg.model == ModelKind::LZ ? cfg.estimate_value() : std::sqrt(cfg.estimate_value() * cfg.omega);
}

std::size_t qrm_space_size(const RunConfig& cfg, double g_max) {
  QRMParams p{cfg.delta, cfg.omega, cfg.estimate_value(), g_max};
  return qrm_truncation(p, cfg.truncation);
}

PropagationConfig propagation_from(const RunConfig& cfg) {
  PropagationConfig pc;
  pc.steps = cfg.steps;
  pc.tolerance = cfg.tolerance;
  pc.max_steps = cfg.max_steps;
  return pc;
}

void add_common_metadata(SweepResult& r, const RunConfig& cfg) {
  r.set_metadata("experiment", std::string(to_string(cfg.experiment)));
  r.set_metadata("model", cfg.model == ModelKind::LZ ? "lz" : "qrm");
  r.set_metadata("delta", num(cfg.delta));
  if (cfg.model == ModelKind::QRM) r.set_metadata("omega", num(cfg.omega));
  r.set_metadata("estimate", num(cfg.estimate_value()));
  r.set_metadata("sweep_points", std::to_string(cfg.sweep.points));
}

// Runs body(i) over all rows, in parallel when more than one thread is available.
void for_rows(std::size_t n, const std::function<void(std::size_t)>& body) {
  if (kernels::thread_count() > 1) {
    kernels::for_each_parallel(n, body);
  } else {
    kernels::for_each_serial(n, body);
  }
}

}  // namespace

ProtocolSetup make_protocol(const RunConfig& cfg) {
  const double unit = coupling_unit(cfg);
  const double g0 = cfg.g0_rel * unit;
  const double gf = cfg.gf_rel * unit;
  const double est = cfg.estimate_value();

  if (cfg.model == ModelKind::LZ) {
    const bool ground = cfg.initial_ground;
    LZParams central{cfg.delta, est, gf};
    return ProtocolSetup{
        ModelKind::LZ,
        cfg.delta,
        cfg.fd_step * cfg.delta,
        [est](double d, bool cd) { return lz_driving(LZParams{d, est, 0.0}, cd); },
        [ground, est, g0](double d) { return ground ? lz_ground_state(LZParams{d, est, g0}) : spin_down(); },
        [cfg, g0, gf](double duration) { return make_ramp(cfg, g0, gf, duration); },
        lz_ground_state(central),
        lz_delta_generator(),
        propagation_from(cfg),
    };
  }

  const FockSpace space(qrm_space_size(cfg, std::max(g0, gf)));
  const double omega = cfg.omega;
  QRMParams central{cfg.delta, omega, est, gf};
  return ProtocolSetup{
      ModelKind::QRM,
      cfg.delta,
      cfg.fd_step * cfg.delta,
      [space, omega, est](double d, bool cd) { return qrm_driving(QRMParams{d, omega, est, 0.0}, space, cd); },
      [space, omega, est, g0](double d) { return qrm_ground_state(QRMParams{d, omega, est, g0}, space); },
      [cfg, g0, gf](double duration) { return make_ramp(cfg, g0, gf, duration); },
      qrm_ground_state(central, space),
      qrm_delta_generator(space),
      propagation_from(cfg),
  };
}

ProtocolOutcome run_protocol(const ProtocolSetup& setup, double duration, bool cd, bool record_trajectory) {
  const RampSchedule ramp = setup.ramp(duration);

  PropagationConfig central = setup.propagation;
  central.monitored = setup.generator;
  central.record_trajectory = record_trajectory;
  PropagationResult res = propagate(setup.driving(setup.delta, cd), ramp, setup.initial_state(setup.delta), central);

  PropagationConfig pinned = setup.propagation;
  pinned.adaptive = false;
  pinned.steps = res.certificate.steps;
  auto path = [&](double d) { return propagate(setup.driving(d, cd), ramp, setup.initial_state(d), pinned).state; };
  QFIEstimate qfi = qfi_overlap_richardson(path, setup.delta, setup.fd_step);

  const double fid = fidelity(res.state, setup.target);
  const double bound = 4.0 * duration * duration * res.max_monitored_variance;
  return ProtocolOutcome{qfi, fid, res.max_monitored_variance, bound, res.certificate, std::move(res.state),
                         std::move(res.trajectory)};
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y, double x_max) {
  if (x.size() != y.size()) throw DimensionError("log_log_slope: length mismatch");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || x[i] > x_max) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

SweepResult run_fig1(const RunConfig& cfg) {
  SweepResult r("g_over_delta", {"g", "qfi_adiabatic", "tau_qsl", "ratio", "bound_sql"});
  for (double x : cfg.sweep.values()) {
    const LZParams p{cfg.delta, cfg.estimate_value(), x * cfg.delta};
    const double qfi = lz_qfi_adiabatic(p);
    const double tau = lz_qsl_time(p, p.g);
    r.add_row(x, {p.g, qfi, tau, tau > 0.0 ? std::optional<double>(qfi / (tau * tau)) : std::nullopt, 1.0});
  }
  add_common_metadata(r, cfg);
  return r;
}

namespace {

const std::vector<std::string> kProtocolColumns = {
    "t",           "qfi_cd",      "qfi_cd_richardson", "qfi_no_cd",         "qfi_no_cd_richardson",
    "fidelity_cd", "fidelity_no_cd", "bound_hl",       "bound_critical_cd", "bound_critical_no_cd",
    "qfi_adiabatic", "unstable_cd", "unstable_no_cd",  "steps_cd",          "steps_no_cd"};

struct ProtocolSweep {
  SweepResult table;
  std::vector<std::vector<TrajectoryPoint>> trajectories;
  std::size_t failures = 0;
};

// Shared by fig2, fig4 and custom. `scale` converts a sweep value into a duration.
ProtocolSweep protocol_sweep(const RunConfig& cfg, const std::string& variable, double scale) {
  const ProtocolSetup setup = make_protocol(cfg);
  const std::vector<double> xs = cfg.sweep.values();
  // A separate duration column only when the sweep variable is not already the duration.
  const bool with_duration = variable != "t";

  double n_final = 0.0;
  double qfi_adiabatic = 0.0;
  const double gf = cfg.gf_rel * coupling_unit(cfg);
  if (cfg.model == ModelKind::LZ) {
    qfi_adiabatic = lz_qfi_adiabatic(LZParams{cfg.delta, cfg.estimate_value(), gf});
  } else {
    const QRMParams p{cfg.delta, cfg.omega, cfg.estimate_value(), gf};
    qfi_adiabatic = qrm_qfi_exact(p);
    n_final = qrm_mean_photons(p);
  }

  std::vector<SweepResult::Row> rows(xs.size());
  std::vector<std::vector<TrajectoryPoint>> trajectories(cfg.trajectory ? xs.size() : 0);
  std::vector<int> failed(xs.size(), 0);

  for_rows(xs.size(), [&](std::size_t i) {
    const double duration = xs[i] * scale;
    const double hl = cfg.model == ModelKind::LZ ? duration * duration : qrm_hl_curve(n_final, duration);
    SweepResult::Row row(kProtocolColumns.size());
    row[0] = duration;
    row[7] = hl;
    row[10] = qfi_adiabatic;
    for (int variant = 0; variant < 2; ++variant) {
      const bool cd = variant == 0;
      try {
        ProtocolOutcome o = run_protocol(setup, duration, cd, cd && cfg.trajectory);
        row[cd ? 1 : 3] = o.qfi.reportable();
        row[cd ? 2 : 4] = o.qfi.flags.precision_floor ? std::nullopt : o.qfi.richardson;
        row[cd ? 5 : 6] = o.fidelity;
        row[cd ? 8 : 9] = o.bound_critical;
        row[cd ? 11 : 12] = o.qfi.flags.unstable ? 1.0 : 0.0;
        row[cd ? 13 : 14] = static_cast<double>(o.certificate.steps);
        if (cd && cfg.trajectory) trajectories[i] = std::move(o.trajectory);
      } catch (const NumericalError&) {
        failed[i] += 1;
      }
    }
    if (!with_duration) row.erase(row.begin());
    rows[i] = std::move(row);
  });

  std::vector<std::string> columns = kProtocolColumns;
  if (!with_duration) columns.erase(columns.begin());
  ProtocolSweep out{SweepResult(variable, columns), std::move(trajectories), 0};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out.table.add_row(xs[i], std::move(rows[i]));
    out.failures += static_cast<std::size_t>(failed[i]);
  }
  add_common_metadata(out.table, cfg);
  out.table.set_metadata("g0", num(cfg.g0_rel * coupling_unit(cfg)));
  out.table.set_metadata("gf", num(gf));
  out.table.set_metadata("ramp", std::string(ramp_name(cfg.ramp)));
  if (cfg.ramp == RampSchedule::Family::PowerLaw) out.table.set_metadata("exponent", num(cfg.exponent));
  out.table.set_metadata("fd_step", num(setup.fd_step));
  if (cfg.model == ModelKind::QRM) out.table.set_metadata("truncation", std::to_string(setup.target.dim()));
  out.table.set_metadata("row_failures", std::to_string(out.failures));
  return out;
}

void add_slopes(SweepResult& r, double window_max) {
  std::vector<double> t;
  std::vector<double> cd;
  std::vector<double> no_cd;
  std::vector<std::optional<double>> tc;
  for (std::size_t i = 0; i < r.size(); ++i) tc.push_back(r.sweep_value(i));
  const auto qc = r.column("qfi_cd");
  const auto qn = r.column("qfi_no_cd");
  for (std::size_t i = 0; i < r.size(); ++i) {
    t.push_back(tc[i].value_or(0.0));
    cd.push_back(qc[i].value_or(0.0));
    no_cd.push_back(qn[i].value_or(0.0));
  }
  r.set_metadata("slope_window_max_t", num(window_max));
  r.set_metadata("slope_qfi_cd", num(log_log_slope(t, cd, window_max)));
  r.set_metadata("slope_qfi_no_cd", num(log_log_slope(t, no_cd, window_max)));
}

}  // namespace

SweepResult run_fig2(const RunConfig& cfg) {
  return protocol_sweep(cfg, "t_delta", 1.0 / cfg.delta).table;
}

SweepResult run_fig3(const RunConfig& cfg) {
  SweepResult r("g_over_gc", {"g", "qfi_approx", "qfi_exact", "mean_photons", "tau_qsl", "bound_hl", "ratio_approx",
                              "ratio_exact"});
  std::optional<double> crossing;
  double prev_x = 0.0;
  std::optional<double> prev_ratio;
  for (double x : cfg.sweep.values()) {
    const double gc = std::sqrt(cfg.delta * cfg.omega);
    const QRMParams p{cfg.delta, cfg.omega, cfg.estimate_value(), x * gc};
    const double approx = qrm_qfi_critical_approx(p);
    const double exact = qrm_qfi_exact(p);
    const double n = qrm_mean_photons(p);
    const double tau = bang_off_schedule(cfg.delta, cfg.omega, p.g).tau_qsl;
    const double hl = qrm_hl_curve(n, tau);
    std::optional<double> ra;
    std::optional<double> re;
    if (hl > 0.0) {
      ra = approx / hl;
      re = exact / hl;
    }
    if (!crossing && re && *re > 1.0) {
      crossing = prev_ratio && *prev_ratio < 1.0 ? prev_x + (1.0 - *prev_ratio) * (x - prev_x) / (*re - *prev_ratio) : x;
    }
    prev_x = x;
    prev_ratio = re;
    r.add_row(x, {p.g, approx, exact, n, tau, hl, ra, re});
  }
  add_common_metadata(r, cfg);
  r.set_metadata("crossing_g_over_gc_exact", crossing ? num(*crossing) : std::string{});
  return r;
}

SweepResult run_fig4(const RunConfig& cfg) {
  SweepResult r = protocol_sweep(cfg, "t", 1.0).table;
  add_slopes(r, 10.0 * cfg.sweep.min);
  return r;
}

Fig6Result run_fig6(const RunConfig& cfg) {
  const double gc = std::sqrt(cfg.delta * cfg.omega);
  const double g_target = cfg.gf_rel * gc;
  const QRMParams target_params{cfg.delta, cfg.omega, cfg.estimate_value(), g_target};
  const FockSpace space(qrm_space_size(cfg, g_target));
  const BangOffProtocol protocol = bang_off_schedule(cfg.delta, cfg.omega, g_target);
  const TimeDependentHamiltonian h = qrm_driving(target_params, space, false);

  PropagationConfig pc = propagation_from(cfg);
  pc.adaptive = false;
  const StateVector vacuum = fock_state(space, 0);
  const StateVector after_bang =
      protocol.t_bang > 0.0 ? propagate(h, RampSchedule::bang_off({{protocol.g_bang, protocol.t_bang}}), vacuum, pc).state
                            : vacuum;
  const StateVector after_off = propagate(h, RampSchedule::bang_off({{0.0, protocol.t_off}}), after_bang, pc).state;

  PhaseSpaceGrid grid{-cfg.husimi_extent, cfg.husimi_extent, -cfg.husimi_extent, cfg.husimi_extent, cfg.husimi_points,
                      cfg.husimi_points};
  const std::vector<cplx> points = grid.points();
  auto panel = [&](std::string label, double t, const StateVector& s) {
    return HusimiPanel{std::move(label), t, s, husimi_q(s, points), quadrature_moments(s)};
  };

  const double fid = fidelity(after_off, qrm_ground_state(target_params, space));
  SweepResult summary("panel", {"time", "min_variance", "max_variance", "min_angle_deg", "major_axis_deg",
                                "q_at_origin", "fidelity_to_target"});
  Fig6Result out{protocol,
                 points,
                 {panel("a", 0.0, vacuum), panel("b", protocol.t_bang, after_bang), panel("c", protocol.tau_qsl, after_off)},
                 fid,
                 summary};
  const std::vector<cplx> origin{cplx(0.0, 0.0)};
  for (std::size_t k = 0; k < out.panels.size(); ++k) {
    const HusimiPanel& p = out.panels[k];
    out.summary.add_row(static_cast<double>(k),
                        {p.time, p.moments.min_variance, p.moments.max_variance, p.moments.min_angle * 180.0 / M_PI,
                         p.moments.major_axis_angle * 180.0 / M_PI, husimi_q(p.state, origin)[0],
                         fidelity(p.state, qrm_ground_state(target_params, space))});
  }
  add_common_metadata(out.summary, cfg);
  out.summary.set_metadata("g_target", num(g_target));
  out.summary.set_metadata("g_bang", num(protocol.g_bang));
  out.summary.set_metadata("t_bang", num(protocol.t_bang));
  out.summary.set_metadata("t_off", num(protocol.t_off));
  out.summary.set_metadata("tau_qsl", num(protocol.tau_qsl));
  out.summary.set_metadata("fidelity", num(fid));
  out.summary.set_metadata("truncation", std::to_string(space.dim()));
  return out;
}

CustomResult run_custom(const RunConfig& cfg) {
  ProtocolSweep s = protocol_sweep(cfg, "t", 1.0);
  return CustomResult{std::move(s.table), std::move(s.trajectories)};
}

std::vector<std::string> run_and_write(const RunConfig& cfg, std::size_t& row_failures) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto write = [&](const std::string& name, const std::function<void(std::ostream&)>& fill) {
    const fs::path path = dir / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write '" + path.string() + "'");
    fill(os);
    written.push_back(path.string());
  };
  auto write_table = [&](const std::string& stem, const SweepResult& r) {
    write(stem + ".csv", [&](std::ostream& os) { r.write_csv(os); });
    write(stem + "_summary.csv", [&](std::ostream& os) { r.write_summary_csv(os); });
  };
  auto failures_of = [](const SweepResult& r) -> std::size_t {
    for (const auto& [k, v] : r.metadata()) {
      if (k == "row_failures") return std::stoul(v);
    }
    return 0;
  };

  row_failures = 0;
  switch (cfg.experiment) {
    case Experiment::Fig1:
      write_table("fig1", run_fig1(cfg));
      break;
    case Experiment::Fig2: {
      const SweepResult r = run_fig2(cfg);
      row_failures = failures_of(r);
      write_table("fig2", r);
      break;
    }
    case Experiment::Fig3:
      write_table("fig3", run_fig3(cfg));
      break;
    case Experiment::Fig4: {
      const SweepResult r = run_fig4(cfg);
      row_failures = failures_of(r);
      write_table("fig4", r);
      break;
    }
    case Experiment::Fig6: {
      const Fig6Result r = run_fig6(cfg);
      for (const auto& p : r.panels) {
        write("fig6_husimi_" + p.label + ".csv", [&](std::ostream& os) { write_husimi_csv(os, r.grid, p.q); });
      }
      write_table("fig6", r.summary);
      break;
    }
    case Experiment::Custom: {
      const CustomResult r = run_custom(cfg);
      row_failures = failures_of(r.sweep);
      write_table("custom", r.sweep);
      for (std::size_t i = 0; i < r.trajectories.size(); ++i) {
        write("custom_trajectory_" + std::to_string(i) + ".csv",
              [&](std::ostream& os) { write_trajectory_csv(os, r.trajectories[i]); });
      }
      break;
    }
  }
  return written;
}

}  // namespace cqm
