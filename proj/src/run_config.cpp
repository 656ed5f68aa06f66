#include "cqm/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "cqm/errors.hpp"

namespace cqm {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  std::ostringstream os;
  os << "invalid value '" << value << "' for key '" << key << "'";
  throw ConfigError(os.str());
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) bad_value(key, value);
  return out;
}

std::size_t parse_size(std::string_view key, std::string_view value) {
  std::size_t out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) bad_value(key, value);
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  bad_value(key, value);
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::Fig1:
      return "fig1";
    case Experiment::Fig2:
      return "fig2";
    case Experiment::Fig3:
      return "fig3";
    case Experiment::Fig4:
      return "fig4";
    case Experiment::Fig6:
      return "fig6";
    case Experiment::Custom:
      return "custom";
  }
  return "custom";
}

Experiment parse_experiment(std::string_view name) {
  for (Experiment e : {Experiment::Fig1, Experiment::Fig2, Experiment::Fig3, Experiment::Fig4, Experiment::Fig6,
                       Experiment::Custom}) {
    if (to_string(e) == name) return e;
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double f = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    out[i] = log ? std::exp(std::log(min) + f * (std::log(max) - std::log(min))) : min + f * (max - min);
  }
  if (points > 1) {
    out.front() = min;
    out.back() = max;
  }
  return out;
}

RunConfig RunConfig::defaults(Experiment e) {
  RunConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::Fig1:
      c.sweep = {0.1, 100.0, 61, true};
      break;
    case Experiment::Fig2:
    case Experiment::Custom:
      c.sweep = {0.01, 100.0, 61, true};
      break;
    case Experiment::Fig3:
    case Experiment::Fig4:
    case Experiment::Fig6:
      c.model = ModelKind::QRM;
      c.delta = 0.01;
      c.omega = 100.0;
      c.g0_rel = 0.0;
      c.gf_rel = 0.9;
      c.ramp = RampSchedule::Family::SqrtRamp;
      c.exponent = 0.5;
      if (e == Experiment::Fig3) c.sweep = {0.0, 0.99, 100, false};
      if (e == Experiment::Fig4) c.sweep = {0.1, 1e4, 61, true};
      if (e == Experiment::Fig6) c.sweep = {0.9, 0.9, 1, false};
      break;
  }
  return c;
}

void RunConfig::apply(std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "model") {
    if (value == "lz") {
      model = ModelKind::LZ;
    } else if (value == "qrm") {
      model = ModelKind::QRM;
    } else {
      bad_value(key, value);
    }
  } else if (key == "delta") {
    delta = parse_double(key, value);
  } else if (key == "omega") {
    omega = parse_double(key, value);
  } else if (key == "estimate") {
    estimate = parse_double(key, value);
  } else if (key == "g0_rel") {
    g0_rel = parse_double(key, value);
  } else if (key == "gf_rel") {
    gf_rel = parse_double(key, value);
  } else if (key == "ramp") {
    if (value == "power_law") {
      ramp = RampSchedule::Family::PowerLaw;
    } else if (value == "sqrt") {
      ramp = RampSchedule::Family::SqrtRamp;
    } else {
      bad_value(key, value);
    }
  } else if (key == "exponent") {
    exponent = parse_double(key, value);
  } else if (key == "initial_state") {
    if (value == "spin_down") {
      initial_ground = false;
    } else if (value == "ground") {
      initial_ground = true;
    } else {
      bad_value(key, value);
    }
  } else if (key == "sweep_min") {
    sweep.min = parse_double(key, value);
  } else if (key == "sweep_max") {
    sweep.max = parse_double(key, value);
  } else if (key == "sweep_points") {
    sweep.points = parse_size(key, value);
  } else if (key == "sweep_log") {
    sweep.log = parse_bool(key, value);
  } else if (key == "truncation") {
    truncation = parse_size(key, value);
  } else if (key == "steps") {
    steps = parse_size(key, value);
  } else if (key == "tolerance") {
    tolerance = parse_double(key, value);
  } else if (key == "max_steps") {
    max_steps = parse_size(key, value);
  } else if (key == "fd_step") {
    fd_step = parse_double(key, value);
  } else if (key == "husimi_extent") {
    husimi_extent = parse_double(key, value);
  } else if (key == "husimi_points") {
    husimi_points = parse_size(key, value);
  } else if (key == "trajectory") {
    trajectory = parse_bool(key, value);
  } else if (key == "output_dir") {
    output_dir = std::string(value);
  } else if (key == "emit_plots") {
    emit_plots = parse_bool(key, value);
  } else if (key == "jobs") {
    jobs = static_cast<int>(parse_size(key, value));
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

void RunConfig::apply_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
  apply(assignment.substr(0, eq), assignment.substr(eq + 1));
}

void RunConfig::load(std::istream& in) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    const auto hash = view.find('#');
    if (hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    try {
      apply_assignment(view);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(number) + ": " + e.what());
    }
  }
}

void RunConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(delta > 0.0, "delta must be positive");
  require(omega > 0.0, "omega must be positive");
  require(estimate_value() > 0.0, "estimate must be positive");
  require(sweep.points >= 2 || experiment == Experiment::Fig6, "sweep_points must be at least 2");
  require(sweep.max >= sweep.min, "sweep_max must not be below sweep_min");
  require(!sweep.log || sweep.min > 0.0, "log sweeps need a positive sweep_min");
  require(truncation >= 2 && truncation <= 512, "truncation must lie in [2, 512]");
  require(steps >= 1, "steps must be at least 1");
  require(max_steps >= 2 * steps, "max_steps must be at least twice steps");
  require(tolerance > 0.0, "tolerance must be positive");
  require(fd_step > 0.0 && fd_step < 0.1, "fd_step must lie in (0, 0.1)");
  require(exponent > 0.0, "exponent must be positive");
  require(husimi_extent > 0.0 && husimi_points >= 2, "Husimi grid needs a positive extent and at least 2 points");
  require(jobs >= 0, "jobs must be non-negative");
  if (model == ModelKind::QRM) {
    require(g0_rel >= 0.0 && g0_rel < 1.0 && gf_rel >= 0.0 && gf_rel < 1.0, "QRM couplings must lie in [0, 1) in units of g_c");
  }
  if (experiment == Experiment::Fig3) require(sweep.min >= 0.0 && sweep.max < 1.0, "fig3 sweeps g/g_c within [0, 1)");
  const bool time_sweep = experiment == Experiment::Fig2 || experiment == Experiment::Fig4 || experiment == Experiment::Custom;
  if (time_sweep) require(sweep.min > 0.0, "durations must be positive");
}

RunConfig load_run_config(Experiment e, const std::optional<std::string>& path, const std::vector<std::string>& overrides) {
  RunConfig c = RunConfig::defaults(e);
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot open config file '" + *path + "'");
    c.load(in);
  }
  for (const auto& o : overrides) c.apply_assignment(o);
  c.validate();
  return c;
}

}  // namespace cqm
