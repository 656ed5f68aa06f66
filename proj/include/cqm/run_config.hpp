#pragma once

// Flat key = value run configuration with command-line overrides.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqm/ramp.hpp"

namespace cqm {

enum class Experiment { Fig1, Fig2, Fig3, Fig4, Fig6, Custom };
enum class ModelKind { LZ, QRM };

std::string_view to_string(Experiment e);
Experiment parse_experiment(std::string_view name);

struct SweepSpec {
  double min = 0.0;
  double max = 1.0;
  std::size_t points = 61;
  bool log = true;

  // Sweep values from min to max inclusive.
  std::vector<double> values() const;
};

struct RunConfig {
  Experiment experiment = Experiment::Custom;
  ModelKind model = ModelKind::LZ;

  double delta = 0.05;
  double omega = 100.0;
  std::optional<double> estimate;  // defaults to delta
  // Couplings in units of delta (LZ) or of g_c (QRM).
  double g0_rel = 20.0;
  double gf_rel = 1.0;

  RampSchedule::Family ramp = RampSchedule::Family::PowerLaw;
  double exponent = 0.2;
  // LZ only: start in spin down, or in the ground state at g0.
  bool initial_ground = false;

  SweepSpec sweep;

  std::size_t truncation = 120;
  std::size_t steps = 1024;
  double tolerance = 1e-6;
  std::size_t max_steps = std::size_t{1} << 20;
  double fd_step = 1e-6;  // relative to delta

  double husimi_extent = 4.0;
  std::size_t husimi_points = 161;

  bool trajectory = false;
  std::string output_dir = "out";
  bool emit_plots = false;
  int jobs = 0;

  double estimate_value() const { return estimate.value_or(delta); }

  static RunConfig defaults(Experiment e);

  // Throws ConfigError for unknown keys or malformed values.
  void apply(std::string_view key, std::string_view value);
  // Applies a "key=value" string.
  void apply_assignment(std::string_view assignment);
  void load(std::istream& in);
  void validate() const;
};

// Defaults for `e`, then the file (if any), then overrides in order.
RunConfig load_run_config(Experiment e, const std::optional<std::string>& path, const std::vector<std::string>& overrides);

}  // namespace cqm
