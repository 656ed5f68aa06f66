#pragma once

// Control schedules g(t) on [0, T] with analytic derivatives.

#include <cstddef>
#include <vector>

namespace cqm {

class RampSchedule {
 public:
  enum class Family { PowerLaw, SqrtRamp, BangOff };

  struct Segment {
    double g;
    double duration;
  };

  // g(t) = g0 - (g0 - gf) (t/T)^exponent
  static RampSchedule power_law(double g0, double gf, double duration, double exponent);
  // g(t) = g0 + (gf - g0) sqrt(t/T)
  static RampSchedule sqrt_ramp(double g0, double gf, double duration);
  // Piecewise-constant g. Zero-length segments are allowed, the total is not.
  static RampSchedule bang_off(std::vector<Segment> segments);

  Family family() const { return family_; }
  double g0() const { return g0_; }
  double gf() const { return gf_; }
  double duration() const { return duration_; }
  double exponent() const { return exponent_; }
  const std::vector<Segment>& segments() const { return segments_; }

  double value(double t) const;
  double derivative(double t) const;

  // Step boundaries are placed at t = T s^q for uniform s in [0, 1]. For
  // power laws with exponent < 1 this makes g linear in s, which keeps the
  // divergent derivative at t = 0 integrable step by step.
  double grid_exponent() const;
  double grid_time(double s) const;

 private:
  RampSchedule() = default;

  Family family_ = Family::PowerLaw;
  double g0_ = 0.0;
  double gf_ = 0.0;
  double duration_ = 0.0;
  double exponent_ = 1.0;
  std::vector<Segment> segments_;
};

}  // namespace cqm
