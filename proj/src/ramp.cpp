#include "cqm/ramp.hpp"

#include <algorithm>
#include <cmath>

#include "cqm/errors.hpp"

namespace cqm {

namespace {

void check_duration(double duration) {
  if (!(duration > 0.0) || !std::isfinite(duration)) throw DomainError("RampSchedule: duration must be positive and finite");
}

}  // namespace

RampSchedule RampSchedule::power_law(double g0, double gf, double duration, double exponent) {
  check_duration(duration);
  if (!(exponent > 0.0)) throw DomainError("RampSchedule: power-law exponent must be positive");
  RampSchedule r;
  r.family_ = Family::PowerLaw;
  r.g0_ = g0;
  r.gf_ = gf;
  r.duration_ = duration;
  r.exponent_ = exponent;
  return r;
}

RampSchedule RampSchedule::sqrt_ramp(double g0, double gf, double duration) {
  check_duration(duration);
  RampSchedule r;
  r.family_ = Family::SqrtRamp;
  r.g0_ = g0;
  r.gf_ = gf;
  r.duration_ = duration;
  r.exponent_ = 0.5;
  return r;
}

RampSchedule RampSchedule::bang_off(std::vector<Segment> segments) {
  if (segments.empty()) throw DomainError("RampSchedule: bang-off needs at least one segment");
  double total = 0.0;
  for (const auto& s : segments) {
    if (!(s.duration >= 0.0) || !std::isfinite(s.duration)) throw DomainError("RampSchedule: negative segment duration");
    total += s.duration;
  }
  check_duration(total);
  RampSchedule r;
  r.family_ = Family::BangOff;
  r.g0_ = segments.front().g;
  r.gf_ = segments.back().g;
  r.duration_ = total;
  r.segments_ = std::move(segments);
  return r;
}

double RampSchedule::value(double t) const {
  const double s = std::clamp(t / duration_, 0.0, 1.0);
  switch (family_) {
    case Family::PowerLaw:
      return g0_ - (g0_ - gf_) * std::pow(s, exponent_);
    case Family::SqrtRamp:
      return g0_ + (gf_ - g0_) * std::sqrt(s);
    case Family::BangOff: {
      double end = 0.0;
      for (const auto& seg : segments_) {
        end += seg.duration;
        if (t < end) return seg.g;
      }
      return segments_.back().g;
    }
  }
  return 0.0;
}

double RampSchedule::derivative(double t) const {
  const double s = std::clamp(t / duration_, 0.0, 1.0);
  switch (family_) {
    case Family::PowerLaw:
      return -(g0_ - gf_) * exponent_ * std::pow(s, exponent_ - 1.0) / duration_;
    case Family::SqrtRamp:
      return (gf_ - g0_) * 0.5 / (std::sqrt(s) * duration_);
    case Family::BangOff:
      return 0.0;
  }
  return 0.0;
}

double RampSchedule::grid_exponent() const {
  if (family_ == Family::BangOff) return 1.0;
  return exponent_ < 1.0 ? 1.0 / exponent_ : 1.0;
}

double RampSchedule::grid_time(double s) const {
  const double q = grid_exponent();
  return duration_ * (q == 1.0 ? s : std::pow(s, q));
}

}  // namespace cqm
