#pragma once

// Qubit and single-mode bosonic operators and states.
//
// Qubit basis ordering is (|up>, |down>) with sigma_z = diag(1, -1).
// Squeezing follows S(xi) = exp((xi^* a^2 - xi a^dagger^2) / 2), xi = r e^{i phi},
// so that S^dagger a S = a cosh r - a^dagger e^{i phi} sinh r.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "cqm/linalg.hpp"

namespace cqm {

enum class Axis { X, Y, Z };

Operator pauli(Axis axis);
StateVector spin_up();
StateVector spin_down();

// Fock levels |0> .. |N-1>.
class FockSpace {
 public:
  explicit FockSpace(std::size_t truncation);

  std::size_t truncation() const { return truncation_; }
  std::size_t dim() const { return truncation_; }
  Basis basis() const { return Basis::fock(truncation_); }

  bool operator==(const FockSpace&) const = default;

 private:
  std::size_t truncation_;
};

struct Ladder {
  Operator a;
  Operator adag;
  Operator n;
};

Ladder ladder(const FockSpace& space);

// a^2, (a^dagger)^2 and (a + a^dagger)^2 = a^2 + a^dagger^2 + 2n + 1. The last
// one is built from its normal-ordered form so the top Fock level is not
// corrupted by truncating a a^dagger.
Matrix annihilation_squared(const FockSpace& space);
Matrix creation_squared(const FockSpace& space);
Matrix quadrature_squared(const FockSpace& space);

StateVector fock_state(const FockSpace& space, std::size_t level);

struct SqueezeParams {
  double r = 0.0;    // >= 0
  double phi = 0.0;  // in (-pi, pi]

  cplx xi() const;
  void validate() const;
};

// Matrix exponential of the squeeze generator in the truncated space. Throws
// TruncationError when S(xi)|0> leaks more than Tolerances::leakage into the
// top decile of levels.
Operator squeeze_operator(const FockSpace& space, const SqueezeParams& xi);

// S(xi)|0> from its closed-form Fock amplitudes, with the same leakage check.
StateVector squeezed_vacuum(const FockSpace& space, const SqueezeParams& xi);

StateVector coherent_state(const FockSpace& space, cplx alpha);

// Population of the levels >= 0.9 N.
double top_decile_population(const Vector& fock_amplitudes);

// Smallest truncation, doubling from `start`, whose squeezed vacuum passes the
// leakage check. Throws TruncationError past Tolerances::max_truncation.
std::size_t truncation_for_squeezing(double r, std::size_t start);

// Rectangular grid over Re(alpha) x Im(alpha), row-major in Im then Re.
struct PhaseSpaceGrid {
  double re_min = -4.0;
  double re_max = 4.0;
  double im_min = -4.0;
  double im_max = 4.0;
  std::size_t re_points = 161;
  std::size_t im_points = 161;

  std::vector<cplx> points() const;
  double cell_area() const;
};

// Husimi Q over arbitrary phase-space points (parallel over points). Throws
// TruncationError if a coherent state at some point does not fit the space.
std::vector<double> husimi_q(const StateVector& psi, std::span<const cplx> grid);
std::vector<double> husimi_q_serial(const StateVector& psi, std::span<const cplx> grid);

// CSV with columns re_alpha,im_alpha,q_value.
void write_husimi_csv(std::ostream& os, std::span<const cplx> grid, std::span<const double> q);

// Second moments of the quadratures X_theta = (a e^{-i theta} + a^dagger e^{i theta})/sqrt(2).
struct QuadratureMoments {
  double min_variance;
  double max_variance;
  double min_angle;  // theta of the least-noisy quadrature, in [0, pi)
  double major_axis_angle;  // direction of largest spread in the alpha plane, in [0, pi)
};

QuadratureMoments quadrature_moments(const StateVector& psi);

}  // namespace cqm
