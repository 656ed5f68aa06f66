#include "cqm/quantum_ops.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "cqm/csv.hpp"
#include "cqm/errors.hpp"
#include "cqm/kernels.hpp"
#include "cqm/tolerances.hpp"

namespace cqm {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::size_t top_decile_start(std::size_t n) { return static_cast<std::size_t>(std::floor(0.9 * static_cast<double>(n))); }

// Closed-form amplitudes of S(xi)|0> on the first `levels` Fock states.
Vector squeezed_vacuum_amplitudes(const SqueezeParams& xi, std::size_t levels) {
  Vector amps = Vector::Zero(idx(levels));
  const cplx ratio = -std::polar(std::tanh(xi.r), xi.phi);
  cplx c = 1.0 / std::sqrt(std::cosh(xi.r));
  for (std::size_t n = 0; 2 * n < levels; ++n) {
    if (n > 0) {
      const double dn = static_cast<double>(n);
      c *= ratio * std::sqrt((2.0 * dn - 1.0) / (2.0 * dn));
    }
    amps(idx(2 * n)) = c;
  }
  return amps;
}

std::size_t suggest_for_coherent(cplx alpha, std::size_t start) {
  std::size_t n = std::max<std::size_t>(start, 2);
  while (n < Tolerances::max_truncation && kernels::coherent_tail(alpha, top_decile_start(n)) > Tolerances::leakage) n *= 2;
  return n;
}

}  // namespace

Operator pauli(Axis axis) {
  Matrix m(2, 2);
  switch (axis) {
    case Axis::X:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case Axis::Y:
      m << 0.0, -kI, kI, 0.0;
      break;
    case Axis::Z:
      m << 1.0, 0.0, 0.0, -1.0;
      break;
  }
  return Operator::hermitian(std::move(m));
}

StateVector spin_up() { return StateVector(Basis::qubit(), Vector::Unit(2, 0)); }
StateVector spin_down() { return StateVector(Basis::qubit(), Vector::Unit(2, 1)); }

FockSpace::FockSpace(std::size_t truncation) : truncation_(truncation) {
  if (truncation < 2) throw DomainError("FockSpace: truncation must be at least 2");
}

Ladder ladder(const FockSpace& space) {
  const auto n = idx(space.dim());
  Matrix a = Matrix::Zero(n, n);
  Matrix num = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    num(k, k) = static_cast<double>(k);
    if (k + 1 < n) a(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
  }
  Matrix adag = a.adjoint();
  return Ladder{Operator::general(std::move(a)), Operator::general(std::move(adag)), Operator::hermitian(std::move(num))};
}

Matrix annihilation_squared(const FockSpace& space) {
  const auto n = idx(space.dim());
  Matrix a2 = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k + 2 < n; ++k) a2(k, k + 2) = std::sqrt(static_cast<double>((k + 1) * (k + 2)));
  return a2;
}

Matrix creation_squared(const FockSpace& space) { return annihilation_squared(space).adjoint(); }

Matrix quadrature_squared(const FockSpace& space) {
  const auto n = idx(space.dim());
  Matrix x2 = annihilation_squared(space) + creation_squared(space);
  for (Eigen::Index k = 0; k < n; ++k) x2(k, k) = 2.0 * static_cast<double>(k) + 1.0;
  return x2;
}

StateVector fock_state(const FockSpace& space, std::size_t level) {
  if (level >= space.dim()) throw DomainError("fock_state: level outside truncation");
  return StateVector(space.basis(), Vector::Unit(idx(space.dim()), idx(level)));
}

cplx SqueezeParams::xi() const { return std::polar(r, phi); }

void SqueezeParams::validate() const {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("SqueezeParams: r must be finite and non-negative");
  if (!(phi > -M_PI && phi <= M_PI)) throw DomainError("SqueezeParams: phi must lie in (-pi, pi]");
}

double top_decile_population(const Vector& fock_amplitudes) {
  const auto n = static_cast<std::size_t>(fock_amplitudes.size());
  const std::size_t start = top_decile_start(n);
  return fock_amplitudes.tail(idx(n - start)).squaredNorm();
}

std::size_t truncation_for_squeezing(double r, std::size_t start) {
  const SqueezeParams xi{r, 0.0};
  std::size_t n = std::max<std::size_t>(start, 2);
  for (;;) {
    const double leak = top_decile_population(squeezed_vacuum_amplitudes(xi, n));
    if (leak <= Tolerances::leakage) return n;
    if (n * 2 > Tolerances::max_truncation) {
      std::ostringstream os;
      os << "squeezing r = " << r << " needs more than " << Tolerances::max_truncation << " Fock levels";
      throw TruncationError(os.str(), leak, n * 2);
    }
    n *= 2;
  }
}

Operator squeeze_operator(const FockSpace& space, const SqueezeParams& xi) {
  xi.validate();
  const cplx z = xi.xi();
  // S = exp(K) with K = (xi^* a^2 - xi a^dagger^2)/2 anti-Hermitian; iK is Hermitian.
  const Matrix k = 0.5 * (std::conj(z) * annihilation_squared(space) - z * creation_squared(space));
  const Matrix s = expm(Operator::hermitian(hermitize(kI * k)), -kI);
  const double leak = top_decile_population(s.col(0));
  if (leak > Tolerances::leakage) {
    std::ostringstream os;
    os << "squeeze_operator: top-decile population " << leak << " exceeds " << Tolerances::leakage << " at N = "
       << space.dim();
    throw TruncationError(os.str(), leak, truncation_for_squeezing(xi.r, space.dim()));
  }
  return Operator::general(s);
}

StateVector squeezed_vacuum(const FockSpace& space, const SqueezeParams& xi) {
  xi.validate();
  Vector amps = squeezed_vacuum_amplitudes(xi, space.dim());
  const double leak = top_decile_population(amps);
  if (leak > Tolerances::leakage) {
    std::ostringstream os;
    os << "squeezed_vacuum: top-decile population " << leak << " exceeds " << Tolerances::leakage << " at N = "
       << space.dim();
    throw TruncationError(os.str(), leak, truncation_for_squeezing(xi.r, space.dim()));
  }
  return StateVector::normalized(space.basis(), std::move(amps));
}

StateVector coherent_state(const FockSpace& space, cplx alpha) {
  const double leak = kernels::coherent_tail(alpha, top_decile_start(space.dim()));
  if (leak > Tolerances::leakage) {
    std::ostringstream os;
    os << "coherent_state: |alpha|^2 = " << std::norm(alpha) << " leaks " << leak << " at N = " << space.dim();
    throw TruncationError(os.str(), leak, suggest_for_coherent(alpha, space.dim()));
  }
  const auto n = idx(space.dim());
  Vector amps(n);
  cplx c = std::exp(-0.5 * std::norm(alpha));
  amps(0) = c;
  for (Eigen::Index k = 1; k < n; ++k) {
    c *= alpha / std::sqrt(static_cast<double>(k));
    amps(k) = c;
  }
  return StateVector::normalized(space.basis(), std::move(amps));
}

std::vector<cplx> PhaseSpaceGrid::points() const {
  if (re_points < 2 || im_points < 2) throw DomainError("PhaseSpaceGrid: need at least two points per axis");
  std::vector<cplx> out;
  out.reserve(re_points * im_points);
  for (std::size_t j = 0; j < im_points; ++j) {
    const double im = im_min + (im_max - im_min) * static_cast<double>(j) / static_cast<double>(im_points - 1);
    for (std::size_t i = 0; i < re_points; ++i) {
      const double re = re_min + (re_max - re_min) * static_cast<double>(i) / static_cast<double>(re_points - 1);
      out.emplace_back(re, im);
    }
  }
  return out;
}

double PhaseSpaceGrid::cell_area() const {
  return (re_max - re_min) / static_cast<double>(re_points - 1) * (im_max - im_min) / static_cast<double>(im_points - 1);
}

namespace {

void check_husimi_inputs(const StateVector& psi, std::span<const cplx> grid) {
  if (psi.basis().kind() != Basis::Kind::Fock) throw DomainError("husimi_q: state must live in a Fock basis");
  double worst = 0.0;
  cplx worst_point{};
  for (const cplx& alpha : grid) {
    if (std::norm(alpha) > std::norm(worst_point)) worst_point = alpha;
  }
  worst = kernels::coherent_tail(worst_point, top_decile_start(psi.dim()));
  if (worst > Tolerances::leakage) {
    std::ostringstream os;
    os << "husimi_q: coherent state at |alpha| = " << std::abs(worst_point) << " leaks " << worst << " at N = "
       << psi.dim();
    throw TruncationError(os.str(), worst, suggest_for_coherent(worst_point, psi.dim()));
  }
}

}  // namespace

std::vector<double> husimi_q(const StateVector& psi, std::span<const cplx> grid) {
  check_husimi_inputs(psi, grid);
  std::vector<double> q(grid.size());
  kernels::husimi_parallel(psi.amplitudes(), grid, q);
  return q;
}

std::vector<double> husimi_q_serial(const StateVector& psi, std::span<const cplx> grid) {
  check_husimi_inputs(psi, grid);
  std::vector<double> q(grid.size());
  kernels::husimi_serial(psi.amplitudes(), grid, q);
  return q;
}

void write_husimi_csv(std::ostream& os, std::span<const cplx> grid, std::span<const double> q) {
  if (grid.size() != q.size()) throw DimensionError("write_husimi_csv: grid and values differ in length");
  os << "re_alpha,im_alpha,q_value\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << csv::format_number(grid[i].real()) << ',' << csv::format_number(grid[i].imag()) << ','
       << csv::format_number(q[i]) << '\n';
  }
}

QuadratureMoments quadrature_moments(const StateVector& psi) {
  if (psi.basis().kind() != Basis::Kind::Fock) throw DomainError("quadrature_moments: state must live in a Fock basis");
  const FockSpace space(psi.dim());
  const Ladder l = ladder(space);
  const Vector& v = psi.amplitudes();
  const cplx mean_a = v.dot(l.a.entries() * v);
  const cplx mean_a2 = v.dot(annihilation_squared(space) * v);
  const double mean_n = v.dot(l.n.entries() * v).real();

  // Var(X_theta) = (D + 2 Re(C e^{-2i theta})) / 2
  const cplx c = mean_a2 - mean_a * mean_a;
  const double d = 2.0 * mean_n + 1.0 - 2.0 * std::norm(mean_a);
  const double spread = 2.0 * std::abs(c);

  auto wrap = [](double theta) {
    double t = std::fmod(theta, M_PI);
    if (t < 0.0) t += M_PI;
    // -0 or a tiny negative angle lands on pi after the shift.
    return t >= M_PI ? 0.0 : t;
  };
  const double major = wrap(0.5 * std::arg(c));
  return QuadratureMoments{0.5 * (d - spread), 0.5 * (d + spread), wrap(major + 0.5 * M_PI), major};
}

}  // namespace cqm
