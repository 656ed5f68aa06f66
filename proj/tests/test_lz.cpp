#include <cmath>
#include <vector>

#include "cqm/errors.hpp"
#include "cqm/lz.hpp"
#include "cqm/metrology.hpp"
#include "cqm/quantum_ops.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cqm;
using cqm::test::max_abs;

namespace {

// Central difference of the phase-fixed ground state in delta.
Vector ground_state_derivative(double delta, double g) {
  const double h = 1e-6 * delta;
  const Vector plus = lz_ground_state({delta + h, delta, g}).amplitudes();
  const Vector minus = lz_ground_state({delta - h, delta, g}).amplitudes();
  return (plus - minus) / (2.0 * h);
}

}  // namespace

TEST_SUITE("model-lz") {
  TEST_CASE("adiabatic QFI examples") {
    CHECK(lz_qfi_adiabatic({0.05, 0.05, 0.05}) == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(lz_qfi_adiabatic({0.05, 0.05, 0.5}) == doctest::Approx(3.92118419763).epsilon(1e-10));
    CHECK(lz_qfi_adiabatic({0.05, 0.05, 0.0}) == 0.0);
  }

  TEST_CASE("Hamiltonian and ground state examples") {
    const Matrix h = lz_hamiltonian({0.05, 0.05, 0.1}).entries();
    CHECK(h(0, 0) == cplx(0.05, 0.0));
    CHECK(h(1, 1) == cplx(-0.05, 0.0));
    CHECK(h(0, 1) == cplx(0.025, 0.0));
    CHECK(fidelity(lz_ground_state({0.05, 0.05, 1e3}), spin_down()) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(fidelity(lz_ground_state({0.05, 0.05, 0.0}), spin_down()) == doctest::Approx(0.5));
  }

  TEST_CASE("parameters are validated") {
    CHECK_THROWS_AS(lz_hamiltonian({0.0, 0.05, 0.1}), DomainError);
    CHECK_THROWS_AS(lz_hamiltonian({0.05, -1.0, 0.1}), DomainError);
    CHECK_THROWS_AS(lz_qfi_adiabatic({0.05, 0.05, NAN}), DomainError);
  }

  TEST_CASE("CD term example") {
    const Matrix cd = lz_cd_term({0.05, 0.05, 0.05}, 1.0).entries();
    CHECK(max_abs(cd - pauli(Axis::Y).entries() * -5.0) < 1e-12);
    CHECK(max_abs(lz_delta_generator().entries() - 0.5 * pauli(Axis::X).entries()) == 0.0);
  }

  TEST_CASE("property: analytic QFI matches the pure-state estimator on a log grid") {
    const double delta = 0.05;
    for (int k = 0; k <= 40; ++k) {
      const double g = delta * std::pow(10.0, -1.0 + 3.0 * k / 40.0);
      const LZParams p{delta, delta, g};
      const QFIEstimate est = qfi_pure(lz_ground_state(p), ground_state_derivative(delta, g));
      CHECK(est.value == doctest::Approx(lz_qfi_adiabatic(p)).epsilon(1e-6));
    }
  }

  TEST_CASE("QFI peaks at g = delta") {
    const double delta = 0.05;
    double best_g = 0.0;
    double best = -1.0;
    for (int k = 0; k <= 20000; ++k) {
      const double g = delta * (0.5 + k * 1e-4);
      const double v = lz_qfi_adiabatic({delta, delta, g});
      if (v > best) {
        best = v;
        best_g = g;
      }
    }
    CHECK(best_g == doctest::Approx(delta).epsilon(1e-4));
    CHECK(best == doctest::Approx(1.0 / (4.0 * delta * delta)));
  }

  TEST_CASE("speed-limit time examples") {
    const LZParams p{0.05, 0.05, 0.0};
    CHECK(lz_qsl_time(p, 0.05) == doctest::Approx(15.7079632679).epsilon(1e-10));
    CHECK(lz_qsl_time(p, 0.0) == doctest::Approx(M_PI / 0.1).epsilon(1e-12));
    CHECK(lz_qsl_time(p, 1e6) == doctest::Approx(0.0).epsilon(1e-6));
    // QFI over tau^2 at g = delta.
    CHECK(lz_qfi_adiabatic({0.05, 0.05, 0.05}) / std::pow(lz_qsl_time(p, 0.05), 2) ==
          doctest::Approx(0.405284734569).epsilon(1e-10));
  }

  TEST_CASE("general speed limit reproduces the two-level closed form at g = 0") {
    const double delta = 0.05;
    const Operator h = lz_hamiltonian({delta, delta, 0.0});
    for (double rel : {0.1, 0.5, 1.0, 3.0, 20.0}) {
      const StateVector target = lz_ground_state({delta, delta, rel * delta});
      CHECK(qsl_general(h, spin_down(), target) ==
            doctest::Approx(lz_qsl_time({delta, delta, 0.0}, rel * delta)).epsilon(1e-10));
    }
  }

  TEST_CASE("property: QFI over tau^2 stays below one") {
    const double delta = 0.05;
    for (int k = 0; k <= 60; ++k) {
      const double g = delta * std::pow(10.0, -1.0 + 3.0 * k / 60.0);
      const double tau = lz_qsl_time({delta, delta, 0.0}, g);
      CHECK(lz_qfi_adiabatic({delta, delta, g}) / (tau * tau) < 1.0);
    }
  }

  TEST_CASE("driving Hamiltonian uses the estimate only in the CD term") {
    const TimeDependentHamiltonian h = lz_driving({0.07, 0.05, 0.0}, true);
    CHECK(max_abs(h.bare(0.2).entries() - lz_hamiltonian({0.07, 0.05, 0.2}).entries()) < 1e-15);
    CHECK(max_abs(h.counter_diabatic(0.2, 0.3).entries() - lz_cd_term({0.07, 0.05, 0.2}, 0.3).entries()) < 1e-15);
  }
}
