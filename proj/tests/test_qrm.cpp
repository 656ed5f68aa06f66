#include <cmath>

#include "cqm/dynamics.hpp"
#include "cqm/errors.hpp"
#include "cqm/metrology.hpp"
#include "cqm/qrm.hpp"
#include "cqm/quantum_ops.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cqm;
using cqm::test::max_abs;

namespace {

QRMParams at_fraction(double f) {
  QRMParams p;
  p.g = f * p.gc();
  return p;
}

}  // namespace

TEST_SUITE("model-qrm") {
  TEST_CASE("ground state examples at 0.9 g_c") {
    const QRMParams p = at_fraction(0.9);
    CHECK(p.gc() == doctest::Approx(1.0));
    CHECK(qrm_squeeze(p).r == doctest::Approx(0.4151828017).epsilon(1e-9));
    CHECK(qrm_squeeze(p).phi == doctest::Approx(M_PI));
    CHECK(qrm_mean_photons(p) == doctest::Approx(0.1825118083).epsilon(1e-9));
    const FockSpace space(120);
    const EigenDecomposition d = eigh(qrm_sw_hamiltonian(p, space));
    CHECK(d.ground_energy() == doctest::Approx(-0.00282055052823).epsilon(1e-9));
    CHECK(expectation(qrm_sw_hamiltonian(p, space), qrm_ground_state(p, space)).real() ==
          doctest::Approx(-0.00282055052823).epsilon(1e-9));
  }

  TEST_CASE("QFI formulas") {
    CHECK(qrm_qfi_exact(at_fraction(0.9)) == doctest::Approx(22718.144044321332).epsilon(1e-12));
    CHECK(qrm_qfi_critical_approx(at_fraction(0.9)) == doctest::Approx(31250.0).epsilon(1e-12));
    CHECK(qrm_qfi_critical_approx(at_fraction(0.99)) == doctest::Approx(3.125e6).epsilon(1e-12));
    CHECK(qrm_qfi_exact(at_fraction(0.0)) == 0.0);
    CHECK_THROWS_AS(qrm_qfi_exact(at_fraction(1.0)), DomainError);
  }

  TEST_CASE("property: analytic and diagonalized ground states coincide") {
    for (double f : {0.0, 0.3, 0.6, 0.9, 0.99}) {
      const QRMParams p = at_fraction(f);
      const FockSpace space(qrm_truncation(p, 120));
      const EigenDecomposition d = eigh(qrm_sw_hamiltonian(p, space));
      const StateVector numeric(space.basis(), d.ground_state());
      CHECK(fidelity(numeric, qrm_ground_state(p, space)) >= 0.9999);
    }
  }

  TEST_CASE("truncation grows with the squeezing") {
    CHECK(qrm_truncation(at_fraction(0.9), 120) == 120);
    CHECK(qrm_truncation(at_fraction(0.999), 16) > 16);
    CHECK(qrm_truncation(at_fraction(0.999), 120) >= 120);
  }

  TEST_CASE("finite-difference overlap QFI on ground states at 0.9 g_c") {
    const QRMParams p = at_fraction(0.9);
    const FockSpace space(120);
    const double step = 1e-8;
    const QFIEstimate analytic =
        qfi_overlap(qrm_ground_state(p.with_delta(p.delta - step / 2), space),
                    qrm_ground_state(p.with_delta(p.delta + step / 2), space), step);
    CHECK(analytic.value == doctest::Approx(22718.144).epsilon(0.005));
    const auto numeric = [&](double d) {
      return StateVector(space.basis(), eigh(qrm_sw_hamiltonian(p.with_delta(d), space)).ground_state());
    };
    const QFIEstimate diag = qfi_overlap(numeric(p.delta - step / 2), numeric(p.delta + step / 2), step);
    CHECK(diag.value == doctest::Approx(22718.144).epsilon(0.005));
  }

  TEST_CASE("property: approximate over exact QFI decreases to one near g_c") {
    double previous = INFINITY;
    for (double f = 0.5; f < 0.9995; f += 0.005) {
      const QRMParams p = at_fraction(f);
      const double ratio = qrm_qfi_critical_approx(p) / qrm_qfi_exact(p);
      CHECK(ratio < previous);
      CHECK(ratio > 1.0);
      previous = ratio;
    }
    const QRMParams p = at_fraction(0.999);
    CHECK(qrm_qfi_critical_approx(p) / qrm_qfi_exact(p) == doctest::Approx(1.0).epsilon(0.02));
  }

  TEST_CASE("Heisenberg-limit curve examples") {
    const double n = qrm_mean_photons(at_fraction(0.9));
    CHECK(qrm_hl_curve(n, 1.0) == doctest::Approx(1.72657894737).epsilon(1e-10));
    CHECK(qrm_hl_curve(n, 120.05809651) == doctest::Approx(24886.8166).epsilon(1e-8));
    CHECK(qrm_hl_curve(0.0, 5.0) == 0.0);
    CHECK_THROWS_AS(qrm_hl_curve(-1.0, 5.0), DomainError);
  }

  TEST_CASE("CD term example and refusal at the estimated critical point") {
    const FockSpace space(10);
    QRMParams p = at_fraction(0.9);
    const Matrix cd = qrm_cd_term(p, 5.0 / 9.0, space).entries();
    CHECK(std::abs(cd(2, 0) - cplx(0.0, 0.657894736842 * std::sqrt(2.0))) < 1e-11);
    CHECK(std::abs(cd(0, 2) - cplx(0.0, -0.657894736842 * std::sqrt(2.0))) < 1e-11);
    p.g = p.gc() * (1.0 - 1e-8);
    CHECK_THROWS_AS(qrm_cd_term(p, 1.0, space), DomainError);
    // A wrong estimate moves the singularity.
    QRMParams q = at_fraction(0.9);
    q.estimate = 0.0079;
    CHECK_THROWS_AS(qrm_cd_term(q, 1.0, space), DomainError);
  }

  TEST_CASE("normal-phase checks") {
    const FockSpace space(20);
    CHECK_THROWS_AS(qrm_sw_hamiltonian(at_fraction(1.0), space), DomainError);
    CHECK_THROWS_AS(qrm_squeeze(at_fraction(1.2)), DomainError);
    CHECK_NOTHROW(qrm_pulse_hamiltonian(0.01, 100.0, std::sqrt(2.0), space));
    QRMParams bad;
    bad.omega = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    CHECK(QRMParams{0.5, 10.0, 0.5, 0.0}.outside_dispersive_regime());
    CHECK_FALSE(QRMParams{}.outside_dispersive_regime());
  }

  TEST_CASE("bang-off prepares the normal-phase ground state") {
    for (double f : {0.5, 0.9}) {
      const QRMParams p = at_fraction(f);
      const FockSpace space(qrm_truncation(p, 120));
      const BangOffProtocol b = bang_off_schedule(p.delta, p.omega, p.g);
      const TimeDependentHamiltonian h = qrm_driving(p, space, false);
      const PropagationResult res = propagate(h, b.schedule, fock_state(space, 0), PropagationConfig{});
      CHECK(fidelity(res.state, qrm_ground_state(p, space)) >= 0.999);
      CHECK(res.certificate.checked);
    }
  }

  TEST_CASE("driving Hamiltonian pieces") {
    const FockSpace space(30);
    const QRMParams p = at_fraction(0.6);
    const TimeDependentHamiltonian h = qrm_driving(p, space, true);
    CHECK(max_abs(h.bare(p.g).entries() - qrm_sw_hamiltonian(p, space).entries()) < 1e-15);
    CHECK(max_abs(h.counter_diabatic(p.g, 0.01).entries() - qrm_cd_term(p, 0.01, space).entries()) < 1e-15);
    CHECK(max_abs(qrm_delta_generator(space).entries() - ladder(space).n.entries()) == 0.0);
  }
}
