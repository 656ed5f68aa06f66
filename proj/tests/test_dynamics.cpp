#include <cmath>
#include <random>
#include <sstream>

#include "cqm/dynamics.hpp"
#include "cqm/errors.hpp"
#include "cqm/experiments.hpp"
#include "cqm/lz.hpp"
#include "cqm/qrm.hpp"
#include "cqm/quantum_ops.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cqm;
using cqm::test::max_abs;

namespace {

RunConfig lz_config(bool ground) {
  RunConfig cfg = RunConfig::defaults(Experiment::Fig2);
  cfg.initial_ground = ground;
  return cfg;
}

TimeDependentHamiltonian constant_rabi(double omega) {
  std::vector<HamiltonianTerm> terms;
  terms.push_back({pauli(Axis::X), [omega](double, double) { return 0.5 * omega; }, false});
  return TimeDependentHamiltonian(std::move(terms), false, 0.0);
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("ramp endpoints and analytic derivatives") {
    const RampSchedule p = RampSchedule::power_law(1.0, 0.05, 10.0, 0.2);
    CHECK(p.value(0.0) == doctest::Approx(1.0));
    CHECK(p.value(10.0) == doctest::Approx(0.05));
    const RampSchedule s = RampSchedule::sqrt_ramp(0.0, 0.9, 50.0);
    CHECK(s.value(0.0) == 0.0);
    CHECK(s.value(50.0) == doctest::Approx(0.9));
    CHECK(s.value(12.5) == doctest::Approx(0.45));
    for (const RampSchedule& r : {p, s, RampSchedule::power_law(0.0, 2.0, 3.0, 1.7)}) {
      for (double f : {0.1, 0.37, 0.8}) {
        const double t = f * r.duration();
        const double h = 1e-6 * r.duration();
        const double fd = (r.value(t + h) - r.value(t - h)) / (2.0 * h);
        CHECK(r.derivative(t) == doctest::Approx(fd).epsilon(1e-6));
      }
      CHECK(r.grid_time(0.0) == 0.0);
      CHECK(r.grid_time(1.0) == doctest::Approx(r.duration()));
    }
    CHECK(p.grid_exponent() == doctest::Approx(5.0));
    CHECK(s.grid_exponent() == doctest::Approx(2.0));
  }

  TEST_CASE("bang-off schedule values and validation") {
    const RampSchedule b = RampSchedule::bang_off({{2.0, 1.0}, {0.0, 0.0}, {0.5, 3.0}});
    CHECK(b.duration() == doctest::Approx(4.0));
    CHECK(b.value(0.5) == 2.0);
    CHECK(b.value(2.0) == 0.5);
    CHECK(b.derivative(2.0) == 0.0);
    CHECK_THROWS_AS(RampSchedule::bang_off({}), DomainError);
    CHECK_THROWS_AS(RampSchedule::bang_off({{1.0, -1.0}}), DomainError);
    CHECK_THROWS_AS(RampSchedule::power_law(1.0, 0.0, 0.0, 0.5), DomainError);
    CHECK_THROWS_AS(RampSchedule::power_law(1.0, 0.0, 1.0, 0.0), DomainError);
  }

  TEST_CASE("constant Rabi drive over half a period flips spin down to -i up") {
    const double omega = 0.3;
    PropagationConfig cfg;
    cfg.adaptive = false;
    cfg.steps = 64;
    const RampSchedule r = RampSchedule::power_law(0.0, 0.0, M_PI / omega, 1.0);
    const PropagationResult res = propagate(constant_rabi(omega), r, spin_down(), cfg);
    CHECK(std::abs(res.state[0] - cplx(0.0, -1.0)) < 1e-12);
    CHECK(std::abs(res.state[1]) < 1e-12);
  }

  TEST_CASE("LZ counter-diabatic and sudden limits") {
    const ProtocolSetup setup = make_protocol(lz_config(false));
    const double delta = setup.delta;
    const PropagationResult cd = propagate(setup.driving(delta, true), setup.ramp(0.1 / delta), spin_down(), setup.propagation);
    CHECK(fidelity(cd.state, setup.target) >= 0.999);
    CHECK(cd.certificate.checked);
    CHECK(cd.certificate.change < setup.propagation.tolerance);
    CHECK(cd.max_norm_deviation < 1e-9);

    const PropagationResult quench =
        propagate(setup.driving(delta, false), setup.ramp(0.01 / delta), spin_down(), setup.propagation);
    CHECK(fidelity(quench.state, setup.target) == doctest::Approx(0.8536).epsilon(0.01 / 0.8536));
  }

  TEST_CASE("slow LZ sweep without CD approaches the adiabatic limit") {
    const ProtocolSetup setup = make_protocol(lz_config(false));
    const PropagationResult res =
        propagate(setup.driving(setup.delta, false), setup.ramp(100.0 / setup.delta), spin_down(), setup.propagation);
    CHECK(fidelity(res.state, setup.target) >= 0.99);
  }

  TEST_CASE("property: CD keeps the state on the instantaneous ground state") {
    const ProtocolSetup setup = make_protocol(lz_config(true));
    PropagationConfig cfg = setup.propagation;
    cfg.record_trajectory = true;
    for (double t_delta : {0.01, 1.0, 30.0}) {
      const double T = t_delta / setup.delta;
      const PropagationResult res =
          propagate(setup.driving(setup.delta, true), setup.ramp(T), setup.initial_state(setup.delta), cfg);
      REQUIRE(res.trajectory.size() >= 2);
      CHECK(res.trajectory.front().t == 0.0);
      CHECK(res.trajectory.back().t == doctest::Approx(T));
      for (const TrajectoryPoint& p : res.trajectory) {
        CHECK(p.fidelity_to_ground >= 0.999);
        CHECK(std::abs(p.norm - 1.0) < 1e-9);
      }
    }
  }

  TEST_CASE("propagation failures are reported") {
    const ProtocolSetup setup = make_protocol(lz_config(false));
    PropagationConfig cfg = setup.propagation;
    cfg.tolerance = 1e-15;
    cfg.max_steps = 4096;
    CHECK_THROWS_AS(propagate(setup.driving(setup.delta, false), setup.ramp(10.0 / setup.delta), spin_down(), cfg),
                    ConvergenceError);
    const FockSpace space(4);
    CHECK_THROWS_AS(propagate(setup.driving(setup.delta, false), setup.ramp(1.0), fock_state(space, 0), cfg),
                    DimensionError);
  }

  TEST_CASE("pinned step counts are used as given") {
    const ProtocolSetup setup = make_protocol(lz_config(false));
    PropagationConfig cfg = setup.propagation;
    cfg.adaptive = false;
    cfg.steps = 300;
    const PropagationResult res = propagate(setup.driving(setup.delta, true), setup.ramp(40.0), spin_down(), cfg);
    CHECK(res.certificate.steps == 300);
    CHECK_FALSE(res.certificate.checked);
    const Matrix u = propagate_unitary(setup.driving(setup.delta, true), setup.ramp(40.0), cfg);
    CHECK((u * spin_down().amplitudes() - res.state.amplitudes()).norm() < 1e-12);
    CHECK(max_abs(u.adjoint() * u - Matrix::Identity(2, 2)) < 1e-12);
  }

  TEST_CASE("spectral CD examples") {
    const LZParams p{0.05, 0.05, 0.05};
    const Operator h = lz_hamiltonian(p);
    const Operator dh = pauli(Axis::Z).scaled(0.5 * -0.3);
    CHECK(max_abs(cd_spectral(h, dh).entries() - lz_cd_term(p, -0.3).entries()) < 1e-12);
    CHECK_THROWS_AS(cd_spectral(Operator::identity(2), pauli(Axis::X)), DegeneracyError);
    CHECK_THROWS_AS(cd_spectral(h, Operator::identity(3)), DimensionError);
  }

  TEST_CASE("property: spectral CD matches the analytic LZ term") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> g(-2.0, 2.0);
    std::uniform_real_distribution<double> gdot(-5.0, 5.0);
    for (int k = 0; k < 100; ++k) {
      const LZParams p{0.05, 0.05, g(rng)};
      const double rate = gdot(rng);
      const Operator dh = pauli(Axis::Z).scaled(0.5 * rate);
      CHECK(max_abs(cd_spectral(lz_hamiltonian(p), dh).entries() - lz_cd_term(p, rate).entries()) < 1e-8);
    }
  }

  TEST_CASE("property: spectral CD matches the analytic QRM term on the low block") {
    const FockSpace space(480);
    const Matrix x2 = quadrature_squared(space);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(0.0, 0.9);
    std::uniform_real_distribution<double> gdot(-1e-3, 1e-3);
    for (int k = 0; k < 100; ++k) {
      QRMParams p;
      p.g = u(rng) * p.gc();
      const double rate = gdot(rng);
      const Operator dh = Operator::hermitian(x2 * (-p.g * rate / (2.0 * p.omega)));
      const Matrix diff = cd_spectral(qrm_sw_hamiltonian(p, space), dh).entries() - qrm_cd_term(p, rate, space).entries();
      CHECK(max_abs(diff.topLeftCorner(60, 60)) < 1e-8);
    }
  }

  TEST_CASE("adiabatic gauge: <n|d_g n> vanishes for the phase-fixed eigenvectors") {
    const double h = 1e-7;
    for (double g : {-1.0, 0.02, 0.05, 3.0}) {
      const Matrix v0 = eigh(lz_hamiltonian({0.05, 0.05, g - h})).eigenvectors;
      const Matrix v1 = eigh(lz_hamiltonian({0.05, 0.05, g})).eigenvectors;
      const Matrix v2 = eigh(lz_hamiltonian({0.05, 0.05, g + h})).eigenvectors;
      for (Eigen::Index n = 0; n < 2; ++n) {
        const cplx berry = v1.col(n).dot((v2.col(n) - v0.col(n)) / (2.0 * h));
        CHECK(std::abs(berry) < 1e-8);
      }
    }
    const FockSpace space(60);
    for (double f : {0.2, 0.7}) {
      QRMParams p;
      p.g = f * p.gc();
      const double step = 1e-6 * p.gc();
      const Matrix v1 = eigh(qrm_sw_hamiltonian(p, space)).eigenvectors;
      QRMParams lo = p, hi = p;
      lo.g -= step;
      hi.g += step;
      const Matrix v0 = eigh(qrm_sw_hamiltonian(lo, space)).eigenvectors;
      const Matrix v2 = eigh(qrm_sw_hamiltonian(hi, space)).eigenvectors;
      for (Eigen::Index n = 0; n < 5; ++n) {
        const cplx berry = v1.col(n).dot((v2.col(n) - v0.col(n)) / (2.0 * step));
        CHECK(std::abs(berry) < 1e-8);
      }
    }
  }

  TEST_CASE("bang-off protocol timings") {
    const BangOffProtocol b = bang_off_schedule(0.01, 100.0, 0.9);
    CHECK(b.g_bang == doctest::Approx(std::sqrt(2.0)));
    CHECK(b.t_bang == doctest::Approx(41.5182801705).epsilon(1e-10));
    CHECK(b.t_off == doctest::Approx(78.5398163397).epsilon(1e-10));
    CHECK(b.tau_qsl == doctest::Approx(120.05809651).epsilon(1e-10));
    CHECK(b.schedule.family() == RampSchedule::Family::BangOff);
    CHECK(bang_off_schedule(0.01, 100.0, 0.0).t_bang == 0.0);
    CHECK_THROWS_AS(bang_off_schedule(0.01, 100.0, 1.0), DomainError);
    CHECK_THROWS_AS(bang_off_schedule(-0.01, 100.0, 0.5), DomainError);
  }

  TEST_CASE("time-dependent Hamiltonian assembly") {
    const TimeDependentHamiltonian h = lz_driving({0.05, 0.04, 0.0}, true);
    const Matrix full = h.at(0.3, -0.2).entries();
    CHECK(max_abs(full - h.bare(0.3).entries() - h.counter_diabatic(0.3, -0.2).entries()) < 1e-15);
    CHECK(max_abs(Matrix(h.sparse_at(0.3, -0.2)) - full) < 1e-15);
    CHECK(h.estimate() == 0.04);
    const TimeDependentHamiltonian off = lz_driving({0.05, 0.04, 0.0}, false);
    CHECK(max_abs(off.at(0.3, -0.2).entries() - off.bare(0.3).entries()) == 0.0);
    CHECK_THROWS_AS(TimeDependentHamiltonian({}, false, 0.0), DomainError);
  }

  TEST_CASE("trajectory CSV layout") {
    std::ostringstream os;
    write_trajectory_csv(os, {TrajectoryPoint{0.0, 1.0, 0.5, 1.0}});
    CHECK(os.str() == "t,g,fidelity_to_instantaneous_ground,norm\n0,1,0.5,1\n");
  }
}
