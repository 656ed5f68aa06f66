#include <cmath>
#include <random>

#include "cqm/errors.hpp"
#include "cqm/linalg.hpp"
#include "cqm/lz.hpp"
#include "cqm/quantum_ops.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cqm;
using cqm::test::max_abs;

TEST_SUITE("num-core") {
  TEST_CASE("eigh of sigma_z is (-1, 1)") {
    const EigenDecomposition d = eigh(pauli(Axis::Z));
    CHECK(d.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(d.eigenvalues(1) == doctest::Approx(1.0));
    CHECK(std::abs(d.ground_state()(1)) == doctest::Approx(1.0));
  }

  TEST_CASE("eigh of the two-level crossing Hamiltonian at delta = g = 0.05") {
    const EigenDecomposition d = eigh(lz_hamiltonian(LZParams{0.05, 0.05, 0.05}));
    CHECK(d.eigenvalues(0) == doctest::Approx(-0.0353553390593274).epsilon(1e-12));
    CHECK(d.eigenvalues(1) == doctest::Approx(0.0353553390593274).epsilon(1e-12));
  }

  TEST_CASE("eigh of the identity gives unit eigenvalues and orthonormal columns") {
    const EigenDecomposition d = eigh(Operator::identity(4));
    for (int k = 0; k < 4; ++k) CHECK(d.eigenvalues(k) == doctest::Approx(1.0));
    CHECK(max_abs(d.eigenvectors.adjoint() * d.eigenvectors - Matrix::Identity(4, 4)) < 1e-12);
  }

  TEST_CASE("eigenvector phase convention: largest entry real and positive") {
    std::mt19937 rng(7);
    const EigenDecomposition d = eigh(Operator::hermitian(test::random_hermitian(6, rng)));
    for (Eigen::Index k = 0; k < 6; ++k) {
      Eigen::Index best = 0;
      d.eigenvectors.col(k).cwiseAbs().maxCoeff(&best);
      CHECK(d.eigenvectors(best, k).imag() == 0.0);
      CHECK(d.eigenvectors(best, k).real() > 0.0);
    }
  }

  TEST_CASE("eigenpairs satisfy A v = lambda v and are sorted") {
    std::mt19937 rng(11);
    const Operator a = Operator::hermitian(test::random_hermitian(12, rng));
    const EigenDecomposition d = eigh(a);
    for (Eigen::Index k = 0; k < 12; ++k) {
      CHECK((a.entries() * d.eigenvectors.col(k) - d.eigenvalues(k) * d.eigenvectors.col(k)).norm() < 1e-10);
      CHECK(d.eigenvectors.col(k).norm() == doctest::Approx(1.0).epsilon(1e-12));
      if (k > 0) CHECK(d.eigenvalues(k) >= d.eigenvalues(k - 1));
    }
  }

  TEST_CASE("non-Hermitian input is rejected") {
    Matrix m(2, 2);
    m << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(Operator::hermitian(m), NotHermitianError);
    CHECK_THROWS_AS(eigh(Operator::general(m)), NotHermitianError);
  }

  TEST_CASE("expm_apply examples") {
    const StateVector r = expm_apply(pauli(Axis::X), cplx(0.0, -M_PI / 2.0), spin_down());
    CHECK(std::abs(r[0] - cplx(0.0, -1.0)) < 1e-12);
    CHECK(std::abs(r[1]) < 1e-12);

    std::mt19937 rng(3);
    const StateVector psi(Basis::qubit(), test::random_state(2, rng));
    const StateVector same = expm_apply(pauli(Axis::Y), cplx(0.0, 0.0), psi);
    CHECK((same.amplitudes() - psi.amplitudes()).norm() < 1e-14);

    const FockSpace space(5);
    const StateVector two = fock_state(space, 2);
    const StateVector rotated = expm_apply(ladder(space).n, cplx(0.0, -M_PI), two);
    CHECK((rotated.amplitudes() - two.amplitudes()).norm() < 1e-12);
  }

  TEST_CASE("dimension mismatches are reported") {
    const FockSpace space(3);
    CHECK_THROWS_AS(expm_apply(pauli(Axis::X), cplx(0.0, -1.0), fock_state(space, 0)), DimensionError);
    CHECK_THROWS_AS(fidelity(spin_down(), fock_state(space, 0)), DimensionError);
    CHECK_THROWS_AS(expectation(pauli(Axis::Z), fock_state(space, 0)), DimensionError);
    CHECK_THROWS_AS(StateVector(Basis::fock(3), Vector::Unit(2, 0)), DimensionError);
  }

  TEST_CASE("fidelity examples") {
    CHECK(fidelity(spin_down(), spin_down()) == doctest::Approx(1.0));
    CHECK(fidelity(spin_down(), spin_up()) == doctest::Approx(0.0));
    const StateVector gs = lz_ground_state(LZParams{0.05, 0.05, 0.05});
    CHECK(fidelity(spin_down(), gs) == doctest::Approx(0.853553390593274).epsilon(1e-12));
  }

  TEST_CASE("expectation and variance examples") {
    CHECK(expectation(pauli(Axis::Z), spin_down()).real() == doctest::Approx(-1.0));
    CHECK(variance(pauli(Axis::X), spin_down()) == doctest::Approx(1.0));
    CHECK(variance(pauli(Axis::Z), spin_down()) == doctest::Approx(0.0));
    const FockSpace space(6);
    CHECK(variance(ladder(space).n, fock_state(space, 4)) == doctest::Approx(0.0));
  }

  TEST_CASE("state construction enforces unit norm") {
    CHECK_THROWS_AS(StateVector(Basis::qubit(), Vector::Constant(2, cplx(1.0, 0.0))), NumericalError);
    const StateVector s = StateVector::normalized(Basis::qubit(), Vector::Constant(2, cplx(3.0, 0.0)));
    CHECK(s.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(StateVector::normalized(Basis::qubit(), Vector::Zero(2)), NumericalError);
  }

  TEST_CASE("property: unitarity of exp(-i dt H) for random H, dt and psi") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> dt(-5.0, 5.0);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
      const Operator h = Operator::hermitian(test::random_hermitian(n, rng));
      const StateVector psi(Basis::fock(n), test::random_state(n, rng));
      const StateVector out = expm_apply(h, cplx(0.0, -dt(rng)), psi);
      CHECK(std::abs(out.amplitudes().norm() - 1.0) < 1e-10);
    }
  }

  TEST_CASE("property: spectral reconstruction") {
    std::mt19937 rng(99);
    for (std::size_t n : {2u, 5u, 17u, 64u}) {
      const Operator h = Operator::hermitian(test::random_hermitian(n, rng));
      const EigenDecomposition d = eigh(h);
      const Matrix rebuilt = d.eigenvectors * d.eigenvalues.cast<cplx>().asDiagonal() * d.eigenvectors.adjoint();
      CHECK(max_abs(rebuilt - h.entries()) < 1e-9);
    }
  }

  TEST_CASE("property: fidelity is symmetric and blind to global phases") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> phase(-M_PI, M_PI);
    for (int trial = 0; trial < 50; ++trial) {
      const StateVector a(Basis::fock(7), test::random_state(7, rng));
      const StateVector b(Basis::fock(7), test::random_state(7, rng));
      CHECK(fidelity(a, b) == fidelity(b, a));
      const StateVector b2(Basis::fock(7), b.amplitudes() * std::polar(1.0, phase(rng)));
      CHECK(std::abs(fidelity(a, b2) - fidelity(a, b)) < 1e-14);
    }
  }

  TEST_CASE("property: variance of Hermitian operators is non-negative") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
      const Operator h = Operator::hermitian(test::random_hermitian(5, rng));
      const StateVector psi(Basis::fock(5), test::random_state(5, rng));
      CHECK(variance(h, psi) >= -1e-12);
    }
  }

  TEST_CASE("phase_distance ignores a global phase") {
    std::mt19937 rng(8);
    const Vector a = test::random_state(4, rng);
    CHECK(phase_distance(a, a * std::polar(1.0, 1.3)) < 1e-15);
    CHECK(phase_distance(Vector::Unit(2, 0), Vector::Unit(2, 1)) == doctest::Approx(std::sqrt(2.0)));
  }
}
