#include <atomic>
#include <random>
#include <stdexcept>
#include <vector>

#include "cqm/kernels.hpp"
#include "cqm/quantum_ops.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cqm;

TEST_SUITE("kernels") {
  TEST_CASE("Taylor expm_multiply agrees with the spectral exponential") {
    std::mt19937 rng(42);
    for (std::size_t n : {2u, 8u, 40u}) {
      const Matrix h = test::random_hermitian(n, rng);
      const Vector v = test::random_state(n, rng);
      for (double t : {0.01, 0.7, 9.0}) {
        const Vector reference = expm(Operator::hermitian(h), cplx(0.0, -t)) * v;
        CHECK((kernels::expm_multiply(h, cplx(0.0, -t), v) - reference).norm() < 1e-11);
        const kernels::SparseMatrix s = h.sparseView();
        CHECK((kernels::expm_multiply(s, cplx(0.0, -t), v) - reference).norm() < 1e-11);
      }
    }
  }

  TEST_CASE("Taylor expm_multiply on a banded Fock-space generator") {
    const FockSpace space(60);
    const Matrix h = quadrature_squared(space) * 0.01 + ladder(space).n.entries() * 0.02;
    const Vector v = fock_state(space, 0).amplitudes();
    const Vector reference = expm(Operator::hermitian(h), cplx(0.0, -25.0)) * v;
    const kernels::SparseMatrix s = h.sparseView();
    CHECK((kernels::expm_multiply(s, cplx(0.0, -25.0), v) - reference).norm() < 1e-11);
  }

  TEST_CASE("serial and parallel Husimi kernels agree exactly") {
    std::mt19937 rng(1);
    const Vector psi = test::random_state(30, rng);
    const PhaseSpaceGrid grid{-3.0, 3.0, -3.0, 3.0, 41, 37};
    const std::vector<cplx> points = grid.points();
    std::vector<double> a(points.size());
    std::vector<double> b(points.size());
    kernels::husimi_serial(psi, points, a);
    kernels::husimi_parallel(psi, points, b);
    CHECK(a == b);
  }

  TEST_CASE("coherent_tail is the Poisson mass beyond the truncation") {
    CHECK(kernels::coherent_tail(cplx(0.0, 0.0), 5) == 0.0);
    // |alpha|^2 = 1: P(n >= 2) = 1 - 2/e
    CHECK(kernels::coherent_tail(cplx(1.0, 0.0), 2) == doctest::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-12));
    CHECK(kernels::coherent_tail(cplx(1.0, 1.0), 200) < 1e-15);
  }

  TEST_CASE("for_each variants visit every index and rethrow failures") {
    std::vector<int> seen(100, 0);
    kernels::for_each_serial(seen.size(), [&](std::size_t i) { seen[i] += 1; });
    kernels::for_each_parallel(seen.size(), [&](std::size_t i) { seen[i] += 1; });
    for (int s : seen) CHECK(s == 2);
    CHECK_THROWS_AS(kernels::for_each_parallel(10,
                                               [](std::size_t i) {
                                                 if (i == 7) throw std::runtime_error("row 7");
                                               }),
                    std::runtime_error);
  }

  TEST_CASE("thread count is positive") { CHECK(kernels::thread_count() >= 1); }
}
