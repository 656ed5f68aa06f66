#pragma once

// Hot inner loops. Each parallel kernel has a serial twin that the tests use
// as the reference; bench/ compares their throughput.

#include <cstddef>
#include <functional>
#include <span>

#include <Eigen/Sparse>

#include "cqm/linalg.hpp"

namespace cqm::kernels {

using SparseMatrix = Eigen::SparseMatrix<cplx>;

// exp(scale * h) v by a truncated Taylor series with substepping, accurate to
// double precision. No eigendecomposition; used in the propagation loop.
Vector expm_multiply(const Matrix& h, cplx scale, const Vector& v);
Vector expm_multiply(const SparseMatrix& h, cplx scale, const Vector& v);

// Q(alpha) = |<alpha|psi>|^2 / pi for Fock amplitudes psi, one value per grid point.
void husimi_serial(const Vector& fock_amplitudes, std::span<const cplx> grid, std::span<double> out);
void husimi_parallel(const Vector& fock_amplitudes, std::span<const cplx> grid, std::span<double> out);

// Population of a coherent state |alpha> beyond the first `truncation` Fock levels.
double coherent_tail(cplx alpha, std::size_t truncation);

// Runs body(i) for i in [0, n). The parallel version schedules dynamically so
// uneven rows (long propagations next to short ones) balance across threads.
void for_each_serial(std::size_t n, const std::function<void(std::size_t)>& body);
void for_each_parallel(std::size_t n, const std::function<void(std::size_t)>& body);

// Thread count used by the parallel kernels; 0 leaves the runtime default.
void set_thread_count(int threads);
int thread_count();

}  // namespace cqm::kernels
