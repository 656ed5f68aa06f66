#include "cqm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cqm/errors.hpp"

namespace cqm::kernels {

namespace {

// Largest |scale| * ||h||_1 handled by one Taylor series.
constexpr double kTaylorReach = 2.0;
constexpr int kMaxTaylorTerms = 80;

cplx husimi_amplitude(const Vector& psi, cplx alpha) {
  // <alpha|psi> = e^{-|alpha|^2/2} sum_n conj(alpha)^n / sqrt(n!) psi_n
  const cplx a = std::conj(alpha);
  cplx coeff = std::exp(-0.5 * std::norm(alpha));
  cplx sum = coeff * psi(0);
  for (Eigen::Index n = 1; n < psi.size(); ++n) {
    coeff *= a / std::sqrt(static_cast<double>(n));
    sum += coeff * psi(n);
  }
  return sum;
}

}  // namespace

namespace {

template <class M>
Vector taylor_expm_multiply(const M& h, double norm1, cplx scale, const Vector& v) {
  const double reach = std::abs(scale) * norm1;
  const int substeps = std::max(1, static_cast<int>(std::ceil(reach / kTaylorReach)));
  const cplx s = scale / static_cast<double>(substeps);

  Vector result = v;
  Vector term(v.size());
  for (int step = 0; step < substeps; ++step) {
    term = result;
    double previous = std::numeric_limits<double>::infinity();
    int k = 1;
    for (; k <= kMaxTaylorTerms; ++k) {
      term = (s / static_cast<double>(k)) * (h * term);
      result += term;
      const double current = term.template lpNorm<1>();
      // Two consecutive negligible terms end the series.
      if (current + previous <= 1e-17 * result.template lpNorm<1>()) break;
      previous = current;
    }
    if (k > kMaxTaylorTerms) throw NumericalError("expm_multiply: Taylor series did not converge");
  }
  return result;
}

}  // namespace

Vector expm_multiply(const Matrix& h, cplx scale, const Vector& v) {
  if (h.rows() != h.cols() || h.cols() != v.size()) throw DimensionError("expm_multiply: dimension mismatch");
  return taylor_expm_multiply(h, h.cwiseAbs().colwise().sum().maxCoeff(), scale, v);
}

Vector expm_multiply(const SparseMatrix& h, cplx scale, const Vector& v) {
  if (h.rows() != h.cols() || h.cols() != v.size()) throw DimensionError("expm_multiply: dimension mismatch");
  double norm1 = 0.0;
  for (int k = 0; k < h.outerSize(); ++k) {
    double col = 0.0;
    for (SparseMatrix::InnerIterator it(h, k); it; ++it) col += std::abs(it.value());
    norm1 = std::max(norm1, col);
  }
  return taylor_expm_multiply(h, norm1, scale, v);
}

void husimi_serial(const Vector& fock_amplitudes, std::span<const cplx> grid, std::span<double> out) {
  if (out.size() != grid.size()) throw DimensionError("husimi: output size differs from grid size");
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = std::norm(husimi_amplitude(fock_amplitudes, grid[i])) / M_PI;
}

void husimi_parallel(const Vector& fock_amplitudes, std::span<const cplx> grid, std::span<double> out) {
  if (out.size() != grid.size()) throw DimensionError("husimi: output size differs from grid size");
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = std::norm(husimi_amplitude(fock_amplitudes, grid[static_cast<std::size_t>(i)])) / M_PI;
  }
}

double coherent_tail(cplx alpha, std::size_t truncation) {
  const double x = std::norm(alpha);
  if (x == 0.0) return 0.0;
  // Poisson(x) mass on levels >= truncation; summed in log space for large x.
  double kept = 0.0;
  for (std::size_t n = 0; n < truncation; ++n) {
    const double dn = static_cast<double>(n);
    kept += std::exp(-x + dn * std::log(x) - std::lgamma(dn + 1.0));
  }
  return std::max(0.0, 1.0 - kept);
}

void for_each_serial(std::size_t n, const std::function<void(std::size_t)>& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

void for_each_parallel(std::size_t n, const std::function<void(std::size_t)>& body) {
  std::exception_ptr failure;
  std::mutex guard;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void set_thread_count(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace cqm::kernels
