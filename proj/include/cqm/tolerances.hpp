#pragma once

#include <cstddef>

namespace cqm {

// Every numerical threshold used by the library lives here.
struct Tolerances {
  // StateVector construction and propagation.
  static constexpr double norm = 1e-10;
  static constexpr double trajectory_norm = 1e-9;

  // Operator Hermiticity, entrywise max |A - A^dagger| (scaled by max(1, max|A|)).
  static constexpr double hermitian = 1e-12;

  // A v = lambda v residual per eigenvector (scaled by max(1, max|lambda|)).
  static constexpr double eigen_residual = 1e-10;

  // Spectral CD and spectral QFI divide by energy gaps.
  static constexpr double degenerate_gap = 1e-10;

  // Fock truncation: population allowed in the top decile of levels.
  static constexpr double leakage = 1e-8;
  static constexpr std::size_t default_truncation = 120;
  static constexpr std::size_t max_truncation = 512;

  // Step doubling for the time-ordered exponential.
  static constexpr std::size_t initial_steps = 1024;
  static constexpr std::size_t max_steps = std::size_t{1} << 20;
  static constexpr double propagation_change = 1e-6;

  // QFI estimators.
  static constexpr double qfi_floor = 1e-12;
  static constexpr double negative_qfi = 1e-9;
  static constexpr double overlap_floor = 1e-24;
  static constexpr double relative_fd_step = 1e-6;
  static constexpr double richardson_agreement = 1e-3;

  // CD term for the Rabi model refuses g within this relative gap of g_c.
  static constexpr double cd_singularity = 1e-6;

  // Speed-limit denominators.
  static constexpr double qsl_denominator = 1e-14;
};

}  // namespace cqm
