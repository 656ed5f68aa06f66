// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <vector>

#include "cqm/experiments.hpp"
#include "cqm/kernels.hpp"
#include "cqm/qrm.hpp"
#include "cqm/quantum_ops.hpp"

namespace {

using namespace cqm;

StateVector squeezed_state() {
  const FockSpace space(120);
  return squeezed_vacuum(space, {0.4152, M_PI});
}

void BM_HusimiSerial(benchmark::State& state) {
  const StateVector psi = squeezed_state();
  const std::vector<cplx> grid = PhaseSpaceGrid{}.points();
  std::vector<double> out(grid.size());
  for (auto _ : state) {
    kernels::husimi_serial(psi.amplitudes(), grid, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}

void BM_HusimiParallel(benchmark::State& state) {
  const StateVector psi = squeezed_state();
  const std::vector<cplx> grid = PhaseSpaceGrid{}.points();
  std::vector<double> out(grid.size());
  for (auto _ : state) {
    kernels::husimi_parallel(psi.amplitudes(), grid, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}

// One propagation step of the Rabi-model ramp near 0.9 g_c, by three routes.
struct StepFixture {
  FockSpace space{static_cast<std::size_t>(120)};
  Matrix h;
  kernels::SparseMatrix sparse;
  Vector v;

  StepFixture() {
    QRMParams p;
    p.g = 0.9 * p.gc();
    h = qrm_sw_hamiltonian(p, space).entries() + qrm_cd_term(p, 1e-3, space).entries();
    sparse = h.sparseView();
    v = qrm_ground_state(p, space).amplitudes();
  }
};

void BM_StepSpectral(benchmark::State& state) {
  const StepFixture f;
  for (auto _ : state) {
    Vector out = expm(Operator::hermitian(f.h), cplx(0.0, -0.05)) * f.v;
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_StepTaylorDense(benchmark::State& state) {
  const StepFixture f;
  for (auto _ : state) {
    Vector out = kernels::expm_multiply(f.h, cplx(0.0, -0.05), f.v);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_StepTaylorSparse(benchmark::State& state) {
  const StepFixture f;
  for (auto _ : state) {
    Vector out = kernels::expm_multiply(f.sparse, cplx(0.0, -0.05), f.v);
    benchmark::DoNotOptimize(out.data());
  }
}

// Independent sweep rows: fixed-step LZ propagations at several durations.
void run_rows(bool parallel, benchmark::State& state) {
  RunConfig cfg = RunConfig::defaults(Experiment::Fig2);
  cfg.steps = 2048;
  ProtocolSetup setup = make_protocol(cfg);
  setup.propagation.adaptive = false;
  const std::vector<double> durations{2.0, 20.0, 200.0, 2000.0};
  std::vector<double> fid(durations.size());
  const auto body = [&](std::size_t i) {
    const PropagationResult r = propagate(setup.driving(setup.delta, true), setup.ramp(durations[i]),
                                          setup.initial_state(setup.delta), setup.propagation);
    fid[i] = fidelity(r.state, setup.target);
  };
  for (auto _ : state) {
    if (parallel) {
      kernels::for_each_parallel(durations.size(), body);
    } else {
      kernels::for_each_serial(durations.size(), body);
    }
    benchmark::DoNotOptimize(fid.data());
  }
}

void BM_RowsSerial(benchmark::State& state) { run_rows(false, state); }
void BM_RowsParallel(benchmark::State& state) { run_rows(true, state); }

}  // namespace

BENCHMARK(BM_HusimiSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HusimiParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StepSpectral)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_StepTaylorDense)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_StepTaylorSparse)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RowsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RowsParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
