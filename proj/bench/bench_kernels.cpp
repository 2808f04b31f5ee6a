// Serial reference vs OpenMP variants of the heavy kernels.
#include <benchmark/benchmark.h>

#include <numbers>

#include "phasec/dynamics.hpp"
#include "phasec/husimi.hpp"
#include "phasec/models.hpp"

using namespace phasec;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::parallel : Exec::serial; }

Mat lmg(int n_spins) {
  LmgParams p;
  p.n_spins = n_spins;
  p.h = -0.1;
  p.gamma = 0.2;
  p.field_scale = 2.0;
  return lmg_hamiltonian(p, SpinSpace::from_two_j(n_spins));
}

void BM_BuildKernels(benchmark::State& st) {
  const SpinSpace s = SpinSpace::from_two_j(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(build_kernels(s, exec_of(st)));
}

void BM_WignerLiouville(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const KernelSet ks = build_kernels(SpinSpace::from_two_j(n));
  const Mat H = lmg(n);
  for (auto _ : st) benchmark::DoNotOptimize(build_liouville(H, ks, Representation::wigner, exec_of(st)));
}

void BM_WeylLiouville(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const KernelSet ks = build_kernels(SpinSpace::from_two_j(n));
  const Mat H = lmg(n);
  for (auto _ : st) benchmark::DoNotOptimize(build_liouville(H, ks, Representation::weyl, exec_of(st)));
}

void BM_MapOperator(benchmark::State& st) {
  const SpinSpace s = SpinSpace::from_two_j(static_cast<int>(st.range(0)));
  const KernelSet ks = build_kernels(s);
  const Vec psi = coherent_state(s, {std::numbers::pi / 2, 0.0});
  const Mat rho = psi * psi.adjoint();
  for (auto _ : st) benchmark::DoNotOptimize(map_operator(rho, ks, exec_of(st)));
}

void BM_HusimiSmoothing(benchmark::State& st) {
  const SpinSpace s = SpinSpace::from_two_j(static_cast<int>(st.range(0)));
  const KernelSet ks = build_kernels(s);
  const SmoothingKernel sk = build_smoothing(ks);
  const PhaseGrid w = coherent_wigner({std::numbers::pi / 2, 0.0}, ks);
  for (auto _ : st) benchmark::DoNotOptimize(husimi_from_wigner(w, sk, exec_of(st)));
}

void BM_SmoothingBuild(benchmark::State& st) {
  const SpinSpace s = SpinSpace::from_two_j(static_cast<int>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(build_smoothing_unchecked(s, ThetaConvention::two_pi, exec_of(st)));
}

// second argument: 0 serial reference, 1 OpenMP
#define PHASEC_BENCH(fn) BENCHMARK(fn)->ArgsProduct({{10, 20, 30}, {0, 1}})->Unit(benchmark::kMillisecond)

PHASEC_BENCH(BM_BuildKernels);
PHASEC_BENCH(BM_WignerLiouville);
PHASEC_BENCH(BM_WeylLiouville);
PHASEC_BENCH(BM_MapOperator);
PHASEC_BENCH(BM_HusimiSmoothing);
PHASEC_BENCH(BM_SmoothingBuild);

}  // namespace

BENCHMARK_MAIN();
