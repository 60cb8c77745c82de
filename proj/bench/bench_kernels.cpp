// Serial vs OpenMP kernels on the phase-gate curve's hot path.

#include <complex>
#include <vector>

#include <benchmark/benchmark.h>

#include "telechan/kernels.hpp"
#include "telechan/resource.hpp"

namespace k = telechan::kernels;

namespace {

void BM_PhaseVectorSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(k::chain_phase_vector_serial(n, 1.3));
}

void BM_PhaseVectorParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(k::chain_phase_vector_parallel(n, 1.3));
}

void BM_FwhtSerial(benchmark::State& state) {
  auto v = k::chain_phase_vector(static_cast<int>(state.range(0)), 1.3);
  for (auto _ : state) {
    k::fwht_serial(std::span<std::complex<double>>(v));
    benchmark::ClobberMemory();
  }
}

void BM_FwhtParallel(benchmark::State& state) {
  auto v = k::chain_phase_vector(static_cast<int>(state.range(0)), 1.3);
  for (auto _ : state) {
    k::fwht_parallel(std::span<std::complex<double>>(v));
    benchmark::ClobberMemory();
  }
}

std::vector<double> sample_probs(int n) {
  return telechan::phase_gate_chain_probs(n, 1.3).values();
}

void BM_EntropySerial(benchmark::State& state) {
  const auto p = sample_probs(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(k::shannon_entropy_bits_serial(p));
}

void BM_EntropyParallel(benchmark::State& state) {
  const auto p = sample_probs(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(k::shannon_entropy_bits_parallel(p));
}

void BM_PhaseGateProbs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(telechan::phase_gate_chain_probs(n, 1.3));
}

}  // namespace

BENCHMARK(BM_PhaseVectorSerial)->DenseRange(16, 22, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhaseVectorParallel)->DenseRange(16, 22, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FwhtSerial)->DenseRange(16, 22, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FwhtParallel)->DenseRange(16, 22, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EntropySerial)->DenseRange(16, 22, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EntropyParallel)->DenseRange(16, 22, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhaseGateProbs)->DenseRange(16, 22, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
