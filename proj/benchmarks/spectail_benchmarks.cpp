// Microbenchmarks for the kernels that dominate the Monte Carlo loops:
// Sturm counting, top-k extraction, dense reduction, the resolvent closed
// form, secular root finding, and matrix sampling.

#include <benchmark/benchmark.h>

#include <vector>

#include "spectail/dense_eigen.hpp"
#include "spectail/edge_theory.hpp"
#include "spectail/laws.hpp"
#include "spectail/models.hpp"
#include "spectail/random.hpp"
#include "spectail/resolvent.hpp"
#include "spectail/tridiagonal.hpp"

using namespace spectail;

namespace {

TridiagonalMatrix sample_H(std::size_t N, std::uint64_t seed) {
  ModelSpec spec;
  spec.kind = ModelKind::H;
  spec.N = N;
  spec.alpha = 0.5;
  spec.law = pareto_law(1.0, 2.0);
  spec.seed = RandomStream(seed, 0);
  return build_H(spec);
}

void BM_SturmCount(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const TridiagonalMatrix T = sample_H(N, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sturm_count(T, 2.5));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SturmCount)->Range(256, 16384)->Complexity(benchmark::oN);

void BM_TopEigenvalue(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const TridiagonalMatrix T = sample_H(N, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(top_k_eigenvalues(T, 1));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TopEigenvalue)->Range(256, 16384)->Complexity();

void BM_DenseEigenvalues(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  RandomStream stream(3, 0);
  DenseSymmetric A(N);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      A.at(i, j) = A.at(j, i) = stream.normal();
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(dense_eigenvalues(A, 2000));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DenseEigenvalues)->Range(64, 1024)->Complexity();

void BM_ResolventEntry(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const SpectralParameter z(2.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(laplacian_resolvent_entry(N, z, N / 3, N / 2));
  }
}
BENCHMARK(BM_ResolventEntry)->Range(1024, 1048576);

void BM_SecularRoot(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  std::vector<double> values(N, 0.0);
  values[N / 2] = 1.5;
  const SpikeProfile profile = make_spike_profile(values);
  for (auto _ : state) {
    benchmark::DoNotOptimize(largest_secular_root_H(profile, N));
  }
}
BENCHMARK(BM_SecularRoot)->Range(512, 8192);

void BM_BuildH(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    ModelSpec spec;
    spec.kind = ModelKind::H;
    spec.N = N;
    spec.alpha = 0.5;
    spec.law = pareto_law(1.0, 2.0);
    spec.seed = RandomStream(11, 0);
    benchmark::DoNotOptimize(build_H(spec));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildH)->Range(1024, 16384)->Complexity(benchmark::oN);

void BM_SpikedGTop(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    RandomStream stream(13, 0);
    benchmark::DoNotOptimize(spiked_G_top_eigenvalue(N, {2.0, 1.5}, stream));
  }
}
BENCHMARK(BM_SpikedGTop)->Range(256, 4096);

void BM_HaarColumns(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    RandomStream stream(17, 0);
    benchmark::DoNotOptimize(sample_haar_columns(N, 4, stream));
  }
}
BENCHMARK(BM_HaarColumns)->Range(256, 4096);

}  // namespace

BENCHMARK_MAIN();
