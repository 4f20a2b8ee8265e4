#include <benchmark/benchmark.h>

#include "fieldspec/lattice.hpp"
#include "fieldspec/moments.hpp"
#include "fieldspec/partition.hpp"
#include "fieldspec/reconstruct.hpp"
#include "fieldspec/signal.hpp"
#include "fieldspec/toeplitz.hpp"

using namespace fieldspec;

namespace {

std::vector<cdouble> generators_for(int M, double beta, std::uint64_t seed) {
  const auto r = static_cast<std::size_t>(std::lround((2 * M + 1) / beta));
  return toeplitz_generators(random_topology(r, 0.0, 1.0, seed), M);
}

void BM_Generators(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const auto r = static_cast<std::size_t>(4 * M + 4);
  const auto t = random_topology(r, 0.0, 1.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(toeplitz_generators(t, M));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(r) * (4 * M + 1));
}
BENCHMARK(BM_Generators)->Arg(10)->Arg(50)->Arg(200);

void BM_Eig(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const auto g = generators_for(M, 0.25, 2);
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(M, g));
}
BENCHMARK(BM_Eig)->Arg(10)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& state) {
  const auto sig = BandlimitedSignal::random_real(10, 3);
  const auto s = sample_signal(sig, random_topology(26, 0.0, 0.8, 3));
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(s, 10));
}
BENCHMARK(BM_Reconstruct)->Unit(benchmark::kMicrosecond);

void BM_PartitionStream(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::size_t n = 0;
    PartitionStream s(p);
    do {
      ++n;
    } while (s.advance());
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_PartitionStream)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_LatticeCount(benchmark::State& state) {
  // Alternating two-block partition of {1..p}: the densest walk.
  const int p = static_cast<int>(state.range(0));
  std::vector<int> labels(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) labels[static_cast<std::size_t>(i)] = i % 2;
  const SetPartition tau(labels);
  for (auto _ : state) benchmark::DoNotOptimize(count_lattice_points(tau, 10));
}
BENCHMARK(BM_LatticeCount)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_ZetaTable(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zeta_table(p, 1));
}
BENCHMARK(BM_ZetaTable)->Arg(5)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
