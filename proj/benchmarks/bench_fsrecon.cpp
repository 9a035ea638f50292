#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fsrecon/cyclotomic.hpp"
#include "fsrecon/fs.hpp"
#include "fsrecon/moves.hpp"
#include "fsrecon/oracle.hpp"
#include "fsrecon/radon.hpp"
#include "fsrecon/vmodule.hpp"

using namespace fsrecon;

namespace {

IntFunction random_multiset(const GroupSpec& g, std::int64_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  IntFunction a(g);
  const std::int64_t n = g.order();
  for (std::int64_t i = 0; i < size; ++i) a.add(g.element({static_cast<std::int64_t>(rng() % n)}), 1);
  return a;
}

// mu of A minus A with one coset ia U_n swapped for ib U_n: always in V.
IntFunction swapped_pair_mu(std::int64_t n) {
  const GroupSpec g = cyclic_group(n);
  IntFunction mu(g);
  const USet u = u_set(n);
  for (std::int64_t e : u.elements) {
    mu.add(g.element({e}), 1);
    mu.add(g.element({3 * e}), -1);
  }
  return mu;
}

void BM_FSMultiset(benchmark::State& state) {
  const GroupSpec g = cyclic_group(101);
  const IntFunction a = random_multiset(g, state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(fs_multiset(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FSMultiset)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_FindShifts(benchmark::State& state) {
  const GroupSpec g = cyclic_group(101);
  const FSMultiset s = fs_multiset(random_multiset(g, state.range(0), 2));
  const FSMultiset t = shift(s, g.element({17}));
  for (auto _ : state) benchmark::DoNotOptimize(find_shifts(s, t));
}
BENCHMARK(BM_FindShifts)->Arg(8)->Arg(16)->Arg(32);

void BM_VCheck(benchmark::State& state) {
  const IntFunction mu = swapped_pair_mu(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(v_check(mu));
}
BENCHMARK(BM_VCheck)->Arg(17)->Arg(31)->Arg(127)->Arg(257);

void BM_Synthesize(benchmark::State& state) {
  const GroupSpec g = cyclic_group(state.range(0));
  IntFunction a(g);
  IntFunction b(g);
  for (std::int64_t e : u_set(state.range(0)).elements) {
    a.add(g.element({e}), 1);
    b.add(g.element({3 * e}), 1);
  }
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_moves(a, b));
}
BENCHMARK(BM_Synthesize)->Arg(17)->Arg(127);

void BM_RankSNF(benchmark::State& state) {
  const auto gens = v_generators(cyclic_group(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rank_via_snf(gens));
}
BENCHMARK(BM_RankSNF)->Arg(15)->Arg(31)->Arg(45);

void BM_FourierCheck(benchmark::State& state) {
  const IntFunction mu = swapped_pair_mu(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fourier_check(mu, 0));
}
BENCHMARK(BM_FourierCheck)->Arg(17)->Arg(31)->Arg(63);

void BM_RadonRoundTrip(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const int r = static_cast<int>(state.range(1));
  std::mt19937_64 rng(3);
  std::vector<std::int64_t> f(static_cast<std::size_t>(TorusShape{n, r}.size()));
  for (auto& x : f) x = static_cast<std::int64_t>(rng() % 11) - 5;
  for (auto _ : state) benchmark::DoNotOptimize(radon_invert(radon_transform(n, r, f)));
}
BENCHMARK(BM_RadonRoundTrip)->Args({9, 2})->Args({15, 2})->Args({15, 3});

void BM_FiberScan(benchmark::State& state) {
  FiberScanConfig cfg;
  cfg.group = cyclic_group(state.range(0));
  cfg.max_size = 3;
  for (auto _ : state) benchmark::DoNotOptimize(fiber_scan(cfg));
}
BENCHMARK(BM_FiberScan)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
