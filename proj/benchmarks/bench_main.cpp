#include <benchmark/benchmark.h>

#include <random>
#include <numeric>

#include "spreadlab/actions.hpp"
#include "spreadlab/domination.hpp"
#include "spreadlab/fpr.hpp"

using namespace spl;

static void BM_compose(benchmark::State& st) {
  const std::size_t n = static_cast<std::size_t>(st.range(0));
  std::mt19937_64 rng(1);
  std::vector<point_t> a(n), b(n);
  std::iota(a.begin(), a.end(), 0u);
  b = a;
  std::shuffle(a.begin(), a.end(), rng);
  std::shuffle(b.begin(), b.end(), rng);
  Perm p(a), q(b);
  for (auto _ : st) benchmark::DoNotOptimize(p * q);
}
BENCHMARK(BM_compose)->Arg(13)->Arg(65)->Arg(1456);

static void BM_generates(benchmark::State& st) {
  auto G = construct(GroupSpec::parse("A:13"));
  std::mt19937_64 rng(2);
  for (auto _ : st) {
    auto x = G.random_element(rng), y = G.random_element(rng);
    benchmark::DoNotOptimize(generates_unchecked(G, x, y));
  }
}
BENCHMARK(BM_generates);

static void BM_gentable(benchmark::State& st) {
  auto G = construct(GroupSpec::parse("PSL2:11"));
  auto CI = ClassIndex::build(G, ClassMode::enumerate);
  for (auto _ : st) benchmark::DoNotOptimize(GenTable::build(G, CI).num_breakers());
}
BENCHMARK(BM_gentable)->Unit(benchmark::kMillisecond);

static void BM_uniform_spread(benchmark::State& st) {
  auto G = construct(GroupSpec::parse("PSL2:13"));
  auto T = GenTable::build(G, ClassIndex::build(G, ClassMode::enumerate));
  for (auto _ : st) benchmark::DoNotOptimize(uniform_spread_exact(T).value);
}
BENCHMARK(BM_uniform_spread)->Unit(benchmark::kMillisecond);

static void BM_partition_fix(benchmark::State& st) {
  auto x = Perm::parse("(1,2,3)(4,5,6)", 12);
  for (auto _ : st) benchmark::DoNotOptimize(partition_fix_count(x, 12, 4));
}
BENCHMARK(BM_partition_fix)->Unit(benchmark::kMillisecond);

static void BM_qhat_A13(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(qhat(GroupSpec::parse("A:13"), "n-cycle", 2).holds);
}
BENCHMARK(BM_qhat_A13)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
