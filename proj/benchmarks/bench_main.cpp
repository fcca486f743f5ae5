#include <benchmark/benchmark.h>

#include <vector>

#include "locclab/critical.hpp"
#include "locclab/random.hpp"
#include "locclab/symmetry.hpp"
#include "locclab/zoo.hpp"

using namespace locclab;

static void BM_ApplyLocal(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  Rng rng = make_rng(1);
  const QuditState s = random_state(n, 2, rng);
  const LocalOperator g = random_local_invertible(n, 2, rng);
  for (auto _ : st) benchmark::DoNotOptimize(apply_local(g, s));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_ApplyLocal)->DenseRange(8, 16, 4);

static void BM_PartialTrace(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  Rng rng = make_rng(2);
  const QuditState s = random_state(n, 2, rng);
  const std::vector<int> keep{0, 1};
  for (auto _ : st) benchmark::DoNotOptimize(partial_trace(s, keep));
}
BENCHMARK(BM_PartialTrace)->DenseRange(8, 16, 4);

static void BM_NormalForm(benchmark::State& st) {
  Rng rng = make_rng(3);
  const QuditState s = apply_local(random_local_invertible(5, 3, rng), psi_nd(5, 3)).normalized();
  for (auto _ : st) benchmark::DoNotOptimize(normal_form(s));
}
BENCHMARK(BM_NormalForm)->Unit(benchmark::kMillisecond);

static void BM_SymmetrySearch(benchmark::State& st) {
  const QuditState s = psi_nd(5, 2).normalized();
  SearchOptions opt;
  opt.restarts = 5;
  for (auto _ : st) benchmark::DoNotOptimize(heuristic_symmetry_search(s, opt));
}
BENCHMARK(BM_SymmetrySearch)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
