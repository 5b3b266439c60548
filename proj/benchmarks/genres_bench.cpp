#include <benchmark/benchmark.h>

#include "genres/genres.hpp"
#include "support/random_pencils.hpp"

namespace genres {
namespace {

using testing::Rng;

Pencil bench_pencil(Eigen::Index n) {
  Rng rng(static_cast<std::uint64_t>(n));
  return testing::constant_support_pencil(n, n, n / 2, rng);
}

void BM_svd(benchmark::State& state) {
  Rng rng(1);
  const CMat a = testing::gaussian(state.range(0), state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(svd(a));
}

void BM_mp_inverse(benchmark::State& state) {
  Rng rng(2);
  const Eigen::Index n = state.range(0);
  const CMat a = testing::random_rank(n, n, n / 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mp_inverse(a));
}

void BM_evaluate(benchmark::State& state) {
  const Pencil p = bench_pencil(state.range(0));
  const ResolventFamily f = build_family(p, mp_inverse(p.t()));
  const Complex lambda = 0.25 * f.radius() * Complex(0.6, 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(f, lambda));
}

void BM_check_resolvent_axioms(benchmark::State& state) {
  const Pencil p = bench_pencil(state.range(0));
  const ResolventFamily f = build_family(p, mp_inverse(p.t()));
  const DiskGrid grid = f.default_grid();
  for (auto _ : state) benchmark::DoNotOptimize(check_resolvent_axioms(f, grid));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}

BENCHMARK(BM_svd)->Arg(8)->Arg(16)->Arg(32)->Arg(50);
BENCHMARK(BM_mp_inverse)->Arg(8)->Arg(16)->Arg(32)->Arg(50);
BENCHMARK(BM_evaluate)->Arg(8)->Arg(16)->Arg(32)->Arg(50);
BENCHMARK(BM_check_resolvent_axioms)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace genres

BENCHMARK_MAIN();
