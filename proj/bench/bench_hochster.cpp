#include <benchmark/benchmark.h>

#include "coedge/algebra.hpp"
#include "coedge/graph.hpp"

namespace {

coedge::Graph bench_graph(int n) {
  coedge::RandomGraphSpec spec;
  spec.n = n;
  spec.alpha = 0.5;
  spec.seed = 7;
  return coedge::sample_gnp(spec);
}

void BM_HochsterReference(benchmark::State& state) {
  const auto g = bench_graph(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(coedge::hochster_betti_table_reference(g, coedge::CoefficientField::rationals()));
}

void BM_HochsterParallel(benchmark::State& state) {
  const auto g = bench_graph(static_cast<int>(state.range(0)));
  coedge::HochsterOptions opt;
  opt.threads = static_cast<int>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(coedge::hochster_betti_table(g, coedge::CoefficientField::rationals(), opt));
}

}  // namespace

BENCHMARK(BM_HochsterReference)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HochsterParallel)->Args({12, 1})->Args({14, 1})->Args({14, 0})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
