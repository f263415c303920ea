#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "redraw/layout.hpp"
#include "redraw/pca.hpp"

using namespace redraw;

namespace {

OrderedSet sparse_order(std::size_t n) {
  Rng rng(6006 + n);
  return testsupport::random_order(n, 3.0 / static_cast<double>(n), rng);
}

void node_iteration(benchmark::State& state) {
  const auto order = sparse_order(static_cast<std::size_t>(state.range(0)));
  LayoutParams params;
  params.max_iterations = 1;
  params.epsilon = 0.0;
  Rng rng(1);
  const auto drawing = initial_drawing(order, 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(node_step(order, drawing, params));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(node_iteration)->RangeMultiplier(2)->Range(50, 400)->Complexity(benchmark::oNSquared);

void candidate_recomputation(benchmark::State& state) {
  const auto order = sparse_order(static_cast<std::size_t>(state.range(0)));
  Rng rng(1);
  const auto drawing = initial_drawing(order, 2, rng);
  const LayoutParams params;
  for (auto _ : state) benchmark::DoNotOptimize(candidate_sets(order, drawing, params));
  state.counters["edges"] = static_cast<double>(order.covers().pairs.size());
}
BENCHMARK(candidate_recomputation)->RangeMultiplier(2)->Range(50, 400);

void pca_reduction(benchmark::State& state) {
  Rng rng(3);
  const auto drawing = testsupport::random_drawing(static_cast<std::size_t>(state.range(0)), 5, rng);
  for (auto _ : state) benchmark::DoNotOptimize(reduce_dimension(drawing));
}
BENCHMARK(pca_reduction)->RangeMultiplier(4)->Range(16, 1024);

void full_layout(benchmark::State& state) {
  const auto order = testsupport::load_corpus_order("boolean_4.edges");
  const LayoutParams params;
  for (auto _ : state) benchmark::DoNotOptimize(redraw_layout(order, params));
}
BENCHMARK(full_layout)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
