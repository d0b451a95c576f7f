#include <benchmark/benchmark.h>

#include "embopt/embedding.hpp"
#include "embopt/functions.hpp"
#include "embopt/optimizers.hpp"
#include "embopt/partition.hpp"

namespace {

void BM_ProjectStreamed(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const embopt::LowPoint y{std::vector<double>(10, 0.5)};
  std::uint64_t draw = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(embopt::project_streamed(n, embopt::MatrixTag{1, 1, draw++}, y));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * 10));
}
BENCHMARK(BM_ProjectStreamed)->Arg(1000)->Arg(10000);

void BM_ProjectMaterialized(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  embopt::RngStream s(1, embopt::stream_id::kEmbedding);
  const embopt::GaussianMatrix a = embopt::sample_matrix(n, 10, s);
  const embopt::LowPoint y{std::vector<double>(10, 0.5)};
  for (auto _ : state) benchmark::DoNotOptimize(embopt::project(a, y));
}
BENCHMARK(BM_ProjectMaterialized)->Arg(1000)->Arg(10000);

void BM_EmbeddedHunter(benchmark::State& state) {
  const embopt::Objective f = embopt::make_function("ackley", 5, 1000, 1);
  embopt::OptimizerConfig cfg;
  cfg.budget = static_cast<std::size_t>(state.range(0));
  cfg.d = 5;
  for (auto _ : state) benchmark::DoNotOptimize(embopt::embedded_hunter(f, cfg).best_value);
}
BENCHMARK(BM_EmbeddedHunter)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Resoo(benchmark::State& state) {
  const embopt::Objective f = embopt::make_function("ackley", 5, 1000, 1);
  embopt::OptimizerConfig cfg;
  cfg.budget = static_cast<std::size_t>(state.range(0));
  cfg.d = 5;
  for (auto _ : state) benchmark::DoNotOptimize(embopt::resoo(f, cfg).best_value);
}
BENCHMARK(BM_Resoo)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_PartitionExpand(benchmark::State& state) {
  for (auto _ : state) {
    embopt::PartitionTree tree(embopt::BoxSpace::symmetric(10, 10.0 / 0.3), 3);
    embopt::NodeId node = tree.root();
    for (int depth = 0; depth < state.range(0); ++depth) node = tree.expand(node)[1];
    benchmark::DoNotOptimize(tree.depth());
  }
}
BENCHMARK(BM_PartitionExpand)->Arg(20)->Arg(80);

}  // namespace

BENCHMARK_MAIN();
