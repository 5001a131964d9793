#include <benchmark/benchmark.h>

#include "percolate/order_index.hpp"
#include "percolate/partition.hpp"
#include "percolate/process.hpp"
#include "percolate/rng.hpp"

namespace percolate {
namespace {

void BM_PartitionRandomUnions(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    Partition p(n);
    Rng rng(1);
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto u = static_cast<std::uint32_t>(rng.uniform_below(n)) + 1;
      const auto v = static_cast<std::uint32_t>(rng.uniform_below(n)) + 1;
      benchmark::DoNotOptimize(p.unite(VertexId{u}, VertexId{v}));
    }
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PartitionRandomUnions)->Arg(1 << 16)->Arg(1 << 20);

// Select cost on a partition grown by the half-restricted process to n steps.
void BM_OrderIndexSelect(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  Process proc(ProcessKind::half_restricted(Beta::parse("0.5")), n);
  Rng rng(2);
  for (std::uint32_t i = 0; i < n; ++i) proc.step(rng);
  const OrderIndex& idx = *proc.index();
  for (auto _ : state) {
    const auto r = static_cast<std::uint32_t>(rng.uniform_below(idx.restricted_size()));
    benchmark::DoNotOptimize(idx.select(RankDraw{r}));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_OrderIndexSelect)->Arg(1 << 16)->Arg(1 << 20);

void BM_OrderIndexRandomMerges(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    Partition p(n);
    OrderIndex idx = OrderIndex::build(p, Beta::parse("0.5"));
    Rng rng(3);
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto u = static_cast<std::uint32_t>(rng.uniform_below(n)) + 1;
      const auto v = static_cast<std::uint32_t>(rng.uniform_below(n)) + 1;
      const MergeOutcome m = p.unite(VertexId{u}, VertexId{v});
      if (m.merged) idx.apply_merge(m);
    }
    benchmark::DoNotOptimize(idx.alpha());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OrderIndexRandomMerges)->Arg(1 << 16)->Arg(1 << 20);

void BM_ProcessSteps(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const ProcessKind kinds[] = {ProcessKind::half_restricted(Beta::parse("0.5")),
                               ProcessKind::erdos_renyi(),
                               ProcessKind::achlioptas(AchlioptasRule::kMinProduct)};
  const ProcessKind kind = kinds[state.range(1)];
  state.SetLabel(kind.tag());
  for (auto _ : state) {
    Process proc(kind, n);
    Rng rng(4);
    for (std::uint64_t i = 0; i < 2ull * n; ++i) benchmark::DoNotOptimize(proc.step(rng));
  }
  state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
}
BENCHMARK(BM_ProcessSteps)
    ->ArgsProduct({{1 << 16, 1 << 20}, {0, 1, 2}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace percolate

BENCHMARK_MAIN();
