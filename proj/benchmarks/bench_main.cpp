#include <benchmark/benchmark.h>

#include <random>

#include "treemine/datagen.hpp"
#include "treemine/miner.hpp"
#include "treemine/occlist.hpp"
#include "treemine/occurrence_engine.hpp"

namespace {

using namespace treemine;

OccurrenceBitmap random_bitmap(std::mt19937_64& rng, std::size_t size) {
  OccurrenceBitmap b(0, size);
  std::bernoulli_distribution pick(0.3);
  for (std::size_t i = 0; i < size; ++i)
    if (pick(rng)) b.set(i);
  return b;
}

void BM_BitmapAndCount(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto size = static_cast<std::size_t>(state.range(0));
  const auto a = random_bitmap(rng, size), b = random_bitmap(rng, size);
  for (auto _ : state) benchmark::DoNotOptimize((a & b).count());
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * size / 4));
}
BENCHMARK(BM_BitmapAndCount)->Range(1 << 8, 1 << 18);

// Smaller copy of a preset so one run takes well under a second.
DataTree scaled_preset(const char* name, std::size_t nodes, std::size_t& minsup) {
  const Preset p = *find_preset(name);
  GenProfile g = p.profile;
  minsup = std::max<std::size_t>(2, p.minsup * nodes / g.node_count);
  g.node_count = nodes;
  return load_forest(generate(g));
}

void BM_ComputeTwoNodeLists(benchmark::State& state) {
  std::size_t minsup = 0;
  const DataTree t = scaled_preset("xmark", 5000, minsup);
  std::vector<Pattern> pats;
  for (LabelId a = 0; a < 4; ++a)
    for (LabelId b = 0; b < 4; ++b) pats.push_back(Pattern({{a, kNoParent}, {b, 0}}));
  for (auto _ : state)
    for (const auto& p : pats) benchmark::DoNotOptimize(compute_emb_ol(t, p).root_support());
}
BENCHMARK(BM_ComputeTwoNodeLists)->Unit(benchmark::kMillisecond);

void BM_Mine(benchmark::State& state, Algorithm algo) {
  std::size_t minsup = 0;
  const DataTree t = scaled_preset("xmark", static_cast<std::size_t>(state.range(0)), minsup);
  MiningConfig cfg;
  cfg.algorithm = algo;
  cfg.minsup = minsup;
  std::size_t computed = 0;
  for (auto _ : state) computed = mine(t, cfg).stats.computed;
  state.counters["computed"] = static_cast<double>(computed);
}
BENCHMARK_CAPTURE(BM_Mine, eager, Algorithm::eager)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Mine, prune, Algorithm::prune)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
