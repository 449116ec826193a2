#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <string>

#include "trustbias/trustbias.hpp"

namespace {

using namespace trustbias;

const TrustGraph& graph_with_edges(std::int64_t m) {
  static std::map<std::int64_t, TrustGraph> cache;
  auto it = cache.find(m);
  if (it == cache.end()) {
    it = cache.emplace(m, generate_synthetic(static_cast<std::size_t>(m / 10), 10,
                                             WeightModel::uniform_unit(), 1))
             .first;
  }
  return it->second;
}

void BM_Solve(benchmark::State& state) {
  const auto& g = graph_with_edges(state.range(0));
  const auto variant = static_cast<BiasVariant>(state.range(1));
  SolveOptions opts;
  opts.threads = static_cast<int>(state.range(2));
  for (auto _ : state) {
    auto res = solve(g, {variant, 0.5}, StoppingRule::fixed(15), opts);
    benchmark::DoNotOptimize(res.prestige.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.edge_count()) * 15);
  state.SetLabel(std::string(variant_name(variant)));
}
BENCHMARK(BM_Solve)
    ->ArgsProduct({{100'000, 200'000, 400'000, 800'000},
                   {static_cast<int>(BiasVariant::MB), static_cast<int>(BiasVariant::L1Avg),
                    static_cast<int>(BiasVariant::L2Max)},
                   {1}})
    ->Unit(benchmark::kMillisecond);

void BM_KendallTau(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u;
  std::vector<double> x(static_cast<std::size_t>(state.range(0))), y(x.size());
  for (auto& v : x) v = u(rng);
  for (auto& v : y) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(kendall_tau_b(x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KendallTau)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

void BM_PageRank(benchmark::State& state) {
  const auto& g = graph_with_edges(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pagerank(g).scores.data());
}
BENCHMARK(BM_PageRank)->Arg(100'000)->Arg(400'000)->Unit(benchmark::kMillisecond);

void BM_Hits(benchmark::State& state) {
  const auto& g = graph_with_edges(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hits_authority(g).scores.data());
}
BENCHMARK(BM_Hits)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
