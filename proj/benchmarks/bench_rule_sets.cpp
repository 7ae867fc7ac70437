#include <benchmark/benchmark.h>

#include <afterimage/builtin.hpp>
#include <afterimage/classification.hpp>
#include <afterimage/consistency.hpp>
#include <afterimage/theorem_fuzz.hpp>

namespace afterimage {
namespace {

void BM_Classify(benchmark::State& state) {
  std::vector<RuleSet> sets;
  for (const auto& name : builtin_names()) sets.push_back(builtin(name));
  for (auto _ : state) {
    for (const RuleSet& rs : sets) benchmark::DoNotOptimize(classify(rs));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(sets.size()));
}
BENCHMARK(BM_Classify);

void BM_ConsistencyCheck(benchmark::State& state) {
  const RuleSet rs = builtin("f4");
  for (auto _ : state) benchmark::DoNotOptimize(consistency_check(rs));
}
BENCHMARK(BM_ConsistencyCheck);

void BM_TheoremFuzz(benchmark::State& state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(theorem_fuzz(count, ++seed));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(count));
}
BENCHMARK(BM_TheoremFuzz)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace afterimage
