// Copyright 2026 The fusionbiset Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "fusionbiset/biset_algebra.hpp"
#include "fusionbiset/explicit_biset.hpp"
#include "fusionbiset/fusion_data.hpp"
#include "fusionbiset/idempotent.hpp"
#include "fusionbiset/minimal_solver.hpp"
#include "fusionbiset/realization.hpp"

namespace fb = fusionbiset;

namespace {

const char* const kSystems[] = {"d8", "sd16", "th4s4", "rv48", "rv72", "rv96"};

std::shared_ptr<const fb::FClassCatalog> make_catalog(int index) {
  const fb::FusionSystemSpec spec = *fb::find_builtin(kSystems[index]);
  return std::make_shared<const fb::FClassCatalog>(std::make_shared<const fb::FusionSystem>(spec));
}

void BM_GroupTables(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fb::ExtraspecialGroup(p).subgroup_count());
}
BENCHMARK(BM_GroupTables)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_BuildCatalog(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(make_catalog(static_cast<int>(state.range(0)))->classes().size());
}
BENCHMARK(BM_BuildCatalog)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_CountFixedPoints(benchmark::State& state) {
  const auto cat = make_catalog(static_cast<int>(state.range(0)));
  const auto& classes = cat->classes();
  std::mt19937 rng(1);
  std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
  std::vector<std::pair<std::size_t, std::size_t>> pairs(256);
  for (auto& pr : pairs) pr = {pick(rng), pick(rng)};
  for (auto _ : state) {
    std::int64_t total = 0;
    for (const auto& [a, b] : pairs) total += fb::count_fixed_points(classes[a].cls, classes[b].cls.rep());
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pairs.size()));
}
BENCHMARK(BM_CountFixedPoints)->Arg(0)->Arg(2)->Arg(5);

void BM_BruteForceFixedPoints(benchmark::State& state) {
  const auto cat = make_catalog(static_cast<int>(state.range(0)));
  const auto& classes = cat->classes();
  std::mt19937 rng(1);
  std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
  std::vector<std::pair<std::size_t, std::size_t>> pairs(32);
  for (auto& pr : pairs) pr = {pick(rng), pick(rng)};
  for (auto _ : state) {
    std::int64_t total = 0;
    for (const auto& [a, b] : pairs) total += fb::brute_force_fixed_points(classes[a].cls, classes[b].cls.rep());
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pairs.size()));
}
BENCHMARK(BM_BruteForceFixedPoints)->Arg(0)->Arg(2);

void BM_MinimalBiset(benchmark::State& state) {
  const auto cat = make_catalog(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fb::minimal_biset(cat).e);
}
BENCHMARK(BM_MinimalBiset)->DenseRange(0, 5)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_Idempotent(benchmark::State& state) {
  const auto cat = make_catalog(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fb::compute_idempotent(cat).passed());
}
BENCHMARK(BM_Idempotent)->DenseRange(0, 5)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_Realization(benchmark::State& state) {
  const auto cat = make_catalog(static_cast<int>(state.range(0)));
  const fb::SolverResult solved = fb::minimal_biset(cat);
  for (auto _ : state) benchmark::DoNotOptimize(fb::check_transitivity(cat->system(), solved.biset).orbit_count);
  state.counters["J"] = static_cast<double>(solved.e);
}
BENCHMARK(BM_Realization)->DenseRange(0, 5)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_DecomposeByMarks(benchmark::State& state) {
  const auto group = std::make_shared<const fb::ExtraspecialGroup>(3);
  const auto pool = fb::all_free_classes(*group);
  std::mt19937 rng(2);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  fb::IntBiset b(group);
  for (int k = 0; k < 4; ++k) b.add(pool[pick(rng)], 2);
  const fb::ExplicitBiset x = fb::ExplicitBiset::from_formal(b);
  for (auto _ : state) benchmark::DoNotOptimize(fb::decompose_by_marks(x).support_size());
}
BENCHMARK(BM_DecomposeByMarks)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
