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

#include "fusionbiset/oracle.hpp"

#include <mutex>
#include <random>
#include <vector>

#include "fusionbiset/parallel.hpp"

namespace fusionbiset {
namespace {

OracleReport run_pairs(const FClassCatalog& catalog, const std::vector<std::pair<int, int>>& pairs) {
  OracleReport rep;
  rep.system = catalog.system().spec().name;
  rep.p = catalog.system().prime();
  rep.pairs = static_cast<std::int64_t>(pairs.size());
  const auto& classes = catalog.classes();
  std::mutex mu;
  std::vector<std::uint8_t> bad(pairs.size(), 0);
  parallel_for(pairs.size(), [&](std::size_t k) {
    const auto [a, b] = pairs[k];
    const std::int64_t formula = count_fixed_points(classes[a].cls, classes[b].cls.rep());
    const std::int64_t brute = brute_force_fixed_points(classes[a].cls, classes[b].cls.rep());
    if (formula != brute) bad[k] = 1;
  });
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (!bad[k]) continue;
    if (rep.mismatches++ == 0) {
      const auto [a, b] = pairs[k];
      rep.first_mismatch = describe(classes[a].label) + " at " + describe(classes[b].label);
    }
  }
  return rep;
}

}  // namespace

OracleReport oracle_exhaustive(const FClassCatalog& catalog) {
  const int n = static_cast<int>(catalog.classes().size());
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) pairs.emplace_back(a, b);
  }
  return run_pairs(catalog, pairs);
}

OracleReport oracle_sampled(const FClassCatalog& catalog, int samples, std::uint64_t seed) {
  const int n = static_cast<int>(catalog.classes().size());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<std::pair<int, int>> pairs;
  for (int k = 0; k < samples; ++k) {
    const int a = pick(rng);
    const int b = pick(rng);
    pairs.emplace_back(a, b);
  }
  return run_pairs(catalog, pairs);
}

}  // namespace fusionbiset
