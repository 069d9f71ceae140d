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

#ifndef FUSIONBISET_ORACLE_HPP_
#define FUSIONBISET_ORACLE_HPP_

#include <cstdint>
#include <string>

#include "fusionbiset/biset_algebra.hpp"

namespace fusionbiset {

struct OracleReport {
  std::string system;
  int p = 0;
  std::int64_t pairs = 0;
  std::int64_t mismatches = 0;
  std::string first_mismatch;

  bool passed() const { return pairs > 0 && mismatches == 0; }
};

// count_fixed_points against brute_force_fixed_points on every pair of
// F-classes (class, graph subgroup).
OracleReport oracle_exhaustive(const FClassCatalog& catalog);
// The same on `samples` pairs drawn with a fixed-seed generator.
OracleReport oracle_sampled(const FClassCatalog& catalog, int samples, std::uint64_t seed);

}  // namespace fusionbiset

#endif  // FUSIONBISET_ORACLE_HPP_
