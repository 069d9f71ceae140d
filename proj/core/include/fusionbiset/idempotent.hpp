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

#ifndef FUSIONBISET_IDEMPOTENT_HPP_
#define FUSIONBISET_IDEMPOTENT_HPP_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fusionbiset/biset_algebra.hpp"
#include "fusionbiset/minimal_solver.hpp"
#include "fusionbiset/rational.hpp"

namespace fusionbiset {

// c0 = 1/|Out_F(S)|
Rational omega_c0(const FusionSystem& fs);
RationalBiset omega0(const FusionSystem& fs);

// Extendable and nonextendable class counts with domain V_line.
struct Layer1Counts {
  std::int64_t extendable = 0;
  std::int64_t nonextendable = 0;
};
Layer1Counts layer1_counts(const FClassCatalog& catalog, int line);

// c_e = -d_n/(d_e + p d_n) c0 on extendable classes and
// c_n = d_e/(d_e + p d_n) c0 on nonextendable classes.
RationalBiset omega1(const FClassCatalog& catalog);
RationalBiset omega2(const FClassCatalog& catalog);
// The trivial-subgroup layer is not determined here; always throws
// NotComputedError.
RationalBiset omega3(const FClassCatalog& catalog);

// Coefficients of omega_{<=2} from the stability system of the given side
// with the sums over each domain (right) or each image (left, the mirror
// of the domain condition under the opposite) set to 1 at S and 0 below.
RationalBiset solve_idempotent(std::shared_ptr<const FClassCatalog> catalog, Side side = Side::kRight);

struct DomainSum {
  std::string domain;
  int layer = 0;
  Rational sum;
  Rational expected;
  bool ok = false;
};
std::vector<DomainSum> idempotency_sums(const FClassCatalog& catalog, const RationalBiset& omega);

struct IdempotentStability {
  StabilityReport left;
  StabilityReport right;
  bool stable() const { return left.stable && right.stable; }
};
// Stability equations at graph subgroups of order at least p, where layers
// up to 2 determine the marks.
IdempotentStability verify_idempotent_stability(const FClassCatalog& catalog, const RationalBiset& omega);

struct IdempotentReport {
  std::string system;
  int p = 0;
  Rational c0;
  RationalBiset omega0;
  RationalBiset omega1;
  RationalBiset omega2;
  RationalBiset solved_right;
  RationalBiset solved_left;
  bool closed_form_matches_solve = false;
  bool p_local = false;
  bool layer1_relation = false;
  std::vector<DomainSum> sums;
  IdempotentStability stability;

  RationalBiset total() const { return omega0 + omega1 + omega2; }
  bool passed() const;
};

IdempotentReport compute_idempotent(std::shared_ptr<const FClassCatalog> catalog);
nlohmann::json idempotent_to_json(const IdempotentReport& r);

}  // namespace fusionbiset

#endif  // FUSIONBISET_IDEMPOTENT_HPP_
