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

#include <gtest/gtest.h>

#include <functional>
#include <set>
#include <variant>

#include "fusionbiset/minimal_solver.hpp"
#include "support.hpp"

namespace fusionbiset {
namespace {

using test::catalog;
using test::solved;

TEST(Layer0, D8) {
  const auto cat = catalog("d8");
  const FusionSystem& fs = cat->system();
  const IntBiset x0 = layer0(fs, 1);
  EXPECT_EQ(x0.support_size(), 8u);
  for (const auto& [key, term] : x0.terms()) EXPECT_EQ(term.coeff, 1);
  EXPECT_EQ(layer0(fs, 2).size_ratio(), 2 * fs.out_order());
  for (const GroupMorphism& alpha : fs.out_lifts()) EXPECT_EQ(mark(x0, alpha), 3);
  EXPECT_THROW(layer0(fs, 3), std::invalid_argument);
  EXPECT_THROW(layer0(fs, 0), std::invalid_argument);
}

TEST(Layer1, MinimalPattern) {
  for (const char* name : {"d8", "sd16", "th4s4"}) {
    const auto cat = catalog(name);
    const FusionSystem& fs = cat->system();
    const int p = fs.prime();
    const IntBiset x1 = layer1(*cat, 1, std::vector<std::int64_t>(p + 1, 0));
    EXPECT_EQ(x1.layer_count(1), static_cast<std::int64_t>(p + 1) * fs.out_order()) << name;
    for (const auto& [key, term] : x1.terms()) {
      ASSERT_TRUE(cat->contains(key));
      EXPECT_FALSE(cat->at(key).label.extendable);
      EXPECT_EQ(term.coeff, 1);
    }
  }
}

TEST(Layer1, NonzeroC1) {
  const auto cat = catalog("d8");
  const std::vector<std::int64_t> c1 = {1, 0, 2, 0};
  const IntBiset x1 = layer1(*cat, 2, c1);
  for (int idx : cat->layer_members(1)) {
    const FClass& c = cat->classes()[idx];
    const std::int64_t expected = c.label.extendable ? c1[c.label.i] : 2 + 3 * c1[c.label.i];
    EXPECT_EQ(x1.coefficient(c.cls), expected) << describe(c.label);
  }
}

TEST(Layer2, MinimalCoefficients) {
  const auto cat = catalog("d8");
  const FusionSystem& fs = cat->system();
  const LayerSystem system(cat, Side::kRight);
  const int p = fs.prime();
  std::vector<std::int64_t> c2u(p + 1);
  for (int i = 0; i <= p; ++i) c2u[i] = fs.f() - fs.r(i);
  const auto solved2 = solve_layer2(system, 1, std::vector<std::int64_t>(p + 1, 0), 0, c2u);
  ASSERT_TRUE(std::holds_alternative<LayerCoefficients>(solved2));
  const LayerCoefficients& c = std::get<LayerCoefficients>(solved2);
  for (int i = 0; i <= p; ++i) EXPECT_EQ(c2u[i], 2);
  for (const auto& [key, value] : c.c2) {
    if (key.source == Layer2Source::kU && key.target == Layer2Target::kZ) { EXPECT_EQ(value, 0) << to_string(key); }
    if (key.source == Layer2Source::kZ && key.target == Layer2Target::kU) { EXPECT_EQ(value, 0) << to_string(key); }
    if (key.source == Layer2Source::kU && key.target == Layer2Target::kU && !fs.conjugate_lines(key.i, key.j)) {
      EXPECT_EQ(value, fs.f()) << to_string(key);
    }
  }
}

TEST(Layer2, BelowBoundIsInfeasible) {
  const auto cat = catalog("d8");
  const LayerSystem system(cat, Side::kRight);
  const std::vector<std::int64_t> c2u = {1, 2, 2, 2};
  const auto r = solve_layer2(system, 1, std::vector<std::int64_t>(4, 0), 0, c2u);
  ASSERT_TRUE(std::holds_alternative<Infeasibility>(r));
  EXPECT_FALSE(std::get<Infeasibility>(r).constraint.empty());
}

TEST(MinimalBiset, SmallRows) {
  const SolverResult& d8 = solved("d8");
  EXPECT_EQ(d8.e, 968);
  EXPECT_EQ(d8.tuple, minimal_tuple(catalog("d8")->system()));
  EXPECT_EQ(d8.tuple.c2u, (std::vector<std::int64_t>{2, 2, 2, 2}));
  const SolverResult& sd16 = solved("sd16");
  EXPECT_EQ(sd16.e, 1936);
  const SolverResult& rv72 = solved("rv72");
  EXPECT_EQ(std::vector<std::int64_t>({rv72.d0, rv72.d1, rv72.d2, rv72.e}),
            std::vector<std::int64_t>({72, 576, 4032, 201672}));
}

TEST(MinimalBiset, CertificatesAndCounts) {
  for (const char* name : {"d8", "sd16", "rv72"}) {
    const SolverResult& r = solved(name);
    EXPECT_TRUE(r.all_certified()) << name;
    EXPECT_TRUE(r.left_stability.stable);
    EXPECT_TRUE(r.right_stability.stable);
    EXPECT_TRUE(r.opposite_invariant);
    EXPECT_EQ(mark_vector(opposite(r.biset)), mark_vector(r.biset));
    const std::int64_t out = r.out_order, p = r.p;
    EXPECT_EQ(r.biset.layer(0).support_size(), static_cast<std::size_t>(out));
    EXPECT_EQ(r.biset.layer_count(1), (p + 1) * out);
    EXPECT_EQ(r.biset.layer_count(2), p * (p + 1) * out);
    EXPECT_EQ(r.e, r.d0 + p * r.d1 + p * p * r.d2);
    EXPECT_EQ(r.e, (p * p * p * p * p - 1) / (p - 1) * out);
    EXPECT_NE(r.e % p, 0);
  }
}

TEST(ExoticityBound, Examples) {
  EXPECT_EQ(exoticity_bound(134448, 7), 425744);
  EXPECT_EQ(exoticity_bound(201672, 7), 638620);
  EXPECT_EQ(exoticity_bound(268896, 7), 851496);
  EXPECT_EQ(exoticity_bound(1, 5), 0);
  EXPECT_THROW(exoticity_bound(0, 3), std::invalid_argument);
}

TEST(Table, ReferenceRowsAndDiffs) {
  ASSERT_TRUE(reference_row("4S4").has_value());
  EXPECT_EQ(reference_row("4S4")->e, 74976);
  EXPECT_EQ(reference_row("SD32x3")->bound, 851496);
  EXPECT_FALSE(reference_row("custom").has_value());
  const TableCheck ok = check_row(solved("d8"));
  EXPECT_TRUE(ok.pass);
  SolverResult broken = solved("d8");
  broken.d2 += 1;
  const TableCheck bad = check_row(broken);
  EXPECT_FALSE(bad.pass);
  EXPECT_NE(bad.diff.find("d2"), std::string::npos);
}

// Plain box enumeration with an affine running bound, no family tables or
// suffix pruning, as an independent check of the uniqueness search.
std::set<CoefficientTuple> naive_feasible(const LayerSystem& system, std::int64_t bound) {
  const AffineForm size = system.size_form();
  const int n = system.variable_count();
  for (int v = 0; v < n; ++v) {
    if (size.coeff[v] <= 0) ADD_FAILURE() << "size form slope not positive";
  }
  const int p = system.prime();
  std::set<CoefficientTuple> found;
  std::vector<std::int64_t> cur(n, 0);
  std::function<void(int, Rational)> rec = [&](int v, Rational e) {
    if (e > bound) return;
    if (v == n) {
      const auto r = realize_tuple(system, system.unflatten(cur));
      if (const auto* b = std::get_if<IntBiset>(&r)) {
        if (b->size_ratio() % p != 0) found.insert(system.unflatten(cur));
      }
      return;
    }
    for (std::int64_t a = v == system.var_c0() ? 1 : 0;; ++a) {
      const Rational next = e + size.coeff[v] * a;
      if (next > bound) break;
      cur[v] = a;
      rec(v + 1, next);
    }
    cur[v] = 0;
  };
  rec(0, size.constant);
  return found;
}

TEST(Uniqueness, SearchMatchesNaiveEnumeration) {
  const auto cat = catalog("d8");
  const CoefficientTuple expected = minimal_tuple(cat->system());
  for (Side side : {Side::kRight, Side::kLeft}) {
    const LayerSystem system(cat, side);
    for (std::int64_t bound : {968, 995, 1028, 1118}) {
      const UniquenessCertificate cert = certify_uniqueness(system, bound, expected);
      const std::set<CoefficientTuple> searched(cert.solutions.begin(), cert.solutions.end());
      EXPECT_EQ(searched, naive_feasible(system, bound)) << to_string(side) << " bound " << bound;
      if (bound == 968) {
        EXPECT_TRUE(cert.minimal);
        EXPECT_TRUE(cert.unique);
        ASSERT_EQ(cert.solutions.size(), 1u);
        EXPECT_EQ(cert.solutions[0], expected);
      }
    }
  }
}

TEST(Uniqueness, LargerBoundFindsMoreAndAllAreCharacteristic) {
  const auto cat = catalog("d8");
  const LayerSystem system(cat, Side::kRight);
  const UniquenessCertificate cert = certify_uniqueness(system, 1400, minimal_tuple(cat->system()));
  EXPECT_GT(cert.solutions.size(), 1u);
  int at_minimum = 0;
  for (const CoefficientTuple& t : cert.solutions) {
    const auto r = realize_tuple(system, t);
    ASSERT_TRUE(std::holds_alternative<IntBiset>(r));
    const IntBiset& b = std::get<IntBiset>(r);
    EXPECT_NE(b.size_ratio() % 3, 0);
    EXPECT_LE(b.size_ratio(), 1400);
    EXPECT_GE(b.size_ratio(), 968);
    at_minimum += b.size_ratio() == 968 ? 1 : 0;
    if (t == cert.solutions.back()) { EXPECT_TRUE(check_right_stability(*cat, b).stable); }
  }
  EXPECT_EQ(at_minimum, 1);
}

TEST(LayerSystem, FlattenRoundTrip) {
  const LayerSystem system(catalog("th4s4"), Side::kLeft);
  CoefficientTuple t;
  t.c0 = 2;
  t.c1 = {0, 1, 2, 3, 4, 5};
  t.c2z = 7;
  t.c2u = {5, 4, 3, 2, 1, 0};
  t.c3 = 9;
  EXPECT_EQ(system.unflatten(system.flatten(t)), t);
  EXPECT_EQ(system.variable_count(), 15);
  EXPECT_EQ(system.variable_name(system.var_c3()), "c3");
}

TEST(Json, TupleAndResult) {
  const SolverResult& r = solved("d8");
  EXPECT_EQ(tuple_from_json(tuple_to_json(r.tuple)), r.tuple);
  const nlohmann::json j = nlohmann::json::parse(result_to_json(r).dump());
  EXPECT_EQ(j["e"], 968);
  EXPECT_TRUE(j["exoticity_bound"].is_null());
  EXPECT_TRUE(j["certificates"]["unique"].get<bool>());
  EXPECT_EQ(tuple_from_json(j["coefficients"]["tuple"]), r.tuple);
  EXPECT_EQ(biset_from_json<std::int64_t>(j["biset"], r.biset.shared_group()), r.biset);
  const nlohmann::json exotic = result_to_json(solved("rv72"));
  EXPECT_EQ(exotic["exoticity_bound"], 638620);
}

}  // namespace
}  // namespace fusionbiset
