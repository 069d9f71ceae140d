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

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "fusionbiset/biset_algebra.hpp"
#include "fusionbiset/explicit_biset.hpp"
#include "fusionbiset/oracle.hpp"
#include "support.hpp"

namespace fusionbiset {
namespace {

using test::catalog;

GroupMorphism identity_on(const ExtraspecialGroup& g, SubgroupId q) { return GroupMorphism::inclusion(g, q); }

// c_t o phi o c_{s^-1} on sQs^-1.
GroupMorphism conjugate_graph(const GroupMorphism& phi, Elem s, Elem t) {
  const ExtraspecialGroup& g = phi.group();
  const SubgroupId shifted = g.conjugate(s, phi.source());
  const GroupMorphism back = GroupMorphism::conjugation(g, g.inv(s), shifted);
  const GroupMorphism forward = GroupMorphism::conjugation(g, t, phi.image());
  return compose(forward, compose(phi, back));
}

IntBiset random_biset(const std::vector<BisetClass>& pool, std::shared_ptr<const ExtraspecialGroup> group,
                      std::mt19937& rng, int terms, int max_coeff) {
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> coeff(1, max_coeff);
  IntBiset b(std::move(group));
  for (int k = 0; k < terms; ++k) b.add(pool[pick(rng)], coeff(rng));
  return b;
}

std::vector<BisetClass> catalog_classes(const FClassCatalog& cat) {
  std::vector<BisetClass> out;
  for (const FClass& c : cat.classes()) out.push_back(c.cls);
  return out;
}

TEST(NSet, Identity) {
  const auto cat = catalog("d8");
  const ExtraspecialGroup& g = cat->group();
  const GroupMorphism id = identity_on(g, g.whole());
  EXPECT_EQ(static_cast<int>(n_set(id, id).size()), g.order());
}

TEST(NSet, NonextendableIsSource) {
  const auto cat = catalog("d8");
  const FusionSystem& fs = cat->system();
  const FusionMorphism phi = fs.essential_automorphism(0);
  EXPECT_EQ(n_set(phi.map, phi.map).size(), 9u);
  EXPECT_FALSE(has_larger_n_set(phi.map));
}

TEST(NSet, AgreesWithBruteForce) {
  const auto cat = catalog("d8");
  const auto classes = catalog_classes(*cat);
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    const GroupMorphism& psi = classes[pick(rng)].rep();
    const GroupMorphism& phi = classes[pick(rng)].rep();
    auto fast = n_set(psi, phi), slow = n_set_brute_force(psi, phi);
    std::sort(fast.begin(), fast.end());
    std::sort(slow.begin(), slow.end());
    EXPECT_EQ(fast, slow);
  }
}

TEST(FixedPoints, Examples) {
  const auto cat = catalog("d8");
  const FusionSystem& fs = cat->system();
  const ExtraspecialGroup& g = fs.group();
  const BisetClass identity(identity_on(g, g.whole()));
  EXPECT_EQ(count_fixed_points(identity, identity.rep()), 3);
  EXPECT_EQ(brute_force_fixed_points(identity, identity_on(g, g.trivial())), 27);
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      if (!fs.conjugate_lines(i, j)) continue;
      const FusionMorphism phi = fs.phi(i, j, 1, 1);
      const GraphSubgroup by = phi.map.restrict_to(g.center());
      EXPECT_EQ(count_fixed_points(BisetClass(phi.map), by), 27);
    }
  }
  const std::array<Elem, 1> gen{g.u(0)}, img{g.u(1)};
  const GroupMorphism cyc = GroupMorphism::from_generators(g, g.cyclic(g.u(0)), gen, img);
  EXPECT_EQ(count_fixed_points(BisetClass(cyc), cyc), 27);
}

TEST(FixedPoints, PositiveIffSubconjugate) {
  const auto cat = catalog("d8");
  const auto classes = catalog_classes(*cat);
  for (std::size_t a = 0; a < classes.size(); a += 3) {
    for (std::size_t b = 0; b < classes.size(); b += 5) {
      const bool sub = is_subconjugate(classes[b].rep(), classes[a].rep());
      EXPECT_EQ(count_fixed_points(classes[a], classes[b].rep()) > 0, sub);
    }
  }
}

TEST(Oracle, ExhaustiveAtThreeAndSampledAtFive) {
  const OracleReport d8 = oracle_exhaustive(*catalog("d8"));
  EXPECT_TRUE(d8.passed()) << d8.first_mismatch;
  EXPECT_EQ(d8.pairs, static_cast<std::int64_t>(catalog("d8")->classes().size() * catalog("d8")->classes().size()));
  const OracleReport p5 = oracle_sampled(*catalog("th4s4"), 200, 5);
  EXPECT_EQ(p5.pairs, 200);
  EXPECT_TRUE(p5.passed()) << p5.first_mismatch;
}

TEST(Conjugacy, ConjugatesAreConjugate) {
  const auto cat = catalog("sd16");
  const ExtraspecialGroup& g = cat->group();
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> elem(0, g.order() - 1);
  for (const FClass& c : cat->classes()) {
    const GroupMorphism moved = conjugate_graph(c.cls.rep(), static_cast<Elem>(elem(rng)), static_cast<Elem>(elem(rng)));
    EXPECT_TRUE(are_conjugate(c.cls.rep(), moved));
    EXPECT_EQ(BisetClass(moved), c.cls);
  }
}

TEST(Conjugacy, InnerTwistAndExtendability) {
  const auto cat = catalog("d8");
  const FusionSystem& fs = cat->system();
  const ExtraspecialGroup& g = fs.group();
  const GroupMorphism& alpha = fs.out_lifts()[1];
  const GroupMorphism twisted = compose(alpha, GroupMorphism::conjugation(g, g.x(), g.whole()));
  EXPECT_TRUE(are_conjugate(alpha, twisted));
  const FusionMorphism psi = fs.psi(0, 0, 1, 1);
  const FusionMorphism phi = fs.phi(0, 0, 1, 1);
  EXPECT_FALSE(are_conjugate(psi.map, phi.map));
}

TEST(Marks, TruncationLemma) {
  const auto cat = catalog("d8");
  const auto classes = catalog_classes(*cat);
  std::mt19937 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const IntBiset b = random_biset(classes, cat->system().shared_group(), rng, 12, 4);
    for (std::size_t k = 0; k < classes.size(); k += 4) {
      const int r = classes[k].layer();
      EXPECT_EQ(mark(b, classes[k].rep()), mark(b.truncate(r), classes[k].rep()));
    }
  }
}

TEST(Marks, ZeroBiset) {
  const auto cat = catalog("d8");
  const IntBiset zero(cat->system().shared_group());
  for (const auto& [key, value] : mark_vector(zero)) EXPECT_EQ(value, 0);
  for (const FClass& c : cat->classes()) EXPECT_EQ(mark(zero, c.cls.rep()), 0);
}

TEST(Marks, TriangularRecovery) {
  const auto cat = catalog("d8");
  const auto group = cat->system().shared_group();
  const auto pool = all_free_classes(*group);
  std::mt19937 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const IntBiset b = random_biset(pool, group, rng, 6, 5);
    EXPECT_EQ(solve_from_marks<std::int64_t>(group, mark_vector(b), pool), b);
  }
}

TEST(Opposite, Properties) {
  const auto cat = catalog("d8");
  const FusionSystem& fs = cat->system();
  const ExtraspecialGroup& g = fs.group();
  IntBiset id(fs.shared_group());
  id.add(BisetClass(identity_on(g, g.whole())), 1);
  EXPECT_EQ(opposite(id), id);
  std::mt19937 rng(17);
  const auto classes = catalog_classes(*cat);
  for (int trial = 0; trial < 10; ++trial) {
    const IntBiset b = random_biset(classes, fs.shared_group(), rng, 8, 3);
    EXPECT_EQ(opposite(opposite(b)), b);
  }
  for (const FClass& c : cat->classes()) {
    if (c.label.layer != 1 || c.label.extendable) continue;
    IntBiset single(fs.shared_group());
    single.add(c.cls, 1);
    const auto& [key, term] = *opposite(single).terms().begin();
    ASSERT_TRUE(cat->contains(key));
    EXPECT_FALSE(cat->at(key).label.extendable);
    EXPECT_EQ(cat->at(key).label.layer, 1);
  }
}

TEST(Restriction, TopClassGivesOnePiece) {
  const auto cat = catalog("d8");
  const FusionSystem& fs = cat->system();
  const GroupMorphism& alpha = fs.out_lifts()[3];
  const GroupMorphism psi = fs.essential_automorphism(0).map;
  const auto pieces = restrict_left(BisetClass(alpha), psi);
  ASSERT_EQ(pieces.size(), 1u);
  EXPECT_EQ(pieces[0].map.source(), psi.source());
}

TEST(Restriction, MaximalClassGivesPPieces) {
  const auto cat = catalog("d8");
  const FusionSystem& fs = cat->system();
  const ExtraspecialGroup& g = fs.group();
  const BisetClass cls(fs.phi(0, 0, 1, 1).map);
  const GroupMorphism incl = identity_on(g, fs.maximal(0));
  const auto pieces = restrict_left(cls, incl);
  EXPECT_EQ(pieces.size(), 3u);
  std::int64_t size = 0;
  for (const RestrictionPiece& piece : pieces) {
    size += static_cast<std::int64_t>(g.subgroup(incl.source()).order()) * g.order() /
            g.subgroup(piece.map.source()).order();
  }
  EXPECT_EQ(size, static_cast<std::int64_t>(g.order()) * g.order() / g.subgroup(cls.source()).order());
}

TEST(Restriction, AgreesWithBruteForceOnMinimalBiset) {
  const auto cat = catalog("d8");
  const FusionSystem& fs = cat->system();
  const IntBiset& x = test::solved("d8").biset;
  const std::vector<GroupMorphism> maps = {identity_on(fs.group(), fs.maximal(0)), fs.essential_automorphism(1).map,
                                           fs.psi(0, 3, 1, 2).map};
  for (const GroupMorphism& psi : maps) {
    for (const auto& [key, term] : x.terms()) {
      EXPECT_EQ(restriction_classes(term.cls, psi), restriction_classes_brute_force(term.cls, psi));
    }
  }
}

TEST(Stability, SingleOuterAutomorphismFails) {
  const auto cat = catalog("d8");
  const FusionSystem& fs = cat->system();
  for (std::size_t k = 0; k < fs.out_lifts().size(); ++k) {
    IntBiset single(fs.shared_group());
    single.add(BisetClass(fs.out_lifts()[k]), 1);
    const StabilityReport left = check_left_stability(*cat, single);
    const StabilityReport right = check_right_stability(*cat, single);
    EXPECT_FALSE(left.stable);
    EXPECT_FALSE(right.stable);
    EXPECT_TRUE(right.witness.has_value());
  }
}

TEST(Stability, SupportOutsideFusionSystemThrows) {
  const auto cat = catalog("d8");
  const FusionSystem& fs = cat->system();
  const std::set<MatrixGL2> out(fs.out_F().begin(), fs.out_F().end());
  for (const MatrixGL2& m : general_linear_group(3)) {
    if (out.count(m)) continue;
    IntBiset b(fs.shared_group());
    b.add(BisetClass(lift_matrix_to_aut(fs.group(), m)), 1);
    EXPECT_THROW(check_support(*cat, b), SupportError);
    EXPECT_THROW(check_left_stability(*cat, b), SupportError);
    return;
  }
  FAIL() << "Out_F(S) is all of GL_2(3)";
}

TEST(Compose, IdentityAndConvention) {
  const auto cat = catalog("d8");
  const FusionSystem& fs = cat->system();
  const auto group = fs.shared_group();
  IntBiset id(group);
  id.add(BisetClass(identity_on(*group, group->whole())), 1);
  std::mt19937 rng(19);
  const auto pool = all_free_classes(*group);
  const IntBiset b = random_biset(pool, group, rng, 3, 2);
  EXPECT_EQ(compose(id, b), b);
  EXPECT_EQ(compose(b, id), b);
  const auto& lifts = fs.out_lifts();
  for (std::size_t a = 0; a < lifts.size(); ++a) {
    for (std::size_t c = 0; c < lifts.size(); ++c) {
      IntBiset x(group), y(group), expected(group);
      x.add(BisetClass(lifts[a]), 1);
      y.add(BisetClass(lifts[c]), 1);
      expected.add(BisetClass(compose(lifts[c], lifts[a])), 1);
      EXPECT_EQ(compose(x, y), expected);
    }
  }
}

TEST(Compose, Associative) {
  const auto group = catalog("d8")->system().shared_group();
  const auto pool = all_free_classes(*group);
  std::mt19937 rng(23);
  for (int trial = 0; trial < 3; ++trial) {
    const IntBiset a = random_biset(pool, group, rng, 2, 1);
    const IntBiset b = random_biset(pool, group, rng, 2, 1);
    const IntBiset c = random_biset(pool, group, rng, 2, 1);
    EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
  }
}

TEST(Compose, PointLimit) {
  const auto group = catalog("d8")->system().shared_group();
  IntBiset id(group);
  id.add(BisetClass(identity_on(*group, group->trivial())), 1);
  EXPECT_THROW(compose(id, id, 100), ResourceLimitError);
}

TEST(Decompose, RoundTrips) {
  const auto group = catalog("d8")->system().shared_group();
  const auto pool = all_free_classes(*group);
  for (const BisetClass& cls : pool) {
    IntBiset single(group);
    single.add(cls, 1);
    EXPECT_EQ(decompose_by_marks(ExplicitBiset::transitive(group, cls.rep())), single);
  }
  IntBiset two(group);
  two.add(pool[5], 1);
  two.add(pool[100], 1);
  const ExplicitBiset joined = ExplicitBiset::disjoint_union(ExplicitBiset::transitive(group, pool[5].rep()),
                                                             ExplicitBiset::transitive(group, pool[100].rep()));
  EXPECT_EQ(decompose_by_marks(joined), two);
  std::mt19937 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const IntBiset b = random_biset(pool, group, rng, 3, 3);
    EXPECT_EQ(decompose_by_marks(ExplicitBiset::from_formal(b)), b);
  }
}

TEST(Decompose, RejectsNonFreeAction) {
  const auto group = catalog("d8")->system().shared_group();
  const std::vector<int> trivial(group->order(), 0);
  const ExplicitBiset point(group, 1, trivial, trivial);
  EXPECT_FALSE(point.left_free());
  EXPECT_THROW(decompose_by_marks(point), std::invalid_argument);
}

TEST(Json, BisetRoundTrip) {
  const auto cat = catalog("sd16");
  const auto group = cat->system().shared_group();
  std::mt19937 rng(31);
  const IntBiset b = random_biset(catalog_classes(*cat), group, rng, 20, 7);
  EXPECT_EQ(biset_from_json<std::int64_t>(biset_to_json(b, "SD16"), group), b);
  RationalBiset q(group);
  for (const auto& [key, term] : b.terms()) q.add(term.cls, Rational(term.coeff, 26) - 1);
  const nlohmann::json j = biset_to_json(q, "SD16");
  EXPECT_EQ(j["prime"], 3);
  EXPECT_EQ(biset_from_json<Rational>(j, group), q);
  EXPECT_EQ(biset_from_json<Rational>(nlohmann::json::parse(j.dump()), group), q);
}

TEST(Rational, FractionStrings) {
  EXPECT_EQ(to_fraction_string(Rational(3, 26)), "3/26");
  EXPECT_EQ(to_fraction_string(Rational(-14, 2)), "-7");
  EXPECT_EQ(parse_fraction("-7/2736"), Rational(-7, 2736));
  EXPECT_TRUE(denominator_coprime_to(Rational(1, 8), 3));
  EXPECT_FALSE(denominator_coprime_to(Rational(1, 9), 3));
}

TEST(Rational, LinearSolve) {
  const std::vector<std::vector<Rational>> a = {{2, 1}, {1, 3}};
  const auto x = solve_linear_system(a, {Rational(3), Rational(5)});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], Rational(4, 5));
  EXPECT_EQ((*x)[1], Rational(7, 5));
  EXPECT_FALSE(solve_linear_system({{1, 2}, {2, 4}}, {Rational(1), Rational(1)}).has_value());
}

}  // namespace
}  // namespace fusionbiset
