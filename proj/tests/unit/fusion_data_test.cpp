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
#include <map>
#include <set>

#include "fusionbiset/biset_algebra.hpp"
#include "fusionbiset/fusion_data.hpp"
#include "support.hpp"

namespace fusionbiset {
namespace {

using test::builtin;

std::multiset<std::pair<std::size_t, int>> class_shape(const FusionSystemSpec& spec) {
  std::multiset<std::pair<std::size_t, int>> shape;
  for (const LineClass& c : spec.classes) shape.insert({c.lines.size(), c.r});
  return shape;
}

int line_of_subgroup(const ExtraspecialGroup& g, SubgroupId q) {
  for (Elem e : g.subgroup(q).elements()) {
    if (g.line_of(e) >= 0) return g.line_of(e);
  }
  return -1;
}

TEST(BuiltinSystems, SixRows) {
  const auto specs = builtin_systems();
  ASSERT_EQ(specs.size(), 6u);
  using Shape = std::multiset<std::pair<std::size_t, int>>;
  const std::vector<std::pair<int, Shape>> expected = {
      {3, {{2, 2}, {2, 2}}}, {3, {{4, 2}}}, {5, {{6, 4}}}, {7, {{4, 2}, {4, 2}}}, {7, {{6, 2}, {2, 6}}}, {7, {{8, 2}}}};
  for (std::size_t k = 0; k < specs.size(); ++k) {
    EXPECT_EQ(specs[k].p, expected[k].first);
    EXPECT_EQ(class_shape(specs[k]), expected[k].second) << specs[k].name;
    std::size_t lines = 0;
    for (const LineClass& c : specs[k].classes) lines += c.lines.size();
    EXPECT_EQ(lines, static_cast<std::size_t>(specs[k].p + 1));
    EXPECT_NO_THROW(validate_spec(specs[k]));
  }
}

TEST(BuiltinSystems, SixSquaredRow) {
  const FusionSystemSpec spec = builtin("6sq:2");
  EXPECT_EQ(class_shape(spec), (std::multiset<std::pair<std::size_t, int>>{{6, 2}, {2, 6}}));
  EXPECT_EQ(spec.alias, "rv72");
}

TEST(BuiltinSystems, LookupByAliasAndGroup) {
  EXPECT_EQ(find_builtin("j4")->name, "SD16");
  EXPECT_EQ(find_builtin("TH")->name, "4S4");
  EXPECT_EQ(find_builtin("rv96")->name, "SD32x3");
  EXPECT_FALSE(find_builtin("nope").has_value());
}

TEST(BuiltinSystems, RealizingGroups) {
  EXPECT_EQ(builtin("d8").realizing_group, "²F₄(2)′");
  EXPECT_EQ(builtin("th4s4").realizing_group, "Th");
  EXPECT_TRUE(builtin("rv96").exotic());
  EXPECT_FALSE(builtin("sd16").exotic());
}

TEST(FNumber, Rows) {
  EXPECT_EQ(f_number(builtin("sd16")), 8);
  EXPECT_EQ(f_number(builtin("rv72")), 12);
  EXPECT_EQ(f_number(builtin("th4s4")), 24);
  const FusionSystemSpec p5 = builtin("th4s4");
  EXPECT_EQ((p5.p - 1) * 6 * 4, 96);
}

TEST(AutFV, Orders) {
  EXPECT_EQ(aut_F_V(builtin("d8"), 0).size(), 48u);
  EXPECT_EQ(aut_F_V(builtin("rv48"), 0).size(), 672u);
  for (const auto& spec : builtin_systems()) {
    for (int i = 0; i <= spec.p; ++i) {
      const auto aut = aut_F_V(spec, i);
      const int r = r_of_line(spec, i);
      EXPECT_EQ(static_cast<int>(aut.size()), spec.p * (spec.p * spec.p - 1) * r);
      const auto diagonal = std::count_if(aut.begin(), aut.end(), [](const MatrixGL2& m) {
        return m.m[1] == 0 && m.m[2] == 0;
      });
      EXPECT_EQ(diagonal, (spec.p - 1) * r);
    }
  }
}

TEST(LambdaSets, Sizes) {
  const LambdaSets d8 = lambda_sets(builtin("d8"), 0);
  EXPECT_EQ(d8.extendable.size(), 4u);
  EXPECT_EQ(d8.extendable, (std::set<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}));
  const LambdaSets p7 = lambda_sets(builtin("rv48"), 0);
  EXPECT_EQ(p7.extendable.size(), 12u);
  EXPECT_EQ(p7.nonextendable.size(), 12u);
}

// The sets are disjoint exactly when -1 is outside the determinant subgroup.
// At p=7 that subgroup is <mu^3> = {1, 6} for r=2, so the sets coincide.
TEST(LambdaSets, DisjointIffMinusOneOutside) {
  for (int p : {3, 5, 7}) {
    for (int r = 1; r < p; ++r) {
      if ((p - 1) % r != 0) continue;
      const FusionSystemSpec spec{p, {{std::vector<int>(1, 0), r}}, "probe", "", "unverified", false};
      const LambdaSets sets = lambda_sets(spec, 0);
      EXPECT_EQ(static_cast<int>(sets.extendable.size()), (p - 1) * r);
      EXPECT_EQ(static_cast<int>(sets.nonextendable.size()), (p - 1) * r);
      std::vector<std::pair<int, int>> common;
      std::set_intersection(sets.extendable.begin(), sets.extendable.end(), sets.nonextendable.begin(),
                            sets.nonextendable.end(), std::back_inserter(common));
      const bool minus_one_inside = in_determinant_subgroup(p - 1, p, r);
      EXPECT_EQ(common.empty(), !minus_one_inside) << "p=" << p << " r=" << r;
      if (minus_one_inside) {
        EXPECT_EQ(sets.extendable, sets.nonextendable);
      }
    }
  }
  EXPECT_TRUE(in_determinant_subgroup(6, 7, 2));
  EXPECT_FALSE(in_determinant_subgroup(6, 7, 3));
}

TEST(LiftMatrix, IdentityAndDiagonal) {
  const ExtraspecialGroup g(5);
  EXPECT_TRUE(lift_matrix_to_aut(g, MatrixGL2::identity(5)).is_inclusion());
  for (int m = 1; m < 5; ++m) {
    const GroupMorphism lift = lift_matrix_to_aut(g, MatrixGL2{5, {1, 0, 0, m}});
    EXPECT_EQ(lift(g.x()), g.x());
    EXPECT_EQ(lift(g.z()), g.pow(g.z(), m));
  }
  EXPECT_THROW(lift_matrix_to_aut(g, MatrixGL2{5, {1, 2, 2, 4}}), InvalidMorphismError);
}

TEST(LiftMatrix, HomomorphismUpToInner) {
  const ExtraspecialGroup g(3);
  const auto gl = general_linear_group(3);
  ASSERT_EQ(gl.size(), 48u);
  for (const MatrixGL2& m : gl)
    for (const MatrixGL2& n : gl) {
      const GroupMorphism lhs = compose(lift_matrix_to_aut(g, m), lift_matrix_to_aut(g, n));
      EXPECT_EQ(BisetClass(lhs), BisetClass(lift_matrix_to_aut(g, m * n)));
    }
}

TEST(OutF, Orders) {
  EXPECT_EQ(build_out_F(builtin("d8")).size(), 8u);
  EXPECT_EQ(build_out_F(builtin("rv96")).size(), 96u);
  for (const auto& spec : builtin_systems()) {
    const auto out = build_out_F(spec);
    EXPECT_EQ(static_cast<int>(out.size()), (spec.p - 1) * f_number(spec)) << spec.name;
    const std::set<MatrixGL2> members(out.begin(), out.end());
    for (const MatrixGL2& a : out) {
      EXPECT_TRUE(members.count(a.inverse()));
      for (const MatrixGL2& b : out) EXPECT_TRUE(members.count(a * b));
    }
    std::map<int, int> by_det;
    for (const MatrixGL2& a : out) ++by_det[a.det()];
    for (int m = 1; m < spec.p; ++m) EXPECT_EQ(by_det[m], f_number(spec));
  }
}

TEST(OutF, RestrictionsAreExtendable) {
  for (const auto& spec : builtin_systems()) {
    const FusionSystem fs(spec);
    for (const GroupMorphism& alpha : fs.out_lifts()) {
      for (int i = 0; i <= spec.p; ++i) {
        const GroupMorphism res = alpha.restrict_to(fs.maximal(i));
        EXPECT_TRUE(has_larger_n_set(res));
      }
    }
  }
}

TEST(Spec, RejectsInconsistentInput) {
  FusionSystemSpec spec = builtin("d8");
  spec.classes[0].r = 3;
  EXPECT_THROW(validate_spec(spec), InconsistentSpecError);
  spec = builtin("d8");
  spec.classes[1].lines = {1, 1};
  EXPECT_THROW(validate_spec(spec), InconsistentSpecError);
  spec = builtin("d8");
  spec.classes = {{{0, 1, 2}, 2}, {{3}, 2}};
  EXPECT_THROW(validate_spec(spec), InconsistentSpecError);
}

TEST(Spec, JsonRoundTrip) {
  for (const auto& spec : builtin_systems()) {
    FusionSystemSpec back = spec_from_json(spec_to_json(spec));
    back.builtin = spec.builtin;
    EXPECT_EQ(back, spec);
  }
  const FusionSystemSpec custom =
      spec_from_json(nlohmann::json::parse(R"({"prime":3,"classes":[{"lines":[0,1,2,3],"r":2}]})"));
  EXPECT_EQ(custom.name, "custom");
  EXPECT_EQ(custom.realizing_group, "unverified");
  EXPECT_THROW(spec_from_json(nlohmann::json::parse(R"({"classes":3})")), InconsistentSpecError);
}

TEST(HomClasses, CountsPerSubgroup) {
  for (const auto& spec : builtin_systems()) {
    const FusionSystem fs(spec);
    const ExtraspecialGroup& g = fs.group();
    EXPECT_EQ(static_cast<int>(fs.enumerate_hom_classes(g.whole()).size()), fs.out_order()) << spec.name;
    for (int i = 0; i <= spec.p; ++i) {
      int extendable = 0;
      std::map<int, int> nonextendable_by_target;
      for (const HomClass& h : fs.enumerate_hom_classes(fs.maximal(i))) {
        if (h.rep.extendable) {
          ++extendable;
        } else {
          ++nonextendable_by_target[line_of_subgroup(g, h.rep.map.image())];
        }
        EXPECT_EQ(h.rep.extendable, has_larger_n_set(h.rep.map));
      }
      EXPECT_EQ(extendable, fs.out_order());
      for (int j = 0; j <= spec.p; ++j) {
        const int expected = fs.conjugate_lines(i, j) ? (spec.p - 1) * fs.r(i) : 0;
        EXPECT_EQ(nonextendable_by_target[j], expected) << spec.name << " " << i << "->" << j;
      }
    }
  }
}

TEST(HomClasses, D8Automorphisms) {
  const FusionSystem fs(builtin("d8"));
  EXPECT_EQ(fs.enumerate_hom_classes(fs.group().whole()).size(), 8u);
}

TEST(NormalizedIsos, Properties) {
  for (const auto& spec : builtin_systems()) {
    const FusionSystem fs(spec);
    const ExtraspecialGroup& g = fs.group();
    for (int i = 0; i <= spec.p; ++i) {
      EXPECT_EQ(BisetClass(fs.alpha(i, i)), BisetClass(GroupMorphism::inclusion(g, g.whole())));
      for (int j = 0; j <= spec.p; ++j) {
        if (!fs.conjugate_lines(i, j)) {
          EXPECT_THROW(fs.alpha(i, j), std::invalid_argument);
          continue;
        }
        const GroupMorphism& a = fs.alpha(i, j);
        EXPECT_EQ(a(g.z()), g.z());
        EXPECT_EQ(a(fs.normalized_u(i)), fs.normalized_u(j));
        EXPECT_EQ(a.restrict_to(fs.maximal(i)).image(), fs.maximal(j));
      }
    }
  }
}

TEST(Extendability, PsiAndPhiFlags) {
  const FusionSystem fs(builtin("rv72"));
  const ExtraspecialGroup& g = fs.group();
  for (int i = 0; i <= fs.prime(); ++i) {
    const LambdaSets sets = lambda_sets(fs.spec(), i);
    for (int j = 0; j <= fs.prime(); ++j) {
      if (!fs.conjugate_lines(i, j)) continue;
      for (const auto& [k, l] : sets.extendable) {
        const FusionMorphism psi = fs.psi(i, j, k, l);
        EXPECT_TRUE(psi.extendable);
        EXPECT_TRUE(has_larger_n_set(psi.map));
      }
      for (const auto& [k, l] : sets.nonextendable) {
        const FusionMorphism phi = fs.phi(i, j, k, l);
        EXPECT_FALSE(phi.extendable);
        EXPECT_EQ(static_cast<int>(n_set(phi.map, phi.map).size()), g.subgroup(fs.maximal(i)).order());
      }
    }
  }
}

}  // namespace
}  // namespace fusionbiset
