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

#ifndef FUSIONBISET_FUSION_DATA_HPP_
#define FUSIONBISET_FUSION_DATA_HPP_

#include <array>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fusionbiset/group_core.hpp"

namespace fusionbiset {

// One F-conjugacy class of maximal subgroups: the line indices i with
// V_i in the class, and r with Aut_F(V_i) = SL_2(p):r.
struct LineClass {
  std::vector<int> lines;
  int r = 1;

  friend bool operator==(const LineClass&, const LineClass&) = default;
};

struct FusionSystemSpec {
  int p = 3;
  std::vector<LineClass> classes;
  std::string name;
  // Short command-line alias, e.g. "rv48".
  std::string alias;
  // Finite group realizing the system, or "exotic".
  std::string realizing_group;
  bool builtin = false;

  bool exotic() const { return realizing_group == "exotic"; }
  friend bool operator==(const FusionSystemSpec&, const FusionSystemSpec&) = default;
};

std::vector<FusionSystemSpec> builtin_systems();
// Matches alias, name or realizing group, case-insensitively.
std::optional<FusionSystemSpec> find_builtin(std::string_view selector);
// Throws InconsistentSpecError unless the classes partition {0..p}, each r
// divides p-1 and |class|*r is constant.
void validate_spec(const FusionSystemSpec& spec);
int f_number(const FusionSystemSpec& spec);
int class_index_of_line(const FusionSystemSpec& spec, int line);
int r_of_line(const FusionSystemSpec& spec, int line);

nlohmann::json spec_to_json(const FusionSystemSpec& spec);
FusionSystemSpec spec_from_json(const nlohmann::json& j);

// 2x2 matrix [[a, b], [c, d]] over F_p acting on column vectors of
// exponents (s, t) of x^s y^t Z(S).
struct MatrixGL2 {
  int p = 3;
  std::array<int, 4> m{1, 0, 0, 1};

  static MatrixGL2 identity(int p) { return {p, {1, 0, 0, 1}}; }
  int det() const;
  MatrixGL2 operator*(const MatrixGL2& o) const;
  MatrixGL2 inverse() const;
  std::array<int, 2> apply(std::array<int, 2> v) const;
  // Image of line index i under the projective action.
  int act_on_line(int i) const;
  // Eigenvalue on the line i, which must be fixed.
  int eigenvalue_on_line(int i) const;
  int code() const { return m[0] + p * (m[1] + p * (m[2] + p * m[3])); }

  friend bool operator==(const MatrixGL2&, const MatrixGL2&) = default;
  friend auto operator<=>(const MatrixGL2& a, const MatrixGL2& b) { return a.m <=> b.m; }
};

std::string to_string(const MatrixGL2& m);
std::vector<MatrixGL2> general_linear_group(int p);
int primitive_root(int p);
int inverse_mod(int a, int p);
// Line index of a nonzero vector (s, t): t/s if s != 0, else p.
int line_of_vector(std::array<int, 2> v, int p);
std::array<int, 2> line_vector(int line, int p);
// <mu^((p-1)/r)> = {x : x^r = 1} in F_p^x.
std::vector<int> determinant_subgroup(int p, int r);
bool in_determinant_subgroup(int value, int p, int r);

std::vector<MatrixGL2> aut_F_V(const FusionSystemSpec& spec, int line);

struct LambdaSets {
  std::set<std::pair<int, int>> extendable;
  std::set<std::pair<int, int>> nonextendable;
};
LambdaSets lambda_sets(const FusionSystemSpec& spec, int line);

// For M = [[a, b], [c, d]]: x -> (a, c, 0), y -> (b, d, 0), z -> z^det(M).
// A section of Aut(S) -> GL_2(p), so composition holds up to inner
// automorphisms only.
GroupMorphism lift_matrix_to_aut(const ExtraspecialGroup& group, const MatrixGL2& m);

// Out_F(S) as a subgroup of GL_2(p), sorted.
std::vector<MatrixGL2> build_out_F(const FusionSystemSpec& spec);

struct FusionMorphism {
  GroupMorphism map;
  bool extendable = false;

  SubgroupId source() const { return map.source(); }
};

struct HomClass {
  FusionMorphism rep;
  // |S : Q|
  int index = 1;
  // |C_S(phi(Q))|
  int centralizer_order = 1;
};

// A fusion system with Out_F(S), normalized generators of the maximal
// subgroups and the isomorphisms alpha_{i,j} materialized.
class FusionSystem {
 public:
  explicit FusionSystem(FusionSystemSpec spec);
  FusionSystem(FusionSystemSpec spec, std::shared_ptr<const ExtraspecialGroup> group);

  const FusionSystemSpec& spec() const { return spec_; }
  const ExtraspecialGroup& group() const { return *group_; }
  std::shared_ptr<const ExtraspecialGroup> shared_group() const { return group_; }
  int prime() const { return spec_.p; }
  int f() const { return f_; }
  int out_order() const { return static_cast<int>(out_.size()); }
  const std::vector<MatrixGL2>& out_F() const { return out_; }
  // lift_matrix_to_aut of out_F()[k].
  const std::vector<GroupMorphism>& out_lifts() const { return lifts_; }

  int class_of_line(int line) const { return line_class_[line]; }
  int r(int line) const { return spec_.classes[line_class_[line]].r; }
  bool conjugate_lines(int i, int j) const { return line_class_[i] == line_class_[j]; }
  SubgroupId maximal(int line) const { return group_->maximal(line); }
  // Normalized generator of V_i; V_i = <z, u~_i>.
  Elem normalized_u(int line) const { return normalized_u_[line]; }
  // alpha_{i,j}: an F-automorphism of S with z -> z and u~_i -> u~_j.
  const GroupMorphism& alpha(int i, int j) const;
  // Coordinates (s, t) of g = z^s u~_i^t in V_i.
  std::array<int, 2> coordinates(int line, Elem g) const;
  // Matrix of a map V_i -> V_j in the bases (z, u~_i), (z, u~_j).
  MatrixGL2 restricted_matrix(const GroupMorphism& map, int i, int j) const;

  // z -> z^k, u~_i -> u~_j^l, for (k, l) in the extendable lambda set.
  FusionMorphism psi(int i, int j, int k, int l) const;
  // z -> u~_j^k, u~_i -> z^l, for (k, l) in the nonextendable lambda set.
  FusionMorphism phi(int i, int j, int k, int l) const;
  // The nonextendable automorphism z -> u~_i, u~_i -> z^{-1} of V_i.
  FusionMorphism essential_automorphism(int line) const;

  // One representative per S-S-conjugacy class of Hom_F(Q, S).
  std::vector<HomClass> enumerate_hom_classes(SubgroupId q) const;

 private:
  FusionSystemSpec spec_;
  std::shared_ptr<const ExtraspecialGroup> group_;
  int f_ = 0;
  std::vector<MatrixGL2> out_;
  std::vector<GroupMorphism> lifts_;
  std::vector<int> line_class_;
  std::vector<Elem> normalized_u_;
  std::vector<GroupMorphism> alpha_from_base_;
  std::vector<std::vector<GroupMorphism>> alpha_;
  std::vector<std::vector<std::array<int, 2>>> coords_;
};

FusionSystem build_fusion_system(const FusionSystemSpec& spec);

// alpha_{i,j} for every ordered pair of F-conjugate lines.
std::vector<std::pair<std::pair<int, int>, FusionMorphism>> normalized_isos(const FusionSystem& fs);

}  // namespace fusionbiset

#endif  // FUSIONBISET_FUSION_DATA_HPP_
