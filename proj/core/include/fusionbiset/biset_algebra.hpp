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

#ifndef FUSIONBISET_BISET_ALGEBRA_HPP_
#define FUSIONBISET_BISET_ALGEBRA_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fusionbiset/fusion_data.hpp"
#include "fusionbiset/group_core.hpp"
#include "fusionbiset/rational.hpp"

namespace fusionbiset {

// Normal form of a graph subgroup Delta_Q^phi up to conjugation: the
// conjugated source and the target form of the images of its canonical
// generators.
struct ClassKey {
  SubgroupId source = -1;
  std::uint32_t target = 0;

  friend auto operator<=>(const ClassKey&, const ClassKey&) = default;
};

std::string to_string(const ClassKey& key);

struct CanonicalForm {
  ClassKey key;
  // c_target o theta o c_source^{-1} is the canonical representative.
  Elem source_witness = 0;
  Elem target_witness = 0;
};

// Canonical form of theta: Q -> S up to (R x S)-conjugacy, where R is the
// ambient group containing Q (S for S-S-bisets). Only abelian R and R = S
// occur.
CanonicalForm canonical_form(const ExtraspecialGroup& group, SubgroupId q,
                             const std::function<Elem(Elem)>& theta, SubgroupId ambient);
CanonicalForm canonical_form(const GroupMorphism& theta, SubgroupId ambient);
CanonicalForm canonical_form(const GroupMorphism& theta);
GroupMorphism representative_of(const ExtraspecialGroup& group, const ClassKey& key);

// The graph subgroup Delta_Q^phi = {(u, phi(u)) : u in Q} <= S x S.
using GraphSubgroup = GroupMorphism;

// An S-S-conjugacy class of transitive bisets (S x S)/Delta_Q^phi, held
// by its canonical representative.
class BisetClass {
 public:
  BisetClass() = default;
  explicit BisetClass(const GroupMorphism& any_representative);
  static BisetClass from_key(const ExtraspecialGroup& group, const ClassKey& key);

  const ClassKey& key() const { return key_; }
  const GroupMorphism& rep() const { return *rep_; }
  SubgroupId source() const { return key_.source; }
  // r with |S:Q| = p^r.
  int layer() const;
  // |S:Q|
  int index() const;

  friend bool operator==(const BisetClass& a, const BisetClass& b) { return a.key_ == b.key_; }
  friend auto operator<=>(const BisetClass& a, const BisetClass& b) { return a.key_ <=> b.key_; }

 private:
  ClassKey key_;
  std::shared_ptr<const GroupMorphism> rep_;
};

template <class T>
struct BisetTerm {
  BisetClass cls;
  T coeff{};
};

// A finite Z- or Q-linear combination of transitive S-S-bisets.
template <class T>
class FormalBiset {
 public:
  using Scalar = T;

  FormalBiset() = default;
  explicit FormalBiset(std::shared_ptr<const ExtraspecialGroup> group) : group_(std::move(group)) {}

  const ExtraspecialGroup& group() const { return *group_; }
  std::shared_ptr<const ExtraspecialGroup> shared_group() const { return group_; }
  int prime() const { return group_->prime(); }

  void add(const BisetClass& cls, const T& coeff);
  void set(const BisetClass& cls, const T& coeff);
  T coefficient(const ClassKey& key) const;
  T coefficient(const BisetClass& cls) const { return coefficient(cls.key()); }
  const std::map<ClassKey, BisetTerm<T>>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }

  FormalBiset layer(int r) const;
  // Layers 0..r.
  FormalBiset truncate(int r) const;
  // Sum of coefficients over layer r.
  T layer_count(int r) const;
  // e(X) = |X|/|S| = sum of coeff * |S:Q|.
  T size_ratio() const;
  bool is_genuine() const;

  FormalBiset& operator+=(const FormalBiset& o);
  FormalBiset operator+(const FormalBiset& o) const;
  FormalBiset operator-(const FormalBiset& o) const;
  FormalBiset scaled(const T& factor) const;

  friend bool operator==(const FormalBiset& a, const FormalBiset& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || ia->second.coeff != ib->second.coeff) return false;
    }
    return true;
  }

 private:
  std::shared_ptr<const ExtraspecialGroup> group_;
  std::map<ClassKey, BisetTerm<T>> terms_;
};

using IntBiset = FormalBiset<std::int64_t>;
using RationalBiset = FormalBiset<Rational>;

template <class T>
using MarkVector = std::map<ClassKey, T>;

// N_{psi,phi} = {x in S : xRx^{-1} <= Q and phi o c_x = c_y o psi on R for some y}.
std::vector<Elem> n_set(const GroupMorphism& psi, const GroupMorphism& phi);
std::vector<Elem> n_set_brute_force(const GroupMorphism& psi, const GroupMorphism& phi);
bool is_subconjugate(const GroupMorphism& psi, const GroupMorphism& phi);
bool are_conjugate(const GroupMorphism& a, const GroupMorphism& b);
// phi extends to a strictly larger subgroup within N_S(Q), i.e. N_phi > Q.
bool has_larger_n_set(const GroupMorphism& phi);

// |((S x S)/Delta_Q^phi)^{Delta_R^psi}| = |N_{psi,phi}|/|Q| * |C_S(psi(R))|.
std::int64_t count_fixed_points(const BisetClass& cls, const GraphSubgroup& by);
// The same number counted on an explicit coset set.
std::int64_t brute_force_fixed_points(const BisetClass& cls, const GraphSubgroup& by);

template <class T>
T mark(const FormalBiset<T>& b, const GraphSubgroup& by);
// Marks at every class subconjugate to a class of the support.
template <class T>
MarkVector<T> mark_vector(const FormalBiset<T>& b);

template <class T>
FormalBiset<T> opposite(const FormalBiset<T>& b);

// One transitive R-S piece of a restricted transitive biset, with the
// left cosets of Q it covers and, for each, an element v of R such that
// the coset is psi(v) t Q.
struct RestrictionPiece {
  Elem rep = 0;
  GroupMorphism map;
  CanonicalForm form;
  std::vector<int> cosets;
  std::vector<Elem> multipliers;
};

// Double-coset decomposition of psi((S x S)/Delta_Q^phi) over
// t in [psi(R) \ S / Q].
std::vector<RestrictionPiece> restrict_left(const BisetClass& cls, const GroupMorphism& psi);
// Restriction as a multiset of R-S class keys.
std::map<ClassKey, std::int64_t> restriction_classes(const BisetClass& cls, const GroupMorphism& psi);
// Orbit decomposition of the explicit restricted set.
std::map<ClassKey, std::int64_t> restriction_classes_brute_force(const BisetClass& cls, const GroupMorphism& psi);

enum class Layer2Source { kZ, kU };
enum class Layer2Target { kZ, kU };

// How an F-class arose: an outer automorphism (layer 0), psi/phi maps
// between maximal subgroups (layer 1), xi -> zeta on order-p subgroups
// (layer 2), or the trivial subgroup (layer 3).
struct FClassLabel {
  int layer = 0;
  int out_index = -1;
  int i = -1;
  int j = -1;
  int k = 0;
  int l = 0;
  bool extendable = false;
  Layer2Source source_kind = Layer2Source::kZ;
  Layer2Target target_kind = Layer2Target::kZ;
  int m = 0;
};

std::string describe(const FClassLabel& label);

struct FClass {
  BisetClass cls;
  FClassLabel label;
};

// Every S-S-conjugacy class of F-morphisms, grouped by layer.
class FClassCatalog {
 public:
  explicit FClassCatalog(std::shared_ptr<const FusionSystem> system);

  const FusionSystem& system() const { return *system_; }
  std::shared_ptr<const FusionSystem> shared_system() const { return system_; }
  const ExtraspecialGroup& group() const { return system_->group(); }
  const std::vector<FClass>& classes() const { return classes_; }
  const std::vector<int>& layer_members(int r) const { return by_layer_.at(r); }
  std::optional<int> find(const ClassKey& key) const;
  bool contains(const ClassKey& key) const { return index_.count(key) != 0; }
  const FClass& at(const ClassKey& key) const;
  // Class of [Q, id_Q] for the source (or image) of an F-class.
  int identity_class_of_source(int index) const;
  int identity_class_of_image(int index) const;

 private:
  std::shared_ptr<const FusionSystem> system_;
  std::vector<FClass> classes_;
  std::vector<std::vector<int>> by_layer_;
  std::map<ClassKey, int> index_;
  std::vector<int> source_identity_;
  std::vector<int> image_identity_;
};

struct StabilityReport {
  bool stable = true;
  std::size_t checked = 0;
  std::optional<ClassKey> witness;
  std::string witness_description;
  std::string lhs;
  std::string rhs;
};

// Condition (A) first (throws SupportError naming the class), then the
// mark equalities |X^{Delta_Q^phi}| = |X^{Delta_{phi(Q)}^id}| (left) or
// |X^{Delta_Q^phi}| = |X^{Delta_Q^id}| (right) for every F-class of layer
// at most max_layer.
template <class T>
StabilityReport check_left_stability(const FClassCatalog& catalog, const FormalBiset<T>& b, int max_layer = 3);
template <class T>
StabilityReport check_right_stability(const FClassCatalog& catalog, const FormalBiset<T>& b, int max_layer = 3);
template <class T>
void check_support(const FClassCatalog& catalog, const FormalBiset<T>& b);
template <class T>
bool is_left_stable(const FClassCatalog& catalog, const FormalBiset<T>& b) {
  return check_left_stability(catalog, b).stable;
}
template <class T>
bool is_right_stable(const FClassCatalog& catalog, const FormalBiset<T>& b) {
  return check_right_stability(catalog, b).stable;
}

// {"prime", "system", "terms": [{"source_generators", "image_generators",
// "multiplicity"}]} with elements as [a, b, c] and exact fraction strings.
template <class T>
nlohmann::json biset_to_json(const FormalBiset<T>& b, const std::string& system_name);
template <class T>
FormalBiset<T> biset_from_json(const nlohmann::json& j, std::shared_ptr<const ExtraspecialGroup> group);

nlohmann::json element_to_json(const ExtraspecialGroup& group, Elem g);
Elem element_from_json(const ExtraspecialGroup& group, const nlohmann::json& j);

}  // namespace fusionbiset

#endif  // FUSIONBISET_BISET_ALGEBRA_HPP_
