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

#ifndef FUSIONBISET_GROUP_CORE_HPP_
#define FUSIONBISET_GROUP_CORE_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fusionbiset/errors.hpp"

namespace fusionbiset {

// Elements of S are stored as dense indices a + p*b + p^2*c.
using Elem = std::uint16_t;
inline constexpr Elem kNoElem = 0xFFFF;
using SubgroupId = int;

bool is_odd_prime(int p);

// The point (a, b, c) of the Heisenberg group over F_p with
// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
struct GroupElement {
  int p = 3;
  int a = 0;
  int b = 0;
  int c = 0;

  static GroupElement identity(int p) { return {p, 0, 0, 0}; }
  static GroupElement x(int p) { return {p, 1, 0, 0}; }
  static GroupElement y(int p) { return {p, 0, 1, 0}; }
  static GroupElement z(int p) { return {p, 0, 0, 1}; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement multiply(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
GroupElement power(const GroupElement& g, long k);
GroupElement commutator(const GroupElement& g, const GroupElement& h);
std::string to_string(const GroupElement& g);

class ExtraspecialGroup;

// A subgroup of S held as an explicit element set together with its
// left-coset decomposition. Instances are owned by ExtraspecialGroup.
class Subgroup {
 public:
  SubgroupId id() const { return id_; }
  int order() const { return static_cast<int>(elements_.size()); }
  // log_p of the order.
  int rank() const { return rank_; }
  // log_p of the index |S:Q|.
  int layer() const { return 3 - rank_; }
  bool contains(Elem g) const { return member_[g] != 0; }
  const std::vector<Elem>& elements() const { return elements_; }
  // Greedy generators: smallest non-identity element, then the smallest
  // element outside the span so far.
  const std::vector<Elem>& generators() const { return generators_; }
  bool is_abelian() const { return abelian_; }
  int coset_count() const { return static_cast<int>(coset_reps_.size()); }
  // Index of the left coset gQ.
  int left_coset_of(Elem g) const { return coset_of_[g]; }
  // Smallest element of the k-th left coset.
  Elem coset_rep(int k) const { return coset_reps_[k]; }
  const std::vector<Elem>& coset_reps() const { return coset_reps_; }

 private:
  friend class ExtraspecialGroup;

  SubgroupId id_ = -1;
  int rank_ = 0;
  bool abelian_ = true;
  std::vector<Elem> elements_;
  std::vector<std::uint8_t> member_;
  std::vector<Elem> generators_;
  std::vector<int> coset_of_;
  std::vector<Elem> coset_reps_;
};

// S = p^{1+2}_+ with multiplication, inverse and conjugation tables, the
// full subgroup lattice and target-conjugation normal forms. Immutable
// after construction and safe to share between threads.
class ExtraspecialGroup {
 public:
  static constexpr int kMaxPrime = 13;

  explicit ExtraspecialGroup(int p);

  int prime() const { return p_; }
  int order() const { return n_; }

  Elem encode(int a, int b, int c) const;
  Elem encode(const GroupElement& g) const;
  GroupElement decode(Elem g) const;

  Elem identity() const { return 0; }
  Elem x() const { return encode(1, 0, 0); }
  Elem y() const { return encode(0, 1, 0); }
  Elem z() const { return encode(0, 0, 1); }
  // u_i = x*y^i for i < p and u_p = y.
  Elem u(int i) const;

  Elem mul(Elem g, Elem h) const { return mul_[static_cast<std::size_t>(g) * n_ + h]; }
  Elem inv(Elem g) const { return inv_[g]; }
  Elem pow(Elem g, long k) const;
  // x g x^{-1}
  Elem conj(Elem x, Elem g) const { return mul(mul(x, g), inv(x)); }
  // g h g^{-1} h^{-1}
  Elem comm(Elem g, Elem h) const { return mul(mul(g, h), mul(inv(g), inv(h))); }
  bool is_central(Elem g) const { return g % (p_ * p_) == 0; }
  // Index of the maximal subgroup V_i containing g, or -1 for central g.
  int line_of(Elem g) const;
  // Exponent vector (a, b) of the image of g in S/Z.
  std::array<int, 2> frattini_vector(Elem g) const;
  // Elements (a, b, 0): a transversal of Z(S) in S.
  const std::vector<Elem>& central_transversal() const { return transversal_; }

  int subgroup_count() const { return static_cast<int>(subgroups_.size()); }
  const Subgroup& subgroup(SubgroupId id) const { return subgroups_.at(id); }
  const std::vector<Subgroup>& subgroups() const { return subgroups_; }
  SubgroupId whole() const { return whole_; }
  SubgroupId trivial() const { return trivial_; }
  SubgroupId center() const { return center_; }
  // V_i = <z, u_i>.
  SubgroupId maximal(int i) const { return maximal_.at(i); }
  const std::vector<SubgroupId>& maximal_subgroups() const { return maximal_; }
  SubgroupId cyclic(Elem g) const { return cyclic_[g]; }
  SubgroupId generated(std::span<const Elem> gens) const;
  // Throws InvalidSubgroupError if the sorted set is not a subgroup.
  SubgroupId lookup(const std::vector<Elem>& sorted_elements) const;
  // x Q x^{-1}
  SubgroupId conjugate(Elem x, SubgroupId q) const {
    return conj_sub_[static_cast<std::size_t>(x) * subgroups_.size() + q];
  }
  SubgroupId intersection(SubgroupId a, SubgroupId b) const {
    return meet_[static_cast<std::size_t>(a) * subgroups_.size() + b];
  }
  SubgroupId centralizer(SubgroupId q) const { return centralizer_[q]; }
  bool is_subgroup_of(SubgroupId a, SubgroupId b) const { return intersection(a, b) == a; }

  // Normal form of a tuple of at most two elements under simultaneous
  // conjugation: the minimal encoded tuple over all y in S, plus a y that
  // attains it (y h y^{-1} is the normal form).
  struct TargetForm {
    std::uint32_t code = 0;
    Elem witness = 0;
  };
  TargetForm target_form(std::span<const Elem> tuple) const;
  // Decodes a code produced by target_form for a tuple of the given length.
  std::vector<Elem> decode_target(std::uint32_t code, int length) const;

 private:
  SubgroupId register_subgroup(std::vector<Elem> sorted_elements);
  std::vector<Elem> closure(std::span<const Elem> gens) const;

  int p_;
  int n_;
  std::vector<Elem> mul_;
  std::vector<Elem> inv_;
  std::vector<Elem> transversal_;
  std::vector<Subgroup> subgroups_;
  std::map<std::vector<Elem>, SubgroupId> index_;
  SubgroupId whole_ = -1;
  SubgroupId trivial_ = -1;
  SubgroupId center_ = -1;
  std::vector<SubgroupId> maximal_;
  std::vector<SubgroupId> cyclic_;
  std::vector<SubgroupId> conj_sub_;
  std::vector<SubgroupId> meet_;
  std::vector<SubgroupId> centralizer_;
  std::vector<Elem> canon1_;
  std::vector<Elem> witness1_;
  std::vector<std::uint32_t> canon2_;
  std::vector<Elem> witness2_;
};

// An injective homomorphism from a subgroup of S into S, stored as a full
// lookup table. Every constructor verifies well-definedness and
// injectivity.
class GroupMorphism {
 public:
  GroupMorphism() = default;

  // Extends gens[k] -> images[k] multiplicatively over <gens>; throws
  // InvalidMorphismError if the extension is inconsistent or not injective.
  static GroupMorphism from_generators(const ExtraspecialGroup& group, SubgroupId source,
                                       std::span<const Elem> gens, std::span<const Elem> images);
  // Images are given for source's canonical generators.
  static GroupMorphism from_images(const ExtraspecialGroup& group, SubgroupId source,
                                   std::span<const Elem> images);
  static GroupMorphism inclusion(const ExtraspecialGroup& group, SubgroupId source);
  static GroupMorphism conjugation(const ExtraspecialGroup& group, Elem x, SubgroupId source);

  bool valid() const { return group_ != nullptr; }
  const ExtraspecialGroup& group() const { return *group_; }
  SubgroupId source() const { return source_; }
  SubgroupId image() const { return image_; }
  // Image of an element of the source; kNoElem outside the source.
  Elem operator()(Elem u) const { return table_[u]; }
  Elem apply(Elem u) const;
  std::vector<Elem> canonical_images() const;
  bool is_inclusion() const;

  GroupMorphism restrict_to(SubgroupId r) const;
  GroupMorphism inverse() const;

  friend bool operator==(const GroupMorphism& a, const GroupMorphism& b) {
    return a.source_ == b.source_ && a.table_ == b.table_;
  }

 private:
  const ExtraspecialGroup* group_ = nullptr;
  SubgroupId source_ = -1;
  SubgroupId image_ = -1;
  std::vector<Elem> table_;

  friend GroupMorphism compose(const GroupMorphism& outer, const GroupMorphism& inner);
  static GroupMorphism from_table(const ExtraspecialGroup& group, SubgroupId source,
                                  std::vector<Elem> table);
};

// outer o inner; requires image(inner) <= source(outer).
GroupMorphism compose(const GroupMorphism& outer, const GroupMorphism& inner);

GroupMorphism conjugation_morphism(const ExtraspecialGroup& group, Elem x, SubgroupId source);

// True iff the assignment defines a homomorphism, by exhaustive check of
// f(ab) = f(a)f(b) over the source; used as an oracle in tests.
bool is_homomorphism_exhaustive(const ExtraspecialGroup& group, SubgroupId source,
                                std::span<const Elem> table);

}  // namespace fusionbiset

#endif  // FUSIONBISET_GROUP_CORE_HPP_
