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

#ifndef FUSIONBISET_EXPLICIT_BISET_HPP_
#define FUSIONBISET_EXPLICIT_BISET_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "fusionbiset/biset_algebra.hpp"

namespace fusionbiset {

inline constexpr std::size_t kDefaultPointLimit = 20'000'000;

// A finite S-S-biset given by its left and right action tables.
class ExplicitBiset {
 public:
  ExplicitBiset(std::shared_ptr<const ExtraspecialGroup> group, int size, std::vector<int> left,
                std::vector<int> right);

  // (S x S)/Delta_Q^phi with u.(s,t).v = (us, v^{-1}t).
  static ExplicitBiset transitive(std::shared_ptr<const ExtraspecialGroup> group, const GroupMorphism& phi);
  static ExplicitBiset from_formal(const IntBiset& b, std::size_t max_points = kDefaultPointLimit);
  static ExplicitBiset disjoint_union(const ExplicitBiset& a, const ExplicitBiset& b);

  const ExtraspecialGroup& group() const { return *group_; }
  std::shared_ptr<const ExtraspecialGroup> shared_group() const { return group_; }
  int size() const { return size_; }
  // u . x
  int left(Elem u, int x) const { return left_[static_cast<std::size_t>(u) * size_ + x]; }
  // x . v
  int right(int x, Elem v) const { return right_[static_cast<std::size_t>(v) * size_ + x]; }
  bool left_free() const;
  bool right_free() const;
  // #{x : r.x = x.psi(r) for all r in R}
  std::int64_t fixed_points(const GraphSubgroup& by) const;

 private:
  std::shared_ptr<const ExtraspecialGroup> group_;
  int size_ = 0;
  std::vector<int> left_;
  std::vector<int> right_;
};

// X x_S Y = (X x Y)/((x.u, y) ~ (x, u.y)).
ExplicitBiset explicit_product(const ExplicitBiset& a, const ExplicitBiset& b,
                               std::size_t max_points = kDefaultPointLimit);

// One representative per S-S-conjugacy class of injective homomorphisms
// between subgroups of S, ordered by layer.
std::vector<BisetClass> all_free_classes(const ExtraspecialGroup& group);

// Triangular inversion of the table of marks over the given classes;
// throws InternalConsistencyError if the marks are not those of a formal
// biset over the classes.
template <class T>
FormalBiset<T> solve_from_marks(std::shared_ptr<const ExtraspecialGroup> group, const MarkVector<T>& marks,
                                const std::vector<BisetClass>& classes);

// Throws std::invalid_argument for a non-free action.
IntBiset decompose_by_marks(const ExplicitBiset& x);

// a x_S b with the convention [S, alpha] x_S [S, beta] = [S, beta o alpha].
IntBiset compose(const IntBiset& a, const IntBiset& b, std::size_t max_points = kDefaultPointLimit);

}  // namespace fusionbiset

#endif  // FUSIONBISET_EXPLICIT_BISET_HPP_
