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

#ifndef FUSIONBISET_REALIZATION_HPP_
#define FUSIONBISET_REALIZATION_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fusionbiset/biset_algebra.hpp"
#include "fusionbiset/fusion_data.hpp"

namespace fusionbiset {

// One transitive summand S x_(Q,phi) S and its left Q-cosets, which are
// the right S-orbits of the summand.
struct Block {
  BisetClass cls;
  int summand = 0;
  int offset = 0;
  int size = 0;
};

// The right S-orbits J of a biset, block by block.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(const IntBiset& x);

  const ExtraspecialGroup& group() const { return *group_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  int size() const { return size_; }
  int block_of(int j) const { return block_of_.at(j); }
  // Coset index of j inside its block, per Subgroup::left_coset_of.
  int coset_of(int j) const { return j - blocks_[block_of_[j]].offset; }
  int point(int block, int coset) const { return blocks_[block].offset + coset; }
  // u . j for the left S-action on cosets.
  int act(Elem u, int j) const;
  // Points in blocks with Q = S.
  std::vector<int> top_points() const;

 private:
  std::shared_ptr<const ExtraspecialGroup> group_;
  std::vector<Block> blocks_;
  std::vector<int> block_of_;
  int size_ = 0;
};

// Throws std::invalid_argument for a coefficient that is not a
// nonnegative integer.
IndexSet build_index_set(const IntBiset& x);

using Permutation = std::vector<int>;

enum class Matching { kForward, kReversed };

// The permutation of J induced by an isomorphism of R-S-bisets from the
// restriction of X along R <= S to its restriction along psi: R -> S.
// Pieces with equal R-S class are paired in order (or reversed order).
// Throws StabilityError if the two restrictions are not isomorphic.
Permutation perm_image(const IndexSet& j, const GroupMorphism& psi, Matching matching = Matching::kForward);
Permutation perm_image_of_out(const IndexSet& j, const GroupMorphism& alpha, Matching matching = Matching::kForward);
Permutation perm_image_of_essential(const IndexSet& j, const GroupMorphism& phi,
                                    Matching matching = Matching::kForward);

bool is_permutation(const Permutation& perm);
// pi(r . j) = psi(r) . pi(j) for generators r of the source of psi.
bool is_equivariant(const IndexSet& j, const Permutation& perm, const GroupMorphism& psi);
// Each block maps onto one block of class [alpha Q, phi alpha^{-1}].
bool maps_blocks_to_twists(const IndexSet& j, const Permutation& perm, const GroupMorphism& alpha);

class UnionFind {
 public:
  explicit UnionFind(int n);
  int find(int a);
  void unite(int a, int b);
  int components() const { return components_; }
  // Canonical labels: each point labeled by the smallest member of its orbit.
  std::vector<int> labels();

 private:
  std::vector<int> parent_;
  int components_;
};

struct RealizationOptions {
  bool all_lines = false;
  std::function<void(const std::string&)> progress;
};

struct RealizationReport {
  std::string system;
  int p = 0;
  int j_size = 0;
  int block_count = 0;
  int generator_count = 0;
  int orbit_count = 0;
  int orbit_count_reversed = 0;
  bool matchings_agree = false;
  int j0_size = 0;
  int j0_orbit_count = 0;
  bool j0_regular = false;
  bool permutations_valid = false;
  bool equivariant = false;
  bool blocks_to_twists = false;
  std::int64_t merged_singletons = 0;
  bool roundtrip_preserves_piece_classes = false;
  std::int64_t roundtrip_block_class_moves = 0;
  std::vector<int> essential_lines;
  std::vector<int> extra_lines;
  double wall_seconds = 0;

  bool transitive() const { return orbit_count == 1; }
  bool passed() const;
};

RealizationReport check_transitivity(const FusionSystem& fs, const IntBiset& x, const RealizationOptions& opts = {});

nlohmann::json realization_to_json(const RealizationReport& r);

}  // namespace fusionbiset

#endif  // FUSIONBISET_REALIZATION_HPP_
