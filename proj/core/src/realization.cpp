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

#include "fusionbiset/realization.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "fusionbiset/errors.hpp"

namespace fusionbiset {

IndexSet::IndexSet(const IntBiset& x) : group_(x.shared_group()) {
  int summand = 0;
  for (const auto& [key, term] : x.terms()) {
    if (term.coeff < 0) throw std::invalid_argument("index set needs nonnegative multiplicities");
    for (std::int64_t m = 0; m < term.coeff; ++m) {
      Block b{term.cls, summand++, size_, term.cls.index()};
      for (int c = 0; c < b.size; ++c) block_of_.push_back(static_cast<int>(blocks_.size()));
      size_ += b.size;
      blocks_.push_back(std::move(b));
    }
  }
}

int IndexSet::act(Elem u, int j) const {
  const int b = block_of_[j];
  const Subgroup& q = group_->subgroup(blocks_[b].cls.source());
  const Elem rep = q.coset_rep(j - blocks_[b].offset);
  return blocks_[b].offset + q.left_coset_of(group_->mul(u, rep));
}

std::vector<int> IndexSet::top_points() const {
  std::vector<int> out;
  for (const Block& b : blocks_) {
    if (b.size == 1) out.push_back(b.offset);
  }
  return out;
}

IndexSet build_index_set(const IntBiset& x) {
  if (!x.is_genuine()) throw std::invalid_argument("index set needs a genuine biset");
  return IndexSet(x);
}

namespace {

struct Instance {
  int block;
  int cls;
  int piece;
};

struct Restrictions {
  std::vector<std::vector<RestrictionPiece>> untwisted;
  std::vector<std::vector<RestrictionPiece>> twisted;
  std::vector<int> class_of_block;
};

Restrictions restrict_all(const IndexSet& j, const GroupMorphism& psi) {
  const ExtraspecialGroup& g = j.group();
  const GroupMorphism iota = GroupMorphism::inclusion(g, psi.source());
  Restrictions out;
  std::map<ClassKey, int> index;
  for (const Block& b : j.blocks()) {
    auto [it, fresh] = index.emplace(b.cls.key(), static_cast<int>(out.untwisted.size()));
    if (fresh) {
      out.untwisted.push_back(restrict_left(b.cls, iota));
      out.twisted.push_back(restrict_left(b.cls, psi));
    }
    out.class_of_block.push_back(it->second);
  }
  return out;
}

}  // namespace

Permutation perm_image(const IndexSet& j, const GroupMorphism& psi, Matching matching) {
  const ExtraspecialGroup& g = j.group();
  const Restrictions res = restrict_all(j, psi);
  std::map<ClassKey, std::vector<Instance>> untwisted;
  std::map<ClassKey, std::vector<Instance>> twisted;
  for (int b = 0; b < static_cast<int>(j.blocks().size()); ++b) {
    const int c = res.class_of_block[b];
    for (int k = 0; k < static_cast<int>(res.untwisted[c].size()); ++k) {
      untwisted[res.untwisted[c][k].form.key].push_back({b, c, k});
    }
    for (int k = 0; k < static_cast<int>(res.twisted[c].size()); ++k) {
      twisted[res.twisted[c][k].form.key].push_back({b, c, k});
    }
  }
  if (untwisted.size() != twisted.size()) throw StabilityError("restrictions along the two maps differ in class count");
  Permutation perm(j.size(), -1);
  std::map<std::tuple<int, int, int, int>, std::vector<int>> cache;
  for (auto& [key, us] : untwisted) {
    auto it = twisted.find(key);
    if (it == twisted.end() || it->second.size() != us.size()) {
      throw StabilityError("restrictions differ at " + to_string(key));
    }
    std::vector<Instance>& ts = it->second;
    if (matching == Matching::kReversed) std::reverse(ts.begin(), ts.end());
    for (std::size_t k = 0; k < us.size(); ++k) {
      const Instance& u = us[k];
      const Instance& t = ts[k];
      const RestrictionPiece& a = res.untwisted[u.cls][u.piece];
      auto [slot, fresh] = cache.try_emplace({u.cls, u.piece, t.cls, t.piece});
      if (fresh) {
        const RestrictionPiece& b = res.twisted[t.cls][t.piece];
        const Subgroup& q = g.subgroup(j.blocks()[t.block].cls.source());
        const Elem w = g.mul(g.inv(a.form.source_witness), b.form.source_witness);
        for (Elem v : a.multipliers) slot->second.push_back(q.left_coset_of(g.mul(psi(g.mul(v, w)), b.rep)));
      }
      for (std::size_t c = 0; c < a.cosets.size(); ++c) {
        perm[j.point(u.block, a.cosets[c])] = j.point(t.block, slot->second[c]);
      }
    }
  }
  if (!is_permutation(perm)) throw InternalConsistencyError("induced map on J is not a bijection");
  return perm;
}

Permutation perm_image_of_out(const IndexSet& j, const GroupMorphism& alpha, Matching matching) {
  if (alpha.source() != j.group().whole()) throw std::invalid_argument("expected an automorphism of S");
  return perm_image(j, alpha, matching);
}

Permutation perm_image_of_essential(const IndexSet& j, const GroupMorphism& phi, Matching matching) {
  const ExtraspecialGroup& g = j.group();
  if (g.subgroup(phi.source()).layer() != 1 || phi.image() != phi.source()) {
    throw std::invalid_argument("expected an automorphism of a maximal subgroup");
  }
  if (has_larger_n_set(phi)) throw std::invalid_argument("expected a nonextendable automorphism");
  return perm_image(j, phi, matching);
}

bool is_permutation(const Permutation& perm) {
  std::vector<std::uint8_t> hit(perm.size(), 0);
  for (int v : perm) {
    if (v < 0 || v >= static_cast<int>(perm.size()) || hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

bool is_equivariant(const IndexSet& j, const Permutation& perm, const GroupMorphism& psi) {
  const auto& gens = j.group().subgroup(psi.source()).generators();
  for (int x = 0; x < j.size(); ++x) {
    for (Elem r : gens) {
      if (perm[j.act(r, x)] != j.act(psi(r), perm[x])) return false;
    }
  }
  return true;
}

bool maps_blocks_to_twists(const IndexSet& j, const Permutation& perm, const GroupMorphism& alpha) {
  const GroupMorphism alpha_inv = alpha.inverse();
  std::map<ClassKey, ClassKey> expected;
  for (const Block& b : j.blocks()) {
    const int target = j.block_of(perm[b.offset]);
    for (int c = 0; c < b.size; ++c) {
      if (j.block_of(perm[b.offset + c]) != target) return false;
    }
    if (j.blocks()[target].size != b.size) return false;
    auto it = expected.find(b.cls.key());
    if (it == expected.end()) {
      const GroupMorphism& phi = b.cls.rep();
      const SubgroupId moved = alpha.restrict_to(phi.source()).image();
      const BisetClass twist(compose(phi, alpha_inv.restrict_to(moved)));
      it = expected.emplace(b.cls.key(), twist.key()).first;
    }
    if (j.blocks()[target].cls.key() != it->second) return false;
  }
  return true;
}

UnionFind::UnionFind(int n) : parent_(n), components_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

int UnionFind::find(int a) {
  while (parent_[a] != a) {
    parent_[a] = parent_[parent_[a]];
    a = parent_[a];
  }
  return a;
}

void UnionFind::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (a > b) std::swap(a, b);
  parent_[b] = a;
  --components_;
}

std::vector<int> UnionFind::labels() {
  const int n = static_cast<int>(parent_.size());
  std::vector<int> smallest(n, n);
  for (int a = 0; a < n; ++a) smallest[find(a)] = std::min(smallest[find(a)], a);
  std::vector<int> out(n);
  for (int a = 0; a < n; ++a) out[a] = smallest[find(a)];
  return out;
}

bool RealizationReport::passed() const {
  return transitive() && matchings_agree && j0_orbit_count == 1 && j0_regular && permutations_valid && equivariant &&
         blocks_to_twists && roundtrip_preserves_piece_classes && merged_singletons > 0;
}

namespace {

// Key of the untwisted V-S piece containing each point of J.
std::vector<ClassKey> piece_keys(const IndexSet& j, const GroupMorphism& psi) {
  const Restrictions res = restrict_all(j, psi);
  std::vector<ClassKey> out(j.size());
  for (int b = 0; b < static_cast<int>(j.blocks().size()); ++b) {
    for (const RestrictionPiece& piece : res.untwisted[res.class_of_block[b]]) {
      for (int c : piece.cosets) out[j.point(b, c)] = piece.form.key;
    }
  }
  return out;
}

}  // namespace

RealizationReport check_transitivity(const FusionSystem& fs, const IntBiset& x, const RealizationOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  auto say = [&](const std::string& msg) {
    if (opts.progress) opts.progress(msg);
  };
  RealizationReport rep;
  rep.system = fs.spec().name;
  rep.p = fs.prime();
  const IndexSet j = build_index_set(x);
  rep.j_size = j.size();
  rep.block_count = static_cast<int>(j.blocks().size());

  UnionFind forward(j.size());
  UnionFind reversed(j.size());
  const std::vector<int> top = j.top_points();
  rep.j0_size = static_cast<int>(top.size());
  std::map<int, int> top_index;
  for (std::size_t k = 0; k < top.size(); ++k) top_index[top[k]] = static_cast<int>(k);
  UnionFind top_orbits(rep.j0_size);
  bool top_free = true;
  bool top_closed = true;
  rep.permutations_valid = true;
  rep.equivariant = true;
  rep.blocks_to_twists = true;

  auto absorb = [&](const GroupMorphism& psi, bool is_out) {
    for (Matching m : {Matching::kForward, Matching::kReversed}) {
      const Permutation perm = perm_image(j, psi, m);
      rep.permutations_valid = rep.permutations_valid && is_permutation(perm);
      rep.equivariant = rep.equivariant && is_equivariant(j, perm, psi);
      UnionFind& uf = m == Matching::kForward ? forward : reversed;
      for (int a = 0; a < j.size(); ++a) uf.unite(a, perm[a]);
      if (m != Matching::kForward) continue;
      if (is_out) {
        rep.blocks_to_twists = rep.blocks_to_twists && maps_blocks_to_twists(j, perm, psi);
        for (int t : top) {
          const auto it = top_index.find(perm[t]);
          if (it == top_index.end()) {
            top_closed = false;
            continue;
          }
          top_orbits.unite(top_index[t], it->second);
          if (perm[t] == t && !psi.is_inclusion()) top_free = false;
        }
      } else {
        for (int t : top) {
          if (j.blocks()[j.block_of(perm[t])].size == fs.prime()) ++rep.merged_singletons;
        }
      }
    }
    ++rep.generator_count;
  };

  for (int k = 0; k < fs.out_order(); ++k) {
    say("automorphism " + std::to_string(k + 1) + "/" + std::to_string(fs.out_order()));
    absorb(fs.out_lifts()[k], true);
  }
  std::vector<int> lines;
  for (const LineClass& cls : fs.spec().classes) {
    if (opts.all_lines) lines.insert(lines.end(), cls.lines.begin(), cls.lines.end());
    else lines.push_back(*std::min_element(cls.lines.begin(), cls.lines.end()));
  }
  std::sort(lines.begin(), lines.end());
  for (int line : lines) {
    say("essential automorphism of V" + std::to_string(line));
    absorb(fs.essential_automorphism(line).map, false);
  }
  rep.essential_lines = lines;
  if (forward.components() != 1 && !opts.all_lines) {
    for (int line = 0; line <= fs.prime(); ++line) {
      if (std::find(lines.begin(), lines.end(), line) != lines.end()) continue;
      say("additional essential automorphism of V" + std::to_string(line));
      absorb(fs.essential_automorphism(line).map, false);
      rep.extra_lines.push_back(line);
    }
  }
  rep.orbit_count = forward.components();
  rep.orbit_count_reversed = reversed.components();
  rep.matchings_agree = forward.labels() == reversed.labels();
  rep.j0_orbit_count = top_orbits.components();
  rep.j0_regular = top_closed && top_free && rep.j0_orbit_count == 1 && rep.j0_size == fs.out_order();

  say("round trip through an essential automorphism and its inverse");
  const GroupMorphism phi = fs.essential_automorphism(lines.front()).map;
  const Permutation there = perm_image(j, phi);
  const Permutation back = perm_image(j, phi.inverse());
  const std::vector<ClassKey> keys = piece_keys(j, phi);
  rep.roundtrip_preserves_piece_classes = true;
  for (int a = 0; a < j.size(); ++a) {
    const int b = back[there[a]];
    if (keys[a] != keys[b]) rep.roundtrip_preserves_piece_classes = false;
    if (j.blocks()[j.block_of(a)].cls != j.blocks()[j.block_of(b)].cls) ++rep.roundtrip_block_class_moves;
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

nlohmann::json realization_to_json(const RealizationReport& r) {
  return {{"system", r.system},
          {"prime", r.p},
          {"J", r.j_size},
          {"blocks", r.block_count},
          {"generators", r.generator_count},
          {"orbits", r.orbit_count},
          {"orbits_reversed_matching", r.orbit_count_reversed},
          {"matchings_agree", r.matchings_agree},
          {"J0", r.j0_size},
          {"J0_orbits", r.j0_orbit_count},
          {"J0_regular", r.j0_regular},
          {"permutations_valid", r.permutations_valid},
          {"equivariant", r.equivariant},
          {"blocks_to_twists", r.blocks_to_twists},
          {"merged_singletons", r.merged_singletons},
          {"roundtrip_preserves_piece_classes", r.roundtrip_preserves_piece_classes},
          {"roundtrip_block_class_moves", r.roundtrip_block_class_moves},
          {"essential_lines", r.essential_lines},
          {"extra_lines", r.extra_lines},
          {"wall_seconds", r.wall_seconds},
          {"passed", r.passed()}};
}

}  // namespace fusionbiset
