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

#include "fusionbiset/group_core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fusionbiset {
namespace {

int mod(long v, int p) {
  long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

void require_same_prime(const GroupElement& g, const GroupElement& h) {
  if (g.p != h.p) {
    throw PrimeMismatchError("elements over different primes: " + std::to_string(g.p) + " and " +
                             std::to_string(h.p));
  }
}

// Target-form tables are precomputed up to this prime and evaluated on
// demand above it.
constexpr int kTablePrimeLimit = 7;

}  // namespace

bool is_odd_prime(int p) {
  if (p < 3 || p % 2 == 0) return false;
  for (int d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
  require_same_prime(g, h);
  const int p = g.p;
  return {p, mod(g.a + h.a, p), mod(g.b + h.b, p), mod(g.c + h.c + static_cast<long>(g.a) * h.b, p)};
}

GroupElement inverse(const GroupElement& g) {
  const int p = g.p;
  return {p, mod(-g.a, p), mod(-g.b, p), mod(-g.c + static_cast<long>(g.a) * g.b, p)};
}

GroupElement power(const GroupElement& g, long k) {
  GroupElement base = k < 0 ? inverse(g) : g;
  long e = k < 0 ? -k : k;
  GroupElement result = GroupElement::identity(g.p);
  while (e > 0) {
    if (e & 1) result = multiply(result, base);
    base = multiply(base, base);
    e >>= 1;
  }
  return result;
}

GroupElement commutator(const GroupElement& g, const GroupElement& h) {
  return multiply(multiply(g, h), multiply(inverse(g), inverse(h)));
}

std::string to_string(const GroupElement& g) {
  std::ostringstream out;
  out << '(' << g.a << ',' << g.b << ',' << g.c << ')';
  return out.str();
}

ExtraspecialGroup::ExtraspecialGroup(int p) : p_(p), n_(p * p * p) {
  if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
  if (p > kMaxPrime) throw ResourceLimitError("prime too large for explicit tables: " + std::to_string(p));

  mul_.resize(static_cast<std::size_t>(n_) * n_);
  inv_.resize(n_);
  for (int g = 0; g < n_; ++g) {
    const GroupElement ge = decode(static_cast<Elem>(g));
    inv_[g] = encode(inverse(ge));
    for (int h = 0; h < n_; ++h) {
      mul_[static_cast<std::size_t>(g) * n_ + h] = encode(multiply(ge, decode(static_cast<Elem>(h))));
    }
  }
  for (int b = 0; b < p; ++b) {
    for (int a = 0; a < p; ++a) transversal_.push_back(encode(a, b, 0));
  }

  // Subgroups of order p^2 are normal, hence contain Z(S) = <z>; so the
  // lattice is: cyclic subgroups, <z, g> for non-central g, and S.
  std::vector<std::vector<Elem>> found;
  std::map<std::vector<Elem>, int> found_index;
  auto add = [&](std::vector<Elem> members) {
    if (found_index.emplace(members, static_cast<int>(found.size())).second) found.push_back(std::move(members));
  };
  for (int g = 0; g < n_; ++g) {
    const Elem ge = static_cast<Elem>(g);
    add(closure(std::span<const Elem>(&ge, 1)));
    if (!is_central(ge)) {
      const std::array<Elem, 2> gens{z(), ge};
      add(closure(gens));
    }
  }
  {
    const std::array<Elem, 2> gens{x(), y()};
    add(closure(gens));
  }
  std::sort(found.begin(), found.end(), [](const auto& l, const auto& r) {
    if (l.size() != r.size()) return l.size() > r.size();
    return l < r;
  });
  for (auto& members : found) register_subgroup(std::move(members));

  const std::size_t count = subgroups_.size();
  cyclic_.resize(n_);
  for (int g = 0; g < n_; ++g) {
    const Elem ge = static_cast<Elem>(g);
    cyclic_[g] = lookup(closure(std::span<const Elem>(&ge, 1)));
  }
  whole_ = 0;
  trivial_ = static_cast<SubgroupId>(count - 1);
  center_ = cyclic_[z()];
  for (int i = 0; i <= p; ++i) {
    const std::array<Elem, 2> gens{z(), u(i)};
    maximal_.push_back(generated(gens));
  }

  conj_sub_.resize(static_cast<std::size_t>(n_) * count);
  meet_.resize(count * count);
  centralizer_.resize(count);
  for (std::size_t q = 0; q < count; ++q) {
    const Subgroup& sq = subgroups_[q];
    for (int x = 0; x < n_; ++x) {
      std::vector<Elem> image;
      image.reserve(sq.elements_.size());
      for (Elem g : sq.elements_) image.push_back(conj(static_cast<Elem>(x), g));
      std::sort(image.begin(), image.end());
      conj_sub_[static_cast<std::size_t>(x) * count + q] = lookup(image);
    }
    for (std::size_t r = 0; r < count; ++r) {
      std::vector<Elem> both;
      for (Elem g : sq.elements_) {
        if (subgroups_[r].contains(g)) both.push_back(g);
      }
      meet_[q * count + r] = lookup(both);
    }
    std::vector<Elem> cent;
    for (int x = 0; x < n_; ++x) {
      const Elem xe = static_cast<Elem>(x);
      bool commutes = true;
      for (Elem g : sq.generators_) {
        if (mul(xe, g) != mul(g, xe)) {
          commutes = false;
          break;
        }
      }
      if (commutes) cent.push_back(xe);
    }
    centralizer_[q] = lookup(cent);
  }

  if (p_ <= kTablePrimeLimit) {
    canon1_.assign(n_, 0);
    witness1_.assign(n_, 0);
    canon2_.assign(static_cast<std::size_t>(n_) * n_, 0);
    witness2_.assign(static_cast<std::size_t>(n_) * n_, 0);
    for (int h = 0; h < n_; ++h) {
      Elem best = kNoElem;
      Elem wit = 0;
      for (Elem yv : transversal_) {
        const Elem c = conj(yv, static_cast<Elem>(h));
        if (c < best) {
          best = c;
          wit = yv;
        }
      }
      canon1_[h] = best;
      witness1_[h] = wit;
    }
    for (int h1 = 0; h1 < n_; ++h1) {
      for (int h2 = 0; h2 < n_; ++h2) {
        std::uint32_t best = 0xFFFFFFFFu;
        Elem wit = 0;
        for (Elem yv : transversal_) {
          const std::uint32_t code = static_cast<std::uint32_t>(conj(yv, static_cast<Elem>(h1))) * n_ +
                                     conj(yv, static_cast<Elem>(h2));
          if (code < best) {
            best = code;
            wit = yv;
          }
        }
        canon2_[static_cast<std::size_t>(h1) * n_ + h2] = best;
        witness2_[static_cast<std::size_t>(h1) * n_ + h2] = wit;
      }
    }
  }
}

Elem ExtraspecialGroup::encode(int a, int b, int c) const {
  return static_cast<Elem>(mod(a, p_) + p_ * mod(b, p_) + p_ * p_ * mod(c, p_));
}

Elem ExtraspecialGroup::encode(const GroupElement& g) const {
  if (g.p != p_) throw PrimeMismatchError("element over p=" + std::to_string(g.p) + " in group over p=" + std::to_string(p_));
  return encode(g.a, g.b, g.c);
}

GroupElement ExtraspecialGroup::decode(Elem g) const {
  return {p_, g % p_, (g / p_) % p_, g / (p_ * p_)};
}

Elem ExtraspecialGroup::u(int i) const {
  if (i < 0 || i > p_) throw std::out_of_range("line index out of range: " + std::to_string(i));
  if (i == p_) return y();
  return encode(multiply(GroupElement::x(p_), power(GroupElement::y(p_), i)));
}

Elem ExtraspecialGroup::pow(Elem g, long k) const { return encode(power(decode(g), k)); }

int ExtraspecialGroup::line_of(Elem g) const {
  const auto [a, b] = frattini_vector(g);
  if (a == 0 && b == 0) return -1;
  if (a == 0) return p_;
  // b / a mod p
  int inv_a = 1;
  while ((inv_a * a) % p_ != 1) ++inv_a;
  return (b * inv_a) % p_;
}

std::array<int, 2> ExtraspecialGroup::frattini_vector(Elem g) const { return {g % p_, (g / p_) % p_}; }

std::vector<Elem> ExtraspecialGroup::closure(std::span<const Elem> gens) const {
  std::vector<std::uint8_t> in(n_, 0);
  std::vector<Elem> members{0};
  in[0] = 1;
  for (std::size_t k = 0; k < members.size(); ++k) {
    for (Elem g : gens) {
      const Elem h = mul(members[k], g);
      if (!in[h]) {
        in[h] = 1;
        members.push_back(h);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

SubgroupId ExtraspecialGroup::generated(std::span<const Elem> gens) const { return lookup(closure(gens)); }

SubgroupId ExtraspecialGroup::lookup(const std::vector<Elem>& sorted_elements) const {
  const auto it = index_.find(sorted_elements);
  if (it == index_.end()) throw InvalidSubgroupError("element set is not a subgroup of S");
  return it->second;
}

SubgroupId ExtraspecialGroup::register_subgroup(std::vector<Elem> sorted_elements) {
  Subgroup s;
  s.id_ = static_cast<SubgroupId>(subgroups_.size());
  s.elements_ = std::move(sorted_elements);
  int order = static_cast<int>(s.elements_.size());
  while (order > 1) {
    order /= p_;
    ++s.rank_;
  }
  s.member_.assign(n_, 0);
  for (Elem g : s.elements_) s.member_[g] = 1;
  std::vector<std::uint8_t> spanned(n_, 0);
  spanned[0] = 1;
  for (Elem g : s.elements_) {
    if (spanned[g]) continue;
    s.generators_.push_back(g);
    const std::vector<Elem> span = closure(s.generators_);
    for (Elem h : span) spanned[h] = 1;
  }
  for (Elem g : s.generators_) {
    for (Elem h : s.generators_) {
      if (mul(g, h) != mul(h, g)) s.abelian_ = false;
    }
  }
  s.coset_of_.assign(n_, -1);
  for (int g = 0; g < n_; ++g) {
    if (s.coset_of_[g] >= 0) continue;
    const int k = static_cast<int>(s.coset_reps_.size());
    s.coset_reps_.push_back(static_cast<Elem>(g));
    for (Elem q : s.elements_) s.coset_of_[mul(static_cast<Elem>(g), q)] = k;
  }
  index_.emplace(s.elements_, s.id_);
  subgroups_.push_back(std::move(s));
  return subgroups_.back().id_;
}

ExtraspecialGroup::TargetForm ExtraspecialGroup::target_form(std::span<const Elem> tuple) const {
  if (tuple.empty()) return {0, 0};
  if (tuple.size() > 2) throw std::invalid_argument("target_form supports at most two elements");
  if (!canon1_.empty()) {
    if (tuple.size() == 1) return {canon1_[tuple[0]], witness1_[tuple[0]]};
    const std::size_t at = static_cast<std::size_t>(tuple[0]) * n_ + tuple[1];
    return {canon2_[at], witness2_[at]};
  }
  TargetForm best{0xFFFFFFFFu, 0};
  for (Elem yv : transversal_) {
    std::uint32_t code = conj(yv, tuple[0]);
    if (tuple.size() == 2) code = code * static_cast<std::uint32_t>(n_) + conj(yv, tuple[1]);
    if (code < best.code) best = {code, yv};
  }
  return best;
}

std::vector<Elem> ExtraspecialGroup::decode_target(std::uint32_t code, int length) const {
  if (length == 0) return {};
  if (length == 1) return {static_cast<Elem>(code)};
  return {static_cast<Elem>(code / n_), static_cast<Elem>(code % n_)};
}

GroupMorphism GroupMorphism::from_table(const ExtraspecialGroup& group, SubgroupId source,
                                        std::vector<Elem> table) {
  GroupMorphism m;
  m.group_ = &group;
  m.source_ = source;
  std::vector<Elem> image;
  for (Elem g : group.subgroup(source).elements()) image.push_back(table[g]);
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
    throw InvalidMorphismError("assignment is not injective");
  }
  m.image_ = group.lookup(image);
  m.table_ = std::move(table);
  return m;
}

GroupMorphism GroupMorphism::from_generators(const ExtraspecialGroup& group, SubgroupId source,
                                             std::span<const Elem> gens, std::span<const Elem> images) {
  if (gens.size() != images.size()) throw InvalidMorphismError("generator and image counts differ");
  const Subgroup& src = group.subgroup(source);
  std::vector<Elem> table(group.order(), kNoElem);
  table[0] = 0;
  std::vector<Elem> reached{0};
  for (std::size_t k = 0; k < reached.size(); ++k) {
    const Elem a = reached[k];
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (!src.contains(gens[j])) throw InvalidMorphismError("generator outside the source subgroup");
      const Elem ag = group.mul(a, gens[j]);
      const Elem img = group.mul(table[a], images[j]);
      if (table[ag] == kNoElem) {
        table[ag] = img;
        reached.push_back(ag);
      } else if (table[ag] != img) {
        throw InvalidMorphismError("generator images violate a relation of the source");
      }
    }
  }
  if (reached.size() != src.elements().size()) {
    throw InvalidMorphismError("generators do not generate the source subgroup");
  }
  return from_table(group, source, std::move(table));
}

GroupMorphism GroupMorphism::from_images(const ExtraspecialGroup& group, SubgroupId source,
                                         std::span<const Elem> images) {
  return from_generators(group, source, group.subgroup(source).generators(), images);
}

GroupMorphism GroupMorphism::inclusion(const ExtraspecialGroup& group, SubgroupId source) {
  std::vector<Elem> table(group.order(), kNoElem);
  for (Elem g : group.subgroup(source).elements()) table[g] = g;
  return from_table(group, source, std::move(table));
}

GroupMorphism GroupMorphism::conjugation(const ExtraspecialGroup& group, Elem x, SubgroupId source) {
  std::vector<Elem> table(group.order(), kNoElem);
  for (Elem g : group.subgroup(source).elements()) table[g] = group.conj(x, g);
  return from_table(group, source, std::move(table));
}

Elem GroupMorphism::apply(Elem u) const {
  if (u >= table_.size() || table_[u] == kNoElem) throw std::out_of_range("element outside the morphism source");
  return table_[u];
}

std::vector<Elem> GroupMorphism::canonical_images() const {
  std::vector<Elem> out;
  for (Elem g : group_->subgroup(source_).generators()) out.push_back(table_[g]);
  return out;
}

bool GroupMorphism::is_inclusion() const {
  for (Elem g : group_->subgroup(source_).elements()) {
    if (table_[g] != g) return false;
  }
  return true;
}

GroupMorphism GroupMorphism::restrict_to(SubgroupId r) const {
  if (!group_->is_subgroup_of(r, source_)) throw InvalidSubgroupError("restriction target is not a subgroup of the source");
  std::vector<Elem> table(group_->order(), kNoElem);
  for (Elem g : group_->subgroup(r).elements()) table[g] = table_[g];
  return from_table(*group_, r, std::move(table));
}

GroupMorphism GroupMorphism::inverse() const {
  std::vector<Elem> table(group_->order(), kNoElem);
  for (Elem g : group_->subgroup(source_).elements()) table[table_[g]] = g;
  return from_table(*group_, image_, std::move(table));
}

GroupMorphism compose(const GroupMorphism& outer, const GroupMorphism& inner) {
  const ExtraspecialGroup& group = inner.group();
  if (!group.is_subgroup_of(inner.image(), outer.source())) {
    throw InvalidMorphismError("composition: image of the inner map is not inside the outer source");
  }
  std::vector<Elem> table(group.order(), kNoElem);
  for (Elem g : group.subgroup(inner.source()).elements()) table[g] = outer(inner(g));
  return GroupMorphism::from_table(group, inner.source(), std::move(table));
}

GroupMorphism conjugation_morphism(const ExtraspecialGroup& group, Elem x, SubgroupId source) {
  return GroupMorphism::conjugation(group, x, source);
}

bool is_homomorphism_exhaustive(const ExtraspecialGroup& group, SubgroupId source, std::span<const Elem> table) {
  const auto& elems = group.subgroup(source).elements();
  for (Elem a : elems) {
    for (Elem b : elems) {
      if (table[group.mul(a, b)] != group.mul(table[a], table[b])) return false;
    }
  }
  return true;
}

}  // namespace fusionbiset
