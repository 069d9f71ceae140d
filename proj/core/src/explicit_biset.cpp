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

#include "fusionbiset/explicit_biset.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace fusionbiset {

ExplicitBiset::ExplicitBiset(std::shared_ptr<const ExtraspecialGroup> group, int size, std::vector<int> left,
                             std::vector<int> right)
    : group_(std::move(group)), size_(size), left_(std::move(left)), right_(std::move(right)) {
  const std::size_t expected = static_cast<std::size_t>(group_->order()) * size_;
  if (left_.size() != expected || right_.size() != expected) throw std::invalid_argument("action table size mismatch");
}

ExplicitBiset ExplicitBiset::transitive(std::shared_ptr<const ExtraspecialGroup> group, const GroupMorphism& phi) {
  const ExtraspecialGroup& g = *group;
  const int n = g.order();
  std::vector<int> label(static_cast<std::size_t>(n) * n, -1);
  std::vector<std::pair<Elem, Elem>> reps;
  const auto& q = g.subgroup(phi.source()).elements();
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (label[static_cast<std::size_t>(s) * n + t] >= 0) continue;
      const int id = static_cast<int>(reps.size());
      reps.push_back({static_cast<Elem>(s), static_cast<Elem>(t)});
      for (Elem u : q) {
        label[static_cast<std::size_t>(g.mul(static_cast<Elem>(s), u)) * n + g.mul(static_cast<Elem>(t), phi(u))] = id;
      }
    }
  }
  const int size = static_cast<int>(reps.size());
  std::vector<int> left(static_cast<std::size_t>(n) * size);
  std::vector<int> right(static_cast<std::size_t>(n) * size);
  for (int x = 0; x < size; ++x) {
    const auto [s, t] = reps[x];
    for (int u = 0; u < n; ++u) {
      const Elem ue = static_cast<Elem>(u);
      left[static_cast<std::size_t>(u) * size + x] = label[static_cast<std::size_t>(g.mul(ue, s)) * n + t];
      right[static_cast<std::size_t>(u) * size + x] = label[static_cast<std::size_t>(s) * n + g.mul(g.inv(ue), t)];
    }
  }
  return ExplicitBiset(std::move(group), size, std::move(left), std::move(right));
}

ExplicitBiset ExplicitBiset::disjoint_union(const ExplicitBiset& a, const ExplicitBiset& b) {
  const int n = a.group().order();
  const int size = a.size_ + b.size_;
  std::vector<int> left(static_cast<std::size_t>(n) * size);
  std::vector<int> right(static_cast<std::size_t>(n) * size);
  for (int u = 0; u < n; ++u) {
    for (int x = 0; x < a.size_; ++x) {
      left[static_cast<std::size_t>(u) * size + x] = a.left(static_cast<Elem>(u), x);
      right[static_cast<std::size_t>(u) * size + x] = a.right(x, static_cast<Elem>(u));
    }
    for (int x = 0; x < b.size_; ++x) {
      left[static_cast<std::size_t>(u) * size + a.size_ + x] = a.size_ + b.left(static_cast<Elem>(u), x);
      right[static_cast<std::size_t>(u) * size + a.size_ + x] = a.size_ + b.right(x, static_cast<Elem>(u));
    }
  }
  return ExplicitBiset(a.group_, size, std::move(left), std::move(right));
}

ExplicitBiset ExplicitBiset::from_formal(const IntBiset& b, std::size_t max_points) {
  if (!b.is_genuine()) throw std::invalid_argument("explicit realization needs nonnegative integer coefficients");
  const auto group = b.shared_group();
  std::size_t total = 0;
  for (const auto& [key, term] : b.terms()) {
    total += static_cast<std::size_t>(term.coeff) * term.cls.index() * group->order();
  }
  if (total > max_points) throw ResourceLimitError("explicit biset would have " + std::to_string(total) + " points");
  ExplicitBiset out(group, 0, {}, {});
  for (const auto& [key, term] : b.terms()) {
    const ExplicitBiset piece = transitive(group, term.cls.rep());
    for (std::int64_t c = 0; c < term.coeff; ++c) out = disjoint_union(out, piece);
  }
  return out;
}

bool ExplicitBiset::left_free() const {
  for (int u = 1; u < group_->order(); ++u) {
    for (int x = 0; x < size_; ++x) {
      if (left(static_cast<Elem>(u), x) == x) return false;
    }
  }
  return true;
}

bool ExplicitBiset::right_free() const {
  for (int u = 1; u < group_->order(); ++u) {
    for (int x = 0; x < size_; ++x) {
      if (right(x, static_cast<Elem>(u)) == x) return false;
    }
  }
  return true;
}

std::int64_t ExplicitBiset::fixed_points(const GraphSubgroup& by) const {
  const auto& gens = group_->subgroup(by.source()).generators();
  std::int64_t count = 0;
  for (int x = 0; x < size_; ++x) {
    bool fixed = true;
    for (Elem r : gens) {
      if (left(r, x) != right(x, by(r))) {
        fixed = false;
        break;
      }
    }
    if (fixed) ++count;
  }
  return count;
}

ExplicitBiset explicit_product(const ExplicitBiset& a, const ExplicitBiset& b, std::size_t max_points) {
  const ExtraspecialGroup& g = a.group();
  const int n = g.order();
  const std::size_t pairs = static_cast<std::size_t>(a.size()) * b.size();
  if (pairs > max_points) throw ResourceLimitError("product needs " + std::to_string(pairs) + " pairs");
  if (!a.right_free()) throw std::invalid_argument("product needs a free right action on the first factor");
  std::vector<int> label(pairs, -1);
  std::vector<std::pair<int, int>> reps;
  for (int x = 0; x < a.size(); ++x) {
    for (int y = 0; y < b.size(); ++y) {
      if (label[static_cast<std::size_t>(x) * b.size() + y] >= 0) continue;
      const int id = static_cast<int>(reps.size());
      reps.push_back({x, y});
      for (int u = 0; u < n; ++u) {
        const Elem ue = static_cast<Elem>(u);
        label[static_cast<std::size_t>(a.right(x, ue)) * b.size() + b.left(g.inv(ue), y)] = id;
      }
    }
  }
  const int size = static_cast<int>(reps.size());
  std::vector<int> left(static_cast<std::size_t>(n) * size);
  std::vector<int> right(static_cast<std::size_t>(n) * size);
  for (int k = 0; k < size; ++k) {
    const auto [x, y] = reps[k];
    for (int u = 0; u < n; ++u) {
      const Elem ue = static_cast<Elem>(u);
      left[static_cast<std::size_t>(u) * size + k] = label[static_cast<std::size_t>(a.left(ue, x)) * b.size() + y];
      right[static_cast<std::size_t>(u) * size + k] = label[static_cast<std::size_t>(x) * b.size() + b.right(y, ue)];
    }
  }
  return ExplicitBiset(a.shared_group(), size, std::move(left), std::move(right));
}

std::vector<BisetClass> all_free_classes(const ExtraspecialGroup& g) {
  const int p = g.prime();
  std::map<ClassKey, BisetClass> found;
  auto add = [&](const GroupMorphism& m) {
    BisetClass c(m);
    found.emplace(c.key(), c);
  };
  for (const MatrixGL2& m : general_linear_group(p)) add(lift_matrix_to_aut(g, m));
  // U-U double coset representatives: diagonal and antidiagonal matrices
  // in the bases (z, u_i) -> (z, u_j).
  for (int i = 0; i <= p; ++i) {
    const std::array<Elem, 2> gens{g.z(), g.u(i)};
    for (int j = 0; j <= p; ++j) {
      for (int a = 1; a < p; ++a) {
        for (int d = 1; d < p; ++d) {
          const std::array<Elem, 2> diag{g.pow(g.z(), a), g.pow(g.u(j), d)};
          const std::array<Elem, 2> anti{g.pow(g.u(j), a), g.pow(g.z(), d)};
          add(GroupMorphism::from_generators(g, g.maximal(i), gens, diag));
          add(GroupMorphism::from_generators(g, g.maximal(i), gens, anti));
        }
      }
    }
  }
  std::vector<Elem> sources{g.z()};
  for (int i = 0; i <= p; ++i) sources.push_back(g.u(i));
  std::vector<Elem> targets;
  for (int m = 1; m < p; ++m) {
    targets.push_back(g.pow(g.z(), m));
    for (int j = 0; j <= p; ++j) targets.push_back(g.pow(g.u(j), m));
  }
  for (Elem xi : sources) {
    for (Elem zeta : targets) {
      const std::array<Elem, 1> gens{xi};
      const std::array<Elem, 1> images{zeta};
      add(GroupMorphism::from_generators(g, g.cyclic(xi), gens, images));
    }
  }
  add(GroupMorphism::inclusion(g, g.trivial()));
  std::vector<BisetClass> out;
  for (auto& [key, cls] : found) out.push_back(cls);
  std::stable_sort(out.begin(), out.end(), [](const BisetClass& l, const BisetClass& r) { return l.layer() < r.layer(); });
  return out;
}

template <class T>
FormalBiset<T> solve_from_marks(std::shared_ptr<const ExtraspecialGroup> group, const MarkVector<T>& marks,
                                const std::vector<BisetClass>& classes) {
  FormalBiset<T> out(group);
  std::vector<std::pair<BisetClass, T>> solved;
  for (const BisetClass& h : classes) {
    const auto it = marks.find(h.key());
    T value = it == marks.end() ? T(0) : it->second;
    for (const auto& [k, c] : solved) {
      if (k.layer() < h.layer()) value -= c * T(count_fixed_points(k, h.rep()));
    }
    const T diag(count_fixed_points(h, h.rep()));
    if constexpr (std::is_integral_v<T>) {
      if (value % diag != 0) throw InternalConsistencyError("marks are not those of an integral biset");
    }
    const T coeff = value / diag;
    if (coeff != T(0)) {
      solved.push_back({h, coeff});
      out.add(h, coeff);
    }
  }
  return out;
}

template FormalBiset<std::int64_t> solve_from_marks(std::shared_ptr<const ExtraspecialGroup>,
                                                    const MarkVector<std::int64_t>&, const std::vector<BisetClass>&);
template FormalBiset<Rational> solve_from_marks(std::shared_ptr<const ExtraspecialGroup>, const MarkVector<Rational>&,
                                                const std::vector<BisetClass>&);

IntBiset decompose_by_marks(const ExplicitBiset& x) {
  if (!x.left_free() || !x.right_free()) throw std::invalid_argument("decomposition needs free left and right actions");
  const std::vector<BisetClass> classes = all_free_classes(x.group());
  MarkVector<std::int64_t> marks;
  for (const BisetClass& h : classes) {
    const std::int64_t m = x.fixed_points(h.rep());
    if (m != 0) marks.emplace(h.key(), m);
  }
  IntBiset out = solve_from_marks(x.shared_group(), marks, classes);
  if (!out.is_genuine()) throw InternalConsistencyError("decomposition produced a negative multiplicity");
  return out;
}

IntBiset compose(const IntBiset& a, const IntBiset& b, std::size_t max_points) {
  const ExplicitBiset xa = ExplicitBiset::from_formal(a, max_points);
  const ExplicitBiset xb = ExplicitBiset::from_formal(b, max_points);
  return decompose_by_marks(explicit_product(xa, xb, max_points));
}

}  // namespace fusionbiset
