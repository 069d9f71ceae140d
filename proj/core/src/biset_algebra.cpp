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

#include "fusionbiset/biset_algebra.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace fusionbiset {
namespace {

template <class T>
T parse_scalar(const std::string& text);

template <>
std::int64_t parse_scalar<std::int64_t>(const std::string& text) {
  const Rational q = parse_fraction(text);
  if (!is_integer(q)) throw std::invalid_argument("non-integer multiplicity " + text);
  return static_cast<std::int64_t>(boost::multiprecision::numerator(q));
}

template <>
Rational parse_scalar<Rational>(const std::string& text) {
  return parse_fraction(text);
}

bool is_nonnegative_integer(std::int64_t v) { return v >= 0; }
bool is_nonnegative_integer(const Rational& v) { return v >= 0 && is_integer(v); }

std::string scalar_string(std::int64_t v) { return to_fraction_string(v); }
std::string scalar_string(const Rational& v) { return to_fraction_string(v); }

// Labels every pair (s, t) in S x S by its left coset (s, t) Delta_Q^phi.
std::vector<int> coset_labels(const GroupMorphism& phi, int* count) {
  const ExtraspecialGroup& g = phi.group();
  const int n = g.order();
  std::vector<int> label(static_cast<std::size_t>(n) * n, -1);
  const auto& q = g.subgroup(phi.source()).elements();
  int next = 0;
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (label[static_cast<std::size_t>(s) * n + t] >= 0) continue;
      for (Elem u : q) {
        const Elem su = g.mul(static_cast<Elem>(s), u);
        const Elem tu = g.mul(static_cast<Elem>(t), phi(u));
        label[static_cast<std::size_t>(su) * n + tu] = next;
      }
      ++next;
    }
  }
  *count = next;
  return label;
}

}  // namespace

std::string to_string(const ClassKey& key) {
  std::ostringstream out;
  out << "Q" << key.source << ":" << key.target;
  return out.str();
}

CanonicalForm canonical_form(const ExtraspecialGroup& group, SubgroupId q, const std::function<Elem(Elem)>& theta,
                             SubgroupId ambient) {
  const Subgroup& amb = group.subgroup(ambient);
  if (!group.is_subgroup_of(q, ambient)) throw InvalidSubgroupError("source is not inside the ambient group");
  static const std::vector<Elem> kIdentityOnly{0};
  const std::vector<Elem>& xs = amb.is_abelian() ? kIdentityOnly : group.central_transversal();
  if (!amb.is_abelian() && ambient != group.whole()) throw InvalidSubgroupError("unsupported ambient subgroup");
  CanonicalForm best;
  bool have = false;
  std::array<Elem, 2> images{};
  for (Elem x : xs) {
    const SubgroupId qx = group.conjugate(x, q);
    const auto& gens = group.subgroup(qx).generators();
    const Elem xinv = group.inv(x);
    for (std::size_t k = 0; k < gens.size(); ++k) images[k] = theta(group.conj(xinv, gens[k]));
    const auto tf = group.target_form(std::span<const Elem>(images.data(), gens.size()));
    const ClassKey key{qx, tf.code};
    if (!have || key < best.key) {
      best = {key, x, tf.witness};
      have = true;
    }
  }
  return best;
}

CanonicalForm canonical_form(const GroupMorphism& theta, SubgroupId ambient) {
  return canonical_form(
      theta.group(), theta.source(), [&theta](Elem u) { return theta(u); }, ambient);
}

CanonicalForm canonical_form(const GroupMorphism& theta) { return canonical_form(theta, theta.group().whole()); }

GroupMorphism representative_of(const ExtraspecialGroup& group, const ClassKey& key) {
  const int length = static_cast<int>(group.subgroup(key.source).generators().size());
  const std::vector<Elem> images = group.decode_target(key.target, length);
  return GroupMorphism::from_images(group, key.source, images);
}

BisetClass::BisetClass(const GroupMorphism& any_representative) {
  key_ = canonical_form(any_representative).key;
  rep_ = std::make_shared<const GroupMorphism>(representative_of(any_representative.group(), key_));
}

BisetClass BisetClass::from_key(const ExtraspecialGroup& group, const ClassKey& key) {
  BisetClass c;
  c.key_ = key;
  c.rep_ = std::make_shared<const GroupMorphism>(representative_of(group, key));
  if (canonical_form(*c.rep_).key != key) throw std::invalid_argument("key is not in canonical form");
  return c;
}

int BisetClass::layer() const { return rep_->group().subgroup(key_.source).layer(); }

int BisetClass::index() const {
  const ExtraspecialGroup& g = rep_->group();
  return g.order() / g.subgroup(key_.source).order();
}

template <class T>
void FormalBiset<T>::add(const BisetClass& cls, const T& coeff) {
  if (coeff == T(0)) return;
  auto it = terms_.find(cls.key());
  if (it == terms_.end()) {
    terms_.emplace(cls.key(), BisetTerm<T>{cls, coeff});
    return;
  }
  it->second.coeff += coeff;
  if (it->second.coeff == T(0)) terms_.erase(it);
}

template <class T>
void FormalBiset<T>::set(const BisetClass& cls, const T& coeff) {
  terms_.erase(cls.key());
  add(cls, coeff);
}

template <class T>
T FormalBiset<T>::coefficient(const ClassKey& key) const {
  const auto it = terms_.find(key);
  return it == terms_.end() ? T(0) : it->second.coeff;
}

template <class T>
FormalBiset<T> FormalBiset<T>::layer(int r) const {
  FormalBiset out(group_);
  for (const auto& [key, term] : terms_) {
    if (term.cls.layer() == r) out.terms_.emplace(key, term);
  }
  return out;
}

template <class T>
FormalBiset<T> FormalBiset<T>::truncate(int r) const {
  FormalBiset out(group_);
  for (const auto& [key, term] : terms_) {
    if (term.cls.layer() <= r) out.terms_.emplace(key, term);
  }
  return out;
}

template <class T>
T FormalBiset<T>::layer_count(int r) const {
  T total(0);
  for (const auto& [key, term] : terms_) {
    if (term.cls.layer() == r) total += term.coeff;
  }
  return total;
}

template <class T>
T FormalBiset<T>::size_ratio() const {
  T total(0);
  for (const auto& [key, term] : terms_) total += term.coeff * T(term.cls.index());
  return total;
}

template <class T>
bool FormalBiset<T>::is_genuine() const {
  for (const auto& [key, term] : terms_) {
    if (!is_nonnegative_integer(term.coeff)) return false;
  }
  return true;
}

template <class T>
FormalBiset<T>& FormalBiset<T>::operator+=(const FormalBiset& o) {
  if (!group_) group_ = o.group_;
  for (const auto& [key, term] : o.terms_) add(term.cls, term.coeff);
  return *this;
}

template <class T>
FormalBiset<T> FormalBiset<T>::operator+(const FormalBiset& o) const {
  FormalBiset out = *this;
  out += o;
  return out;
}

template <class T>
FormalBiset<T> FormalBiset<T>::operator-(const FormalBiset& o) const {
  FormalBiset out = *this;
  for (const auto& [key, term] : o.terms_) out.add(term.cls, -term.coeff);
  return out;
}

template <class T>
FormalBiset<T> FormalBiset<T>::scaled(const T& factor) const {
  FormalBiset out(group_);
  for (const auto& [key, term] : terms_) out.add(term.cls, term.coeff * factor);
  return out;
}

template class FormalBiset<std::int64_t>;
template class FormalBiset<Rational>;

std::vector<Elem> n_set(const GroupMorphism& psi, const GroupMorphism& phi) {
  const ExtraspecialGroup& g = psi.group();
  const Subgroup& q = g.subgroup(phi.source());
  const auto& gens = g.subgroup(psi.source()).generators();
  std::array<Elem, 2> images{};
  std::array<Elem, 2> mapped{};
  for (std::size_t k = 0; k < gens.size(); ++k) images[k] = psi(gens[k]);
  const std::uint32_t target = g.target_form(std::span<const Elem>(images.data(), gens.size())).code;
  std::vector<Elem> out;
  for (Elem x : g.central_transversal()) {
    bool inside = true;
    for (std::size_t k = 0; k < gens.size() && inside; ++k) {
      const Elem c = g.conj(x, gens[k]);
      if (!q.contains(c)) inside = false;
      else mapped[k] = phi(c);
    }
    if (!inside) continue;
    if (g.target_form(std::span<const Elem>(mapped.data(), gens.size())).code != target) continue;
    Elem w = x;
    for (int k = 0; k < g.prime(); ++k) {
      out.push_back(w);
      w = g.mul(w, g.z());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> n_set_brute_force(const GroupMorphism& psi, const GroupMorphism& phi) {
  const ExtraspecialGroup& g = psi.group();
  const int n = g.order();
  const Subgroup& q = g.subgroup(phi.source());
  const auto& r = g.subgroup(psi.source()).elements();
  std::vector<Elem> out;
  for (int xi = 0; xi < n; ++xi) {
    const Elem x = static_cast<Elem>(xi);
    bool inside = true;
    for (Elem u : r) {
      if (!q.contains(g.conj(x, u))) {
        inside = false;
        break;
      }
    }
    if (!inside) continue;
    for (int yi = 0; yi < n; ++yi) {
      const Elem y = static_cast<Elem>(yi);
      bool equal = true;
      for (Elem u : r) {
        if (phi(g.conj(x, u)) != g.conj(y, psi(u))) {
          equal = false;
          break;
        }
      }
      if (equal) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

bool is_subconjugate(const GroupMorphism& psi, const GroupMorphism& phi) { return !n_set(psi, phi).empty(); }

bool are_conjugate(const GroupMorphism& a, const GroupMorphism& b) {
  const ExtraspecialGroup& g = a.group();
  if (g.subgroup(a.source()).order() != g.subgroup(b.source()).order()) return false;
  return is_subconjugate(a, b) && is_subconjugate(b, a);
}

bool has_larger_n_set(const GroupMorphism& phi) {
  return n_set(phi, phi).size() > phi.group().subgroup(phi.source()).elements().size();
}

std::int64_t count_fixed_points(const BisetClass& cls, const GraphSubgroup& by) {
  const GroupMorphism& phi = cls.rep();
  const ExtraspecialGroup& g = phi.group();
  const Subgroup& q = g.subgroup(phi.source());
  const Subgroup& r = g.subgroup(by.source());
  if (r.order() > q.order()) return 0;
  const auto& gens = r.generators();
  std::array<Elem, 2> images{};
  std::array<Elem, 2> mapped{};
  for (std::size_t k = 0; k < gens.size(); ++k) images[k] = by(gens[k]);
  const std::uint32_t target = g.target_form(std::span<const Elem>(images.data(), gens.size())).code;
  std::int64_t hits = 0;
  for (Elem x : g.central_transversal()) {
    bool inside = true;
    for (std::size_t k = 0; k < gens.size() && inside; ++k) {
      const Elem c = g.conj(x, gens[k]);
      if (!q.contains(c)) inside = false;
      else mapped[k] = phi(c);
    }
    if (inside && g.target_form(std::span<const Elem>(mapped.data(), gens.size())).code == target) ++hits;
  }
  const std::int64_t n_order = hits * g.prime();
  if (n_order % q.order() != 0) throw InternalConsistencyError("transporter set is not a union of Q-cosets");
  const std::int64_t cent = g.subgroup(g.centralizer(by.image())).order();
  return n_order / q.order() * cent;
}

std::int64_t brute_force_fixed_points(const BisetClass& cls, const GraphSubgroup& by) {
  const GroupMorphism& phi = cls.rep();
  const ExtraspecialGroup& g = phi.group();
  const int n = g.order();
  int count = 0;
  const std::vector<int> label = coset_labels(phi, &count);
  std::vector<std::uint8_t> done(count, 0);
  const auto& gens = g.subgroup(by.source()).generators();
  std::int64_t fixed = 0;
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      const int c = label[static_cast<std::size_t>(s) * n + t];
      if (done[c]) continue;
      done[c] = 1;
      bool is_fixed = true;
      for (Elem r : gens) {
        const Elem s2 = g.mul(r, static_cast<Elem>(s));
        const Elem t2 = g.mul(by(r), static_cast<Elem>(t));
        if (label[static_cast<std::size_t>(s2) * n + t2] != c) {
          is_fixed = false;
          break;
        }
      }
      if (is_fixed) ++fixed;
    }
  }
  return fixed;
}

template <class T>
T mark(const FormalBiset<T>& b, const GraphSubgroup& by) {
  const int layer = b.group().subgroup(by.source()).layer();
  T total(0);
  for (const auto& [key, term] : b.terms()) {
    if (term.cls.layer() > layer) continue;
    const std::int64_t fp = count_fixed_points(term.cls, by);
    if (fp != 0) total += term.coeff * T(fp);
  }
  return total;
}

template <class T>
MarkVector<T> mark_vector(const FormalBiset<T>& b) {
  MarkVector<T> out;
  if (b.empty()) return out;
  const ExtraspecialGroup& g = b.group();
  std::map<ClassKey, GroupMorphism> classes;
  for (const auto& [key, term] : b.terms()) {
    const GroupMorphism& phi = term.cls.rep();
    for (const Subgroup& sub : g.subgroups()) {
      if (!g.is_subgroup_of(sub.id(), phi.source())) continue;
      const GroupMorphism restricted = phi.restrict_to(sub.id());
      const ClassKey k = canonical_form(restricted).key;
      if (!classes.count(k)) classes.emplace(k, representative_of(g, k));
    }
  }
  for (const auto& [key, rep] : classes) out.emplace(key, mark(b, rep));
  return out;
}

template <class T>
FormalBiset<T> opposite(const FormalBiset<T>& b) {
  FormalBiset<T> out(b.shared_group());
  for (const auto& [key, term] : b.terms()) out.add(BisetClass(term.cls.rep().inverse()), term.coeff);
  return out;
}

std::vector<RestrictionPiece> restrict_left(const BisetClass& cls, const GroupMorphism& psi) {
  const GroupMorphism& phi = cls.rep();
  const ExtraspecialGroup& g = phi.group();
  const Subgroup& q = g.subgroup(phi.source());
  const Subgroup& r = g.subgroup(psi.source());
  std::vector<std::uint8_t> seen(q.coset_count(), 0);
  std::vector<RestrictionPiece> pieces;
  for (int k = 0; k < q.coset_count(); ++k) {
    if (seen[k]) continue;
    RestrictionPiece piece;
    piece.rep = q.coset_rep(k);
    const Elem t = piece.rep;
    const Elem tinv = g.inv(t);
    std::vector<Elem> stabilizer;
    for (Elem v : r.elements()) {
      const Elem pv = psi(v);
      const int c = q.left_coset_of(g.mul(pv, t));
      if (!seen[c]) {
        seen[c] = 1;
        piece.cosets.push_back(c);
        piece.multipliers.push_back(v);
      }
      if (q.contains(g.conj(tinv, pv))) stabilizer.push_back(v);
    }
    const SubgroupId source = g.lookup(stabilizer);
    std::vector<Elem> table(g.order(), kNoElem);
    for (Elem v : stabilizer) table[v] = phi(g.conj(tinv, psi(v)));
    const auto& gens = g.subgroup(source).generators();
    std::vector<Elem> images;
    for (Elem v : gens) images.push_back(table[v]);
    piece.map = GroupMorphism::from_generators(g, source, gens, images);
    piece.form = canonical_form(piece.map, psi.source());
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

std::map<ClassKey, std::int64_t> restriction_classes(const BisetClass& cls, const GroupMorphism& psi) {
  std::map<ClassKey, std::int64_t> out;
  for (const RestrictionPiece& piece : restrict_left(cls, psi)) ++out[piece.form.key];
  return out;
}

std::map<ClassKey, std::int64_t> restriction_classes_brute_force(const BisetClass& cls, const GroupMorphism& psi) {
  const GroupMorphism& phi = cls.rep();
  const ExtraspecialGroup& g = phi.group();
  const int n = g.order();
  int count = 0;
  const std::vector<int> label = coset_labels(phi, &count);
  std::vector<std::pair<Elem, Elem>> point_rep(count, {kNoElem, kNoElem});
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      auto& rep = point_rep[label[static_cast<std::size_t>(s) * n + t]];
      if (rep.first == kNoElem) rep = {static_cast<Elem>(s), static_cast<Elem>(t)};
    }
  }
  const auto& r = g.subgroup(psi.source()).elements();
  std::vector<std::uint8_t> seen(count, 0);
  std::map<ClassKey, std::int64_t> out;
  for (int c = 0; c < count; ++c) {
    if (seen[c]) continue;
    const auto [s, t] = point_rep[c];
    // Orbit under (r, w) : (s, t) -> (psi(r) s, w t).
    std::vector<int> stack{c};
    seen[c] = 1;
    while (!stack.empty()) {
      const int d = stack.back();
      stack.pop_back();
      const auto [s1, t1] = point_rep[d];
      for (Elem v : r) {
        for (int w = 0; w < n; ++w) {
          const int e = label[static_cast<std::size_t>(g.mul(psi(v), s1)) * n + g.mul(static_cast<Elem>(w), t1)];
          if (!seen[e]) {
            seen[e] = 1;
            stack.push_back(e);
          }
        }
      }
    }
    std::vector<Elem> source;
    std::vector<Elem> table(n, kNoElem);
    for (Elem v : r) {
      for (int w = 0; w < n; ++w) {
        if (label[static_cast<std::size_t>(g.mul(psi(v), s)) * n + g.mul(static_cast<Elem>(w), t)] == c) {
          source.push_back(v);
          table[v] = static_cast<Elem>(w);
        }
      }
    }
    const SubgroupId sid = g.lookup(source);
    const auto& gens = g.subgroup(sid).generators();
    std::vector<Elem> images;
    for (Elem v : gens) images.push_back(table[v]);
    const GroupMorphism theta = GroupMorphism::from_generators(g, sid, gens, images);
    ++out[canonical_form(theta, psi.source()).key];
  }
  return out;
}

std::string describe(const FClassLabel& label) {
  std::ostringstream out;
  switch (label.layer) {
    case 0:
      out << "[S, alpha#" << label.out_index << "]";
      break;
    case 1:
      out << "[V" << label.i << " -> V" << label.j << ", " << (label.extendable ? "psi" : "phi") << "^{" << label.k
          << "," << label.l << "}]";
      break;
    case 2:
      out << "[" << (label.source_kind == Layer2Source::kZ ? std::string("z") : "u" + std::to_string(label.i))
          << " -> " << (label.target_kind == Layer2Target::kZ ? std::string("z") : "u" + std::to_string(label.j))
          << "^" << label.m << "]";
      break;
    default:
      out << "[1, 1]";
  }
  return out.str();
}

FClassCatalog::FClassCatalog(std::shared_ptr<const FusionSystem> system) : system_(std::move(system)) {
  const FusionSystem& fs = *system_;
  const ExtraspecialGroup& g = fs.group();
  const int p = fs.prime();
  by_layer_.assign(4, {});
  auto push = [&](const GroupMorphism& m, const FClassLabel& label) {
    FClass fc{BisetClass(m), label};
    if (index_.count(fc.cls.key())) {
      throw InternalConsistencyError("two F-class representatives are S-S-conjugate: " + describe(label) + " and " +
                                     describe(classes_[index_[fc.cls.key()]].label));
    }
    const int idx = static_cast<int>(classes_.size());
    index_.emplace(fc.cls.key(), idx);
    by_layer_[label.layer].push_back(idx);
    classes_.push_back(std::move(fc));
  };

  for (int k = 0; k < fs.out_order(); ++k) {
    FClassLabel label;
    label.out_index = k;
    push(fs.out_lifts()[k], label);
  }
  for (int i = 0; i <= p; ++i) {
    const LambdaSets lam = lambda_sets(fs.spec(), i);
    for (int j = 0; j <= p; ++j) {
      if (!fs.conjugate_lines(i, j)) continue;
      for (bool ext : {true, false}) {
        for (const auto& [k, l] : ext ? lam.extendable : lam.nonextendable) {
          FClassLabel label;
          label.layer = 1;
          label.i = i;
          label.j = j;
          label.k = k;
          label.l = l;
          label.extendable = ext;
          push((ext ? fs.psi(i, j, k, l) : fs.phi(i, j, k, l)).map, label);
        }
      }
    }
  }
  for (int src = -1; src <= p; ++src) {
    const Elem xi = src < 0 ? g.z() : fs.normalized_u(src);
    for (int tgt = -1; tgt <= p; ++tgt) {
      const Elem base = tgt < 0 ? g.z() : fs.normalized_u(tgt);
      for (int m = 1; m < p; ++m) {
        FClassLabel label;
        label.layer = 2;
        label.source_kind = src < 0 ? Layer2Source::kZ : Layer2Source::kU;
        label.target_kind = tgt < 0 ? Layer2Target::kZ : Layer2Target::kU;
        label.i = src;
        label.j = tgt;
        label.m = m;
        const std::array<Elem, 1> gens{xi};
        const std::array<Elem, 1> images{g.pow(base, m)};
        push(GroupMorphism::from_generators(g, g.cyclic(xi), gens, images), label);
      }
    }
  }
  {
    FClassLabel label;
    label.layer = 3;
    push(GroupMorphism::inclusion(g, g.trivial()), label);
  }

  source_identity_.resize(classes_.size());
  image_identity_.resize(classes_.size());
  for (std::size_t k = 0; k < classes_.size(); ++k) {
    const GroupMorphism& rep = classes_[k].cls.rep();
    const auto src = find(canonical_form(GroupMorphism::inclusion(g, rep.source())).key);
    const auto img = find(canonical_form(GroupMorphism::inclusion(g, rep.image())).key);
    if (!src || !img) throw InternalConsistencyError("identity class missing from the F-class catalog");
    source_identity_[k] = *src;
    image_identity_[k] = *img;
  }
}

std::optional<int> FClassCatalog::find(const ClassKey& key) const {
  const auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const FClass& FClassCatalog::at(const ClassKey& key) const {
  const auto idx = find(key);
  if (!idx) throw std::out_of_range("not an F-class: " + to_string(key));
  return classes_[*idx];
}

int FClassCatalog::identity_class_of_source(int index) const { return source_identity_.at(index); }
int FClassCatalog::identity_class_of_image(int index) const { return image_identity_.at(index); }

template <class T>
void check_support(const FClassCatalog& catalog, const FormalBiset<T>& b) {
  for (const auto& [key, term] : b.terms()) {
    if (!catalog.contains(key)) {
      throw SupportError("support class " + to_string(key) + " is not the class of an F-morphism");
    }
  }
}

namespace {

template <class T>
StabilityReport check_stability(const FClassCatalog& catalog, const FormalBiset<T>& b, int max_layer, bool left) {
  check_support(catalog, b);
  StabilityReport report;
  std::map<int, T> identity_marks;
  for (int r = 0; r <= std::min(max_layer, 3); ++r) {
    for (int idx : catalog.layer_members(r)) {
      const FClass& fc = catalog.classes()[idx];
      const int id_idx = left ? catalog.identity_class_of_image(idx) : catalog.identity_class_of_source(idx);
      auto it = identity_marks.find(id_idx);
      if (it == identity_marks.end()) {
        it = identity_marks.emplace(id_idx, mark(b, catalog.classes()[id_idx].cls.rep())).first;
      }
      const T lhs = mark(b, fc.cls.rep());
      ++report.checked;
      if (lhs != it->second && report.stable) {
        report.stable = false;
        report.witness = fc.cls.key();
        report.witness_description = describe(fc.label);
        report.lhs = scalar_string(lhs);
        report.rhs = scalar_string(it->second);
      }
    }
  }
  return report;
}

}  // namespace

template <class T>
StabilityReport check_left_stability(const FClassCatalog& catalog, const FormalBiset<T>& b, int max_layer) {
  return check_stability(catalog, b, max_layer, true);
}

template <class T>
StabilityReport check_right_stability(const FClassCatalog& catalog, const FormalBiset<T>& b, int max_layer) {
  return check_stability(catalog, b, max_layer, false);
}

nlohmann::json element_to_json(const ExtraspecialGroup& group, Elem g) {
  const GroupElement e = group.decode(g);
  return nlohmann::json::array({e.a, e.b, e.c});
}

Elem element_from_json(const ExtraspecialGroup& group, const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("element must be [a, b, c]");
  return group.encode(j[0].get<int>(), j[1].get<int>(), j[2].get<int>());
}

template <class T>
nlohmann::json biset_to_json(const FormalBiset<T>& b, const std::string& system_name) {
  const ExtraspecialGroup& g = b.group();
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [key, term] : b.terms()) {
    nlohmann::json src = nlohmann::json::array();
    nlohmann::json img = nlohmann::json::array();
    for (Elem u : g.subgroup(term.cls.source()).generators()) {
      src.push_back(element_to_json(g, u));
      img.push_back(element_to_json(g, term.cls.rep()(u)));
    }
    terms.push_back({{"source_generators", src}, {"image_generators", img}, {"multiplicity", scalar_string(term.coeff)}});
  }
  return {{"prime", g.prime()}, {"system", system_name}, {"terms", terms}};
}

template <class T>
FormalBiset<T> biset_from_json(const nlohmann::json& j, std::shared_ptr<const ExtraspecialGroup> group) {
  if (j.at("prime").get<int>() != group->prime()) throw PrimeMismatchError("biset prime differs from the group prime");
  FormalBiset<T> out(group);
  for (const auto& term : j.at("terms")) {
    std::vector<Elem> gens;
    std::vector<Elem> images;
    for (const auto& e : term.at("source_generators")) gens.push_back(element_from_json(*group, e));
    for (const auto& e : term.at("image_generators")) images.push_back(element_from_json(*group, e));
    const SubgroupId source = group->generated(gens);
    const GroupMorphism m = GroupMorphism::from_generators(*group, source, gens, images);
    out.add(BisetClass(m), parse_scalar<T>(term.at("multiplicity").get<std::string>()));
  }
  return out;
}

#define FUSIONBISET_INSTANTIATE(T)                                                                        \
  template T mark<T>(const FormalBiset<T>&, const GraphSubgroup&);                                       \
  template MarkVector<T> mark_vector<T>(const FormalBiset<T>&);                                          \
  template FormalBiset<T> opposite<T>(const FormalBiset<T>&);                                            \
  template void check_support<T>(const FClassCatalog&, const FormalBiset<T>&);                           \
  template StabilityReport check_left_stability<T>(const FClassCatalog&, const FormalBiset<T>&, int);    \
  template StabilityReport check_right_stability<T>(const FClassCatalog&, const FormalBiset<T>&, int);   \
  template nlohmann::json biset_to_json<T>(const FormalBiset<T>&, const std::string&);                   \
  template FormalBiset<T> biset_from_json<T>(const nlohmann::json&, std::shared_ptr<const ExtraspecialGroup>);

FUSIONBISET_INSTANTIATE(std::int64_t)
FUSIONBISET_INSTANTIATE(Rational)

#undef FUSIONBISET_INSTANTIATE

}  // namespace fusionbiset
