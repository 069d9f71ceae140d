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

#include "fusionbiset/idempotent.hpp"

#include <algorithm>
#include <map>

#include "fusionbiset/errors.hpp"

namespace fusionbiset {

Rational omega_c0(const FusionSystem& fs) { return Rational(1, fs.out_order()); }

RationalBiset omega0(const FusionSystem& fs) {
  RationalBiset out(fs.shared_group());
  const Rational c0 = omega_c0(fs);
  for (const GroupMorphism& a : fs.out_lifts()) out.add(BisetClass(a), c0);
  return out;
}

Layer1Counts layer1_counts(const FClassCatalog& catalog, int line) {
  Layer1Counts c;
  for (int idx : catalog.layer_members(1)) {
    const FClassLabel& l = catalog.classes()[idx].label;
    if (l.i != line) continue;
    (l.extendable ? c.extendable : c.nonextendable) += 1;
  }
  return c;
}

RationalBiset omega1(const FClassCatalog& catalog) {
  const FusionSystem& fs = catalog.system();
  const int p = fs.prime();
  const Rational c0 = omega_c0(fs);
  RationalBiset out(fs.shared_group());
  for (int i = 0; i <= p; ++i) {
    const Layer1Counts d = layer1_counts(catalog, i);
    const Rational denom(d.extendable + p * d.nonextendable);
    const Rational ce = -Rational(d.nonextendable) / denom * c0;
    const Rational cn = Rational(d.extendable) / denom * c0;
    for (int idx : catalog.layer_members(1)) {
      const FClass& fc = catalog.classes()[idx];
      if (fc.label.i == i) out.add(fc.cls, fc.label.extendable ? ce : cn);
    }
  }
  return out;
}

RationalBiset omega2(const FClassCatalog& catalog) {
  const FusionSystem& fs = catalog.system();
  const int p = fs.prime();
  const Rational c0 = omega_c0(fs);
  const Rational q(std::int64_t{p} * p * p - 1);
  RationalBiset out(fs.shared_group());
  for (int idx : catalog.layer_members(2)) {
    const FClass& fc = catalog.classes()[idx];
    const bool src_z = fc.label.source_kind == Layer2Source::kZ;
    const bool tgt_z = fc.label.target_kind == Layer2Target::kZ;
    Rational c;
    if (src_z && tgt_z) {
      c = Rational(p) / q;
    } else if (src_z || tgt_z) {
      c = -Rational(p) / (Rational(p + 1) * q);
    } else if (fs.conjugate_lines(fc.label.i, fc.label.j)) {
      c = Rational(1) / q - Rational(fs.r(fc.label.i)) * c0 / Rational(p + 1);
    } else {
      c = Rational(1) / q;
    }
    out.add(fc.cls, c);
  }
  return out;
}

RationalBiset omega3(const FClassCatalog&) {
  throw NotComputedError("the trivial-subgroup layer of the characteristic idempotent is not determined here");
}

RationalBiset solve_idempotent(std::shared_ptr<const FClassCatalog> shared, Side side) {
  const FClassCatalog& catalog = *shared;
  const LayerSystem sys(shared, side);
  const auto& classes = catalog.classes();
  std::vector<int> unknowns;
  for (int v = 0; v < sys.variable_count(); ++v) {
    if (v != sys.var_c3()) unknowns.push_back(v);
  }
  std::map<int, int> row_of_anchor;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (int r = 0; r <= 2; ++r) {
    for (int k : catalog.layer_members(r)) {
      const int anchor =
          side == Side::kRight ? catalog.identity_class_of_source(k) : catalog.identity_class_of_image(k);
      auto it = row_of_anchor.find(anchor);
      if (it == row_of_anchor.end()) {
        it = row_of_anchor.emplace(anchor, static_cast<int>(a.size())).first;
        a.emplace_back(unknowns.size(), Rational(0));
        b.push_back(r == 0 ? Rational(1) : Rational(0));
      }
      const AffineForm& f = sys.form(k);
      for (std::size_t u = 0; u < unknowns.size(); ++u) a[it->second][u] += f.coeff[unknowns[u]];
      b[it->second] -= f.constant;
    }
  }
  if (a.size() != unknowns.size()) throw InternalConsistencyError("idempotency system is not square");
  const auto x = solve_linear_system(a, b);
  if (!x) throw InternalConsistencyError("idempotency system is singular");
  RationalBiset out(catalog.system().shared_group());
  for (int r = 0; r <= 2; ++r) {
    for (int k : catalog.layer_members(r)) {
      const AffineForm& f = sys.form(k);
      Rational c = f.constant;
      for (std::size_t u = 0; u < unknowns.size(); ++u) c += f.coeff[unknowns[u]] * (*x)[u];
      if (c != 0) out.add(classes[k].cls, c);
    }
  }
  return out;
}

std::vector<DomainSum> idempotency_sums(const FClassCatalog& catalog, const RationalBiset& omega) {
  std::map<int, DomainSum> by_anchor;
  const auto& classes = catalog.classes();
  for (int r = 0; r <= 2; ++r) {
    for (int k : catalog.layer_members(r)) {
      const int anchor = catalog.identity_class_of_source(k);
      auto it = by_anchor.find(anchor);
      if (it == by_anchor.end()) {
        DomainSum s;
        s.domain = describe(classes[anchor].label);
        s.layer = r;
        s.expected = r == 0 ? Rational(1) : Rational(0);
        it = by_anchor.emplace(anchor, s).first;
      }
      it->second.sum += omega.coefficient(classes[k].cls);
    }
  }
  std::vector<DomainSum> out;
  for (auto& [anchor, s] : by_anchor) {
    s.ok = s.sum == s.expected;
    out.push_back(s);
  }
  std::stable_sort(out.begin(), out.end(), [](const DomainSum& x, const DomainSum& y) { return x.layer < y.layer; });
  return out;
}

IdempotentStability verify_idempotent_stability(const FClassCatalog& catalog, const RationalBiset& omega) {
  return {check_left_stability(catalog, omega, 2), check_right_stability(catalog, omega, 2)};
}

bool IdempotentReport::passed() const {
  return closed_form_matches_solve && p_local && layer1_relation && stability.stable() &&
         std::all_of(sums.begin(), sums.end(), [](const DomainSum& s) { return s.ok; });
}

IdempotentReport compute_idempotent(std::shared_ptr<const FClassCatalog> catalog) {
  const FusionSystem& fs = catalog->system();
  const int p = fs.prime();
  IdempotentReport r;
  r.system = fs.spec().name;
  r.p = p;
  r.c0 = omega_c0(fs);
  r.omega0 = omega0(fs);
  r.omega1 = omega1(*catalog);
  r.omega2 = omega2(*catalog);
  r.solved_right = solve_idempotent(catalog, Side::kRight);
  r.solved_left = solve_idempotent(catalog, Side::kLeft);
  const RationalBiset total = r.total();
  r.closed_form_matches_solve = total == r.solved_right && total == r.solved_left;
  r.p_local = std::all_of(total.terms().begin(), total.terms().end(),
                          [&](const auto& kv) { return denominator_coprime_to(kv.second.coeff, p); });
  r.layer1_relation = true;
  for (int i = 0; i <= p; ++i) {
    std::optional<Rational> ce;
    std::optional<Rational> cn;
    for (int idx : catalog->layer_members(1)) {
      const FClass& fc = catalog->classes()[idx];
      if (fc.label.i != i) continue;
      const Rational c = r.omega1.coefficient(fc.cls);
      auto& slot = fc.label.extendable ? ce : cn;
      if (slot && *slot != c) r.layer1_relation = false;
      slot = c;
    }
    if (!ce || !cn || *cn != r.c0 + Rational(p) * *ce) r.layer1_relation = false;
  }
  r.sums = idempotency_sums(*catalog, total);
  r.stability = verify_idempotent_stability(*catalog, total);
  return r;
}

nlohmann::json idempotent_to_json(const IdempotentReport& r) {
  auto layer = [&](const RationalBiset& b) { return biset_to_json(b, r.system); };
  nlohmann::json sums = nlohmann::json::array();
  for (const DomainSum& s : r.sums) {
    sums.push_back({{"domain", s.domain},
                    {"layer", s.layer},
                    {"sum", to_fraction_string(s.sum)},
                    {"expected", to_fraction_string(s.expected)},
                    {"ok", s.ok}});
  }
  Rational layer_sum[3];
  for (const DomainSum& s : r.sums) layer_sum[s.layer] += s.sum;
  return {{"system", r.system},
          {"prime", r.p},
          {"c0", to_fraction_string(r.c0)},
          {"omega0", layer(r.omega0)},
          {"omega1", layer(r.omega1)},
          {"omega2", layer(r.omega2)},
          {"layer_sums", {to_fraction_string(layer_sum[0]), to_fraction_string(layer_sum[1]), to_fraction_string(layer_sum[2])}},
          {"domain_sums", sums},
          {"checks",
           {{"closed_form_matches_solve", r.closed_form_matches_solve},
            {"p_local", r.p_local},
            {"layer1_relation", r.layer1_relation},
            {"left_stable", r.stability.left.stable},
            {"right_stable", r.stability.right.stable}}},
          {"passed", r.passed()}};
}

}  // namespace fusionbiset
