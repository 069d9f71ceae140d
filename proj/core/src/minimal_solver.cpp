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

#include "fusionbiset/minimal_solver.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fusionbiset/errors.hpp"
#include "fusionbiset/parallel.hpp"

namespace fusionbiset {

std::string to_string(Side side) { return side == Side::kLeft ? "left" : "right"; }

std::string to_string(const CoefficientTuple& t) {
  std::ostringstream os;
  os << "c0=" << t.c0 << " c1=(";
  for (std::size_t i = 0; i < t.c1.size(); ++i) os << (i ? "," : "") << t.c1[i];
  os << ") c2z=" << t.c2z << " c2u=(";
  for (std::size_t i = 0; i < t.c2u.size(); ++i) os << (i ? "," : "") << t.c2u[i];
  os << ") c3=" << t.c3;
  return os.str();
}

std::string to_string(const Layer2Key& key) {
  std::ostringstream os;
  os << '[' << (key.source == Layer2Source::kZ ? std::string("z") : "u" + std::to_string(key.i)) << " -> "
     << (key.target == Layer2Target::kZ ? std::string("z") : "u" + std::to_string(key.j)) << '^' << key.m << ']';
  return os.str();
}

namespace {

AffineForm unit_form(int vars, int v) {
  AffineForm f;
  f.coeff.assign(vars, Rational(0));
  f.coeff[v] = 1;
  return f;
}

void add_scaled(AffineForm& into, const AffineForm& from, const Rational& k) {
  into.constant += k * from.constant;
  for (std::size_t v = 0; v < into.coeff.size(); ++v) into.coeff[v] += k * from.coeff[v];
}

int anchor_variable_of(const LayerSystem& sys, const FClass& fc) {
  const ExtraspecialGroup& g = sys.catalog().group();
  const SubgroupId src = fc.cls.source();
  switch (fc.cls.layer()) {
    case 0:
      return sys.var_c0();
    case 1:
      for (int line = 0; line <= g.prime(); ++line) {
        if (g.maximal(line) == src) return sys.var_c1(line);
      }
      break;
    case 2: {
      const Elem gen = g.subgroup(src).generators().front();
      if (g.is_central(gen)) return sys.var_c2z();
      return sys.var_c2u(g.line_of(gen));
    }
    case 3:
      return sys.var_c3();
    default:
      break;
  }
  throw InternalConsistencyError("identity class without an anchor variable");
}

}  // namespace

LayerSystem::LayerSystem(std::shared_ptr<const FClassCatalog> catalog, Side side)
    : catalog_(std::move(catalog)), side_(side) {
  const auto& classes = catalog_->classes();
  const int n = static_cast<int>(classes.size());
  const int vars = variable_count();
  forms_.assign(n, AffineForm{});
  anchor_var_.assign(n, -1);
  std::vector<int> anchor(n);
  for (int k = 0; k < n; ++k) {
    anchor[k] = side_ == Side::kRight ? catalog_->identity_class_of_source(k) : catalog_->identity_class_of_image(k);
    if (anchor[k] == k) anchor_var_[k] = anchor_variable_of(*this, classes[k]);
  }
  std::vector<int> lower;
  for (int r = 0; r <= 3; ++r) {
    const std::vector<int>& members = catalog_->layer_members(r);
    for (int k : members) {
      if (anchor_var_[k] >= 0) forms_[k] = unit_form(vars, anchor_var_[k]);
    }
    std::vector<int> pending;
    std::set<int> anchors;
    for (int k : members) {
      if (anchor_var_[k] < 0) {
        pending.push_back(k);
        anchors.insert(anchor[k]);
      }
    }
    // Marks of the lower layers at each anchor, shared by its dependents.
    std::map<int, std::vector<std::int64_t>> anchor_marks;
    for (int a : anchors) {
      if (classes[a].cls.layer() != r) throw InternalConsistencyError("anchor class lies in a different layer");
      std::vector<std::int64_t> row(lower.size());
      for (std::size_t t = 0; t < lower.size(); ++t) row[t] = count_fixed_points(classes[lower[t]].cls, classes[a].cls.rep());
      anchor_marks.emplace(a, std::move(row));
    }
    parallel_for(pending.size(), [&](std::size_t idx) {
      const int h = pending[idx];
      const int a = anchor[h];
      const GraphSubgroup& by = classes[h].cls.rep();
      const std::int64_t fp_hh = count_fixed_points(classes[h].cls, by);
      const std::int64_t fp_aa = count_fixed_points(classes[a].cls, classes[a].cls.rep());
      AffineForm f;
      f.coeff.assign(vars, Rational(0));
      add_scaled(f, forms_[a], Rational(fp_aa));
      const std::vector<std::int64_t>& at_anchor = anchor_marks.at(a);
      for (std::size_t t = 0; t < lower.size(); ++t) {
        const std::int64_t diff = count_fixed_points(classes[lower[t]].cls, by) - at_anchor[t];
        if (diff != 0) add_scaled(f, forms_[lower[t]], Rational(-diff));
      }
      const Rational inv(1, fp_hh);
      f.constant *= inv;
      for (auto& c : f.coeff) c *= inv;
      forms_[h] = std::move(f);
    });
    lower.insert(lower.end(), members.begin(), members.end());
  }
}

std::string LayerSystem::variable_name(int v) const {
  const int p = prime();
  if (v == var_c0()) return "c0";
  if (v >= var_c1(0) && v <= var_c1(p)) return "c1(" + std::to_string(v - var_c1(0)) + ")";
  if (v == var_c2z()) return "c2z";
  if (v >= var_c2u(0) && v <= var_c2u(p)) return "c2u(" + std::to_string(v - var_c2u(0)) + ")";
  if (v == var_c3()) return "c3";
  throw std::out_of_range("no such variable");
}

std::vector<std::int64_t> LayerSystem::flatten(const CoefficientTuple& t) const {
  const int p = prime();
  if (static_cast<int>(t.c1.size()) != p + 1 || static_cast<int>(t.c2u.size()) != p + 1) {
    throw std::invalid_argument("coefficient tuple needs p + 1 entries in c1 and c2u");
  }
  std::vector<std::int64_t> v(variable_count());
  v[var_c0()] = t.c0;
  for (int i = 0; i <= p; ++i) {
    v[var_c1(i)] = t.c1[i];
    v[var_c2u(i)] = t.c2u[i];
  }
  v[var_c2z()] = t.c2z;
  v[var_c3()] = t.c3;
  return v;
}

CoefficientTuple LayerSystem::unflatten(const std::vector<std::int64_t>& v) const {
  const int p = prime();
  CoefficientTuple t;
  t.c0 = v[var_c0()];
  for (int i = 0; i <= p; ++i) {
    t.c1.push_back(v[var_c1(i)]);
    t.c2u.push_back(v[var_c2u(i)]);
  }
  t.c2z = v[var_c2z()];
  t.c3 = v[var_c3()];
  return t;
}

Rational LayerSystem::evaluate(int class_index, const std::vector<std::int64_t>& values) const {
  const AffineForm& f = forms_.at(class_index);
  Rational out = f.constant;
  for (std::size_t v = 0; v < f.coeff.size(); ++v) {
    if (f.coeff[v] != 0) out += f.coeff[v] * values[v];
  }
  return out;
}

AffineForm LayerSystem::size_form() const {
  AffineForm total;
  total.coeff.assign(variable_count(), Rational(0));
  for (std::size_t k = 0; k < forms_.size(); ++k) {
    add_scaled(total, forms_[k], Rational(catalog_->classes()[k].cls.index()));
  }
  return total;
}

std::variant<IntBiset, Infeasibility> realize_tuple(const LayerSystem& system, const CoefficientTuple& t) {
  const int p = system.prime();
  if (t.c0 < 1 || t.c0 % p == 0) return Infeasibility{"c0 >= 1 and p does not divide c0", std::to_string(t.c0)};
  const std::vector<std::int64_t> values = system.flatten(t);
  for (std::size_t v = 0; v < values.size(); ++v) {
    if (values[v] < 0) return Infeasibility{system.variable_name(static_cast<int>(v)) + " >= 0", std::to_string(values[v])};
  }
  const auto& classes = system.catalog().classes();
  IntBiset out(system.catalog().system().shared_group());
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const Rational c = system.evaluate(static_cast<int>(k), values);
    if (!is_integer(c) || c < 0) {
      return Infeasibility{"coefficient of " + describe(classes[k].label) + " is a nonnegative integer",
                           to_fraction_string(c)};
    }
    if (c != 0) out.add(classes[k].cls, static_cast<std::int64_t>(numerator(c)));
  }
  return out;
}

IntBiset layer0(const FusionSystem& fs, std::int64_t c0) {
  if (c0 < 1 || c0 % fs.prime() == 0) throw std::invalid_argument("layer 0 needs c0 >= 1 prime to p");
  IntBiset out(fs.shared_group());
  for (const GroupMorphism& a : fs.out_lifts()) out.add(BisetClass(a), c0);
  return out;
}

IntBiset layer1(const FClassCatalog& catalog, std::int64_t c0, const std::vector<std::int64_t>& c1) {
  const int p = catalog.system().prime();
  if (static_cast<int>(c1.size()) != p + 1) throw std::invalid_argument("c1 needs one entry per maximal subgroup");
  IntBiset out(catalog.system().shared_group());
  for (int idx : catalog.layer_members(1)) {
    const FClass& fc = catalog.classes()[idx];
    const std::int64_t c = fc.label.extendable ? c1[fc.label.i] : c0 + p * c1[fc.label.i];
    if (c != 0) out.add(fc.cls, c);
  }
  return out;
}

std::variant<LayerCoefficients, Infeasibility> solve_layer2(const LayerSystem& system, std::int64_t c0,
                                                            const std::vector<std::int64_t>& c1, std::int64_t c2z,
                                                            const std::vector<std::int64_t>& c2u) {
  CoefficientTuple t{c0, c1, c2z, c2u, 0};
  const auto realized = realize_tuple(system, t);
  if (const auto* bad = std::get_if<Infeasibility>(&realized)) return *bad;
  const IntBiset& b = std::get<IntBiset>(realized);
  LayerCoefficients out;
  out.c0 = c0;
  out.c1 = c1;
  for (int idx : system.catalog().layer_members(2)) {
    const FClass& fc = system.catalog().classes()[idx];
    const Layer2Key key{fc.label.source_kind, fc.label.i, fc.label.target_kind, fc.label.j, fc.label.m};
    out.c2[key] = b.coefficient(fc.cls);
  }
  return out;
}

namespace {

// A class coefficient scaled to integers: (constant + sum coeff v) / den.
struct IntForm {
  std::int64_t den = 1;
  std::int64_t constant = 0;
  std::vector<std::int64_t> coeff;
  auto operator<=>(const IntForm&) const = default;
};

struct WeightedForm {
  IntForm form;
  std::int64_t weight = 0;
};

std::int64_t to_int64(const BigInt& v) {
  if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN)) throw ResourceLimitError("coefficient exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

IntForm to_int_form(const AffineForm& f) {
  BigInt den = denominator(f.constant);
  for (const Rational& c : f.coeff) den = boost::multiprecision::lcm(den, denominator(c));
  IntForm out;
  out.den = to_int64(den);
  out.constant = to_int64(numerator(Rational(f.constant * den)));
  for (const Rational& c : f.coeff) out.coeff.push_back(to_int64(numerator(Rational(c * den))));
  return out;
}

// Value of a form at fixed values, or nullopt if not a nonnegative integer.
std::optional<std::int64_t> value_at(const IntForm& f, const std::vector<std::int64_t>& v) {
  __int128 num = f.constant;
  for (std::size_t k = 0; k < f.coeff.size(); ++k) num += static_cast<__int128>(f.coeff[k]) * v[k];
  if (num < 0 || num % f.den != 0) return std::nullopt;
  return static_cast<std::int64_t>(num / f.den);
}

struct Group {
  std::vector<WeightedForm> forms;
};

// Cost of a group at v, or nullopt if some form is infeasible.
std::optional<std::int64_t> group_cost(const Group& g, const std::vector<std::int64_t>& v) {
  std::int64_t cost = 0;
  for (const WeightedForm& w : g.forms) {
    const auto c = value_at(w.form, v);
    if (!c) return std::nullopt;
    cost += w.weight * *c;
  }
  return cost;
}

// Lower bound on the cost of a group when the variables in `unknown` are
// free nonnegative integers: forms whose unknown coefficients are all
// nonnegative are bounded below by their value with the unknowns at zero.
__int128 group_lower_bound(const Group& g, const std::vector<std::int64_t>& v, const std::vector<int>& unknown) {
  __int128 total = 0;
  for (const WeightedForm& w : g.forms) {
    bool monotone = true;
    for (int u : unknown) {
      if (w.form.coeff[u] < 0) monotone = false;
    }
    if (!monotone) continue;
    __int128 num = w.form.constant;
    for (std::size_t k = 0; k < w.form.coeff.size(); ++k) {
      if (std::find(unknown.begin(), unknown.end(), static_cast<int>(k)) == unknown.end()) {
        num += static_cast<__int128>(w.form.coeff[k]) * v[k];
      }
    }
    if (num > 0) total += w.weight * ((num + w.form.den - 1) / w.form.den);
  }
  return total;
}

// Largest value of `var` compatible with the budget, using the forms whose
// coefficients on every unknown are nonnegative: each such form is at least
// its value with the other unknowns at zero, and every form is nonnegative.
std::int64_t variable_bound(const Group& g, const std::vector<std::int64_t>& v, int var,
                            const std::vector<int>& unknown, __int128 budget) {
  std::int64_t common = 1;
  for (const WeightedForm& w : g.forms) common = std::lcm(common, w.form.den);
  __int128 slope = 0;
  __int128 base = 0;
  for (const WeightedForm& w : g.forms) {
    bool monotone = true;
    for (int u : unknown) {
      if (w.form.coeff[u] < 0) monotone = false;
    }
    if (!monotone) continue;
    __int128 num = w.form.constant;
    for (std::size_t k = 0; k < w.form.coeff.size(); ++k) {
      if (std::find(unknown.begin(), unknown.end(), static_cast<int>(k)) == unknown.end()) {
        num += static_cast<__int128>(w.form.coeff[k]) * v[k];
      }
    }
    const __int128 scale = static_cast<__int128>(w.weight) * (common / w.form.den);
    slope += scale * w.form.coeff[var];
    base += scale * num;
  }
  if (slope <= 0) throw ResourceLimitError("cannot bound a free coefficient by the size");
  const __int128 room = budget * common - base;
  if (room < 0) return -1;
  return static_cast<std::int64_t>(room / slope);
}

struct Entry {
  std::int64_t cost;
  std::int64_t c1;
  std::int64_t c2u;
};

}  // namespace

UniquenessCertificate certify_uniqueness(const LayerSystem& system, std::int64_t e_bound,
                                         const CoefficientTuple& expected) {
  const int p = system.prime();
  const int nv = system.variable_count();
  const auto& classes = system.catalog().classes();

  std::map<IntForm, std::int64_t> merged;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    merged[to_int_form(system.form(static_cast<int>(k)))] += classes[k].cls.index();
  }
  Group level0;
  std::vector<Group> family(p + 1);
  Group leaf;
  for (const auto& [form, weight] : merged) {
    std::vector<int> support;
    for (int v = 0; v < nv; ++v) {
      if (form.coeff[v] != 0 && v != system.var_c0()) support.push_back(v);
    }
    int fam = -1;
    bool single = true;
    for (int v : support) {
      int line = -1;
      if (v >= system.var_c1(0) && v <= system.var_c1(p)) line = v - system.var_c1(0);
      else if (v >= system.var_c2u(0) && v <= system.var_c2u(p)) line = v - system.var_c2u(0);
      if (line < 0 || (fam >= 0 && fam != line)) single = false;
      fam = line;
    }
    const WeightedForm wf{form, weight};
    if (support.empty()) level0.forms.push_back(wf);
    else if (single) family[fam].forms.push_back(wf);
    else leaf.forms.push_back(wf);
  }

  UniquenessCertificate cert;
  cert.side = system.side();
  cert.e_bound = e_bound;
  std::vector<std::int64_t> v(nv, 0);
  std::vector<int> all_but_c0;
  for (int k = 1; k < nv; ++k) all_but_c0.push_back(k);

  for (std::int64_t c0 = 1; c0 <= e_bound; ++c0) {
    std::fill(v.begin(), v.end(), 0);
    v[system.var_c0()] = c0;
    const auto cost0 = group_cost(level0, v);
    if (!cost0 || *cost0 > e_bound) continue;
    std::vector<__int128> lb(p + 1);
    __int128 lb_total = *cost0;
    for (int i = 0; i <= p; ++i) {
      lb[i] = group_lower_bound(family[i], v, all_but_c0);
      lb_total += lb[i];
    }
    const __int128 lb_leaf = group_lower_bound(leaf, v, all_but_c0);
    lb_total += lb_leaf;
    if (lb_total > e_bound) continue;

    std::vector<std::vector<Entry>> tables(p + 1);
    bool empty = false;
    for (int i = 0; i <= p && !empty; ++i) {
      const __int128 budget = static_cast<__int128>(e_bound) - (lb_total - lb[i]);
      const int v1 = system.var_c1(i);
      const int v2 = system.var_c2u(i);
      std::vector<std::int64_t> w = v;
      const std::int64_t max1 = variable_bound(family[i], w, v1, {v1, v2}, budget);
      for (std::int64_t a = 0; a <= max1; ++a) {
        w[v1] = a;
        w[v2] = 0;
        const std::int64_t max2 = variable_bound(family[i], w, v2, {v2}, budget);
        for (std::int64_t b = 0; b <= max2; ++b) {
          w[v2] = b;
          const auto c = group_cost(family[i], w);
          if (c && *c <= budget) tables[i].push_back({*c, a, b});
        }
      }
      std::sort(tables[i].begin(), tables[i].end(),
                [](const Entry& x, const Entry& y) { return std::tie(x.cost, x.c1, x.c2u) < std::tie(y.cost, y.c1, y.c2u); });
      if (tables[i].empty()) empty = true;
    }
    if (empty) continue;
    std::vector<std::int64_t> suffix_min(p + 2, 0);
    for (int i = p; i >= 0; --i) suffix_min[i] = suffix_min[i + 1] + tables[i].front().cost;

    std::vector<std::int64_t> cur = v;
    std::function<void(int, std::int64_t)> dfs = [&](int i, std::int64_t spent) {
      if (i > p) {
        const __int128 room = static_cast<__int128>(e_bound) - spent;
        const std::vector<int> leaf_unknown{system.var_c2z(), system.var_c3()};
        cur[system.var_c2z()] = 0;
        cur[system.var_c3()] = 0;
        const std::int64_t max_z = variable_bound(leaf, cur, system.var_c2z(), leaf_unknown, room);
        for (std::int64_t z = 0; z <= max_z; ++z) {
          cur[system.var_c2z()] = z;
          cur[system.var_c3()] = 0;
          const std::int64_t max_3 = variable_bound(leaf, cur, system.var_c3(), {system.var_c3()}, room);
          for (std::int64_t t3 = 0; t3 <= max_3; ++t3) {
            cur[system.var_c3()] = t3;
            ++cert.tuples_examined;
            const auto c = group_cost(leaf, cur);
            if (!c) continue;
            const std::int64_t e = spent + *c;
            if (e > e_bound || e % p == 0) continue;
            cert.solutions.push_back(system.unflatten(cur));
          }
        }
        return;
      }
      for (const Entry& en : tables[i]) {
        if (spent + en.cost + suffix_min[i + 1] + static_cast<std::int64_t>(lb_leaf) > e_bound) break;
        cur[system.var_c1(i)] = en.c1;
        cur[system.var_c2u(i)] = en.c2u;
        dfs(i + 1, spent + en.cost);
      }
      cur[system.var_c1(i)] = 0;
      cur[system.var_c2u(i)] = 0;
    };
    dfs(0, *cost0);
  }
  std::sort(cert.solutions.begin(), cert.solutions.end());
  bool found = false;
  bool smaller = false;
  for (const CoefficientTuple& t : cert.solutions) {
    if (t == expected) found = true;
    else {
      const auto r = realize_tuple(system, t);
      if (const auto* b = std::get_if<IntBiset>(&r); b && b->size_ratio() < e_bound) smaller = true;
    }
  }
  cert.minimal = found && !smaller;
  cert.unique = found && cert.solutions.size() == 1;
  return cert;
}

CoefficientTuple minimal_tuple(const FusionSystem& fs) {
  const int p = fs.prime();
  CoefficientTuple t;
  t.c0 = 1;
  t.c1.assign(p + 1, 0);
  t.c2z = 0;
  for (int i = 0; i <= p; ++i) t.c2u.push_back(fs.f() - fs.r(i));
  t.c3 = 0;
  return t;
}

bool SolverResult::all_certified() const {
  if (!left_stability.stable || !right_stability.stable) return false;
  if (!minimal || !unique || !opposite_invariant || !sides_agree) return false;
  return std::all_of(cross_checks.begin(), cross_checks.end(), [](const NamedCheck& c) { return c.ok; });
}

SolverResult minimal_biset(const FusionSystemSpec& spec) {
  auto fs = std::make_shared<const FusionSystem>(spec);
  return minimal_biset(std::make_shared<const FClassCatalog>(fs));
}

namespace {

void add_check(std::vector<NamedCheck>& out, std::string name, const std::string& expected, const std::string& actual) {
  const bool ok = expected == actual;
  out.push_back({std::move(name), expected, actual, ok});
}

}  // namespace

SolverResult minimal_biset(std::shared_ptr<const FClassCatalog> catalog) {
  const FusionSystem& fs = catalog->system();
  const ExtraspecialGroup& g = fs.group();
  const int p = fs.prime();
  SolverResult res;
  res.system = fs.spec().name;
  res.p = p;
  res.f = fs.f();
  res.out_order = fs.out_order();
  res.tuple = minimal_tuple(fs);

  const LayerSystem right(catalog, Side::kRight);
  const LayerSystem left(catalog, Side::kLeft);
  auto realized = realize_tuple(right, res.tuple);
  if (const auto* bad = std::get_if<Infeasibility>(&realized)) {
    throw InternalConsistencyError("minimal tuple infeasible: " + bad->constraint + " fails with " + bad->value);
  }
  res.biset = std::get<IntBiset>(realized);
  const auto realized_left = realize_tuple(left, res.tuple);
  res.sides_agree = std::holds_alternative<IntBiset>(realized_left) && std::get<IntBiset>(realized_left) == res.biset;

  res.d0 = res.biset.layer_count(0);
  res.d1 = res.biset.layer_count(1);
  res.d2 = res.biset.layer_count(2);
  res.e = res.biset.size_ratio();
  if (fs.spec().exotic()) res.exoticity_bound = exoticity_bound(res.e, p);

  const auto coeffs = solve_layer2(right, res.tuple.c0, res.tuple.c1, res.tuple.c2z, res.tuple.c2u);
  if (const auto* c = std::get_if<LayerCoefficients>(&coeffs)) res.coefficients = *c;

  res.right_stability = check_right_stability(*catalog, res.biset);
  res.left_stability = check_left_stability(*catalog, res.biset);
  res.opposite_invariant = opposite(res.biset) == res.biset;
  res.right_certificate = certify_uniqueness(right, res.e, res.tuple);
  res.left_certificate = certify_uniqueness(left, res.e, res.tuple);
  res.minimal = res.right_certificate.minimal && res.left_certificate.minimal;
  res.unique = res.right_certificate.unique && res.left_certificate.unique;

  auto& checks = res.cross_checks;
  const IntBiset x0 = res.biset.layer(0);
  const std::int64_t c0 = res.tuple.c0;
  for (int k = 0; k < fs.out_order(); ++k) {
    add_check(checks, "layer0 mark at S-automorphism " + std::to_string(k) + " equals c0 |Z(S)|", std::to_string(c0 * p),
              std::to_string(mark(x0, fs.out_lifts()[k])));
  }
  for (int m = 1; m < p; ++m) {
    const std::array<Elem, 1> gens{g.z()};
    const std::array<Elem, 1> images{g.pow(g.z(), m)};
    const GroupMorphism zm = GroupMorphism::from_generators(g, g.cyclic(g.z()), gens, images);
    add_check(checks, "layer0 mark at z -> z^" + std::to_string(m) + " equals p^3 f c0",
              std::to_string(std::int64_t{p} * p * p * fs.f() * c0), std::to_string(mark(x0, zm)));
  }
  add_check(checks, "layer1 equals the extendable/nonextendable pattern", "true",
            res.biset.layer(1) == layer1(*catalog, c0, res.tuple.c1) ? "true" : "false");
  for (const auto& [key, value] : res.coefficients.c2) {
    if (key.source != Layer2Source::kU) continue;
    const int i = key.i;
    const std::int64_t r = fs.r(i);
    const std::int64_t c1 = res.tuple.c1[i];
    const std::int64_t c2u = res.tuple.c2u[i];
    if (key.target == Layer2Target::kU) {
      const std::int64_t expected = fs.conjugate_lines(i, key.j) ? c2u : c2u + r * c0 + p * r * c1;
      add_check(checks, "c2 relation at " + to_string(key), std::to_string(expected), std::to_string(value));
    } else {
      const std::int64_t expected = c2u - (fs.f() - r) * c0 - p * (fs.f() - r) * c1;
      add_check(checks, "p c2 relation at " + to_string(key), std::to_string(expected), std::to_string(p * value));
    }
  }
  std::int64_t p5 = 1;
  for (int k = 0; k < 5; ++k) p5 *= p;
  add_check(checks, "e equals (p^5 - 1)/(p - 1) |Out_F(S)|", std::to_string((p5 - 1) / (p - 1) * fs.out_order()),
            std::to_string(res.e));
  add_check(checks, "e equals d0 + p d1 + p^2 d2", std::to_string(res.d0 + p * res.d1 + std::int64_t{p} * p * res.d2),
            std::to_string(res.e));
  return res;
}

std::int64_t exoticity_bound(std::int64_t e, int p, int log_p_S) {
  if (e < 1) throw std::invalid_argument("exoticity bound needs e >= 1");
  if (p < 2) throw std::invalid_argument("exoticity bound needs a prime");
  std::int64_t total = (e - 1) * log_p_S;
  for (std::int64_t q = e / p; q > 0; q /= p) total += q;
  return total;
}

std::optional<TableRow> reference_row(const std::string& system) {
  static const std::vector<TableRow> rows{
      {"D8", 3, 4, 8, 32, 96, 968, std::nullopt},
      {"SD16", 3, 8, 16, 64, 192, 1936, std::nullopt},
      {"4S4", 5, 24, 96, 576, 2880, 74976, std::nullopt},
      {"D16x3", 7, 8, 48, 384, 2688, 134448, 425744},
      {"6sq:2", 7, 12, 72, 576, 4032, 201672, 638620},
      {"SD32x3", 7, 16, 96, 768, 5376, 268896, 851496},
  };
  for (const TableRow& r : rows) {
    if (r.system == system) return r;
  }
  return std::nullopt;
}

TableRow table_row(const SolverResult& r) {
  return {r.system, r.p, r.f, r.d0, r.d1, r.d2, r.e, r.exoticity_bound};
}

TableCheck check_row(const SolverResult& r) {
  TableCheck out;
  out.computed = table_row(r);
  out.expected = reference_row(r.system);
  if (!out.expected) {
    out.diff = "no published row";
    return out;
  }
  std::ostringstream diff;
  auto cmp = [&](const char* name, std::int64_t got, std::int64_t want) {
    if (got != want) diff << name << ": computed " << got << ", expected " << want << "; ";
  };
  const TableRow& a = out.computed;
  const TableRow& b = *out.expected;
  cmp("p", a.p, b.p);
  cmp("f", a.f, b.f);
  cmp("d0", a.d0, b.d0);
  cmp("d1", a.d1, b.d1);
  cmp("d2", a.d2, b.d2);
  cmp("e", a.e, b.e);
  if (a.bound.has_value() != b.bound.has_value()) diff << "bound presence differs; ";
  else if (a.bound) cmp("bound", *a.bound, *b.bound);
  out.diff = diff.str();
  out.pass = out.diff.empty();
  return out;
}

nlohmann::json tuple_to_json(const CoefficientTuple& t) {
  return {{"c0", t.c0}, {"c1", t.c1}, {"c2z", t.c2z}, {"c2u", t.c2u}, {"c3", t.c3}};
}

CoefficientTuple tuple_from_json(const nlohmann::json& j) {
  CoefficientTuple t;
  t.c0 = j.at("c0").get<std::int64_t>();
  t.c1 = j.at("c1").get<std::vector<std::int64_t>>();
  t.c2z = j.at("c2z").get<std::int64_t>();
  t.c2u = j.at("c2u").get<std::vector<std::int64_t>>();
  t.c3 = j.at("c3").get<std::int64_t>();
  return t;
}

namespace {

nlohmann::json certificate_to_json(const UniquenessCertificate& c) {
  nlohmann::json sols = nlohmann::json::array();
  for (const CoefficientTuple& t : c.solutions) sols.push_back(tuple_to_json(t));
  return {{"side", to_string(c.side)}, {"e_bound", c.e_bound},       {"tuples_examined", c.tuples_examined},
          {"solutions", sols},         {"minimal", c.minimal},       {"unique", c.unique}};
}

nlohmann::json stability_to_json(const StabilityReport& r) {
  nlohmann::json j{{"stable", r.stable}, {"checked", r.checked}};
  if (r.witness) j["witness"] = {{"class", r.witness_description}, {"lhs", r.lhs}, {"rhs", r.rhs}};
  return j;
}

}  // namespace

nlohmann::json result_to_json(const SolverResult& r) {
  nlohmann::json c2 = nlohmann::json::array();
  for (const auto& [key, value] : r.coefficients.c2) {
    c2.push_back({{"source", key.source == Layer2Source::kZ ? "z" : "u"},
                  {"i", key.i},
                  {"target", key.target == Layer2Target::kZ ? "z" : "u"},
                  {"j", key.j},
                  {"m", key.m},
                  {"coefficient", value}});
  }
  nlohmann::json checks = nlohmann::json::array();
  for (const NamedCheck& c : r.cross_checks) {
    checks.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok}});
  }
  nlohmann::json j{{"system", r.system},
                   {"prime", r.p},
                   {"f", r.f},
                   {"out_order", r.out_order},
                   {"d0", r.d0},
                   {"d1", r.d1},
                   {"d2", r.d2},
                   {"e", r.e},
                   {"coefficients", {{"tuple", tuple_to_json(r.tuple)}, {"c0", r.coefficients.c0},
                                     {"c1", r.coefficients.c1}, {"c2", c2}, {"c3", r.coefficients.c3}}},
                   {"certificates",
                    {{"minimal", r.minimal},
                     {"unique", r.unique},
                     {"opposite_invariant", r.opposite_invariant},
                     {"sides_agree", r.sides_agree},
                     {"left_stability", stability_to_json(r.left_stability)},
                     {"right_stability", stability_to_json(r.right_stability)},
                     {"left_uniqueness", certificate_to_json(r.left_certificate)},
                     {"right_uniqueness", certificate_to_json(r.right_certificate)}}},
                   {"cross_checks", checks},
                   {"biset", biset_to_json(r.biset, r.system)}};
  j["exoticity_bound"] = r.exoticity_bound ? nlohmann::json(*r.exoticity_bound) : nlohmann::json(nullptr);
  return j;
}

}  // namespace fusionbiset
