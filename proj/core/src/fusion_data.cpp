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

#include "fusionbiset/fusion_data.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace fusionbiset {
namespace {

int mod(long v, int p) {
  long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

LineClass line_class(std::vector<int> lines, int r) { return {std::move(lines), r}; }

std::vector<int> range(int lo, int hi) {
  std::vector<int> v(hi - lo + 1);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

int matrix_order(const MatrixGL2& m) {
  MatrixGL2 power = m;
  int order = 1;
  while (!(power == MatrixGL2::identity(m.p))) {
    power = power * m;
    ++order;
  }
  return order;
}

}  // namespace

std::vector<FusionSystemSpec> builtin_systems() {
  std::vector<FusionSystemSpec> out;
  out.push_back({3, {line_class({0, 3}, 2), line_class({1, 2}, 2)}, "D8", "d8", "²F₄(2)′", true});
  out.push_back({3, {line_class(range(0, 3), 2)}, "SD16", "sd16", "J4", true});
  out.push_back({5, {line_class(range(0, 5), 4)}, "4S4", "th4s4", "Th", true});
  out.push_back({7, {line_class(range(0, 3), 2), line_class(range(4, 7), 2)}, "D16x3", "rv48", "exotic", true});
  out.push_back({7, {line_class(range(1, 6), 2), line_class({0, 7}, 6)}, "6sq:2", "rv72", "exotic", true});
  out.push_back({7, {line_class(range(0, 7), 2)}, "SD32x3", "rv96", "exotic", true});
  return out;
}

std::optional<FusionSystemSpec> find_builtin(std::string_view selector) {
  const std::string key = lower(selector);
  static const std::vector<std::pair<std::string, std::string>> kExtra = {
      {"2f4(2)'", "d8"}, {"tits", "d8"}, {"j4", "sd16"}, {"th", "th4s4"}, {"6^2:2", "rv72"},
      {"d16x3", "rv48"}, {"sd32x3", "rv96"}};
  std::string target = key;
  for (const auto& [name, alias] : kExtra) {
    if (key == name) target = alias;
  }
  for (const FusionSystemSpec& spec : builtin_systems()) {
    if (target == spec.alias || target == lower(spec.name)) return spec;
  }
  return std::nullopt;
}

void validate_spec(const FusionSystemSpec& spec) {
  if (!is_odd_prime(spec.p)) throw InconsistentSpecError("p must be an odd prime");
  if (spec.classes.empty()) throw InconsistentSpecError("no line classes given");
  std::vector<int> seen(spec.p + 1, 0);
  int common = -1;
  for (const LineClass& cls : spec.classes) {
    if (cls.lines.empty()) throw InconsistentSpecError("empty line class");
    if (cls.r < 1 || (spec.p - 1) % cls.r != 0) {
      throw InconsistentSpecError("r = " + std::to_string(cls.r) + " does not divide p-1");
    }
    for (int line : cls.lines) {
      if (line < 0 || line > spec.p) throw InconsistentSpecError("line index out of range: " + std::to_string(line));
      if (seen[line]++) throw InconsistentSpecError("line " + std::to_string(line) + " appears twice");
    }
    const int value = static_cast<int>(cls.lines.size()) * cls.r;
    if (common >= 0 && value != common) {
      throw InconsistentSpecError("|class|*r differs between classes: " + std::to_string(common) + " vs " +
                                  std::to_string(value));
    }
    common = value;
  }
  for (int line = 0; line <= spec.p; ++line) {
    if (!seen[line]) throw InconsistentSpecError("line " + std::to_string(line) + " is in no class");
  }
}

int f_number(const FusionSystemSpec& spec) {
  validate_spec(spec);
  return static_cast<int>(spec.classes.front().lines.size()) * spec.classes.front().r;
}

int class_index_of_line(const FusionSystemSpec& spec, int line) {
  for (std::size_t k = 0; k < spec.classes.size(); ++k) {
    const auto& lines = spec.classes[k].lines;
    if (std::find(lines.begin(), lines.end(), line) != lines.end()) return static_cast<int>(k);
  }
  throw std::out_of_range("line in no class: " + std::to_string(line));
}

int r_of_line(const FusionSystemSpec& spec, int line) { return spec.classes[class_index_of_line(spec, line)].r; }

nlohmann::json spec_to_json(const FusionSystemSpec& spec) {
  nlohmann::json classes = nlohmann::json::array();
  for (const LineClass& cls : spec.classes) classes.push_back({{"lines", cls.lines}, {"r", cls.r}});
  nlohmann::json j = {{"prime", spec.p}, {"name", spec.name}, {"classes", classes}};
  if (!spec.alias.empty()) j["alias"] = spec.alias;
  if (!spec.realizing_group.empty()) j["group"] = spec.realizing_group;
  return j;
}

FusionSystemSpec spec_from_json(const nlohmann::json& j) {
  FusionSystemSpec spec;
  try {
    spec.p = j.at("prime").get<int>();
    spec.name = j.value("name", std::string("custom"));
    spec.alias = j.value("alias", std::string());
    spec.realizing_group = j.value("group", std::string("unverified"));
    for (const auto& cls : j.at("classes")) {
      spec.classes.push_back({cls.at("lines").get<std::vector<int>>(), cls.at("r").get<int>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw InconsistentSpecError(std::string("malformed spec: ") + e.what());
  }
  validate_spec(spec);
  return spec;
}

int MatrixGL2::det() const { return mod(static_cast<long>(m[0]) * m[3] - static_cast<long>(m[1]) * m[2], p); }

MatrixGL2 MatrixGL2::operator*(const MatrixGL2& o) const {
  if (o.p != p) throw PrimeMismatchError("matrix primes differ");
  return {p,
          {mod(m[0] * o.m[0] + m[1] * o.m[2], p), mod(m[0] * o.m[1] + m[1] * o.m[3], p),
           mod(m[2] * o.m[0] + m[3] * o.m[2], p), mod(m[2] * o.m[1] + m[3] * o.m[3], p)}};
}

MatrixGL2 MatrixGL2::inverse() const {
  const int d = det();
  if (d == 0) throw std::invalid_argument("singular matrix");
  const int di = inverse_mod(d, p);
  return {p, {mod(m[3] * di, p), mod(-m[1] * di, p), mod(-m[2] * di, p), mod(m[0] * di, p)}};
}

std::array<int, 2> MatrixGL2::apply(std::array<int, 2> v) const {
  return {mod(m[0] * v[0] + m[1] * v[1], p), mod(m[2] * v[0] + m[3] * v[1], p)};
}

int MatrixGL2::act_on_line(int i) const { return line_of_vector(apply(line_vector(i, p)), p); }

int MatrixGL2::eigenvalue_on_line(int i) const {
  const std::array<int, 2> v = line_vector(i, p);
  const std::array<int, 2> w = apply(v);
  if (line_of_vector(w, p) != i) throw std::invalid_argument("line is not fixed");
  return v[0] != 0 ? mod(w[0] * inverse_mod(v[0], p), p) : mod(w[1] * inverse_mod(v[1], p), p);
}

std::string to_string(const MatrixGL2& m) {
  std::ostringstream out;
  out << "[[" << m.m[0] << ',' << m.m[1] << "],[" << m.m[2] << ',' << m.m[3] << "]]";
  return out.str();
}

std::vector<MatrixGL2> general_linear_group(int p) {
  std::vector<MatrixGL2> out;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        for (int d = 0; d < p; ++d) {
          MatrixGL2 m{p, {a, b, c, d}};
          if (m.det() != 0) out.push_back(m);
        }
  return out;
}

int inverse_mod(int a, int p) {
  a = mod(a, p);
  if (a == 0) throw std::invalid_argument("zero has no inverse");
  for (int b = 1; b < p; ++b) {
    if ((a * b) % p == 1) return b;
  }
  throw std::invalid_argument("no inverse");
}

int primitive_root(int p) {
  for (int g = 2; g < p; ++g) {
    int x = 1;
    int order = 0;
    do {
      x = (x * g) % p;
      ++order;
    } while (x != 1);
    if (order == p - 1) return g;
  }
  return 1;
}

int line_of_vector(std::array<int, 2> v, int p) {
  if (v[0] == 0 && v[1] == 0) throw std::invalid_argument("zero vector has no line");
  if (v[0] == 0) return p;
  return mod(v[1] * inverse_mod(v[0], p), p);
}

std::array<int, 2> line_vector(int line, int p) {
  if (line == p) return {0, 1};
  return {1, line};
}

std::vector<int> determinant_subgroup(int p, int r) {
  const int mu = primitive_root(p);
  const int step = (p - 1) / r;
  std::vector<int> out;
  int g = 1;
  for (int k = 0; k < step; ++k) g = (g * mu) % p;
  int x = 1;
  for (int k = 0; k < r; ++k) {
    out.push_back(x);
    x = (x * g) % p;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool in_determinant_subgroup(int value, int p, int r) {
  value = mod(value, p);
  if (value == 0) return false;
  long x = 1;
  for (int k = 0; k < r; ++k) x = (x * value) % p;
  return x == 1;
}

std::vector<MatrixGL2> aut_F_V(const FusionSystemSpec& spec, int line) {
  const int r = r_of_line(spec, line);
  std::vector<MatrixGL2> out;
  for (const MatrixGL2& m : general_linear_group(spec.p)) {
    if (in_determinant_subgroup(m.det(), spec.p, r)) out.push_back(m);
  }
  return out;
}

LambdaSets lambda_sets(const FusionSystemSpec& spec, int line) {
  const int p = spec.p;
  const int r = r_of_line(spec, line);
  LambdaSets out;
  for (int k = 1; k < p; ++k) {
    for (int l = 1; l < p; ++l) {
      if (in_determinant_subgroup(k * l, p, r)) out.extendable.insert({k, l});
      if (in_determinant_subgroup(-k * l, p, r)) out.nonextendable.insert({k, l});
    }
  }
  return out;
}

GroupMorphism lift_matrix_to_aut(const ExtraspecialGroup& group, const MatrixGL2& m) {
  if (m.p != group.prime()) throw PrimeMismatchError("matrix and group primes differ");
  if (m.det() == 0) throw InvalidMorphismError("matrix is not invertible");
  const std::array<Elem, 2> gens{group.x(), group.y()};
  const std::array<Elem, 2> images{group.encode(m.m[0], m.m[2], 0), group.encode(m.m[1], m.m[3], 0)};
  return GroupMorphism::from_generators(group, group.whole(), gens, images);
}

std::vector<MatrixGL2> build_out_F(const FusionSystemSpec& spec) {
  validate_spec(spec);
  const int p = spec.p;
  const int target = (p - 1) * f_number(spec);
  std::vector<int> cls(p + 1);
  for (int line = 0; line <= p; ++line) cls[line] = class_index_of_line(spec, line);

  // Candidates: p'-elements preserving every class whose restriction to
  // each fixed V_i has determinant det(M)*lambda_i(M) in <mu^((p-1)/r_i)>.
  std::vector<MatrixGL2> candidates;
  const int codes = p * p * p * p;
  std::vector<std::uint8_t> allowed(codes, 0);
  for (const MatrixGL2& m : general_linear_group(p)) {
    if (matrix_order(m) % p == 0) continue;
    bool ok = true;
    for (int line = 0; line <= p && ok; ++line) {
      const int image = m.act_on_line(line);
      if (cls[image] != cls[line]) ok = false;
      if (ok && image == line) {
        ok = in_determinant_subgroup(m.det() * m.eigenvalue_on_line(line), p, r_of_line(spec, line));
      }
    }
    if (ok) {
      candidates.push_back(m);
      allowed[m.code()] = 1;
    }
  }

  std::vector<std::uint8_t> in_group(codes, 0);
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    for (std::size_t b = a; b < candidates.size(); ++b) {
      const std::array<MatrixGL2, 2> gens{candidates[a], candidates[b]};
      std::vector<MatrixGL2> elems{MatrixGL2::identity(p)};
      in_group[elems[0].code()] = 1;
      bool failed = false;
      for (std::size_t k = 0; k < elems.size() && !failed; ++k) {
        for (const MatrixGL2& g : gens) {
          const MatrixGL2 h = elems[k] * g;
          if (in_group[h.code()]) continue;
          if (!allowed[h.code()] || static_cast<int>(elems.size()) >= target) {
            failed = true;
            break;
          }
          in_group[h.code()] = 1;
          elems.push_back(h);
        }
      }
      for (const MatrixGL2& g : elems) in_group[g.code()] = 0;
      if (failed || static_cast<int>(elems.size()) != target) continue;
      // Orbits on lines must be exactly the given classes.
      bool transitive = true;
      for (const LineClass& c : spec.classes) {
        std::set<int> orbit;
        for (const MatrixGL2& g : elems) orbit.insert(g.act_on_line(c.lines.front()));
        if (orbit.size() != c.lines.size()) transitive = false;
      }
      if (!transitive) continue;
      std::sort(elems.begin(), elems.end());
      return elems;
    }
  }
  throw InconsistentSpecError("no subgroup of GL_2(" + std::to_string(p) + ") of order " + std::to_string(target) +
                              " realizes the line classes of " + spec.name);
}

FusionSystem::FusionSystem(FusionSystemSpec spec)
    : FusionSystem(spec, std::make_shared<const ExtraspecialGroup>(spec.p)) {}

FusionSystem::FusionSystem(FusionSystemSpec spec, std::shared_ptr<const ExtraspecialGroup> group)
    : spec_(std::move(spec)), group_(std::move(group)) {
  if (group_->prime() != spec_.p) throw PrimeMismatchError("spec and group primes differ");
  validate_spec(spec_);
  f_ = f_number(spec_);
  out_ = build_out_F(spec_);
  const int p = spec_.p;
  if (out_order() != (p - 1) * f_) throw InconsistentSpecError("|Out_F(S)| differs from (p-1)f");
  for (const MatrixGL2& m : out_) lifts_.push_back(lift_matrix_to_aut(*group_, m));

  line_class_.resize(p + 1);
  for (int line = 0; line <= p; ++line) line_class_[line] = class_index_of_line(spec_, line);

  normalized_u_.assign(p + 1, kNoElem);
  alpha_from_base_.resize(p + 1);
  for (const LineClass& cls : spec_.classes) {
    const int base = *std::min_element(cls.lines.begin(), cls.lines.end());
    normalized_u_[base] = group_->u(base);
    alpha_from_base_[base] = GroupMorphism::inclusion(*group_, group_->whole());
    for (int line : cls.lines) {
      if (line == base) continue;
      bool found = false;
      for (std::size_t k = 0; k < out_.size() && !found; ++k) {
        if (out_[k].det() == 1 && out_[k].act_on_line(base) == line) {
          alpha_from_base_[line] = lifts_[k];
          normalized_u_[line] = lifts_[k](normalized_u_[base]);
          found = true;
        }
      }
      if (!found) {
        throw InternalConsistencyError("no determinant-one element of Out_F(S) maps line " + std::to_string(base) +
                                       " to line " + std::to_string(line));
      }
    }
  }

  alpha_.assign(p + 1, std::vector<GroupMorphism>(p + 1));
  for (int i = 0; i <= p; ++i) {
    for (int j = 0; j <= p; ++j) {
      if (conjugate_lines(i, j)) alpha_[i][j] = compose(alpha_from_base_[j], alpha_from_base_[i].inverse());
    }
  }

  coords_.assign(p + 1, std::vector<std::array<int, 2>>(group_->order(), {-1, -1}));
  for (int line = 0; line <= p; ++line) {
    for (int s = 0; s < p; ++s) {
      for (int t = 0; t < p; ++t) {
        const Elem g = group_->mul(group_->pow(group_->z(), s), group_->pow(normalized_u_[line], t));
        coords_[line][g] = {s, t};
      }
    }
  }
}

const GroupMorphism& FusionSystem::alpha(int i, int j) const {
  if (!conjugate_lines(i, j)) {
    throw std::invalid_argument("V_" + std::to_string(i) + " and V_" + std::to_string(j) + " are not F-conjugate");
  }
  return alpha_[i][j];
}

std::array<int, 2> FusionSystem::coordinates(int line, Elem g) const {
  const std::array<int, 2> c = coords_.at(line).at(g);
  if (c[0] < 0) throw std::invalid_argument("element outside V_" + std::to_string(line));
  return c;
}

MatrixGL2 FusionSystem::restricted_matrix(const GroupMorphism& map, int i, int j) const {
  const std::array<int, 2> cz = coordinates(j, map.apply(group_->z()));
  const std::array<int, 2> cu = coordinates(j, map.apply(normalized_u_[i]));
  return {spec_.p, {cz[0], cu[0], cz[1], cu[1]}};
}

FusionMorphism FusionSystem::psi(int i, int j, int k, int l) const {
  if (!conjugate_lines(i, j)) throw std::invalid_argument("psi between non-conjugate lines");
  if (!lambda_sets(spec_, i).extendable.count({mod(k, spec_.p), mod(l, spec_.p)})) {
    throw std::invalid_argument("(k,l) outside the extendable lambda set");
  }
  const std::array<Elem, 2> gens{group_->z(), normalized_u_[i]};
  const std::array<Elem, 2> images{group_->pow(group_->z(), k), group_->pow(normalized_u_[j], l)};
  return {GroupMorphism::from_generators(*group_, maximal(i), gens, images), true};
}

FusionMorphism FusionSystem::phi(int i, int j, int k, int l) const {
  if (!conjugate_lines(i, j)) throw std::invalid_argument("phi between non-conjugate lines");
  if (!lambda_sets(spec_, i).nonextendable.count({mod(k, spec_.p), mod(l, spec_.p)})) {
    throw std::invalid_argument("(k,l) outside the nonextendable lambda set");
  }
  const std::array<Elem, 2> gens{group_->z(), normalized_u_[i]};
  const std::array<Elem, 2> images{group_->pow(normalized_u_[j], k), group_->pow(group_->z(), l)};
  return {GroupMorphism::from_generators(*group_, maximal(i), gens, images), false};
}

FusionMorphism FusionSystem::essential_automorphism(int line) const { return phi(line, line, 1, -1); }

std::vector<HomClass> FusionSystem::enumerate_hom_classes(SubgroupId q) const {
  if (q < 0 || q >= group_->subgroup_count()) throw InvalidSubgroupError("not a subgroup of S");
  const int p = spec_.p;
  const Subgroup& sub = group_->subgroup(q);
  std::vector<HomClass> out;
  if (q == group_->whole()) {
    for (const GroupMorphism& lift : lifts_) out.push_back({{lift, false}, 1, p});
    return out;
  }
  if (sub.rank() == 2) {
    int i = -1;
    for (Elem g : sub.generators()) i = std::max(i, group_->line_of(g));
    for (int j = 0; j <= p; ++j) {
      if (!conjugate_lines(i, j)) continue;
      const LambdaSets lam = lambda_sets(spec_, i);
      for (const auto& [k, l] : lam.extendable) out.push_back({psi(i, j, k, l), p, p * p});
      for (const auto& [k, l] : lam.nonextendable) out.push_back({phi(i, j, k, l), p, p * p});
    }
    return out;
  }
  if (sub.rank() == 1) {
    const Elem xi = sub.generators().front();
    std::vector<Elem> targets;
    for (int m = 1; m < p; ++m) targets.push_back(group_->pow(group_->z(), m));
    for (int j = 0; j <= p; ++j) {
      for (int m = 1; m < p; ++m) targets.push_back(group_->pow(normalized_u_[j], m));
    }
    for (Elem zeta : targets) {
      const std::array<Elem, 1> gens{xi};
      const std::array<Elem, 1> images{zeta};
      const int cent = group_->is_central(zeta) ? p * p * p : p * p;
      out.push_back({{GroupMorphism::from_generators(*group_, q, gens, images), true}, p * p, cent});
    }
    return out;
  }
  out.push_back({{GroupMorphism::inclusion(*group_, q), true}, p * p * p, p * p * p});
  return out;
}

FusionSystem build_fusion_system(const FusionSystemSpec& spec) { return FusionSystem(spec); }

std::vector<std::pair<std::pair<int, int>, FusionMorphism>> normalized_isos(const FusionSystem& fs) {
  std::vector<std::pair<std::pair<int, int>, FusionMorphism>> out;
  const int p = fs.prime();
  for (int i = 0; i <= p; ++i) {
    for (int j = 0; j <= p; ++j) {
      if (fs.conjugate_lines(i, j)) out.push_back({{i, j}, {fs.alpha(i, j), true}});
    }
  }
  return out;
}

}  // namespace fusionbiset
