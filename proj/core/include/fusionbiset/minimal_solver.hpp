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

#ifndef FUSIONBISET_MINIMAL_SOLVER_HPP_
#define FUSIONBISET_MINIMAL_SOLVER_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "fusionbiset/biset_algebra.hpp"
#include "fusionbiset/fusion_data.hpp"
#include "fusionbiset/rational.hpp"

namespace fusionbiset {

enum class Side { kLeft, kRight };
std::string to_string(Side side);

// Free coefficients of a stable biset supported on F-classes: the
// coefficients of the identity classes [Q, id] for Q = S, V_i, <z>, <u_i>
// and the trivial subgroup. Lines index c1 and c2u.
struct CoefficientTuple {
  std::int64_t c0 = 1;
  std::vector<std::int64_t> c1;
  std::int64_t c2z = 0;
  std::vector<std::int64_t> c2u;
  std::int64_t c3 = 0;

  auto operator<=>(const CoefficientTuple&) const = default;
};
std::string to_string(const CoefficientTuple& t);

// c = (constant + sum coeff[v] * var_v), exact.
struct AffineForm {
  Rational constant = 0;
  std::vector<Rational> coeff;
};

// The stability equations solved layer by layer: every F-class
// coefficient as an affine function of the free coefficients.
class LayerSystem {
 public:
  LayerSystem(std::shared_ptr<const FClassCatalog> catalog, Side side);

  const FClassCatalog& catalog() const { return *catalog_; }
  std::shared_ptr<const FClassCatalog> shared_catalog() const { return catalog_; }
  Side side() const { return side_; }
  int prime() const { return catalog_->system().prime(); }
  int variable_count() const { return 2 * prime() + 5; }
  int var_c0() const { return 0; }
  int var_c1(int line) const { return 1 + line; }
  int var_c2z() const { return prime() + 2; }
  int var_c2u(int line) const { return prime() + 3 + line; }
  int var_c3() const { return 2 * prime() + 4; }
  std::string variable_name(int v) const;
  std::vector<std::int64_t> flatten(const CoefficientTuple& t) const;
  CoefficientTuple unflatten(const std::vector<std::int64_t>& values) const;

  const AffineForm& form(int class_index) const { return forms_.at(class_index); }
  // Index of the anchor variable of an identity class, or -1.
  int anchor_variable(int class_index) const { return anchor_var_.at(class_index); }
  Rational evaluate(int class_index, const std::vector<std::int64_t>& values) const;
  // e(X) as an affine function of the free coefficients.
  AffineForm size_form() const;

 private:
  std::shared_ptr<const FClassCatalog> catalog_;
  Side side_;
  std::vector<AffineForm> forms_;
  std::vector<int> anchor_var_;
};

struct Infeasibility {
  std::string constraint;
  std::string value;
};

struct Layer2Key {
  Layer2Source source = Layer2Source::kZ;
  int i = -1;
  Layer2Target target = Layer2Target::kZ;
  int j = -1;
  int m = 1;

  auto operator<=>(const Layer2Key&) const = default;
};
std::string to_string(const Layer2Key& key);

struct LayerCoefficients {
  std::int64_t c0 = 1;
  std::vector<std::int64_t> c1;
  std::map<Layer2Key, std::int64_t> c2;
  std::int64_t c3 = 0;
};

// Evaluates the system at a tuple; the first negative or non-integral
// class coefficient (or p | c0) is returned as the witness.
std::variant<IntBiset, Infeasibility> realize_tuple(const LayerSystem& system, const CoefficientTuple& t);

// c0 copies of every [S, alpha], alpha in Out_F(S). Throws
// std::invalid_argument if p | c0.
IntBiset layer0(const FusionSystem& fs, std::int64_t c0);
// c1(i) on extendable classes and c0 + p c1(i) on nonextendable classes,
// with c1 indexed by line.
IntBiset layer1(const FClassCatalog& catalog, std::int64_t c0, const std::vector<std::int64_t>& c1);
std::variant<LayerCoefficients, Infeasibility> solve_layer2(const LayerSystem& system, std::int64_t c0,
                                                            const std::vector<std::int64_t>& c1, std::int64_t c2z,
                                                            const std::vector<std::int64_t>& c2u);

struct UniquenessCertificate {
  Side side = Side::kRight;
  std::int64_t e_bound = 0;
  std::vector<CoefficientTuple> solutions;
  std::int64_t tuples_examined = 0;
  bool minimal = false;
  bool unique = false;
};

// Every feasible tuple with e <= e_bound, by exhaustive search with
// lower-bound pruning. minimal/unique refer to the expected tuple.
UniquenessCertificate certify_uniqueness(const LayerSystem& system, std::int64_t e_bound,
                                         const CoefficientTuple& expected);

struct NamedCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool ok = false;
};

struct SolverResult {
  std::string system;
  int p = 0;
  int f = 0;
  int out_order = 0;
  IntBiset biset;
  CoefficientTuple tuple;
  LayerCoefficients coefficients;
  std::int64_t d0 = 0;
  std::int64_t d1 = 0;
  std::int64_t d2 = 0;
  std::int64_t e = 0;
  std::optional<std::int64_t> exoticity_bound;
  StabilityReport left_stability;
  StabilityReport right_stability;
  UniquenessCertificate left_certificate;
  UniquenessCertificate right_certificate;
  bool opposite_invariant = false;
  bool sides_agree = false;
  std::vector<NamedCheck> cross_checks;
  bool minimal = false;
  bool unique = false;

  bool all_certified() const;
};

// The tuple c0 = 1, c1 = 0, c2z = 0, c2u(i) = f - r_i, c3 = 0.
CoefficientTuple minimal_tuple(const FusionSystem& fs);

SolverResult minimal_biset(const FusionSystemSpec& spec);
SolverResult minimal_biset(std::shared_ptr<const FClassCatalog> catalog);

// (e - 1) log_p|S| + sum_{i >= 1} floor(e / p^i)
std::int64_t exoticity_bound(std::int64_t e, int p, int log_p_S = 3);

struct TableRow {
  std::string system;
  int p = 0;
  std::int64_t f = 0, d0 = 0, d1 = 0, d2 = 0, e = 0;
  std::optional<std::int64_t> bound;
};

struct TableCheck {
  TableRow computed;
  std::optional<TableRow> expected;
  bool pass = false;
  std::string diff;
};

// Published values for the six built-in systems.
std::optional<TableRow> reference_row(const std::string& system);
TableRow table_row(const SolverResult& r);
TableCheck check_row(const SolverResult& r);

nlohmann::json tuple_to_json(const CoefficientTuple& t);
CoefficientTuple tuple_from_json(const nlohmann::json& j);
nlohmann::json result_to_json(const SolverResult& r);

}  // namespace fusionbiset

#endif  // FUSIONBISET_MINIMAL_SOLVER_HPP_
