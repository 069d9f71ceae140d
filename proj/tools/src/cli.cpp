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

#include "fusionbiset_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "fusionbiset/biset_algebra.hpp"
#include "fusionbiset/errors.hpp"
#include "fusionbiset/fusion_data.hpp"
#include "fusionbiset/idempotent.hpp"
#include "fusionbiset/minimal_solver.hpp"
#include "fusionbiset/oracle.hpp"
#include "fusionbiset/parallel.hpp"
#include "fusionbiset/rational.hpp"
#include "fusionbiset/realization.hpp"

namespace fusionbiset::cli {
namespace {

constexpr int kOracleSamples = 200;
constexpr std::uint64_t kOracleSeed = 20240601;

std::shared_ptr<const FClassCatalog> make_catalog(const FusionSystemSpec& spec) {
  auto fs = std::make_shared<const FusionSystem>(spec);
  return std::make_shared<const FClassCatalog>(fs);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string class_structure(const FusionSystemSpec& spec) {
  std::ostringstream out;
  for (std::size_t c = 0; c < spec.classes.size(); ++c) {
    if (c) out << ' ';
    out << '{';
    for (std::size_t k = 0; k < spec.classes[c].lines.size(); ++k) {
      if (k) out << ',';
      out << spec.classes[c].lines[k];
    }
    out << "}:" << spec.classes[c].r;
  }
  return out.str();
}

std::string join(const std::vector<std::int64_t>& v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << v[k];
  out << ')';
  return out.str();
}

void print_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

std::string label_of(const FClassCatalog& catalog, const ClassKey& key) {
  if (auto idx = catalog.find(key)) return describe(catalog.classes()[*idx].label);
  return to_string(key);
}

template <class T>
void print_terms(std::ostream& out, const FClassCatalog& catalog, const FormalBiset<T>& b, const std::string& indent) {
  std::vector<std::pair<int, ClassKey>> ordered;
  for (const auto& [key, term] : b.terms()) {
    const auto idx = catalog.find(key);
    ordered.emplace_back(idx ? *idx : static_cast<int>(catalog.classes().size()), key);
  }
  std::sort(ordered.begin(), ordered.end());
  for (const auto& [idx, key] : ordered) {
    const BisetTerm<T>& term = b.terms().at(key);
    std::ostringstream coeff;
    if constexpr (std::is_same_v<T, Rational>) {
      coeff << to_fraction_string(term.coeff);
    } else {
      coeff << term.coeff;
    }
    out << indent << std::left << std::setw(28) << label_of(catalog, key) << coeff.str() << '\n';
  }
}

void print_solver_table(std::ostream& out, const FClassCatalog& catalog, const SolverResult& r,
                        const FusionSystemSpec& spec, bool verbose) {
  out << "system        " << r.system << (spec.alias.empty() ? "" : " (" + spec.alias + ")") << '\n';
  out << "prime         " << r.p << '\n';
  out << "group         " << spec.realizing_group << '\n';
  out << "|Out_F(S)|    " << r.out_order << '\n';
  out << "f             " << r.f << '\n';
  out << "d0 d1 d2      " << r.d0 << ' ' << r.d1 << ' ' << r.d2 << '\n';
  out << "e             " << r.e << '\n';
  if (r.exoticity_bound) out << "bound         " << *r.exoticity_bound << '\n';
  out << "\ncertificates\n";
  out << "  left stable      " << yes_no(r.left_stability.stable) << " (" << r.left_stability.checked << " checks)\n";
  out << "  right stable     " << yes_no(r.right_stability.stable) << " (" << r.right_stability.checked
      << " checks)\n";
  out << "  minimal          " << yes_no(r.minimal) << '\n';
  out << "  unique           " << yes_no(r.unique) << " (left " << r.left_certificate.solutions.size() << " of "
      << r.left_certificate.tuples_examined << ", right " << r.right_certificate.solutions.size() << " of "
      << r.right_certificate.tuples_examined << " tuples at e <= " << r.right_certificate.e_bound << ")\n";
  out << "  opposite         " << yes_no(r.opposite_invariant) << '\n';
  out << "  sides agree      " << yes_no(r.sides_agree) << '\n';
  std::size_t ok_checks = 0;
  for (const NamedCheck& c : r.cross_checks) ok_checks += c.ok ? 1 : 0;
  out << "  cross checks     " << ok_checks << "/" << r.cross_checks.size() << " ok\n";
  for (const NamedCheck& c : r.cross_checks) {
    if (c.ok && !verbose) continue;
    out << "    " << (c.ok ? "ok   " : "FAIL ") << c.name << ": " << c.actual
        << (c.ok ? "" : " (expected " + c.expected + ")") << '\n';
  }
  out << "\ncoefficients\n";
  out << "  c0   " << r.tuple.c0 << '\n';
  out << "  c1   " << join(r.tuple.c1) << '\n';
  out << "  c2z  " << r.tuple.c2z << '\n';
  out << "  c2u  " << join(r.tuple.c2u) << '\n';
  out << "  c3   " << r.tuple.c3 << '\n';
  for (int layer = 0; layer <= 3; ++layer) {
    const IntBiset part = r.biset.layer(layer);
    if (part.empty()) continue;
    out << "\nlayer " << layer << " (" << part.support_size() << " classes, count " << part.layer_count(layer)
        << ")\n";
    print_terms(out, catalog, part, "  ");
  }
}

void report_solver_failures(std::ostream& err, const SolverResult& r, const TableCheck& row) {
  if (row.expected && !row.pass) err << "table mismatch: " << row.diff << '\n';
  if (!r.left_stability.stable) {
    err << "left stability fails at " << r.left_stability.witness_description << ": " << r.left_stability.lhs
        << " != " << r.left_stability.rhs << '\n';
  }
  if (!r.right_stability.stable) {
    err << "right stability fails at " << r.right_stability.witness_description << ": " << r.right_stability.lhs
        << " != " << r.right_stability.rhs << '\n';
  }
  if (!r.minimal) err << "minimality certificate failed\n";
  if (!r.unique) err << "uniqueness certificate failed\n";
  if (!r.opposite_invariant) err << "biset is not invariant under the opposite operation\n";
  if (!r.sides_agree) err << "left and right solves disagree\n";
  for (const NamedCheck& c : r.cross_checks) {
    if (!c.ok) err << "cross check " << c.name << ": expected " << c.expected << ", got " << c.actual << '\n';
  }
}

bool solver_ok(const SolverResult& r, const TableCheck& row) { return r.all_certified() && (!row.expected || row.pass); }

std::string row_text(const TableRow& row) {
  std::ostringstream out;
  out << "p=" << row.p << " f=" << row.f << " d0=" << row.d0 << " d1=" << row.d1 << " d2=" << row.d2
      << " e=" << row.e;
  if (row.bound) out << " bound=" << *row.bound;
  return out.str();
}

bool needs_big(const FusionSystemSpec& spec) { return spec.p >= 7; }

RealizationOptions realization_options(const RunConfig& cfg, const FusionSystemSpec& spec, std::ostream& err,
                                       std::mutex& err_mutex) {
  RealizationOptions opts;
  opts.all_lines = cfg.all_lines;
  if (cfg.verbosity > 0 || needs_big(spec)) {
    opts.progress = [&err, &err_mutex, name = spec.name](const std::string& msg) {
      std::lock_guard lock(err_mutex);
      err << "[" << name << "] " << msg << '\n';
    };
  }
  return opts;
}

void print_realization_table(std::ostream& out, const RealizationReport& r, bool show_time) {
  out << "system          " << r.system << '\n';
  out << "|J|             " << r.j_size << '\n';
  out << "blocks          " << r.block_count << '\n';
  out << "generators      " << r.generator_count << '\n';
  out << "orbits          " << r.orbit_count << (r.transitive() ? " (transitive)" : "") << '\n';
  out << "orbits (rev)    " << r.orbit_count_reversed << '\n';
  out << "|J0|            " << r.j0_size << '\n';
  out << "J0 orbits       " << r.j0_orbit_count << (r.j0_regular ? " (regular)" : "") << '\n';
  out << "permutations    " << (r.permutations_valid ? "valid" : "INVALID") << '\n';
  out << "equivariant     " << yes_no(r.equivariant) << '\n';
  out << "blocks->twists  " << yes_no(r.blocks_to_twists) << '\n';
  out << "essential lines";
  for (int line : r.essential_lines) out << ' ' << line;
  out << '\n';
  if (show_time) out << "wall seconds    " << std::fixed << std::setprecision(3) << r.wall_seconds << '\n';
  out << "status          " << (r.passed() ? "PASS" : "FAIL") << '\n';
}

struct SuiteResult {
  std::string suite;
  std::string system;
  std::string status;
  std::string detail;
};

struct SuiteSelection {
  bool table = false;
  bool stability = false;
  bool idempotent = false;
  bool realize = false;
  bool oracle = false;
};

SuiteSelection select_suites(const RunConfig& cfg) {
  SuiteSelection s{cfg.table, cfg.stability, cfg.idempotent, cfg.realize, cfg.oracle != OracleLevel::kOff};
  const bool any_explicit = cfg.table || cfg.stability || cfg.idempotent || cfg.realize;
  if (cfg.all || !any_explicit) {
    s.table = s.stability = s.idempotent = s.realize = true;
  }
  return s;
}

const char* status_of(bool ok) { return ok ? "PASS" : "FAIL"; }

std::vector<SuiteResult> run_system_suites(const RunConfig& cfg, const SuiteSelection& sel,
                                           const FusionSystemSpec& spec, std::ostream& err, std::mutex& err_mutex) {
  std::vector<SuiteResult> results;
  auto note = [&](const std::string& msg) {
    if (cfg.verbosity <= 0) return;
    std::lock_guard lock(err_mutex);
    err << "[" << spec.name << "] " << msg << '\n';
  };
  auto guarded = [&](const std::string& suite, const std::function<SuiteResult()>& body) {
    const auto start = std::chrono::steady_clock::now();
    try {
      results.push_back(body());
    } catch (const std::exception& e) {
      results.push_back({suite, spec.name, "FAIL", std::string("error: ") + e.what()});
    }
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    note(suite + " finished in " + std::to_string(took.count()) + " s");
  };

  auto catalog = make_catalog(spec);
  if (sel.oracle) {
    guarded("marks-oracle", [&] {
      const bool exhaustive = cfg.oracle == OracleLevel::kP3Exhaustive && spec.p == 3;
      const OracleReport rep =
          exhaustive ? oracle_exhaustive(*catalog) : oracle_sampled(*catalog, kOracleSamples, kOracleSeed);
      std::string detail = std::string(exhaustive ? "exhaustive" : "sampled") + " pairs=" +
                           std::to_string(rep.pairs) + " mismatches=" + std::to_string(rep.mismatches);
      if (!rep.first_mismatch.empty()) detail += " first: " + rep.first_mismatch;
      return SuiteResult{"marks-oracle", spec.name, status_of(rep.passed()), detail};
    });
  }

  std::optional<SolverResult> solved;
  if (sel.table || sel.stability || sel.realize) {
    try {
      solved = minimal_biset(catalog);
    } catch (const std::exception& e) {
      for (const char* suite : {"table", "stability", "realization"}) {
        results.push_back({suite, spec.name, "FAIL", std::string("minimal solve failed: ") + e.what()});
      }
      return results;
    }
    note("minimal biset solved, e=" + std::to_string(solved->e));
  }
  if (sel.table) {
    guarded("table", [&] {
      const TableCheck row = check_row(*solved);
      if (!row.expected) {
        return SuiteResult{"table", spec.name, "SKIP", row_text(row.computed) + " (no reference row)"};
      }
      return SuiteResult{"table", spec.name, status_of(row.pass),
                         row_text(row.computed) + (row.pass ? "" : " diff: " + row.diff)};
    });
  }
  if (sel.stability) {
    guarded("stability", [&] {
      const SolverResult& r = *solved;
      std::ostringstream detail;
      detail << "left " << r.left_stability.checked << " checks, right " << r.right_stability.checked
             << " checks, solutions at e<=" << r.right_certificate.e_bound << ": left "
             << r.left_certificate.solutions.size() << " right " << r.right_certificate.solutions.size();
      std::size_t failed_checks = 0;
      for (const NamedCheck& c : r.cross_checks) failed_checks += c.ok ? 0 : 1;
      if (failed_checks) detail << ", " << failed_checks << " cross checks failed";
      return SuiteResult{"stability", spec.name, status_of(r.all_certified()), detail.str()};
    });
  }
  if (sel.idempotent) {
    guarded("idempotent", [&] {
      const IdempotentReport rep = compute_idempotent(catalog);
      std::ostringstream detail;
      detail << "c0=" << to_fraction_string(rep.c0) << " closed=solve " << yes_no(rep.closed_form_matches_solve)
             << " p-local " << yes_no(rep.p_local);
      std::size_t bad_sums = 0;
      for (const DomainSum& s : rep.sums) bad_sums += s.ok ? 0 : 1;
      detail << " sums " << (bad_sums ? std::to_string(bad_sums) + " failed" : std::string("ok"));
      return SuiteResult{"idempotent", spec.name, status_of(rep.passed()), detail.str()};
    });
  }
  if (sel.realize) {
    if (needs_big(spec) && !cfg.big) {
      results.push_back({"realization", spec.name, "SKIP", "p=" + std::to_string(spec.p) + " needs --big"});
    } else {
      guarded("realization", [&] {
        const RealizationReport rep =
            check_transitivity(catalog->system(), solved->biset, realization_options(cfg, spec, err, err_mutex));
        std::ostringstream detail;
        detail << "|J|=" << rep.j_size << " orbits=" << rep.orbit_count << " J0 orbits=" << rep.j0_orbit_count
               << (rep.j0_regular ? " regular" : " not regular");
        return SuiteResult{"realization", spec.name, status_of(rep.passed()), detail.str()};
      });
    }
  }
  return results;
}

}  // namespace

FusionSystemSpec resolve_system(const RunConfig& cfg) {
  if (!cfg.config_path.empty()) {
    std::ifstream in(cfg.config_path);
    if (!in) throw UsageError("cannot open config file " + cfg.config_path);
    try {
      FusionSystemSpec spec = spec_from_json(nlohmann::json::parse(in));
      validate_spec(spec);
      return spec;
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("invalid config " + cfg.config_path + ": " + e.what());
    } catch (const FusionError& e) {
      throw UsageError("invalid config " + cfg.config_path + ": " + e.what());
    }
  }
  if (cfg.system.empty()) throw UsageError("a system is required (--system NAME or --config PATH)");
  if (auto spec = find_builtin(cfg.system)) return *spec;
  throw UsageError("unknown system '" + cfg.system + "' (see 'systems list')");
}

std::vector<FusionSystemSpec> resolve_systems(const RunConfig& cfg) {
  if (cfg.system.empty() && cfg.config_path.empty()) return builtin_systems();
  return {resolve_system(cfg)};
}

int cmd_systems_list(const RunConfig& cfg, std::ostream& out) {
  const std::vector<FusionSystemSpec> specs = builtin_systems();
  std::vector<int> out_orders(specs.size());
  for (std::size_t k = 0; k < specs.size(); ++k) out_orders[k] = static_cast<int>(build_out_F(specs[k]).size());
  if (cfg.format == Format::kJson) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t k = 0; k < specs.size(); ++k) {
      nlohmann::json j = spec_to_json(specs[k]);
      j["out_order"] = out_orders[k];
      j["f"] = f_number(specs[k]);
      arr.push_back(j);
    }
    print_json(out, arr);
    return kExitOk;
  }
  out << std::left << std::setw(8) << "name" << std::setw(7) << "alias" << std::setw(3) << "p" << std::setw(30)
      << "classes {lines}:r" << std::setw(7) << "|Out|" << std::setw(4) << "f"
      << "group\n";
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const FusionSystemSpec& s = specs[k];
    out << std::left << std::setw(8) << s.name << std::setw(7) << s.alias << std::setw(3) << s.p << std::setw(30)
        << class_structure(s) << std::setw(7) << out_orders[k] << std::setw(4) << f_number(s) << s.realizing_group
        << '\n';
  }
  return kExitOk;
}

int cmd_minimal(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const FusionSystemSpec spec = resolve_system(cfg);
  auto catalog = make_catalog(spec);
  const SolverResult r = minimal_biset(catalog);
  const TableCheck row = check_row(r);
  if (cfg.format == Format::kJson) {
    nlohmann::json j = result_to_json(r);
    j["group"] = spec.realizing_group;
    print_json(out, j);
  } else {
    print_solver_table(out, *catalog, r, spec, cfg.verbosity > 0);
  }
  if (!solver_ok(r, row)) {
    report_solver_failures(err, r, row);
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_idempotent(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const FusionSystemSpec spec = resolve_system(cfg);
  auto catalog = make_catalog(spec);
  const IdempotentReport rep = compute_idempotent(catalog);
  if (cfg.format == Format::kJson) {
    print_json(out, idempotent_to_json(rep));
  } else {
    out << "system   " << rep.system << " (p=" << rep.p << ")\n";
    out << "c0       " << to_fraction_string(rep.c0) << "\n";
    const std::pair<const char*, const RationalBiset*> layers[] = {
        {"omega0", &rep.omega0}, {"omega1", &rep.omega1}, {"omega2", &rep.omega2}};
    for (const auto& [name, layer] : layers) {
      out << '\n' << name << " (" << layer->support_size() << " classes)\n";
      print_terms(out, *catalog, *layer, "  ");
    }
    Rational layer_sum[3];
    for (const DomainSum& s : rep.sums) layer_sum[s.layer] += s.sum;
    out << "\nlayer sums\n";
    for (int r = 0; r < 3; ++r) out << "  layer " << r << "  " << to_fraction_string(layer_sum[r]) << '\n';
    out << "\ndomain sums\n";
    for (const DomainSum& s : rep.sums) {
      out << "  " << (s.ok ? "ok   " : "FAIL ") << std::left << std::setw(28) << s.domain
          << to_fraction_string(s.sum) << (s.ok ? "" : " (expected " + to_fraction_string(s.expected) + ")")
          << '\n';
    }
    out << "\nchecks\n";
    out << "  closed form = rational solve (left and right)  " << yes_no(rep.closed_form_matches_solve) << '\n';
    out << "  p-local                                        " << yes_no(rep.p_local) << '\n';
    out << "  layer-1 relation                               " << yes_no(rep.layer1_relation) << '\n';
    out << "  left stable                                    " << yes_no(rep.stability.left.stable) << '\n';
    out << "  right stable                                   " << yes_no(rep.stability.right.stable) << '\n';
    out << "  status                                         " << (rep.passed() ? "PASS" : "FAIL") << '\n';
  }
  if (!rep.passed()) {
    err << "idempotent checks failed for " << rep.system << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_realize(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const FusionSystemSpec spec = resolve_system(cfg);
  if (needs_big(spec) && !cfg.big) {
    throw UsageError("the realization check for p=" + std::to_string(spec.p) + " requires --big");
  }
  auto catalog = make_catalog(spec);
  const SolverResult r = minimal_biset(catalog);
  const TableCheck row = check_row(r);
  if (!solver_ok(r, row)) {
    report_solver_failures(err, r, row);
    return kExitFailure;
  }
  std::mutex err_mutex;
  const RealizationReport rep = check_transitivity(catalog->system(), r.biset, realization_options(cfg, spec, err, err_mutex));
  if (cfg.format == Format::kJson) {
    print_json(out, realization_to_json(rep));
  } else {
    print_realization_table(out, rep, cfg.verbosity > 0);
  }
  return rep.passed() ? kExitOk : kExitFailure;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::vector<FusionSystemSpec> specs = resolve_systems(cfg);
  const SuiteSelection sel = select_suites(cfg);
  std::vector<std::vector<SuiteResult>> per_system(specs.size());
  std::mutex err_mutex;
  auto body = [&](std::size_t k) { per_system[k] = run_system_suites(cfg, sel, specs[k], err, err_mutex); };
  if (specs.size() > 1) {
    parallel_for(specs.size(), body);
  } else {
    for (std::size_t k = 0; k < specs.size(); ++k) body(k);
  }

  const char* order[] = {"marks-oracle", "table", "stability", "idempotent", "realization"};
  std::vector<SuiteResult> all;
  for (const char* suite : order) {
    for (const auto& results : per_system) {
      for (const SuiteResult& s : results) {
        if (s.suite == suite) all.push_back(s);
      }
    }
  }
  int passed = 0, failed = 0, skipped = 0;
  for (const SuiteResult& s : all) {
    if (s.status == "PASS") ++passed;
    if (s.status == "FAIL") ++failed;
    if (s.status == "SKIP") ++skipped;
  }
  if (cfg.format == Format::kJson) {
    nlohmann::json arr = nlohmann::json::array();
    for (const SuiteResult& s : all) {
      arr.push_back({{"suite", s.suite}, {"system", s.system}, {"status", s.status}, {"detail", s.detail}});
    }
    print_json(out, {{"results", arr}, {"passed", passed}, {"failed", failed}, {"skipped", skipped}, {"ok", failed == 0}});
  } else {
    for (const SuiteResult& s : all) {
      out << s.status << "  " << std::left << std::setw(13) << s.suite << std::setw(8) << s.system << s.detail
          << '\n';
    }
    out << "verify: " << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
  }
  return failed == 0 ? kExitOk : kExitFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal characteristic bisets for fusion systems on p^{1+2}_+", "fusionbiset"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "table";
  std::string oracle = "off";

  auto add_common = [&](CLI::App* sub, bool takes_system) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json"}));
    sub->add_flag("-v,--verbose", cfg.verbosity, "Progress on stderr");
    if (takes_system) {
      auto* sys = sub->add_option("--system", cfg.system, "Built-in system name or alias");
      sub->add_option("--config", cfg.config_path, "Fusion-system spec file (JSON)")->excludes(sys);
    }
  };

  auto* systems = app.add_subcommand("systems", "Built-in fusion systems");
  systems->require_subcommand(1);
  auto* list = systems->add_subcommand("list", "List the built-in systems");
  add_common(list, false);

  auto* minimal = app.add_subcommand("minimal", "Minimal characteristic biset with certificates");
  add_common(minimal, true);

  auto* idempotent = app.add_subcommand("idempotent", "Characteristic idempotent layers 0 to 2");
  add_common(idempotent, true);

  auto* realize = app.add_subcommand("realize", "Transitivity of the wreath-product realization");
  add_common(realize, true);
  realize->add_flag("--big", cfg.big, "Allow the p=7 systems");
  realize->add_flag("--all-lines", cfg.all_lines, "Use an essential automorphism on every line");

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  add_common(verify, true);
  verify->add_flag("--all", cfg.all, "All suites");
  verify->add_flag("--table", cfg.table, "Reference table rows");
  verify->add_flag("--stability", cfg.stability, "Stability and uniqueness certificates");
  verify->add_flag("--idempotent", cfg.idempotent, "Idempotent closed forms and sums");
  verify->add_flag("--realize", cfg.realize, "Realization transitivity");
  verify->add_flag("--big", cfg.big, "Include the p=7 realization checks");
  verify->add_option("--oracle", oracle, "Marks oracle level")
      ->check(CLI::IsMember({"off", "p3-exhaustive", "sampled"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.format = format == "json" ? Format::kJson : Format::kTable;
  cfg.oracle = oracle == "p3-exhaustive" ? OracleLevel::kP3Exhaustive
               : oracle == "sampled"     ? OracleLevel::kSampled
                                         : OracleLevel::kOff;

  try {
    if (list->parsed()) {
      cfg.command = "systems list";
      return cmd_systems_list(cfg, out);
    }
    if (minimal->parsed()) {
      cfg.command = "minimal";
      return cmd_minimal(cfg, out, err);
    }
    if (idempotent->parsed()) {
      cfg.command = "idempotent";
      return cmd_idempotent(cfg, out, err);
    }
    if (realize->parsed()) {
      cfg.command = "realize";
      return cmd_realize(cfg, out, err);
    }
    if (verify->parsed()) {
      cfg.command = "verify";
      return cmd_verify(cfg, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace fusionbiset::cli
