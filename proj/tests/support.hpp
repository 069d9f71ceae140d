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

#ifndef FUSIONBISET_TESTS_SUPPORT_HPP_
#define FUSIONBISET_TESTS_SUPPORT_HPP_

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "fusionbiset/biset_algebra.hpp"
#include "fusionbiset/fusion_data.hpp"
#include "fusionbiset/minimal_solver.hpp"

namespace fusionbiset::test {

inline FusionSystemSpec builtin(const std::string& name) {
  auto spec = find_builtin(name);
  if (!spec) throw std::invalid_argument("no built-in system " + name);
  return *spec;
}

// Catalogs and minimal solves are shared across tests in one binary.
inline std::shared_ptr<const FClassCatalog> catalog(const std::string& name) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const FClassCatalog>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[name];
  if (!slot) slot = std::make_shared<const FClassCatalog>(std::make_shared<const FusionSystem>(builtin(name)));
  return slot;
}

inline const SolverResult& solved(const std::string& name) {
  static std::mutex mutex;
  static std::map<std::string, std::unique_ptr<SolverResult>> cache;
  auto cat = catalog(name);
  std::lock_guard lock(mutex);
  auto& slot = cache[name];
  if (!slot) slot = std::make_unique<SolverResult>(minimal_biset(cat));
  return *slot;
}

}  // namespace fusionbiset::test

#endif  // FUSIONBISET_TESTS_SUPPORT_HPP_
