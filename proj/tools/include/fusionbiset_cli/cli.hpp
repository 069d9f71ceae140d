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

#ifndef FUSIONBISET_CLI_CLI_HPP_
#define FUSIONBISET_CLI_CLI_HPP_

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fusionbiset/fusion_data.hpp"

namespace fusionbiset::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

enum class Format { kTable, kJson };
enum class OracleLevel { kOff, kP3Exhaustive, kSampled };

struct RunConfig {
  std::string command;
  std::string system;
  std::string config_path;
  Format format = Format::kTable;
  OracleLevel oracle = OracleLevel::kOff;
  int verbosity = 0;
  bool big = false;
  bool all = false;
  bool table = false;
  bool stability = false;
  bool idempotent = false;
  bool realize = false;
  bool all_lines = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The spec named by --system or --config; throws UsageError.
FusionSystemSpec resolve_system(const RunConfig& cfg);
// All six built-ins unless a system is named.
std::vector<FusionSystemSpec> resolve_systems(const RunConfig& cfg);

int cmd_systems_list(const RunConfig& cfg, std::ostream& out);
int cmd_minimal(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_idempotent(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_realize(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fusionbiset::cli

#endif  // FUSIONBISET_CLI_CLI_HPP_
