// Copyright 2026 The ahsim Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ahsim/common.hpp"

namespace ahsim::app {

/// Every problem found in a configuration document.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfig = 2,
  kInfeasible = 3,
  kResource = 4,
  kConvergence = 5,
};

/// Validates a run configuration and returns it with every default filled
/// in. Unknown keys are errors. All problems are collected before throwing.
nlohmann::json validateConfig(const nlohmann::json& doc);

/// Reads a configuration file. A run manifest is accepted too; its embedded
/// configuration is used.
nlohmann::json loadConfigFile(const std::string& path);

struct RunOptions {
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool dryRun = false;
};

/// Runs one configuration; returns the process exit code.
int runCommand(const std::string& configPath, const RunOptions& options,
               std::ostream& out, std::ostream& err);

/// Artifacts of one mode: file name and content.
struct Artifact {
  std::string name;
  std::string content;
};

/// Executes a validated configuration without touching the filesystem.
std::vector<Artifact> executeMode(const nlohmann::json& config);

std::string sha256Hex(const std::string& data);

/// Canonical text of a JSON document (sorted keys, two-space indent).
std::string canonicalText(const nlohmann::json& j);

nlohmann::json buildManifest(const nlohmann::json& config,
                             const std::vector<Artifact>& artifacts,
                             double seconds, int threads);

}  // namespace ahsim::app
