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

#include <openssl/evp.h>

#include <Eigen/Core>
#include <cstdio>

#include "ahsim/app.hpp"

namespace ahsim::app {

using nlohmann::json;

std::string sha256Hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

// nlohmann::json keeps object keys sorted, so dump() is already canonical.
std::string canonicalText(const json& j) { return j.dump(2) + "\n"; }

json buildManifest(const json& config, const std::vector<Artifact>& artifacts,
                   double seconds, int threads) {
  json files = json::array();
  for (const auto& a : artifacts) {
    files.push_back({{"name", a.name},
                     {"bytes", a.content.size()},
                     {"sha256", sha256Hex(a.content)}});
  }
  return {{"ahsim_manifest", 1},
          {"schema", "ahsim.manifest.v1"},
          {"config", config},
          {"config_sha256", sha256Hex(canonicalText(config))},
          {"artifacts", files},
          {"versions",
           {{"ahsim", AHSIM_VERSION},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                          std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION)},
            {"nlohmann_json",
             std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                 std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                 std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
            {"compiler", __VERSION__}}},
          {"timing", {{"wall_seconds", seconds}, {"threads", threads}}}};
}

}  // namespace ahsim::app
