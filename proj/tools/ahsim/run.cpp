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

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "ahsim/app.hpp"
#include "ahsim/sparse_operator.hpp"

namespace ahsim::app {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

/// Thread count: --threads, then the config, then AHSIM_THREADS, then 1.
int resolveThreads(const RunOptions& opt, const json& cfg) {
  if (opt.threads) return *opt.threads;
  if (cfg.contains("threads")) return cfg.at("threads");
  if (const char* env = std::getenv("AHSIM_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1 && n <= 4096) return static_cast<int>(n);
    throw ConfigError({"AHSIM_THREADS must be an integer in [1, 4096]"});
  }
  return 1;
}

void writeFile(const fs::path& p, const std::string& content) {
  std::ofstream os(p, std::ios::binary);
  os.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!os) throw Error("cannot write " + p.string());
}

int execute(const std::string& path, const RunOptions& opt, std::ostream& out) {
  json doc = loadConfigFile(path);
  if (opt.seed) doc["seed"] = *opt.seed;
  if (opt.out) doc["output"] = *opt.out;
  const json cfg = validateConfig(doc);
  if (opt.dryRun) {
    out << canonicalText(cfg);
    return kOk;
  }

  const fs::path dir = cfg.value("output", std::string("ahsim-out"));
  if (fs::exists(dir / "manifest.json")) {
    throw ConfigError({"output directory " + dir.string() +
                       " already holds a run (manifest.json); choose another"});
  }
  const int threads = resolveThreads(opt, cfg);
  setThreadCount(threads);

  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Artifact> artifacts = executeMode(cfg);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  fs::create_directories(dir);
  for (const auto& a : artifacts) writeFile(dir / a.name, a.content);
  // The output location does not affect results; keep it out of the hash.
  json embedded = cfg;
  embedded.erase("output");
  json manifest = buildManifest(embedded, artifacts, secs, threads);
  manifest["output"] = dir.string();
  writeFile(dir / "manifest.json", canonicalText(manifest));
  out << "wrote " << artifacts.size() << " artifacts to " << dir.string() << "\n";
  return kOk;
}

}  // namespace

int runCommand(const std::string& configPath, const RunOptions& options,
               std::ostream& out, std::ostream& err) {
  try {
    return execute(configPath, options, out);
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kConfig;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kConfig;
  } catch (const InfeasibleSector& e) {
    err << "infeasible sector: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ResourceLimit& e) {
    err << "resource guard: " << e.what() << " (bound " << e.bound() << ")\n";
    return kResource;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << " (best residual "
        << e.bestResidual() << ")\n";
    return kConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace ahsim::app
