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

#include <iostream>

#include <CLI11.hpp>

#include "ahsim/app.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ahsim: lattice Abelian-Higgs simulator"};
  app.set_version_flag("--version", AHSIM_VERSION);
  app.require_subcommand(1);

  ahsim::app::RunOptions opts;
  std::string config;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string outDir;

  auto* run = app.add_subcommand("run", "Run an experiment configuration");
  run->add_option("config", config, "Configuration JSON (or a run manifest)")
      ->required();
  auto* outOpt = run->add_option("--out", outDir, "Output directory");
  auto* seedOpt = run->add_option("--seed", seed, "Override the seed");
  auto* thrOpt = run->add_option("--threads", threads, "Worker threads")
                     ->check(CLI::Range(1, 4096));
  run->add_flag("--dry-run", opts.dryRun, "Print the normalized configuration");

  std::string vconfig;
  auto* validate =
      app.add_subcommand("validate", "Validate a configuration and print it normalized");
  validate->add_option("config", vconfig, "Configuration JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : ahsim::app::kConfig;
  }

  if (*validate) {
    opts.dryRun = true;
    return ahsim::app::runCommand(vconfig, opts, std::cout, std::cerr);
  }
  if (*outOpt) opts.out = outDir;
  if (*seedOpt) opts.seed = seed;
  if (*thrOpt) opts.threads = threads;
  return ahsim::app::runCommand(config, opts, std::cout, std::cerr);
}
