// Copyright 2026 The certilab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "certilab/parallel.hpp"
#include "certilab/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"certilab: certifiability of many-qubit states under local white noise"};
  app.require_subcommand(1);

  std::string scenario;
  int jobs = certilab::default_jobs();
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  CLI::App* run = app.add_subcommand("run", "Run a JSON scenario file");
  run->add_option("scenario", scenario, "Scenario JSON file")->required();
  run->add_option("--jobs,-j", jobs, "Worker threads (output does not depend on this)")->check(CLI::PositiveNumber);
  CLI::Option* seed_opt = run->add_option("--seed", seed, "Override the scenario RNG seed");
  run->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return certilab::kExitValidation;
  }

  certilab::RunOptions options;
  options.jobs = jobs;
  if (seed_opt->count() > 0) options.seed = seed;
  options.out_dir = out_dir;
  try {
    return certilab::run_scenario(scenario, options, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
