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

#ifndef CERTILAB_SCENARIO_HPP
#define CERTILAB_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "certilab/certify.hpp"
#include "certilab/families.hpp"
#include "certilab/hamiltonians.hpp"

#include "json.hpp"

/// Batch scenarios: a JSON file names a command, a family and parameter
/// grids; running it writes a JSON result (and a CSV table for commands that
/// produce sweep records) with no numerics of its own.
namespace certilab {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNotConverged = 3;
inline constexpr const char* kSchemaVersion = "1";

/// Raised for anything wrong with a scenario: malformed JSON, unknown keys or
/// values, out-of-range parameters. Maps to exit code 2.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { certify, sweep, bounds, confuse, effective_size, gap, verify_channel };
std::string to_string(Command c);

struct HamiltonianSource {
  /// dicke-hamiltonian, graph-hamiltonian, neg-jz-squared, custom, or a
  /// state-family name whose parent Hamiltonian is used.
  std::string name;
  std::vector<PauliTerm> terms;
  std::optional<int> pad_to_weight;
};

struct Scenario {
  Command command = Command::certify;
  FamilySpec family;
  std::optional<HamiltonianSource> hamiltonian;
  std::vector<int> sizes;
  std::vector<double> ps;
  SweepQuantity quantity = SweepQuantity::pairwise;
  OptimizerOptions optimizer;
  std::uint64_t seed = 0;
  double eps = 0.0;
  std::optional<double> delta;
  /// verify-channel: correction-map register sizes and random samples.
  std::vector<int> group_sizes{1, 2, 3};
  int samples = 100;
  std::string json_name;
  std::string csv_name;
};

/// p = exp(-gamma t); gamma, t >= 0.
double gamma_t_to_p(double gamma, double t);

Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);

/// Header family,N,p,quantity,value,kind; rows stably sorted by (N, p);
/// numbers printed with 12 significant digits.
std::string emit_csv(std::span<const SweepRecord> records);

struct ScenarioOutput {
  std::string json;
  std::optional<std::string> csv;
  bool converged = true;
};

/// Runs the scenario in memory. Library validation failures surface as
/// ScenarioError.
ScenarioOutput execute_scenario(const Scenario& scenario, int jobs, const Limits& limits);

struct RunOptions {
  int jobs = 0;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = ".";
};

/// Loads, executes and writes outputs. Returns 0, 2 (validation, nothing
/// written) or 3 (some optimization did not converge, outputs written).
int run_scenario(const std::filesystem::path& path, const RunOptions& options, std::ostream& log);

}  // namespace certilab

#endif  // CERTILAB_SCENARIO_HPP
