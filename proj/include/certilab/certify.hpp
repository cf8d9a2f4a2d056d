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

#ifndef CERTILAB_CERTIFY_HPP
#define CERTILAB_CERTIFY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "certilab/hamiltonians.hpp"
#include "certilab/hilbert.hpp"

/// Certifiability under local depolarizing noise:
///
///   C(psi) = min over |phi> orthogonal to |psi> of D[E(psi), E(phi)]
///
/// computed by search, together with closed-form lower and upper bounds and
/// the tools for classifying how C decays with system size.
namespace certilab {

struct Limits {
  int exact_max_qubits = 8;
  int pairwise_max_qubits = 10;
};

inline constexpr int kHardQubitLimit = 12;

/// Default caps, or both set to CERTILAB_MAX_QUBITS when that variable holds an
/// integer in [1, 12]. Any other value throws std::invalid_argument.
Limits limits_from_environment();

struct OptimizerOptions {
  int restarts = 32;
  /// Global evaluation budget, split evenly across restarts.
  long max_evaluations = 50000;
  double relative_tolerance = 1e-9;
  int stall_window = 20;
  std::uint64_t seed = 0;
  /// Worker threads for restarts; results do not depend on this value.
  int jobs = 1;
  int max_qubits = 8;
  /// Candidate minimizers tried before the generated seeds (projected onto
  /// the orthogonal complement of psi).
  std::vector<StateVector> extra_seeds;
};

struct OptimizerReport {
  int restarts = 0;
  long iterations = 0;
  long evaluations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
  int best_restart = -1;
};

struct NamedValue {
  std::string name;
  double value = 0.0;
};

struct CertificationResult {
  /// Best value found; an upper bound on C(psi).
  double value = 0.0;
  StateVector argmin_state;
  std::vector<NamedValue> lower_bounds;
  std::vector<NamedValue> upper_bounds;
  OptimizerReport optimizer_report;

  /// Every lower bound - slack <= value <= every upper bound + slack.
  bool bounds_consistent(double slack = 1e-7) const;
};

CertificationResult certifiability_exact(const StateVector& psi, double p, const OptimizerOptions& opts = {});

/// D[E(psi), E(phi)].
double pairwise_noisy_distance(const StateVector& psi, const StateVector& phi, double p);

enum class WitnessRoute {
  /// 1/2 |Tr[E(A) (psi - phi)]|, damping the observable.
  adjoint,
  /// 1/2 |Tr[A (E(psi) - E(phi))]|, damping the states.
  direct,
};

/// Lower bound on D[E(psi), E(phi)] from an observable of spectral radius at
/// most 1 (throws if above 1 + 1e-9).
double witness_lower_bound(const StateVector& psi, const StateVector& phi, const Observable& a, double p,
                           WitnessRoute route = WitnessRoute::adjoint);

/// p^k * gap / 2 for the unique ground state of h, after rescaling h to unit
/// spectral radius; k is the locality of h. Throws std::domain_error if the
/// ground space is degenerate or the gap vanishes.
double gapped_ground_state_bound(const PauliHamiltonian& h, double p);

/// q^{n_eff} with q = 1 - (1 - p)^{n / n_eff}: upper bound on C for a
/// superposition of branches that every one of n_eff groups tells apart.
double macro_upper_bound(int n, int n_eff, double p);

/// [q + eps (1 - q)]^{n_eff}: the same bound when each group distinguishes
/// the branches with success probability 1 - eps.
double epsilon_macro_bound(int n_eff, double q, double eps);

/// D[E(psi), E(a psi + (1 - a) phi)] for each a in the grid.
std::vector<double> mixture_family_check(const StateVector& psi, const StateVector& phi, double p,
                                         std::span<const double> a_grid);

/// || Tr_group(|psi0><psi1|) ||_1.
double off_diagonal_group_trace(const StateVector& psi0, const StateVector& psi1, std::span<const int> group);

/// value > delta and value > 2 eps.
bool epsilon_ball_certifiable(double value, double delta, double eps);
bool epsilon_ball_certifiable(const CertificationResult& result, double delta, double eps);

enum class SweepQuantity { exact, pairwise, bound };
std::string to_string(SweepQuantity q);
SweepQuantity parse_sweep_quantity(const std::string& s);

struct SweepRecord {
  std::string family;
  int n = 0;
  double p = 0.0;
  std::string quantity;
  double value = 0.0;
  SweepQuantity kind = SweepQuantity::pairwise;
  /// Only meaningful for kind == exact.
  bool converged = true;
};

enum class DecayClass { exponential, polynomial, inconclusive };
std::string to_string(DecayClass c);

struct DecayFit {
  DecayClass classification = DecayClass::inconclusive;
  /// Slope of the winning model (d log C / dN for exponential, d log C /
  /// d log N for polynomial); exponential slope when inconclusive.
  double slope = 0.0;
  double exponential_slope = 0.0;
  double polynomial_slope = 0.0;
  double exponential_residual = 0.0;
  double polynomial_residual = 0.0;
  /// At least one value was <= 0 and clamped to 1e-300.
  bool clamped = false;
};

/// Least-squares fits of log C against N and against log N. A model wins if
/// its residual sum is at most residual(loser) / margin. Requires at least 4
/// records with strictly increasing N. Non-decaying data that both models fit
/// exactly counts as polynomial.
DecayFit classify_decay(std::span<const SweepRecord> records, double margin = 2.0);
DecayFit classify_decay(std::span<const int> sizes, std::span<const double> values, double margin = 2.0);

}  // namespace certilab

#endif  // CERTILAB_CERTIFY_HPP
