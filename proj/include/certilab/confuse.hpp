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

#ifndef CERTILAB_CONFUSE_HPP
#define CERTILAB_CONFUSE_HPP

#include <functional>
#include <span>
#include <vector>

#include "certilab/certify.hpp"
#include "certilab/channels.hpp"
#include "certilab/hamiltonians.hpp"
#include "certilab/hilbert.hpp"

/// Confusability of orthogonal state sets under noise, and the
/// group-distinguishability picture of macroscopic superpositions.
namespace certilab {

/// Members of a state family at a given qubit count. Every call must return
/// the same number of mutually orthogonal states.
using FamilyMembers = std::function<std::vector<StateVector>(int n)>;

struct PairDecay {
  int first = 0;
  int second = 0;
  DecayFit fit;
};

struct ConfusabilityMatrix {
  std::vector<int> sizes;
  double p = 0.0;
  int members = 0;
  /// distances[s](i, j) = D[E(psi_i), E(psi_j)] at qubit count sizes[s].
  std::vector<Eigen::MatrixXd> distances;
  /// One entry per pair i < j, empty when members < 2.
  std::vector<PairDecay> pairs;
};

/// max_ij |<psi_i|psi_j> - delta_ij|.
double gram_deviation(std::span<const StateVector> states);

/// Symmetric zero-diagonal matrix of noisy distances. Throws if the states are
/// not orthonormal within 1e-10.
Eigen::MatrixXd distance_matrix(std::span<const StateVector> states, double p);

/// Distance matrices over the size sweep (computed in parallel over sizes)
/// and a decay classification per pair. Pairs need at least 4 sizes.
ConfusabilityMatrix confusability_matrix(const FamilyMembers& family, double p, std::span<const int> sizes,
                                         int jobs = 1);

/// D[E(psi_1), E(mean_j |psi_j><psi_j|)].
double equal_mixture_distance(std::span<const StateVector> states, double p);

inline constexpr double kDefaultGapThreshold = 1e-6;

/// Ground-space degeneracy of h, an upper bound on the confusability index of
/// each ground state. Throws std::domain_error when the gap above the ground
/// space is below `gap_threshold`.
int confusability_index_upper_bound(const PauliHamiltonian& h, double gap_threshold = kDefaultGapThreshold);

struct GroupDistinguishability {
  std::vector<int> group;
  /// Helstrom success probability 1/2 + D(rho_0, rho_1)/2 on the group.
  double success_probability = 0.5;
};

GroupDistinguishability group_success_probability(const StateVector& psi0, const StateVector& psi1,
                                                  std::span<const int> group);

/// Candidate groupings of n qubits, tried in order.
using GroupingStrategy = std::function<std::vector<Grouping>(int n)>;

/// Blocks {0..m-1}, {m..2m-1}, ... for every m dividing n, smallest m first.
std::vector<Grouping> contiguous_blocks(int n);

/// Largest group count among the candidate groupings for which every group
/// distinguishes the branches with probability >= 1 - eps; 1 if none does.
/// Requires eps in [0, 1/2).
int effective_size(const StateVector& psi0, const StateVector& psi1, double eps,
                   const GroupingStrategy& strategy = contiguous_blocks);

struct IndependenceEntry {
  int first_group = 0;
  int second_group = 0;
  /// max over both branches of |<A_i A_j> - <A_i><A_j>|.
  double correlation = 0.0;
};

/// Correlation of the optimal +/-1 group observables A_i (sign of the
/// reduced-state difference, zero eigenvalues sent to +1), per group pair.
std::vector<IndependenceEntry> independence_diagnostic(const StateVector& psi0, const StateVector& psi1,
                                                       const Grouping& groups);

}  // namespace certilab

#endif  // CERTILAB_CONFUSE_HPP
