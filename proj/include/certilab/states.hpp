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

#ifndef CERTILAB_STATES_HPP
#define CERTILAB_STATES_HPP

#include <span>
#include <utility>
#include <vector>

#include "certilab/hilbert.hpp"

/// Constructors for the state families studied by the library. All outputs
/// carry the canonical global phase (first nonzero amplitude real positive).
namespace certilab {

struct GraphSpec {
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edges;

  /// Throws on self-loops, out-of-range vertices or n_vertices < 1.
  void validate() const;
  std::vector<std::vector<int>> neighbourhoods() const;
  int max_degree() const;

  static GraphSpec empty(int n);
  /// Path 0 - 1 - ... - (n-1): the one-dimensional cluster state graph.
  static GraphSpec line(int n);
  static GraphSpec ring(int n);
};

/// |0>^N.
StateVector product_zero(int n);
/// (|0...0> + sign |1...1>) / sqrt(2), sign in {+1, -1}.
StateVector ghz(int n, int sign = +1);
/// Equal superposition of the C(n, k) basis states of Hamming weight k.
StateVector dicke(int n, int k);
/// prod_{(a,b) in E} CZ_ab |+>^N.
StateVector graph_state(const GraphSpec& g);
/// Stabilizer generator K_a = X_a prod_{b in N(a)} Z_b as a Pauli string.
std::vector<Pauli> graph_stabilizer(const GraphSpec& g, int vertex);

/// 2^{-m/2} sum_j exp(2 pi i j k / 2^m) |j>^{(x) n/m}, with j running over the
/// m-qubit computational basis of each contiguous block and k in 1..2^m.
StateVector phase_family(int n, int m, int k);
/// GHZ_{n/m}^{k_1} (x) ... (x) GHZ_{n/m}^{k_m}, block sign (-1)^{k_l}.
StateVector ghz_product_family(int n, int m, std::span<const int> bits);
/// (|0_L>^{n_groups} + sign |1_L>^{n_groups}) / sqrt(2) with
/// |0_L>, |1_L> = (|0>^m +/- |1>^m) / sqrt(2) on each block of m qubits.
StateVector logical_ghz(int n_groups, int m, int sign = +1);
/// |0_L>^{n_groups} or |1_L>^{n_groups} (value = 0 or 1).
StateVector logical_branch(int n_groups, int m, int value);

/// The confusable-but-locally-distinguishable family on an even number of
/// qubits, grouped into pairs:
///   psi  = (|00>^{n/2} + |01>^{n/2} + |10>^{n/2} + |11>^{n/2}) / 2
///   phi1 = (|00>^{n/2} - |11>^{n/2}) / sqrt(2)
///   phi2 = (|01>^{n/2} - |10>^{n/2}) / sqrt(2)
///   xi1, xi2 = (phi1 +/- phi2) / sqrt(2)
/// and the pair-parity witness sum over pairs of Z_{2j} Z_{2j+1}.
struct CounterexampleStates {
  StateVector psi;
  StateVector phi1;
  StateVector phi2;
  StateVector xi1;
  StateVector xi2;
  Observable witness;
};
CounterexampleStates counterexample_states(int n);

/// P_qubit |psi>.
StateVector apply_pauli(const StateVector& psi, Pauli p, int qubit);
/// (labels[0] (x) ... (x) labels[N-1]) |psi>.
StateVector apply_pauli_string(const StateVector& psi, std::span<const Pauli> labels);
/// (a |x> + b |y>) normalized, for orthogonal or linearly independent inputs.
StateVector superpose(const StateVector& x, const StateVector& y, Complex a, Complex b);

}  // namespace certilab

#endif  // CERTILAB_STATES_HPP
