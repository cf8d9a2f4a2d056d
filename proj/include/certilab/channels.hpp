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

#ifndef CERTILAB_CHANNELS_HPP
#define CERTILAB_CHANNELS_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "certilab/hilbert.hpp"

/// Local depolarizing noise at qubit and group granularity, plus the
/// correction map that splits per-qubit noise into group noise.
///
/// Every map here is linear and acts on arbitrary square operators, not only
/// on states; the DensityMatrix overloads are conveniences on top.
namespace certilab {

using Grouping = std::vector<std::vector<int>>;

struct NoiseModel {
  /// Per-qubit retention probability: rho -> p rho + (1 - p) Tr_i(rho) (x) I/2.
  double p = 1.0;
  /// Disjoint groups covering every qubit; absent means single-qubit groups.
  std::optional<Grouping> grouping;

  /// Throws std::invalid_argument on p outside [0, 1] or a grouping that is
  /// not a partition of {0, ..., n_qubits - 1}.
  void validate(int n_qubits) const;
  /// The explicit grouping, or singletons when none was given.
  Grouping groups(int n_qubits) const;
};

struct KrausSet {
  std::vector<Matrix> operators;

  /// max_ij |(sum_k K_k^dagger K_k - I)_ij|.
  double completeness_error() const;
  Matrix apply(const Matrix& op) const;
};

using LinearMap = std::function<Matrix(const Matrix&)>;

Matrix depolarize_qubit(const Matrix& op, int n_qubits, int qubit, double p);
DensityMatrix depolarize_qubit(const DensityMatrix& rho, int qubit, double p);

/// Product channel over every qubit.
DensityMatrix depolarize_all(const DensityMatrix& rho, double p);
/// Linear extension of depolarize_all to any 2^N x 2^N operator. A Pauli
/// string of weight w is multiplied by p^w.
Matrix apply_to_operator(const Matrix& op, double p);

/// q op + (1 - q) Tr_group(op) (x) (I/2)^{|group|}.
Matrix group_depolarize(const Matrix& op, int n_qubits, std::span<const int> group, double q);
DensityMatrix group_depolarize(const DensityMatrix& rho, std::span<const int> group, double q);

/// Group retention 1 - (1 - p)^group_size: the probability that at least one
/// qubit of the group is left untouched.
double group_retention(double p, int group_size);

/// Correction map on `group` (m qubits) inside an n_qubits register:
///   [1 - (1-p)^m]^{-1} sum_{k<m} p^{m-k} (1-p)^k sum_{|S|=k, S in group}
///   Tr_S(op) (x) (I/2)^{k}.
/// Requires 0 < p <= 1.
Matrix correction_map(const Matrix& op, int n_qubits, std::span<const int> group, double p);
/// Correction map acting on the whole register as one group.
DensityMatrix correction_map(const DensityMatrix& rho, double p);

/// Operator-sum form of the correction map on m qubits: sqrt(c_j) times every
/// Pauli string supported on a subset of fewer than m qubits (identity factors
/// included), with c_j = p^{m-k}(1-p)^k / (4^k [1 - (1-p)^m]).
KrausSet correction_map_kraus(int m, double p);

/// Applies (correction o group depolarization) to each group in turn. With
/// q_g = 1 - (1-p)^{|g|} this reproduces apply_to_operator(op, p).
Matrix apply_grouped_noise(const Matrix& op, int n_qubits, const Grouping& groups, double p);

/// Choi matrix sum_ij |i><j| (x) channel(|i><j|) on m <= 4 qubits.
Matrix choi_matrix(const LinearMap& channel, int m);
/// Smallest eigenvalue of choi_matrix(channel, m).
double choi_min_eigenvalue(const LinearMap& channel, int m);

}  // namespace certilab

#endif  // CERTILAB_CHANNELS_HPP
