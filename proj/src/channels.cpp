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

#include "certilab/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace certilab {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": parameter " + std::to_string(p) +
                                " outside [0, 1]");
  }
}

int require_operator(const Matrix& op, const char* what) {
  if (op.rows() != op.cols()) throw std::invalid_argument(std::string(what) + ": operator is not square");
  return qubits_for_dimension(op.rows());
}

void require_group(std::span<const int> group, int n_qubits) {
  if (group.empty()) throw std::invalid_argument("group must be nonempty");
  std::vector<int> sorted(group.begin(), group.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= n_qubits) throw std::invalid_argument("group index out of range");
    if (i > 0 && sorted[i] == sorted[i - 1]) throw std::invalid_argument("group has duplicate indices");
  }
}

// In-place single-qubit depolarization on a column-major matrix.
void depolarize_in_place(Matrix& m, int n_qubits, int qubit, double p) {
  const std::size_t mask = qubit_mask(qubit, n_qubits);
  const auto dim = static_cast<std::size_t>(m.rows());
  const double mix = 0.5 * (1.0 - p);
  for (std::size_t c = 0; c < dim; ++c) {
    if (c & mask) continue;
    const auto c0 = static_cast<Eigen::Index>(c);
    const auto c1 = static_cast<Eigen::Index>(c | mask);
    for (std::size_t r = 0; r < dim; ++r) {
      if (r & mask) continue;
      const auto r0 = static_cast<Eigen::Index>(r);
      const auto r1 = static_cast<Eigen::Index>(r | mask);
      const Complex diag_avg = mix * (m(r0, c0) + m(r1, c1));
      m(r0, c0) = p * m(r0, c0) + diag_avg;
      m(r1, c1) = p * m(r1, c1) + diag_avg;
      m(r0, c1) *= p;
      m(r1, c0) *= p;
    }
  }
}

}  // namespace

void NoiseModel::validate(int n_qubits) const {
  require_probability(p, "NoiseModel");
  if (!grouping) return;
  std::vector<int> seen(static_cast<std::size_t>(n_qubits), 0);
  for (const auto& g : *grouping) {
    if (g.empty()) throw std::invalid_argument("NoiseModel: empty group");
    for (int q : g) {
      if (q < 0 || q >= n_qubits) throw std::invalid_argument("NoiseModel: group index out of range");
      if (seen[static_cast<std::size_t>(q)]++) throw std::invalid_argument("NoiseModel: groups overlap");
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw std::invalid_argument("NoiseModel: groups do not cover every qubit");
  }
}

Grouping NoiseModel::groups(int n_qubits) const {
  if (grouping) return *grouping;
  Grouping singles;
  for (int q = 0; q < n_qubits; ++q) singles.push_back({q});
  return singles;
}

double KrausSet::completeness_error() const {
  if (operators.empty()) throw std::invalid_argument("empty Kraus set");
  const Eigen::Index dim = operators.front().cols();
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& k : operators) sum += k.adjoint() * k;
  return (sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

Matrix KrausSet::apply(const Matrix& op) const {
  Matrix out = Matrix::Zero(op.rows(), op.cols());
  for (const auto& k : operators) out += k * op * k.adjoint();
  return out;
}

Matrix depolarize_qubit(const Matrix& op, int n_qubits, int qubit, double p) {
  require_probability(p, "depolarize_qubit");
  if (require_operator(op, "depolarize_qubit") != n_qubits) {
    throw std::invalid_argument("depolarize_qubit: operator does not match qubit count");
  }
  if (qubit < 0 || qubit >= n_qubits) throw std::invalid_argument("depolarize_qubit: qubit out of range");
  Matrix out = op;
  depolarize_in_place(out, n_qubits, qubit, p);
  return out;
}

DensityMatrix depolarize_qubit(const DensityMatrix& rho, int qubit, double p) {
  return DensityMatrix::trusted(rho.n_qubits(), depolarize_qubit(rho.matrix(), rho.n_qubits(), qubit, p));
}

Matrix apply_to_operator(const Matrix& op, double p) {
  require_probability(p, "apply_to_operator");
  const int n = require_operator(op, "apply_to_operator");
  Matrix out = op;
  if (p == 1.0) return out;
  for (int q = 0; q < n; ++q) depolarize_in_place(out, n, q, p);
  return out;
}

DensityMatrix depolarize_all(const DensityMatrix& rho, double p) {
  return DensityMatrix::trusted(rho.n_qubits(), apply_to_operator(rho.matrix(), p));
}

Matrix group_depolarize(const Matrix& op, int n_qubits, std::span<const int> group, double q) {
  require_probability(q, "group_depolarize");
  if (require_operator(op, "group_depolarize") != n_qubits) {
    throw std::invalid_argument("group_depolarize: operator does not match qubit count");
  }
  require_group(group, n_qubits);
  return q * op + (1.0 - q) * trace_and_replace(op, n_qubits, group);
}

DensityMatrix group_depolarize(const DensityMatrix& rho, std::span<const int> group, double q) {
  return DensityMatrix::trusted(rho.n_qubits(), group_depolarize(rho.matrix(), rho.n_qubits(), group, q));
}

double group_retention(double p, int group_size) {
  require_probability(p, "group_retention");
  if (group_size < 1) throw std::invalid_argument("group_retention: group size must be positive");
  return 1.0 - std::pow(1.0 - p, group_size);
}

Matrix correction_map(const Matrix& op, int n_qubits, std::span<const int> group, double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("correction_map: p must lie in (0, 1]");
  }
  if (require_operator(op, "correction_map") != n_qubits) {
    throw std::invalid_argument("correction_map: operator does not match qubit count");
  }
  require_group(group, n_qubits);
  const int m = static_cast<int>(group.size());
  const double norm = 1.0 - std::pow(1.0 - p, m);
  Matrix out = Matrix::Zero(op.rows(), op.cols());
  // Subsets of the group indexed by bit patterns; the full group is excluded.
  const unsigned full = (1U << m) - 1U;
  std::vector<int> subset;
  for (unsigned bits = 0; bits < full; ++bits) {
    subset.clear();
    for (int b = 0; b < m; ++b) {
      if (bits & (1U << b)) subset.push_back(group[static_cast<std::size_t>(b)]);
    }
    const int k = static_cast<int>(subset.size());
    const double coeff = std::pow(p, m - k) * std::pow(1.0 - p, k) / norm;
    if (coeff == 0.0) continue;
    if (k == 0) {
      out += coeff * op;
    } else {
      out += coeff * trace_and_replace(op, n_qubits, subset);
    }
  }
  return out;
}

DensityMatrix correction_map(const DensityMatrix& rho, double p) {
  std::vector<int> all(static_cast<std::size_t>(rho.n_qubits()));
  for (int q = 0; q < rho.n_qubits(); ++q) all[static_cast<std::size_t>(q)] = q;
  return DensityMatrix::trusted(rho.n_qubits(), correction_map(rho.matrix(), rho.n_qubits(), all, p));
}

KrausSet correction_map_kraus(int m, double p) {
  if (m < 1 || m > 6) throw std::invalid_argument("correction_map_kraus: m must lie in [1, 6]");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("correction_map_kraus: p must lie in (0, 1]");
  const double norm = 1.0 - std::pow(1.0 - p, m);
  KrausSet set;
  std::vector<Pauli> labels(static_cast<std::size_t>(m));
  const unsigned full = (1U << m) - 1U;
  for (unsigned support = 0; support < full; ++support) {
    std::vector<int> sites;
    for (int q = 0; q < m; ++q) {
      if (support & (1U << (m - 1 - q))) sites.push_back(q);
    }
    const int k = static_cast<int>(sites.size());
    const double c = std::pow(p, m - k) * std::pow(1.0 - p, k) / (std::pow(4.0, k) * norm);
    if (c == 0.0) continue;
    const double amplitude = std::sqrt(c);
    // Every Pauli label (including identity) on each traced site.
    const std::size_t combos = std::size_t{1} << (2 * k);
    for (std::size_t code = 0; code < combos; ++code) {
      std::fill(labels.begin(), labels.end(), Pauli::I);
      for (int s = 0; s < k; ++s) {
        labels[static_cast<std::size_t>(sites[static_cast<std::size_t>(s)])] =
            static_cast<Pauli>((code >> (2 * s)) & 3U);
      }
      set.operators.push_back(amplitude * pauli_string_matrix(labels));
    }
  }
  return set;
}

Matrix apply_grouped_noise(const Matrix& op, int n_qubits, const Grouping& groups, double p) {
  NoiseModel{p, groups}.validate(n_qubits);
  Matrix out = op;
  for (const auto& g : groups) {
    const double q = group_retention(p, static_cast<int>(g.size()));
    out = correction_map(group_depolarize(out, n_qubits, g, q), n_qubits, g, p);
  }
  return out;
}

Matrix choi_matrix(const LinearMap& channel, int m) {
  if (m < 1 || m > 4) throw std::invalid_argument("choi_matrix: m must lie in [1, 4]");
  const auto dim = static_cast<Eigen::Index>(dimension_for(m));
  Matrix choi = Matrix::Zero(dim * dim, dim * dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      Matrix unit = Matrix::Zero(dim, dim);
      unit(i, j) = 1.0;
      const Matrix image = channel(unit);
      if (image.rows() != dim || image.cols() != dim) {
        throw std::invalid_argument("choi_matrix: channel changed the operator dimension");
      }
      choi.block(i * dim, j * dim, dim, dim) = image;
    }
  }
  return choi;
}

double choi_min_eigenvalue(const LinearMap& channel, int m) {
  return hermitian_eigenvalues(choi_matrix(channel, m)).minCoeff();
}

}  // namespace certilab
