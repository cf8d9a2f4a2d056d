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

#include "certilab/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace certilab {

namespace {

void require_qubits(int n) {
  if (n < 1) throw std::invalid_argument("state constructors need at least one qubit");
}

void require_blocks(int n, int m) {
  require_qubits(n);
  if (m < 1 || n % m != 0) {
    throw std::invalid_argument("block size " + std::to_string(m) + " does not divide " +
                                std::to_string(n) + " qubits");
  }
}

// Basis index of the m-qubit pattern `j` repeated over n/m contiguous blocks.
std::size_t repeated_block_index(std::size_t j, int m, int blocks) {
  std::size_t index = 0;
  for (int b = 0; b < blocks; ++b) index = (index << m) | j;
  return index;
}

StateVector finish(int n, const Vector& v) { return StateVector::normalized(n, v).with_canonical_phase(); }

}  // namespace

void GraphSpec::validate() const {
  if (n_vertices < 1) throw std::invalid_argument("graph needs at least one vertex");
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_vertices || b >= n_vertices) {
      throw std::invalid_argument("graph edge vertex out of range");
    }
    if (a == b) throw std::invalid_argument("graph has a self-loop");
  }
}

std::vector<std::vector<int>> GraphSpec::neighbourhoods() const {
  validate();
  std::vector<std::vector<int>> nb(static_cast<std::size_t>(n_vertices));
  for (const auto& [a, b] : edges) {
    nb[static_cast<std::size_t>(a)].push_back(b);
    nb[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& list : nb) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return nb;
}

int GraphSpec::max_degree() const {
  std::size_t best = 0;
  for (const auto& list : neighbourhoods()) best = std::max(best, list.size());
  return static_cast<int>(best);
}

GraphSpec GraphSpec::empty(int n) { return GraphSpec{n, {}}; }

GraphSpec GraphSpec::line(int n) {
  GraphSpec g{n, {}};
  for (int a = 0; a + 1 < n; ++a) g.edges.emplace_back(a, a + 1);
  return g;
}

GraphSpec GraphSpec::ring(int n) {
  GraphSpec g = line(n);
  if (n > 2) g.edges.emplace_back(n - 1, 0);
  return g;
}

StateVector product_zero(int n) {
  require_qubits(n);
  return StateVector::basis(n, 0);
}

StateVector ghz(int n, int sign) {
  require_qubits(n);
  if (sign != 1 && sign != -1) throw std::invalid_argument("ghz sign must be +1 or -1");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dimension_for(n)));
  v(0) = 1.0;
  v(v.size() - 1) += static_cast<double>(sign);
  return finish(n, v);
}

StateVector dicke(int n, int k) {
  require_qubits(n);
  if (k < 0 || k > n) throw std::invalid_argument("dicke excitation number out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dimension_for(n)));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::popcount(static_cast<std::size_t>(i)) == k) v(i) = 1.0;
  }
  return finish(n, v);
}

StateVector graph_state(const GraphSpec& g) {
  g.validate();
  const int n = g.n_vertices;
  const auto dim = static_cast<Eigen::Index>(dimension_for(n));
  Vector v = Vector::Constant(dim, Complex{std::pow(2.0, -0.5 * n), 0.0});
  for (const auto& [a, b] : g.edges) {
    const std::size_t both = qubit_mask(a, n) | qubit_mask(b, n);
    for (Eigen::Index i = 0; i < dim; ++i) {
      if ((static_cast<std::size_t>(i) & both) == both) v(i) = -v(i);
    }
  }
  return finish(n, v);
}

std::vector<Pauli> graph_stabilizer(const GraphSpec& g, int vertex) {
  const auto nb = g.neighbourhoods();
  if (vertex < 0 || vertex >= g.n_vertices) throw std::invalid_argument("stabilizer vertex out of range");
  std::vector<Pauli> labels(static_cast<std::size_t>(g.n_vertices), Pauli::I);
  labels[static_cast<std::size_t>(vertex)] = Pauli::X;
  for (int b : nb[static_cast<std::size_t>(vertex)]) labels[static_cast<std::size_t>(b)] = Pauli::Z;
  return labels;
}

StateVector phase_family(int n, int m, int k) {
  require_blocks(n, m);
  if (m > 16) throw std::invalid_argument("phase_family block size too large");
  const std::size_t levels = std::size_t{1} << m;
  if (k < 1 || static_cast<std::size_t>(k) > levels) {
    throw std::invalid_argument("phase_family index k must lie in 1..2^m");
  }
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dimension_for(n)));
  const double scale = 2.0 * std::numbers::pi / static_cast<double>(levels);
  for (std::size_t j = 0; j < levels; ++j) {
    const double angle = scale * static_cast<double>(j) * static_cast<double>(k);
    v(static_cast<Eigen::Index>(repeated_block_index(j, m, n / m))) = std::polar(1.0, angle);
  }
  return finish(n, v);
}

StateVector ghz_product_family(int n, int m, std::span<const int> bits) {
  require_blocks(n, m);
  if (static_cast<int>(bits.size()) != m) throw std::invalid_argument("ghz_product_family needs m bits");
  std::optional<StateVector> out;
  for (int bit : bits) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("ghz_product_family bits must be 0 or 1");
    StateVector block = ghz(n / m, bit == 0 ? 1 : -1);
    out = out ? out->tensor(block) : block;
  }
  return out->with_canonical_phase();
}

StateVector logical_branch(int n_groups, int m, int value) {
  if (n_groups < 1 || m < 1) throw std::invalid_argument("logical_branch needs positive sizes");
  if (value != 0 && value != 1) throw std::invalid_argument("logical_branch value must be 0 or 1");
  const StateVector block = ghz(m, value == 0 ? 1 : -1);
  StateVector out = block;
  for (int g = 1; g < n_groups; ++g) out = out.tensor(block);
  return out;
}

StateVector logical_ghz(int n_groups, int m, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("logical_ghz sign must be +1 or -1");
  const StateVector zero = logical_branch(n_groups, m, 0);
  const StateVector one = logical_branch(n_groups, m, 1);
  return superpose(zero, one, 1.0, static_cast<double>(sign));
}

CounterexampleStates counterexample_states(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("counterexample_states needs an even qubit count");
  const int pairs = n / 2;
  auto branch = [&](std::size_t pattern) { return StateVector::basis(n, repeated_block_index(pattern, 2, pairs)); };
  const StateVector b00 = branch(0b00);
  const StateVector b01 = branch(0b01);
  const StateVector b10 = branch(0b10);
  const StateVector b11 = branch(0b11);

  const Vector psi_v = 0.5 * (b00.amplitudes() + b01.amplitudes() + b10.amplitudes() + b11.amplitudes());
  const StateVector psi = finish(n, psi_v);
  const StateVector phi1 = superpose(b00, b11, 1.0, -1.0);
  const StateVector phi2 = superpose(b01, b10, 1.0, -1.0);
  // xi vectors keep the raw (phi1 +/- phi2)/sqrt(2) phase so that
  // (xi1 + xi2)/sqrt(2) reproduces phi1 exactly.
  const double r = std::numbers::sqrt2 / 2.0;
  const StateVector xi1(n, r * (phi1.amplitudes() + phi2.amplitudes()));
  const StateVector xi2(n, r * (phi1.amplitudes() - phi2.amplitudes()));

  const auto dim = static_cast<Eigen::Index>(dimension_for(n));
  Matrix witness = Matrix::Zero(dim, dim);
  std::vector<Pauli> labels(static_cast<std::size_t>(n), Pauli::I);
  for (int j = 0; j < pairs; ++j) {
    std::fill(labels.begin(), labels.end(), Pauli::I);
    labels[static_cast<std::size_t>(2 * j)] = Pauli::Z;
    labels[static_cast<std::size_t>(2 * j + 1)] = Pauli::Z;
    witness += pauli_string_matrix(labels);
  }
  return {psi, phi1, phi2, xi1, xi2, Observable(n, std::move(witness))};
}

StateVector apply_pauli(const StateVector& psi, Pauli p, int qubit) {
  const int n = psi.n_qubits();
  if (qubit < 0 || qubit >= n) throw std::invalid_argument("apply_pauli: qubit out of range");
  std::vector<Pauli> labels(static_cast<std::size_t>(n), Pauli::I);
  labels[static_cast<std::size_t>(qubit)] = p;
  return apply_pauli_string(psi, labels);
}

StateVector apply_pauli_string(const StateVector& psi, std::span<const Pauli> labels) {
  const int n = psi.n_qubits();
  if (static_cast<int>(labels.size()) != n) throw std::invalid_argument("apply_pauli_string: length mismatch");
  std::size_t xmask = 0;
  std::size_t zmask = 0;
  int y_count = 0;
  for (int q = 0; q < n; ++q) {
    const Pauli p = labels[static_cast<std::size_t>(q)];
    if (p == Pauli::X || p == Pauli::Y) xmask |= qubit_mask(q, n);
    if (p == Pauli::Z || p == Pauli::Y) zmask |= qubit_mask(q, n);
    if (p == Pauli::Y) ++y_count;
  }
  static constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex base = kIPowers[y_count % 4];
  Vector out = Vector::Zero(psi.amplitudes().size());
  for (std::size_t c = 0; c < psi.dimension(); ++c) {
    const bool odd = (std::popcount(c & zmask) & 1) != 0;
    out(static_cast<Eigen::Index>(c ^ xmask)) = (odd ? -base : base) * psi[c];
  }
  return StateVector(n, std::move(out));
}

StateVector superpose(const StateVector& x, const StateVector& y, Complex a, Complex b) {
  if (x.n_qubits() != y.n_qubits()) throw std::invalid_argument("superpose: dimension mismatch");
  return finish(x.n_qubits(), a * x.amplitudes() + b * y.amplitudes());
}

}  // namespace certilab
