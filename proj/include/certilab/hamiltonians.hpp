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

#ifndef CERTILAB_HAMILTONIANS_HPP
#define CERTILAB_HAMILTONIANS_HPP

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "certilab/hilbert.hpp"
#include "certilab/states.hpp"

namespace certilab {

/// Parses "IXYZ" label strings; throws std::invalid_argument on other letters.
std::vector<Pauli> parse_pauli_labels(std::string_view labels);
std::string format_pauli_labels(std::span<const Pauli> labels);

struct PauliTerm {
  double coefficient = 0.0;
  std::vector<Pauli> labels;

  /// Number of non-identity factors.
  int weight() const;
};

/// Real linear combination of Pauli strings on a fixed number of qubits.
/// Terms with equal labels are merged and exact zeros dropped, so the term
/// list is canonical (sorted by label).
class PauliHamiltonian {
 public:
  explicit PauliHamiltonian(int n_qubits);
  PauliHamiltonian(int n_qubits, const std::vector<PauliTerm>& terms);

  static PauliHamiltonian identity(int n_qubits, double coefficient = 1.0);
  /// coefficient * P on a single qubit.
  static PauliHamiltonian single(int n_qubits, int qubit, Pauli p, double coefficient = 1.0);

  void add(double coefficient, std::vector<Pauli> labels);

  int n_qubits() const { return n_qubits_; }
  std::vector<PauliTerm> terms() const;
  std::size_t size() const { return terms_.size(); }
  /// Maximum term weight (0 for a multiple of the identity).
  int locality() const;
  Matrix matrix() const;
  Observable observable() const;

  PauliHamiltonian operator+(const PauliHamiltonian& other) const;
  PauliHamiltonian operator-(const PauliHamiltonian& other) const;
  PauliHamiltonian operator*(double factor) const;
  /// Operator product expanded in the Pauli basis. Throws std::logic_error if
  /// the product is not Hermitian (an imaginary coefficient survives).
  PauliHamiltonian operator*(const PauliHamiltonian& other) const;

 private:
  int n_qubits_;
  std::map<std::vector<Pauli>, double> terms_;
};

struct SpectralInfo {
  double ground_energy = 0.0;
  double first_excited_energy = 0.0;
  double gap = 0.0;
  int ground_degeneracy = 0;
  std::vector<StateVector> ground_space;
  double spectral_radius = 0.0;
};

inline constexpr double kDegeneracyTolerance = 1e-8;

/// Full diagonalization. The ground space collects eigenvalues within 1e-8 of
/// the minimum; first_excited_energy equals ground_energy when the spectrum is
/// a single level.
SpectralInfo spectral_info(const PauliHamiltonian& h);

/// (h / r, r) with r the spectral radius. Throws for the zero operator.
std::pair<PauliHamiltonian, double> rescale_to_unit_spectral_radius(const PauliHamiltonian& h);

/// Appends k ancilla qubits and pads every term of weight w <= k with Z on the
/// first k - w ancillas, so that every term has weight exactly k.
/// Expectations on |state> (x) |0>^k are unchanged.
PauliHamiltonian pad_to_uniform_weight(const PauliHamiltonian& h, int k);

PauliHamiltonian jz(int n);
PauliHamiltonian jx(int n);
PauliHamiltonian jy(int n);
/// Jx^2 + Jy^2 + Jz^2 expanded to weight <= 2.
PauliHamiltonian j_squared(int n);
/// -J^2 + (Jz - (n/2 - k))^2. Its unique ground state is dicke(n, k).
PauliHamiltonian dicke_hamiltonian(int n, int k);
/// -sum_a K_a over the graph's stabilizer generators.
PauliHamiltonian graph_hamiltonian(const GraphSpec& g);
/// -Jz^2, doubly degenerate ground space span{|0...0>, |1...1>}.
PauliHamiltonian neg_jz_squared(int n);

}  // namespace certilab

#endif  // CERTILAB_HAMILTONIANS_HPP
