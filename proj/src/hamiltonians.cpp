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

#include "certilab/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace certilab {

namespace {

constexpr double kDropTolerance = 1e-14;

// Single-qubit product table: sigma_a sigma_b = phase * sigma_c.
struct PauliProduct {
  Pauli result;
  Complex phase;
};

PauliProduct multiply(Pauli a, Pauli b) {
  const Complex one{1, 0};
  const Complex i{0, 1};
  if (a == Pauli::I) return {b, one};
  if (b == Pauli::I) return {a, one};
  if (a == b) return {Pauli::I, one};
  // Cyclic X -> Y -> Z gives +i, anticyclic gives -i.
  const int ai = static_cast<int>(a);
  const int bi = static_cast<int>(b);
  const int ci = 6 - ai - bi;
  const bool cyclic = (bi - ai + 3) % 3 == 1;
  return {static_cast<Pauli>(ci), cyclic ? i : -i};
}

std::vector<Pauli> identity_labels(int n) { return std::vector<Pauli>(static_cast<std::size_t>(n), Pauli::I); }

}  // namespace

std::vector<Pauli> parse_pauli_labels(std::string_view labels) {
  std::vector<Pauli> out;
  out.reserve(labels.size());
  for (char c : labels) {
    switch (c) {
      case 'I': out.push_back(Pauli::I); break;
      case 'X': out.push_back(Pauli::X); break;
      case 'Y': out.push_back(Pauli::Y); break;
      case 'Z': out.push_back(Pauli::Z); break;
      default: throw std::invalid_argument(std::string("invalid Pauli label '") + c + "'");
    }
  }
  return out;
}

std::string format_pauli_labels(std::span<const Pauli> labels) {
  static constexpr char kNames[4] = {'I', 'X', 'Y', 'Z'};
  std::string out;
  out.reserve(labels.size());
  for (Pauli p : labels) out.push_back(kNames[static_cast<int>(p)]);
  return out;
}

int PauliTerm::weight() const {
  return static_cast<int>(std::count_if(labels.begin(), labels.end(), [](Pauli p) { return p != Pauli::I; }));
}

PauliHamiltonian::PauliHamiltonian(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("PauliHamiltonian needs at least one qubit");
}

PauliHamiltonian::PauliHamiltonian(int n_qubits, const std::vector<PauliTerm>& terms)
    : PauliHamiltonian(n_qubits) {
  for (const auto& t : terms) add(t.coefficient, t.labels);
}

PauliHamiltonian PauliHamiltonian::identity(int n_qubits, double coefficient) {
  PauliHamiltonian h(n_qubits);
  h.add(coefficient, identity_labels(n_qubits));
  return h;
}

PauliHamiltonian PauliHamiltonian::single(int n_qubits, int qubit, Pauli p, double coefficient) {
  if (qubit < 0 || qubit >= n_qubits) throw std::invalid_argument("single: qubit out of range");
  PauliHamiltonian h(n_qubits);
  auto labels = identity_labels(n_qubits);
  labels[static_cast<std::size_t>(qubit)] = p;
  h.add(coefficient, std::move(labels));
  return h;
}

void PauliHamiltonian::add(double coefficient, std::vector<Pauli> labels) {
  if (static_cast<int>(labels.size()) != n_qubits_) {
    throw std::invalid_argument("Pauli term length does not match qubit count");
  }
  if (!std::isfinite(coefficient)) throw std::invalid_argument("Pauli term coefficient is not finite");
  auto [it, inserted] = terms_.try_emplace(std::move(labels), coefficient);
  if (!inserted) it->second += coefficient;
  if (std::abs(it->second) <= kDropTolerance) terms_.erase(it);
}

std::vector<PauliTerm> PauliHamiltonian::terms() const {
  std::vector<PauliTerm> out;
  out.reserve(terms_.size());
  for (const auto& [labels, c] : terms_) out.push_back({c, labels});
  return out;
}

int PauliHamiltonian::locality() const {
  int k = 0;
  for (const auto& [labels, c] : terms_) k = std::max(k, PauliTerm{c, labels}.weight());
  return k;
}

Matrix PauliHamiltonian::matrix() const {
  const auto dim = static_cast<Eigen::Index>(dimension_for(n_qubits_));
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& [labels, c] : terms_) m += c * pauli_string_matrix(labels);
  return m;
}

Observable PauliHamiltonian::observable() const { return Observable(n_qubits_, matrix()); }

PauliHamiltonian PauliHamiltonian::operator+(const PauliHamiltonian& other) const {
  if (other.n_qubits_ != n_qubits_) throw std::invalid_argument("PauliHamiltonian size mismatch");
  PauliHamiltonian out = *this;
  for (const auto& [labels, c] : other.terms_) out.add(c, labels);
  return out;
}

PauliHamiltonian PauliHamiltonian::operator-(const PauliHamiltonian& other) const {
  return *this + other * -1.0;
}

PauliHamiltonian PauliHamiltonian::operator*(double factor) const {
  PauliHamiltonian out(n_qubits_);
  for (const auto& [labels, c] : terms_) out.add(c * factor, labels);
  return out;
}

PauliHamiltonian PauliHamiltonian::operator*(const PauliHamiltonian& other) const {
  if (other.n_qubits_ != n_qubits_) throw std::invalid_argument("PauliHamiltonian size mismatch");
  std::map<std::vector<Pauli>, Complex> acc;
  std::vector<Pauli> labels(static_cast<std::size_t>(n_qubits_));
  for (const auto& [la, ca] : terms_) {
    for (const auto& [lb, cb] : other.terms_) {
      Complex phase{1, 0};
      for (std::size_t q = 0; q < labels.size(); ++q) {
        const PauliProduct prod = multiply(la[q], lb[q]);
        labels[q] = prod.result;
        phase *= prod.phase;
      }
      acc[labels] += ca * cb * phase;
    }
  }
  PauliHamiltonian out(n_qubits_);
  for (const auto& [l, c] : acc) {
    if (std::abs(c.imag()) > 1e-12) {
      throw std::logic_error("Pauli product is not Hermitian");
    }
    out.add(c.real(), l);
  }
  return out;
}

SpectralInfo spectral_info(const PauliHamiltonian& h) {
  const HermitianEigensystem es = eigendecompose_hermitian(h.matrix());
  SpectralInfo info;
  const Eigen::Index count = es.values.size();
  info.ground_energy = es.values(0);
  info.spectral_radius = es.values.cwiseAbs().maxCoeff();
  Eigen::Index degeneracy = 1;
  while (degeneracy < count && es.values(degeneracy) - info.ground_energy <= kDegeneracyTolerance) {
    ++degeneracy;
  }
  info.ground_degeneracy = static_cast<int>(degeneracy);
  info.first_excited_energy = degeneracy < count ? es.values(degeneracy) : info.ground_energy;
  info.gap = info.first_excited_energy - info.ground_energy;
  for (Eigen::Index j = 0; j < degeneracy; ++j) {
    info.ground_space.push_back(StateVector::normalized(h.n_qubits(), es.vectors.col(j)));
  }
  return info;
}

std::pair<PauliHamiltonian, double> rescale_to_unit_spectral_radius(const PauliHamiltonian& h) {
  const double radius = hermitian_eigenvalues(h.matrix()).cwiseAbs().maxCoeff();
  if (!(radius > 0.0)) throw std::invalid_argument("cannot rescale the zero operator");
  return {h * (1.0 / radius), radius};
}

PauliHamiltonian pad_to_uniform_weight(const PauliHamiltonian& h, int k) {
  if (k < h.locality()) throw std::invalid_argument("pad_to_uniform_weight: k below locality");
  if (k < 1) throw std::invalid_argument("pad_to_uniform_weight: k must be positive");
  PauliHamiltonian out(h.n_qubits() + k);
  for (const auto& term : h.terms()) {
    std::vector<Pauli> labels = term.labels;
    const int pad = k - term.weight();
    for (int a = 0; a < k; ++a) labels.push_back(a < pad ? Pauli::Z : Pauli::I);
    out.add(term.coefficient, std::move(labels));
  }
  return out;
}

PauliHamiltonian jz(int n) {
  PauliHamiltonian h(n);
  for (int q = 0; q < n; ++q) h = h + PauliHamiltonian::single(n, q, Pauli::Z, 0.5);
  return h;
}

PauliHamiltonian jx(int n) {
  PauliHamiltonian h(n);
  for (int q = 0; q < n; ++q) h = h + PauliHamiltonian::single(n, q, Pauli::X, 0.5);
  return h;
}

PauliHamiltonian jy(int n) {
  PauliHamiltonian h(n);
  for (int q = 0; q < n; ++q) h = h + PauliHamiltonian::single(n, q, Pauli::Y, 0.5);
  return h;
}

PauliHamiltonian j_squared(int n) {
  const PauliHamiltonian x = jx(n);
  const PauliHamiltonian y = jy(n);
  const PauliHamiltonian z = jz(n);
  return x * x + y * y + z * z;
}

PauliHamiltonian dicke_hamiltonian(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("dicke_hamiltonian: k out of range");
  const PauliHamiltonian shifted = jz(n) - PauliHamiltonian::identity(n, 0.5 * n - k);
  return j_squared(n) * -1.0 + shifted * shifted;
}

PauliHamiltonian graph_hamiltonian(const GraphSpec& g) {
  g.validate();
  PauliHamiltonian h(g.n_vertices);
  for (int a = 0; a < g.n_vertices; ++a) h.add(-1.0, graph_stabilizer(g, a));
  return h;
}

PauliHamiltonian neg_jz_squared(int n) {
  const PauliHamiltonian z = jz(n);
  return (z * z) * -1.0;
}

}  // namespace certilab
