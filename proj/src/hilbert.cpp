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

#include "certilab/hilbert.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace certilab {

namespace {

constexpr double kPsdTolerance = 1e-10;

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Validated, sorted copy of a qubit index set.
std::vector<int> sorted_qubits(std::span<const int> qubits, int n_qubits) {
  std::vector<int> out(qubits.begin(), qubits.end());
  std::sort(out.begin(), out.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 0 || out[i] >= n_qubits) {
      throw std::invalid_argument("qubit index " + std::to_string(out[i]) + " out of range for " +
                                  std::to_string(n_qubits) + " qubits");
    }
    if (i > 0 && out[i] == out[i - 1]) {
      throw std::invalid_argument("duplicate qubit index " + std::to_string(out[i]));
    }
  }
  return out;
}

std::vector<int> complement_of(const std::vector<int>& sorted, int n_qubits) {
  std::vector<int> rest;
  rest.reserve(static_cast<std::size_t>(n_qubits) - sorted.size());
  for (int q = 0, j = 0; q < n_qubits; ++q) {
    if (j < static_cast<int>(sorted.size()) && sorted[static_cast<std::size_t>(j)] == q) {
      ++j;
    } else {
      rest.push_back(q);
    }
  }
  return rest;
}

// offsets[r] is the full-register index contributed by the bit pattern r over
// `qubits` (the first listed qubit is the most significant bit of r).
std::vector<std::size_t> scatter_offsets(const std::vector<int>& qubits, int n_qubits) {
  const std::size_t count = std::size_t{1} << qubits.size();
  std::vector<std::size_t> offsets(count, 0);
  const int k = static_cast<int>(qubits.size());
  for (std::size_t r = 0; r < count; ++r) {
    std::size_t full = 0;
    for (int b = 0; b < k; ++b) {
      if ((r >> (k - 1 - b)) & 1U) full |= qubit_mask(qubits[static_cast<std::size_t>(b)], n_qubits);
    }
    offsets[r] = full;
  }
  return offsets;
}

Matrix trace_out_sorted(const Matrix& op, int n_qubits, const std::vector<int>& traced) {
  const std::vector<int> kept = complement_of(traced, n_qubits);
  const auto kept_off = scatter_offsets(kept, n_qubits);
  const auto traced_off = scatter_offsets(traced, n_qubits);
  const auto dim = static_cast<Eigen::Index>(kept_off.size());
  Matrix out = Matrix::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      Complex acc{0.0, 0.0};
      for (std::size_t t : traced_off) {
        acc += op(static_cast<Eigen::Index>(kept_off[static_cast<std::size_t>(r)] | t),
                  static_cast<Eigen::Index>(kept_off[static_cast<std::size_t>(c)] | t));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::size_t dimension_for(int n_qubits) {
  if (n_qubits < 0 || n_qubits > 30) {
    throw std::invalid_argument("qubit count " + std::to_string(n_qubits) + " out of range");
  }
  return std::size_t{1} << n_qubits;
}

int qubits_for_dimension(Eigen::Index dim) {
  if (dim <= 0 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

Matrix2 pauli_matrix(Pauli p) {
  Matrix2 m;
  const Complex i{0.0, 1.0};
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

Matrix pauli_string_matrix(std::span<const Pauli> labels) {
  // Each row of a Pauli string has one nonzero entry: column = row ^ xmask,
  // value = i^{#Y} * (-1)^{|column & zmask|} where zmask covers Y and Z.
  const int n = static_cast<int>(labels.size());
  const std::size_t dim = dimension_for(n);
  std::size_t xmask = 0;
  std::size_t zmask = 0;
  int y_count = 0;
  for (int q = 0; q < n; ++q) {
    const Pauli p = labels[static_cast<std::size_t>(q)];
    if (p == Pauli::X || p == Pauli::Y) xmask |= qubit_mask(q, n);
    if (p == Pauli::Z || p == Pauli::Y) zmask |= qubit_mask(q, n);
    if (p == Pauli::Y) ++y_count;
  }
  // Y = i X Z, acting on |c>: Z picks (-1)^c, X flips, overall i.
  static constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex base = kIPowers[y_count % 4];
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t row = col ^ xmask;
    const bool odd = (std::popcount(col & zmask) & 1) != 0;
    m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = odd ? -base : base;
  }
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int n_qubits, Vector amplitudes, double tol)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (n_qubits < 1) throw std::invalid_argument("StateVector needs at least one qubit");
  if (static_cast<std::size_t>(amplitudes_.size()) != dimension_for(n_qubits)) {
    throw std::invalid_argument("StateVector length does not match 2^n_qubits");
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > tol) {
    throw std::invalid_argument("StateVector is not normalized (norm " + std::to_string(norm) + ")");
  }
}

StateVector StateVector::normalized(int n_qubits, const Vector& amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  return StateVector(n_qubits, amplitudes / norm);
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dimension_for(n_qubits)));
  if (index >= static_cast<std::size_t>(v.size())) {
    throw std::invalid_argument("basis index out of range");
  }
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(n_qubits, std::move(v));
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.amplitudes_.size() != amplitudes_.size()) {
    throw std::invalid_argument("inner product of states with different dimensions");
  }
  return amplitudes_.dot(other.amplitudes_);
}

Matrix StateVector::projector() const { return amplitudes_ * amplitudes_.adjoint(); }

StateVector StateVector::tensor(const StateVector& other) const {
  Vector out(amplitudes_.size() * other.amplitudes_.size());
  for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
    out.segment(i * other.amplitudes_.size(), other.amplitudes_.size()) =
        amplitudes_(i) * other.amplitudes_;
  }
  return StateVector::normalized(n_qubits_ + other.n_qubits_, out);
}

StateVector StateVector::with_canonical_phase() const {
  for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
    const double mod = std::abs(amplitudes_(i));
    if (mod > 1e-12) {
      const Complex phase = std::conj(amplitudes_(i)) / mod;
      Vector v = amplitudes_ * phase;
      v(i) = Complex{mod, 0.0};
      return StateVector(n_qubits_, std::move(v));
    }
  }
  return *this;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(TrustedTag, int n_qubits, Matrix matrix)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
  if (n_qubits < 1) throw std::invalid_argument("DensityMatrix needs at least one qubit");
  const auto dim = static_cast<Eigen::Index>(dimension_for(n_qubits));
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw std::invalid_argument("DensityMatrix shape does not match 2^n_qubits");
  }
  if (max_abs(matrix_ - matrix_.adjoint()) > kConstructionTolerance) {
    throw std::invalid_argument("DensityMatrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex{1.0, 0.0}) > kConstructionTolerance) {
    throw std::invalid_argument("DensityMatrix trace is not 1");
  }
}

DensityMatrix::DensityMatrix(int n_qubits, Matrix matrix, double tol)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
  if (n_qubits < 1) throw std::invalid_argument("DensityMatrix needs at least one qubit");
  const auto dim = static_cast<Eigen::Index>(dimension_for(n_qubits));
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw std::invalid_argument("DensityMatrix shape does not match 2^n_qubits");
  }
  if (max_abs(matrix_ - matrix_.adjoint()) > tol) {
    throw std::invalid_argument("DensityMatrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex{1.0, 0.0}) > tol) {
    throw std::invalid_argument("DensityMatrix trace is not 1");
  }
  if (hermitian_eigenvalues(matrix_, 1.0).minCoeff() < -kPsdTolerance) {
    throw std::invalid_argument("DensityMatrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::trusted(int n_qubits, Matrix matrix) {
  return DensityMatrix(TrustedTag{}, n_qubits, std::move(matrix));
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix(TrustedTag{}, psi.n_qubits(), psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const auto dim = static_cast<Eigen::Index>(dimension_for(n_qubits));
  return DensityMatrix(TrustedTag{}, n_qubits,
                       Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

// ---------------------------------------------------------------------------
// Observable

Observable::Observable(int n_qubits, Matrix matrix, double tol)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
  const auto dim = static_cast<Eigen::Index>(dimension_for(n_qubits));
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw std::invalid_argument("Observable shape does not match 2^n_qubits");
  }
  if (max_abs(matrix_ - matrix_.adjoint()) > tol * std::max(1.0, max_abs(matrix_))) {
    throw std::invalid_argument("Observable is not Hermitian");
  }
  spectral_radius_ = hermitian_eigenvalues(matrix_, 1.0).cwiseAbs().maxCoeff();
}

Observable Observable::scaled(double factor) const {
  return Observable(n_qubits_, matrix_ * factor);
}

Observable Observable::rescaled_to_unit_radius() const {
  if (!(spectral_radius_ > 0.0)) throw std::invalid_argument("cannot rescale the zero observable");
  return scaled(1.0 / spectral_radius_);
}

// ---------------------------------------------------------------------------
// Spectra and norms

namespace {

void require_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
  const double scale = std::max(1.0, max_abs(m));
  if (max_abs(m - m.adjoint()) > tol * scale) {
    throw std::invalid_argument("matrix is not Hermitian within tolerance");
  }
}

}  // namespace

HermitianEigensystem eigendecompose_hermitian(const Matrix& m, double tol) {
  require_hermitian(m, tol);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const Matrix& m, double tol) {
  require_hermitian(m, tol);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  return solver.eigenvalues();
}

double trace_norm_hermitian(const Matrix& m) {
  return hermitian_eigenvalues(m).cwiseAbs().sum();
}

double trace_norm(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("trace_norm: matrix is not square");
  const Eigen::Index d = m.rows();
  Matrix dilation = Matrix::Zero(2 * d, 2 * d);
  dilation.topRightCorner(d, d) = m;
  dilation.bottomLeftCorner(d, d) = m.adjoint();
  return 0.5 * trace_norm_hermitian(dilation);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.n_qubits() != sigma.n_qubits()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  return 0.5 * trace_norm_hermitian(rho.matrix() - sigma.matrix());
}

// ---------------------------------------------------------------------------
// Tensor structure

Matrix partial_trace(const Matrix& op, int n_qubits, std::span<const int> traced) {
  if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != dimension_for(n_qubits)) {
    throw std::invalid_argument("partial_trace: operator shape does not match qubit count");
  }
  return trace_out_sorted(op, n_qubits, sorted_qubits(traced, n_qubits));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> traced) {
  const int remaining = rho.n_qubits() - static_cast<int>(traced.size());
  if (remaining < 1) throw std::invalid_argument("partial_trace: cannot trace out every qubit");
  return DensityMatrix::trusted(remaining, partial_trace(rho.matrix(), rho.n_qubits(), traced));
}

Matrix reduce_to(const Matrix& op, int n_qubits, std::span<const int> kept) {
  const std::vector<int> sorted = sorted_qubits(kept, n_qubits);
  return trace_out_sorted(op, n_qubits, complement_of(sorted, n_qubits));
}

Matrix trace_and_replace(const Matrix& op, int n_qubits, std::span<const int> qubits) {
  if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != dimension_for(n_qubits)) {
    throw std::invalid_argument("trace_and_replace: operator shape does not match qubit count");
  }
  const std::vector<int> traced = sorted_qubits(qubits, n_qubits);
  const std::vector<int> kept = complement_of(traced, n_qubits);
  const auto kept_off = scatter_offsets(kept, n_qubits);
  const auto traced_off = scatter_offsets(traced, n_qubits);
  const Matrix reduced = trace_out_sorted(op, n_qubits, traced);
  const double weight = 1.0 / static_cast<double>(traced_off.size());
  Matrix out = Matrix::Zero(op.rows(), op.cols());
  for (std::size_t c = 0; c < kept_off.size(); ++c) {
    for (std::size_t r = 0; r < kept_off.size(); ++r) {
      const Complex v = reduced(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * weight;
      for (std::size_t t : traced_off) {
        out(static_cast<Eigen::Index>(kept_off[r] | t), static_cast<Eigen::Index>(kept_off[c] | t)) = v;
      }
    }
  }
  return out;
}

Matrix complement_isometry(const StateVector& psi) {
  const auto dim = static_cast<Eigen::Index>(psi.dimension());
  // A Householder reflection mapping e_0 to psi (up to phase) completes psi to
  // a unitary; its remaining columns span the orthogonal complement.
  Eigen::HouseholderQR<Matrix> qr(Matrix(psi.amplitudes()));
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  return q.rightCols(dim - 1);
}

std::vector<StateVector> orthonormal_complement_basis(const StateVector& psi) {
  const Matrix v = complement_isometry(psi);
  std::vector<StateVector> out;
  out.reserve(static_cast<std::size_t>(v.cols()));
  for (Eigen::Index j = 0; j < v.cols(); ++j) out.emplace_back(psi.n_qubits(), v.col(j));
  return out;
}

double expectation(const Observable& obs, const DensityMatrix& rho) {
  if (obs.n_qubits() != rho.n_qubits()) throw std::invalid_argument("expectation: dimension mismatch");
  const Complex value = (obs.matrix() * rho.matrix()).trace();
  if (std::abs(value.imag()) > kAssertionTolerance) {
    throw std::logic_error("expectation value has a non-negligible imaginary part");
  }
  return value.real();
}

double expectation(const Observable& obs, const StateVector& psi) {
  if (obs.n_qubits() != psi.n_qubits()) throw std::invalid_argument("expectation: dimension mismatch");
  const Complex value = psi.amplitudes().dot(obs.matrix() * psi.amplitudes());
  if (std::abs(value.imag()) > kAssertionTolerance) {
    throw std::logic_error("expectation value has a non-negligible imaginary part");
  }
  return value.real();
}

StateVector apply_local_unitary(const StateVector& psi, std::span<const Matrix2> unitaries) {
  const int n = psi.n_qubits();
  if (static_cast<int>(unitaries.size()) != n) {
    throw std::invalid_argument("apply_local_unitary: need one factor per qubit");
  }
  Vector v = psi.amplitudes();
  for (int q = 0; q < n; ++q) {
    const Matrix2& u = unitaries[static_cast<std::size_t>(q)];
    if ((u.adjoint() * u - Matrix2::Identity()).cwiseAbs().maxCoeff() > kConstructionTolerance) {
      throw std::invalid_argument("apply_local_unitary: factor " + std::to_string(q) + " is not unitary");
    }
    const std::size_t mask = qubit_mask(q, n);
    for (std::size_t i = 0; i < psi.dimension(); ++i) {
      if (i & mask) continue;
      const auto i0 = static_cast<Eigen::Index>(i);
      const auto i1 = static_cast<Eigen::Index>(i | mask);
      const Complex a = v(i0);
      const Complex b = v(i1);
      v(i0) = u(0, 0) * a + u(0, 1) * b;
      v(i1) = u(1, 0) * a + u(1, 1) * b;
    }
  }
  return StateVector::normalized(n, v);
}

double von_neumann_entropy(const Matrix& rho) {
  const RealVector w = hermitian_eigenvalues(rho);
  double s = 0.0;
  for (double x : w) {
    if (x > 1e-14) s -= x * std::log(x);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Randomness

Rng derive_stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
}

StateVector random_state(int n_qubits, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(dimension_for(n_qubits)));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex{normal(rng), normal(rng)};
  return StateVector::normalized(n_qubits, v);
}

DensityMatrix random_density_matrix(int n_qubits, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto dim = static_cast<Eigen::Index>(dimension_for(n_qubits));
  Matrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = Complex{normal(rng), normal(rng)};
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(n_qubits, std::move(rho));
}

Matrix2 random_unitary_2x2(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix2 g;
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) g(i, j) = Complex{normal(rng), normal(rng)};
  }
  Eigen::HouseholderQR<Matrix2> qr(g);
  Matrix2 q = qr.householderQ();
  const Matrix2 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 2; ++j) {
    const double mod = std::abs(r(j, j));
    if (mod > 0.0) q.col(j) *= r(j, j) / mod;
  }
  return q;
}

}  // namespace certilab
