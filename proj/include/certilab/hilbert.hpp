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

#ifndef CERTILAB_HILBERT_HPP
#define CERTILAB_HILBERT_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

/// Dense linear-algebra substrate shared by every other module.
///
/// Basis convention: qubits are addressed with 0-based indices and qubit 0 is
/// the most significant bit of a computational-basis index, so |q0 q1 ... qN-1>
/// maps to index q0*2^(N-1) + ... + qN-1 and |0...0> is index 0. Every index map
/// in the library is written against this convention.
namespace certilab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

inline constexpr double kConstructionTolerance = 1e-12;
inline constexpr double kAssertionTolerance = 1e-10;

/// 2^n_qubits; throws std::invalid_argument for n_qubits outside [0, 30].
std::size_t dimension_for(int n_qubits);
/// Inverse of dimension_for; throws unless dim is a positive power of two.
int qubits_for_dimension(Eigen::Index dim);

/// Bit mask of `qubit` inside a basis index of an n_qubits register.
inline std::size_t qubit_mask(int qubit, int n_qubits) {
  return std::size_t{1} << (n_qubits - 1 - qubit);
}

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

Matrix2 pauli_matrix(Pauli p);
/// Dense matrix of a Pauli string; labels[q] acts on qubit q.
Matrix pauli_string_matrix(std::span<const Pauli> labels);
Matrix kron(const Matrix& a, const Matrix& b);

class StateVector {
 public:
  /// Throws std::invalid_argument unless the length is 2^n_qubits and the
  /// Euclidean norm is 1 within `tol`.
  StateVector(int n_qubits, Vector amplitudes, double tol = kConstructionTolerance);

  /// Rescales `amplitudes` to unit norm first; throws on the zero vector.
  static StateVector normalized(int n_qubits, const Vector& amplitudes);
  static StateVector basis(int n_qubits, std::size_t index);

  int n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

  /// <this|other>.
  Complex inner(const StateVector& other) const;
  /// |this><this|.
  Matrix projector() const;
  /// |this> (x) |other>, with `other` on the less significant qubits.
  StateVector tensor(const StateVector& other) const;
  /// Global phase fixed so that the first amplitude with modulus above 1e-12
  /// is real and positive.
  StateVector with_canonical_phase() const;

 private:
  int n_qubits_;
  Vector amplitudes_;
};

class DensityMatrix {
 public:
  /// Full validation: Hermitian (elementwise, `tol`), unit trace (`tol`) and
  /// minimum eigenvalue >= -1e-10.
  DensityMatrix(int n_qubits, Matrix matrix, double tol = kConstructionTolerance);

  /// For images of trace-preserving completely positive maps. Checks shape,
  /// Hermiticity and trace, skips the eigenvalue test.
  static DensityMatrix trusted(int n_qubits, Matrix matrix);
  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  struct TrustedTag {};
  DensityMatrix(TrustedTag, int n_qubits, Matrix matrix);

  int n_qubits_;
  Matrix matrix_;
};

class Observable {
 public:
  /// Throws unless `matrix` is Hermitian within `tol`; spectral_radius is the
  /// largest eigenvalue modulus.
  Observable(int n_qubits, Matrix matrix, double tol = kConstructionTolerance);

  int n_qubits() const { return n_qubits_; }
  const Matrix& matrix() const { return matrix_; }
  double spectral_radius() const { return spectral_radius_; }

  Observable scaled(double factor) const;
  /// Copy divided by its spectral radius; throws for the zero operator.
  Observable rescaled_to_unit_radius() const;

 private:
  int n_qubits_;
  Matrix matrix_;
  double spectral_radius_;
};

struct HermitianEigensystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns, orthonormal
};

/// Throws std::invalid_argument if `m` is not square or deviates from its
/// adjoint by more than tol * max(1, max|m_ij|).
HermitianEigensystem eigendecompose_hermitian(const Matrix& m, double tol = kAssertionTolerance);
RealVector hermitian_eigenvalues(const Matrix& m, double tol = kAssertionTolerance);

/// Sum of |eigenvalues| of a Hermitian operator.
double trace_norm_hermitian(const Matrix& m);
/// Trace norm of an arbitrary square operator X, from the Hermitian dilation
/// [[0, X], [X^dagger, 0]] whose eigenvalues are the +/- singular values of X.
double trace_norm(const Matrix& m);

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Traces out `traced` (distinct, in range) from an operator on n_qubits and
/// returns the operator on the remaining qubits, kept in ascending order.
Matrix partial_trace(const Matrix& op, int n_qubits, std::span<const int> traced);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> traced);
/// Reduced operator on `kept` (distinct, in range, output ordered as given
/// after sorting ascending).
Matrix reduce_to(const Matrix& op, int n_qubits, std::span<const int> kept);

/// Tr_S(op) (x) (I/2)^{|S|}, with the maximally mixed factor reinserted at the
/// positions of S.
Matrix trace_and_replace(const Matrix& op, int n_qubits, std::span<const int> qubits);

/// 2^N x (2^N - 1) isometry whose columns are orthonormal and orthogonal to psi.
Matrix complement_isometry(const StateVector& psi);
std::vector<StateVector> orthonormal_complement_basis(const StateVector& psi);

/// Tr(A rho); throws std::logic_error if the imaginary part exceeds 1e-10.
double expectation(const Observable& obs, const DensityMatrix& rho);
double expectation(const Observable& obs, const StateVector& psi);

/// (U_0 (x) ... (x) U_{N-1}) |psi>; each factor must be unitary within 1e-12.
StateVector apply_local_unitary(const StateVector& psi, std::span<const Matrix2> unitaries);

/// -Tr(rho log rho) in nats, eigenvalues below 1e-14 dropped.
double von_neumann_entropy(const Matrix& rho);

/// Independent stream for task `index` under a run-level seed.
Rng derive_stream(std::uint64_t seed, std::uint64_t index);
StateVector random_state(int n_qubits, Rng& rng);
/// Ginibre-induced random mixed state G G^dagger / Tr(G G^dagger).
DensityMatrix random_density_matrix(int n_qubits, Rng& rng);
Matrix2 random_unitary_2x2(Rng& rng);

}  // namespace certilab

#endif  // CERTILAB_HILBERT_HPP
