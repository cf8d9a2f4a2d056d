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

#include <gtest/gtest.h>

#include <numbers>
#include <string>

#include "oracles.hpp"

using namespace certilab;

namespace {

std::vector<Pauli> labels_of(const std::string& s) {
  std::vector<Pauli> out;
  for (char c : s) {
    out.push_back(c == 'X' ? Pauli::X : c == 'Y' ? Pauli::Y : c == 'Z' ? Pauli::Z : Pauli::I);
  }
  return out;
}

std::string all_labels(int index, int n) {
  static const char kNames[] = "IXYZ";
  std::string s;
  for (int q = 0; q < n; ++q) {
    s.push_back(kNames[index % 4]);
    index /= 4;
  }
  return s;
}

}  // namespace

TEST(Hilbert, DimensionHelpers) {
  EXPECT_EQ(dimension_for(0), 1u);
  EXPECT_EQ(dimension_for(5), 32u);
  EXPECT_THROW(dimension_for(-1), std::invalid_argument);
  EXPECT_THROW(dimension_for(31), std::invalid_argument);
  EXPECT_EQ(qubits_for_dimension(64), 6);
  EXPECT_THROW(qubits_for_dimension(6), std::invalid_argument);
  EXPECT_EQ(qubit_mask(0, 3), 4u);
  EXPECT_EQ(qubit_mask(2, 3), 1u);
}

TEST(Hilbert, PauliStringsMatchKroneckerAssembly) {
  for (int n = 1; n <= 3; ++n) {
    for (int idx = 0; idx < (1 << (2 * n)); ++idx) {
      const std::string s = all_labels(idx, n);
      const Matrix fast = pauli_string_matrix(labels_of(s));
      EXPECT_LT((fast - oracle::pauli_string(s)).cwiseAbs().maxCoeff(), 1e-15) << s;
    }
  }
}

TEST(Hilbert, PauliStringsAreHermitianUnitaryAndTraceless) {
  const Matrix m = pauli_string_matrix(labels_of("XYZY"));
  EXPECT_LT((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((m * m - Matrix::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(std::abs(m.trace()), 1e-15);
}

TEST(Hilbert, KronOrdersQubitZeroFirst) {
  const Matrix a = pauli_matrix(Pauli::X);
  const Matrix b = pauli_matrix(Pauli::Z);
  EXPECT_LT((kron(a, b) - oracle::pauli_string("XZ")).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Hilbert, StateVectorValidation) {
  Vector v = Vector::Zero(4);
  v(0) = 1.0;
  EXPECT_NO_THROW(StateVector(2, v));
  v(1) = 1e-3;
  EXPECT_THROW(StateVector(2, v), std::invalid_argument);
  EXPECT_THROW(StateVector(3, Vector::Zero(4)), std::invalid_argument);
  EXPECT_THROW(StateVector::normalized(2, Vector::Zero(4)), std::invalid_argument);
  EXPECT_THROW(StateVector::basis(2, 4), std::invalid_argument);
}

TEST(Hilbert, BasisIndexConventionPlacesQubitZeroHigh) {
  // |10> on two qubits is index 2.
  const StateVector s = StateVector::basis(2, 2);
  const Matrix z0 = pauli_string_matrix(labels_of("ZI"));
  const Matrix z1 = pauli_string_matrix(labels_of("IZ"));
  EXPECT_NEAR(s.amplitudes().dot(z0 * s.amplitudes()).real(), -1.0, 1e-15);
  EXPECT_NEAR(s.amplitudes().dot(z1 * s.amplitudes()).real(), 1.0, 1e-15);
}

TEST(Hilbert, InnerConjugatesLeftArgument) {
  Vector a(2);
  a << Complex(0, 1), 0;
  Vector b(2);
  b << 1, 0;
  const StateVector sa(1, a);
  const StateVector sb(1, b);
  EXPECT_NEAR(std::abs(sa.inner(sb) - Complex(0, -1)), 0.0, 1e-15);
}

TEST(Hilbert, CanonicalPhase) {
  Vector v(2);
  v << 0, Complex(0, -1);
  const StateVector s = StateVector(1, v).with_canonical_phase();
  EXPECT_NEAR(s[1].real(), 1.0, 1e-15);
  EXPECT_NEAR(s[1].imag(), 0.0, 1e-15);
}

TEST(Hilbert, TensorProduct) {
  const StateVector a = StateVector::basis(1, 1);
  const StateVector b = StateVector::basis(2, 1);
  const StateVector ab = a.tensor(b);
  EXPECT_EQ(ab.n_qubits(), 3);
  EXPECT_NEAR(std::abs(ab[5]), 1.0, 1e-15);
}

TEST(Hilbert, DensityMatrixValidation) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  EXPECT_NO_THROW(DensityMatrix(1, m));
  Matrix not_hermitian = m;
  not_hermitian(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix(1, not_hermitian), std::invalid_argument);
  Matrix wrong_trace = 2.0 * m;
  EXPECT_THROW(DensityMatrix(1, wrong_trace), std::invalid_argument);
  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix(1, negative), std::invalid_argument);
  EXPECT_NO_THROW(DensityMatrix::trusted(1, negative));
  EXPECT_NEAR(DensityMatrix::maximally_mixed(3).matrix()(0, 0).real(), 0.125, 1e-15);
}

TEST(Hilbert, ObservableSpectralRadiusAndRescaling) {
  const Observable o(2, 3.0 * pauli_string_matrix(labels_of("ZZ")) + pauli_string_matrix(labels_of("XI")));
  EXPECT_NEAR(o.spectral_radius(), std::sqrt(10.0), 1e-12);
  EXPECT_NEAR(o.rescaled_to_unit_radius().spectral_radius(), 1.0, 1e-12);
  EXPECT_NEAR(o.scaled(-2.0).spectral_radius(), 2.0 * std::sqrt(10.0), 1e-12);
  EXPECT_THROW(Observable(1, Matrix::Zero(2, 2)).rescaled_to_unit_radius(), std::invalid_argument);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  EXPECT_THROW(Observable(1, bad), std::invalid_argument);
}

TEST(Hilbert, TraceNormMatchesSingularValues) {
  std::mt19937_64 orng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix x(8, 8);
    std::normal_distribution<double> nd;
    for (Eigen::Index i = 0; i < 8; ++i) {
      for (Eigen::Index j = 0; j < 8; ++j) x(i, j) = Complex(nd(orng), nd(orng));
    }
    EXPECT_NEAR(trace_norm(x), oracle::trace_norm(x), 1e-10);
    const Matrix h = x + x.adjoint();
    EXPECT_NEAR(trace_norm_hermitian(h), oracle::trace_norm(h), 1e-10);
  }
}

TEST(Hilbert, TraceDistanceOfOrthogonalPureStatesIsOne) {
  const auto a = DensityMatrix::from_pure(StateVector::basis(2, 0));
  const auto b = DensityMatrix::from_pure(StateVector::basis(2, 3));
  EXPECT_NEAR(trace_distance(a, b), 1.0, 1e-14);
  EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-14);
}

TEST(Hilbert, PartialTraceMatchesIndexSum) {
  std::mt19937_64 rng(3);
  const int n = 4;
  const oracle::M rho = oracle::random_density(16, rng);
  const std::vector<std::vector<int>> cases = {{0}, {3}, {1, 2}, {0, 3}, {2, 0, 1}};
  for (const auto& traced : cases) {
    std::vector<bool> mask(n, false);
    for (int q : traced) mask[static_cast<std::size_t>(q)] = true;
    const Matrix got = partial_trace(rho, n, traced);
    EXPECT_LT((got - oracle::partial_trace(rho, n, mask)).cwiseAbs().maxCoeff(), 1e-13);
  }
  EXPECT_THROW(partial_trace(rho, n, std::vector<int>{4}), std::invalid_argument);
  EXPECT_THROW(partial_trace(rho, n, std::vector<int>{1, 1}), std::invalid_argument);
  const DensityMatrix full(n, rho);
  EXPECT_THROW(partial_trace(full, std::vector<int>{0, 1, 2, 3}), std::invalid_argument);
}

TEST(Hilbert, PartialTraceOfProductRecoversFactor) {
  std::mt19937_64 rng(9);
  const oracle::M a = oracle::random_density(2, rng);
  const oracle::M b = oracle::random_density(4, rng);
  const Matrix ab = kron(a, b);
  EXPECT_LT((partial_trace(ab, 3, std::vector<int>{1, 2}) - a).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((reduce_to(ab, 3, std::vector<int>{2, 1}) - b).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Hilbert, TraceAndReplaceOnProductState) {
  std::mt19937_64 rng(10);
  const oracle::M a = oracle::random_density(2, rng);
  const oracle::M b = oracle::random_density(2, rng);
  const Matrix got = trace_and_replace(kron(a, b), 2, std::vector<int>{0});
  const Matrix want = kron(Matrix::Identity(2, 2) / 2.0, b);
  EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((trace_and_replace(kron(a, b), 2, std::vector<int>{}) - kron(a, b)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Hilbert, ComplementIsometryIsOrthonormalAndOrthogonal) {
  Rng rng = derive_stream(1, 2);
  for (int n = 1; n <= 5; ++n) {
    const StateVector psi = random_state(n, rng);
    const Matrix v = complement_isometry(psi);
    const auto d = static_cast<Eigen::Index>(psi.dimension());
    ASSERT_EQ(v.rows(), d);
    ASSERT_EQ(v.cols(), d - 1);
    EXPECT_LT((v.adjoint() * v - Matrix::Identity(d - 1, d - 1)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((v.adjoint() * psi.amplitudes()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(orthonormal_complement_basis(psi).size(), static_cast<std::size_t>(d - 1));
  }
}

TEST(Hilbert, ExpectationValues) {
  const Observable z(1, pauli_string_matrix(labels_of("Z")));
  EXPECT_NEAR(expectation(z, StateVector::basis(1, 1)), -1.0, 1e-15);
  EXPECT_NEAR(expectation(z, DensityMatrix::maximally_mixed(1)), 0.0, 1e-15);
}

TEST(Hilbert, LocalUnitaryPreservesNormAndRejectsNonUnitary) {
  Rng rng = derive_stream(2, 0);
  const StateVector psi = random_state(3, rng);
  std::vector<Matrix2> us;
  for (int q = 0; q < 3; ++q) us.push_back(random_unitary_2x2(rng));
  const StateVector out = apply_local_unitary(psi, us);
  EXPECT_NEAR(out.amplitudes().norm(), 1.0, 1e-12);
  Matrix full = Matrix::Identity(1, 1);
  for (const auto& u : us) full = kron(full, u);
  EXPECT_LT((full * psi.amplitudes() - out.amplitudes()).cwiseAbs().maxCoeff(), 1e-12);
  us[1] = 2.0 * us[1];
  EXPECT_THROW(apply_local_unitary(psi, us), std::invalid_argument);
}

TEST(Hilbert, EntropyOfMaximallyMixedState) {
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(3).matrix()), 3.0 * std::numbers::ln2, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(StateVector::basis(2, 1).projector()), 0.0, 1e-12);
}

TEST(Hilbert, DerivedStreamsAreReproducibleAndDistinct) {
  Rng a = derive_stream(42, 3);
  Rng b = derive_stream(42, 3);
  Rng c = derive_stream(42, 4);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
}

TEST(Hilbert, RandomObjectsAreValid) {
  Rng rng = derive_stream(7, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector s = random_state(3, rng);
    EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-12);
    const DensityMatrix rho = random_density_matrix(2, rng);
    EXPECT_GT(hermitian_eigenvalues(rho.matrix()).minCoeff(), -1e-12);
    const Matrix2 u = random_unitary_2x2(rng);
    EXPECT_LT((u.adjoint() * u - Matrix2::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Hilbert, PureStateTraceDistanceFormula) {
  Rng rng = derive_stream(30, 0);
  for (int n = 1; n <= 6; ++n) {
    const StateVector a = random_state(n, rng);
    const StateVector b = random_state(n, rng);
    const double want = std::sqrt(1.0 - std::norm(a.inner(b)));
    EXPECT_NEAR(trace_distance(DensityMatrix::from_pure(a), DensityMatrix::from_pure(b)), want, 1e-9);
  }
}

TEST(Hilbert, ComplementBasisCompletesAUnitary) {
  Rng rng = derive_stream(31, 0);
  const StateVector psi = random_state(3, rng);
  const std::vector<StateVector> basis = orthonormal_complement_basis(psi);
  Matrix u(8, 8);
  u.col(0) = psi.amplitudes();
  for (std::size_t j = 0; j < basis.size(); ++j) u.col(static_cast<Eigen::Index>(j + 1)) = basis[j].amplitudes();
  EXPECT_LT((u.adjoint() * u - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((u * u.adjoint() - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
}
