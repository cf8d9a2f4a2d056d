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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace certilab;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Correction map from its defining sum, with Tr_S(.) (x) (I/2)^k built by
// fully depolarizing each qubit of S.
Matrix correction_oracle(const Matrix& op, int n, const std::vector<int>& group, double p) {
  const int m = static_cast<int>(group.size());
  Matrix out = Matrix::Zero(op.rows(), op.cols());
  for (unsigned subset = 0; subset < (1u << m); ++subset) {
    const int k = std::popcount(subset);
    if (k == m) continue;
    Matrix term = op;
    for (int i = 0; i < m; ++i) {
      if ((subset >> i) & 1u) term = oracle::depolarize(term, group[static_cast<std::size_t>(i)], n, 0.0);
    }
    out += std::pow(p, m - k) * std::pow(1.0 - p, k) * term;
  }
  return out / (1.0 - std::pow(1.0 - p, m));
}

// |0...0><1...1| on n qubits.
Matrix product_state_coherence(int n) {
  const auto dim = static_cast<Eigen::Index>(1) << n;
  Matrix m = Matrix::Zero(dim, dim);
  m(0, dim - 1) = 1.0;
  return m;
}

}  // namespace

TEST(Channels, DepolarizeMatchesKrausOracle) {
  std::mt19937_64 rng(1);
  const int n = 3;
  const oracle::M rho = oracle::random_density(8, rng);
  for (double p : {0.0, 0.3, 0.9, 1.0}) {
    for (int q = 0; q < n; ++q) {
      EXPECT_LT(max_abs(depolarize_qubit(rho, n, q, p) - oracle::depolarize(rho, q, n, p)), 1e-14);
    }
    const DensityMatrix dm(n, rho);
    EXPECT_LT(max_abs(depolarize_all(dm, p).matrix() - oracle::depolarize_all(rho, n, p)), 1e-14);
    EXPECT_LT(max_abs(apply_to_operator(rho, p) - oracle::depolarize_all(rho, n, p)), 1e-14);
  }
}

TEST(Channels, PauliStringsScaleByPToTheWeight) {
  const double p = 0.7;
  for (const std::string s : {"IIII", "XIII", "IYZI", "XXYZ", "ZIIZ"}) {
    const oracle::M op = oracle::pauli_string(s);
    int w = 0;
    for (char c : s) w += c != 'I';
    EXPECT_LT(max_abs(apply_to_operator(op, p) - std::pow(p, w) * op), 1e-14) << s;
  }
}

TEST(Channels, ActsOnNonHermitianOperators) {
  const Matrix ket_bra = StateVector::basis(2, 0).amplitudes() * StateVector::basis(2, 3).amplitudes().adjoint();
  EXPECT_LT(max_abs(apply_to_operator(ket_bra, 0.6) - 0.36 * ket_bra), 1e-15);
}

TEST(Channels, GroupDepolarizeOnGroup) {
  std::mt19937_64 rng(2);
  const oracle::M rho = oracle::random_density(16, rng);
  const std::vector<int> group{1, 3};
  const Matrix with_q = group_depolarize(rho, 4, group, 0.4);
  const Matrix replaced = oracle::depolarize(oracle::depolarize(rho, 1, 4, 0.0), 3, 4, 0.0);
  EXPECT_LT(max_abs(with_q - (0.4 * rho + 0.6 * replaced)), 1e-14);
  EXPECT_THROW(group_depolarize(rho, 4, std::vector<int>{}, 0.5), std::invalid_argument);
  EXPECT_THROW(group_depolarize(rho, 4, std::vector<int>{1, 1}, 0.5), std::invalid_argument);
  EXPECT_THROW(group_depolarize(rho, 4, std::vector<int>{4}, 0.5), std::invalid_argument);
}

TEST(Channels, GroupRetention) {
  EXPECT_NEAR(group_retention(0.9, 1), 0.9, 1e-15);
  EXPECT_NEAR(group_retention(0.9, 3), 1.0 - 1e-3, 1e-14);
  EXPECT_THROW(group_retention(0.9, 0), std::invalid_argument);
}

TEST(Channels, CorrectionMapMatchesDefiningSum) {
  std::mt19937_64 rng(3);
  const oracle::M rho = oracle::random_density(16, rng);
  for (double p : {0.2, 0.6, 0.95, 1.0}) {
    for (const std::vector<int>& group : {std::vector<int>{0}, std::vector<int>{1, 2}, std::vector<int>{0, 2, 3},
                                          std::vector<int>{0, 1, 2, 3}}) {
      EXPECT_LT(max_abs(correction_map(rho, 4, group, p) - correction_oracle(rho, 4, group, p)), 1e-13);
    }
  }
}

TEST(Channels, CorrectionMapKrausFormMatchesDirectForm) {
  std::mt19937_64 rng(4);
  for (int m = 1; m <= 3; ++m) {
    const auto dim = static_cast<Eigen::Index>(1) << m;
    const oracle::M rho = oracle::random_density(dim, rng);
    std::vector<int> all(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
    for (double p : {0.1, 0.5, 0.9}) {
      const KrausSet k = correction_map_kraus(m, p);
      EXPECT_LT(k.completeness_error(), 1e-12);
      EXPECT_LT(max_abs(k.apply(rho) - correction_map(rho, m, all, p)), 1e-12);
    }
  }
}

TEST(Channels, CorrectionMapIsCompletelyPositive) {
  for (int m = 1; m <= 3; ++m) {
    std::vector<int> all(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
    for (double p : {0.05, 0.5, 0.99}) {
      const LinearMap map = [&](const Matrix& op) { return correction_map(op, m, all, p); };
      EXPECT_GT(choi_min_eigenvalue(map, m), -1e-12);
    }
  }
  // Not CP: the transpose.
  const LinearMap transpose = [](const Matrix& op) -> Matrix { return op.transpose(); };
  EXPECT_LT(choi_min_eigenvalue(transpose, 1), -0.5);
}

TEST(Channels, GroupedNoiseReproducesPerQubitNoise) {
  std::mt19937_64 rng(5);
  for (int n : {4, 6}) {
    const oracle::M rho = oracle::random_density(static_cast<Eigen::Index>(1) << n, rng);
    const Grouping pairs = n == 4 ? Grouping{{0, 1}, {2, 3}} : Grouping{{0, 3}, {1, 2, 4}, {5}};
    for (double p : {0.3, 0.9}) {
      EXPECT_LT(max_abs(apply_grouped_noise(rho, n, pairs, p) - oracle::depolarize_all(rho, n, p)), 1e-12);
    }
  }
}

TEST(Channels, ParameterValidation) {
  const Matrix rho = DensityMatrix::maximally_mixed(2).matrix();
  EXPECT_THROW(depolarize_qubit(rho, 2, 0, 1.5), std::invalid_argument);
  EXPECT_THROW(depolarize_qubit(rho, 2, 2, 0.5), std::invalid_argument);
  EXPECT_THROW(depolarize_qubit(rho, 3, 0, 0.5), std::invalid_argument);
  EXPECT_THROW(correction_map(rho, 2, std::vector<int>{0}, 0.0), std::invalid_argument);
  EXPECT_THROW(correction_map_kraus(7, 0.5), std::invalid_argument);
  EXPECT_THROW(correction_map_kraus(2, 0.0), std::invalid_argument);
  const LinearMap id = [](const Matrix& op) { return op; };
  EXPECT_THROW(choi_matrix(id, 5), std::invalid_argument);
}

TEST(Channels, NoiseModelValidation) {
  NoiseModel ok{0.5, Grouping{{0, 2}, {1}}};
  EXPECT_NO_THROW(ok.validate(3));
  EXPECT_EQ(NoiseModel{}.groups(3).size(), 3u);
  EXPECT_THROW((NoiseModel{1.2, std::nullopt}.validate(2)), std::invalid_argument);
  EXPECT_THROW((NoiseModel{0.5, Grouping{{0}, {}}}.validate(1)), std::invalid_argument);
  EXPECT_THROW((NoiseModel{0.5, Grouping{{0, 1}, {1}}}.validate(2)), std::invalid_argument);
  EXPECT_THROW((NoiseModel{0.5, Grouping{{0}}}.validate(2)), std::invalid_argument);
  EXPECT_THROW((NoiseModel{0.5, Grouping{{0, 5}}}.validate(2)), std::invalid_argument);
}

TEST(Channels, IdentityAndFullyMixingLimits) {
  std::mt19937_64 rng(20);
  const oracle::M rho1 = oracle::random_density(2, rng);
  EXPECT_LT(max_abs(depolarize_qubit(rho1, 1, 0, 1.0) - rho1), 1e-15);
  EXPECT_LT(max_abs(depolarize_qubit(rho1, 1, 0, 0.0) - Matrix::Identity(2, 2) / 2.0), 1e-15);
  const oracle::M rho3 = oracle::random_density(8, rng);
  EXPECT_LT(max_abs(apply_to_operator(rho3, 0.0) - Matrix::Identity(8, 8) / 8.0), 1e-15);
  EXPECT_LT(max_abs(apply_to_operator(rho3, 1.0) - rho3), 1e-15);
  EXPECT_LT(max_abs(apply_to_operator(Matrix::Identity(8, 8), 0.3) - Matrix::Identity(8, 8)), 1e-15);
  EXPECT_LT(max_abs(depolarize_qubit(oracle::pauli('Z'), 1, 0, 0.4) - 0.4 * oracle::pauli('Z')), 1e-15);
}

TEST(Channels, OffDiagonalBlocks) {
  Matrix ket_bra = Matrix::Zero(2, 2);
  ket_bra(0, 1) = 1.0;
  EXPECT_LT(max_abs(apply_to_operator(ket_bra, 0.7) - 0.7 * ket_bra), 1e-15);
  for (int n = 1; n <= 5; ++n) {
    Matrix big = Matrix::Identity(1, 1);
    for (int q = 0; q < n; ++q) big = kron(big, ket_bra);
    EXPECT_NEAR(trace_norm(apply_to_operator(big, 0.8)), std::pow(0.8, n), 1e-12);
  }
  // GHZ branches: depolarizing one group scales the coherence by q.
  const int n = 4;
  const Matrix coherence = product_state_coherence(n);
  const std::vector<int> group{0};
  EXPECT_LT(max_abs(group_depolarize(coherence, n, group, 0.35) - 0.35 * coherence), 1e-15);
}

TEST(Channels, GroupDepolarizeSpecialCases) {
  std::mt19937_64 rng(21);
  const oracle::M rho = oracle::random_density(8, rng);
  for (int q = 0; q < 3; ++q) {
    const std::vector<int> group{q};
    EXPECT_LT(max_abs(group_depolarize(rho, 3, group, 0.6) - depolarize_qubit(rho, 3, q, 0.6)), 1e-15);
  }
  const std::vector<int> pair{0, 2};
  EXPECT_LT(max_abs(group_depolarize(rho, 3, pair, 1.0) - rho), 1e-15);
}

TEST(Channels, CorrectionMapSpecialCases) {
  std::mt19937_64 rng(22);
  const oracle::M rho = oracle::random_density(2, rng);
  const std::vector<int> single{0};
  for (double p : {0.1, 0.5, 1.0}) {
    EXPECT_LT(max_abs(correction_map(rho, 1, single, p) - rho), 1e-14);
    const KrausSet k = correction_map_kraus(1, p);
    ASSERT_EQ(k.operators.size(), 1u);
    EXPECT_LT(max_abs(k.operators[0] - Matrix::Identity(2, 2)), 1e-14);
  }
  const oracle::M rho3 = oracle::random_density(8, rng);
  const std::vector<int> all{0, 1, 2};
  EXPECT_NEAR(correction_map(rho3, 3, all, 0.4).trace().real(), 1.0, 1e-12);
  EXPECT_NEAR(correction_map(DensityMatrix(3, rho3), 0.4).matrix().trace().real(), 1.0, 1e-12);
}

TEST(Channels, CorrectionUndoesGroupNoise) {
  std::mt19937_64 rng(23);
  for (int m : {2, 3}) {
    const auto dim = static_cast<Eigen::Index>(1) << m;
    const oracle::M rho = oracle::random_density(dim, rng);
    std::vector<int> all(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
    for (double p : {0.3, 0.8}) {
      const Matrix group_noise = group_depolarize(rho, m, all, group_retention(p, m));
      EXPECT_LT(max_abs(correction_map(group_noise, m, all, p) - oracle::depolarize_all(rho, m, p)), 1e-12);
    }
  }
}

TEST(Channels, DepolarizingChannelIsCompletelyPositive) {
  const LinearMap dep = [](const Matrix& op) { return depolarize_qubit(op, 1, 0, 0.5); };
  EXPECT_GT(choi_min_eigenvalue(dep, 1), -1e-12);
}

TEST(Channels, TracePreservationContractivityAndCovariance) {
  std::mt19937_64 rng(24);
  Rng lrng = derive_stream(24, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const oracle::M a = oracle::random_density(8, rng);
    const oracle::M b = oracle::random_density(8, rng);
    const Matrix ea = apply_to_operator(a, 0.6);
    const Matrix eb = apply_to_operator(b, 0.6);
    EXPECT_NEAR(ea.trace().real(), 1.0, 1e-10);
    EXPECT_NEAR(group_depolarize(a, 3, std::vector<int>{0, 1}, 0.3).trace().real(), 1.0, 1e-10);
    EXPECT_LE(0.5 * trace_norm(ea - eb), 0.5 * trace_norm(a - b) + 1e-10);

    const StateVector psi = random_state(3, lrng);
    std::vector<Matrix2> us;
    for (int q = 0; q < 3; ++q) us.push_back(random_unitary_2x2(lrng));
    Matrix u = Matrix::Identity(1, 1);
    for (const auto& x : us) u = kron(u, x);
    const Matrix lhs = apply_to_operator(apply_local_unitary(psi, us).projector(), 0.6);
    const Matrix rhs = u * apply_to_operator(psi.projector(), 0.6) * u.adjoint();
    EXPECT_LT(max_abs(lhs - rhs), 1e-12);
  }
}

TEST(Channels, QubitOrderDoesNotMatter) {
  std::mt19937_64 rng(25);
  const oracle::M rho = oracle::random_density(8, rng);
  Matrix forward = rho;
  for (int q = 0; q < 3; ++q) forward = depolarize_qubit(forward, 3, q, 0.45);
  Matrix backward = rho;
  for (int q = 2; q >= 0; --q) backward = depolarize_qubit(backward, 3, q, 0.45);
  EXPECT_LT(max_abs(forward - backward), 1e-14);
}
