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

#include <gtest/gtest.h>

#include "certilab/certify.hpp"
#include "certilab/channels.hpp"
#include "certilab/states.hpp"
#include "oracles.hpp"

using namespace certilab;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

oracle::M collective(char c, int n) {
  oracle::M out = oracle::M::Zero(1 << n, 1 << n);
  for (int q = 0; q < n; ++q) out += 0.5 * oracle::embed(oracle::pauli(c), q, n);
  return out;
}

}  // namespace

TEST(Hamiltonians, LabelParsing) {
  EXPECT_EQ(format_pauli_labels(parse_pauli_labels("IXYZ")), "IXYZ");
  EXPECT_THROW(parse_pauli_labels("XA"), std::invalid_argument);
}

TEST(Hamiltonians, MatrixMatchesKroneckerOracle) {
  PauliHamiltonian h(3);
  h.add(0.5, parse_pauli_labels("XZI"));
  h.add(-1.25, parse_pauli_labels("IYY"));
  h.add(2.0, parse_pauli_labels("III"));
  const oracle::M want = 0.5 * oracle::pauli_string("XZI") - 1.25 * oracle::pauli_string("IYY") +
                         2.0 * oracle::pauli_string("III");
  EXPECT_LT(max_abs(h.matrix() - want), 1e-14);
  EXPECT_EQ(h.locality(), 2);
  EXPECT_EQ(h.size(), 3u);
}

TEST(Hamiltonians, TermsMergeAndCancel) {
  PauliHamiltonian h(2);
  h.add(1.0, parse_pauli_labels("XX"));
  h.add(-1.0, parse_pauli_labels("XX"));
  EXPECT_EQ(h.size(), 0u);
  EXPECT_EQ(h.locality(), 0);
  EXPECT_THROW(h.add(1.0, parse_pauli_labels("X")), std::invalid_argument);
}

TEST(Hamiltonians, ArithmeticMatchesMatrices) {
  PauliHamiltonian a(2);
  a.add(1.0, parse_pauli_labels("XI"));
  a.add(0.5, parse_pauli_labels("ZZ"));
  PauliHamiltonian b(2);
  b.add(2.0, parse_pauli_labels("XI"));
  b.add(-1.0, parse_pauli_labels("IY"));
  EXPECT_LT(max_abs((a + b).matrix() - (a.matrix() + b.matrix())), 1e-14);
  EXPECT_LT(max_abs((a - b).matrix() - (a.matrix() - b.matrix())), 1e-14);
  EXPECT_LT(max_abs((a * 3.0).matrix() - 3.0 * a.matrix()), 1e-14);
  // a*a is Hermitian.
  EXPECT_LT(max_abs((a * a).matrix() - a.matrix() * a.matrix()), 1e-14);
  // X Y = iZ on one qubit: not Hermitian.
  EXPECT_THROW(PauliHamiltonian::single(1, 0, Pauli::X) * PauliHamiltonian::single(1, 0, Pauli::Y), std::logic_error);
}

TEST(Hamiltonians, CollectiveSpinOperators) {
  for (int n = 2; n <= 4; ++n) {
    EXPECT_LT(max_abs(jx(n).matrix() - collective('X', n)), 1e-14);
    EXPECT_LT(max_abs(jy(n).matrix() - collective('Y', n)), 1e-14);
    EXPECT_LT(max_abs(jz(n).matrix() - collective('Z', n)), 1e-14);
    const oracle::M j2 = collective('X', n) * collective('X', n) + collective('Y', n) * collective('Y', n) +
                         collective('Z', n) * collective('Z', n);
    EXPECT_LT(max_abs(j_squared(n).matrix() - j2), 1e-12);
    EXPECT_LE(j_squared(n).locality(), 2);
  }
}

TEST(Hamiltonians, SpectralInfo) {
  const SpectralInfo info = spectral_info(jz(3) * -1.0);
  EXPECT_NEAR(info.ground_energy, -1.5, 1e-12);
  EXPECT_NEAR(info.first_excited_energy, -0.5, 1e-12);
  EXPECT_NEAR(info.gap, 1.0, 1e-12);
  EXPECT_EQ(info.ground_degeneracy, 1);
  EXPECT_NEAR(info.spectral_radius, 1.5, 1e-12);
  EXPECT_NEAR(std::abs(info.ground_space.at(0).inner(product_zero(3))), 1.0, 1e-12);
  const SpectralInfo flat = spectral_info(PauliHamiltonian::identity(2, 3.0));
  EXPECT_EQ(flat.ground_degeneracy, 4);
  EXPECT_NEAR(flat.gap, 0.0, 1e-12);
}

TEST(Hamiltonians, Rescaling) {
  const auto [h, r] = rescale_to_unit_spectral_radius(jz(4));
  EXPECT_NEAR(r, 2.0, 1e-12);
  EXPECT_NEAR(spectral_info(h).spectral_radius, 1.0, 1e-12);
  EXPECT_THROW(rescale_to_unit_spectral_radius(PauliHamiltonian(2)), std::invalid_argument);
}

TEST(Hamiltonians, DickeHamiltonianHasUniqueDickeGroundState) {
  for (int n = 2; n <= 5; ++n) {
    for (int k = 0; k <= n; ++k) {
      const SpectralInfo info = spectral_info(dicke_hamiltonian(n, k));
      ASSERT_EQ(info.ground_degeneracy, 1) << n << "," << k;
      EXPECT_GT(info.gap, 0.5);
      EXPECT_NEAR(std::abs(info.ground_space[0].inner(dicke(n, k))), 1.0, 1e-10);
      EXPECT_LE(dicke_hamiltonian(n, k).locality(), 2);
    }
  }
}

TEST(Hamiltonians, GraphHamiltonianGroundStateIsGraphState) {
  for (const GraphSpec& g : {GraphSpec::line(4), GraphSpec::ring(5)}) {
    const SpectralInfo info = spectral_info(graph_hamiltonian(g));
    ASSERT_EQ(info.ground_degeneracy, 1);
    EXPECT_NEAR(info.ground_energy, -g.n_vertices, 1e-10);
    EXPECT_NEAR(info.gap, 2.0, 1e-10);
    EXPECT_NEAR(std::abs(info.ground_space[0].inner(graph_state(g))), 1.0, 1e-10);
  }
}

TEST(Hamiltonians, NegJzSquaredGroundSpaceSpansGhz) {
  for (int n = 2; n <= 5; ++n) {
    const SpectralInfo info = spectral_info(neg_jz_squared(n));
    ASSERT_EQ(info.ground_degeneracy, 2);
    EXPECT_NEAR(info.gap, n - 1.0, 1e-10);
    for (int sign : {1, -1}) {
      const StateVector g = ghz(n, sign);
      double weight = 0.0;
      for (const auto& v : info.ground_space) weight += std::norm(v.inner(g));
      EXPECT_NEAR(weight, 1.0, 1e-10);
    }
  }
}

TEST(Hamiltonians, PaddingPreservesExpectationsAndEqualizesWeight) {
  PauliHamiltonian h(2);
  h.add(1.0, parse_pauli_labels("XI"));
  h.add(0.5, parse_pauli_labels("ZZ"));
  h.add(0.25, parse_pauli_labels("II"));
  const PauliHamiltonian padded = pad_to_uniform_weight(h, 2);
  ASSERT_EQ(padded.n_qubits(), 4);
  for (const PauliTerm& t : padded.terms()) EXPECT_EQ(t.weight(), 2);
  Rng rng = derive_stream(8, 0);
  const StateVector psi = random_state(2, rng);
  const StateVector extended = psi.tensor(product_zero(2));
  EXPECT_NEAR(expectation(padded.observable(), extended), expectation(h.observable(), psi), 1e-12);
  EXPECT_THROW(pad_to_uniform_weight(h, 1), std::invalid_argument);
}

TEST(Hamiltonians, JzSpectrumAndSingleQubitCases) {
  EXPECT_LT(max_abs(jz(1).matrix() - 0.5 * oracle::pauli('Z')), 1e-15);
  EXPECT_LT(max_abs(j_squared(1).matrix() - 0.75 * oracle::M::Identity(2, 2)), 1e-14);
  const int n = 5;
  const SpectralInfo info = spectral_info(jz(n));
  EXPECT_NEAR(info.ground_energy, -2.5, 1e-12);
  EXPECT_EQ(info.ground_degeneracy, 1);
  const RealVector ev = hermitian_eigenvalues(jz(n).matrix());
  for (int k = 0; k <= n; ++k) {
    int count = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) count += std::abs(ev(i) - (n / 2.0 - k)) < 1e-9;
    const int binom = static_cast<int>(std::lround(std::tgamma(n + 1) / (std::tgamma(k + 1) * std::tgamma(n - k + 1))));
    EXPECT_EQ(count, binom) << k;
  }
  const SpectralInfo top = spectral_info(jz(n) * -1.0);
  EXPECT_NEAR(std::abs(top.ground_space[0].inner(product_zero(n))), 1.0, 1e-12);
}

TEST(Hamiltonians, JSquaredCommutesWithJz) {
  for (int n = 2; n <= 5; ++n) {
    const Matrix a = j_squared(n).matrix();
    const Matrix b = jz(n).matrix();
    EXPECT_LT(max_abs(a * b - b * a), 1e-10);
  }
}

TEST(Hamiltonians, PermutationInvariance) {
  for (int n = 2; n <= 5; ++n) {
    const Matrix j2 = j_squared(n).matrix();
    const Matrix dh = dicke_hamiltonian(n, n / 2).matrix();
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        // SWAP_ab = (I + XX + YY + ZZ) / 2 on qubits a, b.
        oracle::M swap = oracle::M::Identity(1 << n, 1 << n);
        for (char c : {'X', 'Y', 'Z'}) swap += oracle::embed(oracle::pauli(c), a, n) * oracle::embed(oracle::pauli(c), b, n);
        swap /= 2.0;
        EXPECT_LT(max_abs(swap * j2 * swap - j2), 1e-12);
        EXPECT_LT(max_abs(swap * dh * swap - dh), 1e-12);
      }
    }
  }
}

TEST(Hamiltonians, DickeHamiltonianGapAndEdgeCases) {
  for (int n = 3; n <= 6; ++n) EXPECT_GT(spectral_info(dicke_hamiltonian(n, 1)).gap, 0.0);
  const SpectralInfo k0 = spectral_info(dicke_hamiltonian(4, 0));
  EXPECT_NEAR(std::abs(k0.ground_space.at(0).inner(product_zero(4))), 1.0, 1e-10);
  EXPECT_THROW(dicke_hamiltonian(4, 5), std::invalid_argument);
}

TEST(Hamiltonians, GraphHamiltonianLocalityAndEmptyGraph) {
  for (int n = 2; n <= 6; ++n) {
    const GraphSpec g = GraphSpec::line(n);
    EXPECT_EQ(graph_hamiltonian(g).locality(), 1 + g.max_degree());
    EXPECT_NEAR(spectral_info(graph_hamiltonian(g)).gap, 2.0, 1e-10);
  }
  PauliHamiltonian minus_x(3);
  for (int a = 0; a < 3; ++a) minus_x = minus_x + PauliHamiltonian::single(3, a, Pauli::X, -1.0);
  EXPECT_LT(max_abs(graph_hamiltonian(GraphSpec::empty(3)).matrix() - minus_x.matrix()), 1e-15);
}

TEST(Hamiltonians, NegJzSquaredSmallCases) {
  EXPECT_NEAR(spectral_info(neg_jz_squared(2)).ground_energy, -1.0, 1e-12);
  EXPECT_EQ(spectral_info(neg_jz_squared(4)).ground_degeneracy, 2);
  // The gap above the two-fold ground space is (N/2)^2 - (N/2 - 1)^2 = N - 1.
  for (int n = 3; n <= 7; ++n) EXPECT_NEAR(spectral_info(neg_jz_squared(n)).gap, n - 1.0, 1e-10);
}

TEST(Hamiltonians, RescalingFactors) {
  const auto [z, f1] = rescale_to_unit_spectral_radius(PauliHamiltonian::single(1, 0, Pauli::Z));
  EXPECT_NEAR(f1, 1.0, 1e-12);
  EXPECT_LT(max_abs(z.matrix() - oracle::pauli('Z')), 1e-12);
  const auto [z3, f3] = rescale_to_unit_spectral_radius(PauliHamiltonian::single(1, 0, Pauli::Z, 3.0));
  EXPECT_NEAR(f3, 3.0, 1e-12);
  EXPECT_LT(max_abs(z3.matrix() - oracle::pauli('Z')), 1e-12);
}

TEST(Hamiltonians, NoiseDampsEachTermByItsWeight) {
  const PauliHamiltonian h = graph_hamiltonian(GraphSpec::line(4));
  Matrix want = Matrix::Zero(16, 16);
  for (const PauliTerm& t : h.terms()) {
    want += t.coefficient * std::pow(0.7, t.weight()) * pauli_string_matrix(t.labels);
  }
  EXPECT_LT(max_abs(apply_to_operator(h.matrix(), 0.7) - want), 1e-12);
}

TEST(Hamiltonians, AncillaPaddingPreservesNoisyDistance) {
  Rng rng = derive_stream(40, 0);
  const StateVector a = random_state(2, rng);
  const StateVector b = random_state(2, rng);
  const StateVector anc = product_zero(2);
  for (double p : {0.5, 0.9}) {
    EXPECT_NEAR(pairwise_noisy_distance(a.tensor(anc), b.tensor(anc), p), pairwise_noisy_distance(a, b, p), 1e-12);
  }
}
