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

#include "certilab/confuse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "certilab/parallel.hpp"

namespace certilab {

namespace {

constexpr double kOrthonormalTolerance = 1e-10;
constexpr double kProbabilityTolerance = 1e-10;

void require_orthonormal(std::span<const StateVector> states, const char* where) {
  for (const auto& s : states) {
    if (s.n_qubits() != states.front().n_qubits()) {
      throw std::invalid_argument(std::string(where) + ": dimension mismatch");
    }
  }
  if (gram_deviation(states) > kOrthonormalTolerance) {
    throw std::invalid_argument(std::string(where) + ": states are not mutually orthogonal");
  }
}

std::vector<int> sorted_group(std::span<const int> group, int n) {
  std::vector<int> g(group.begin(), group.end());
  std::sort(g.begin(), g.end());
  if (g.empty()) throw std::invalid_argument("group must not be empty");
  if (std::adjacent_find(g.begin(), g.end()) != g.end()) throw std::invalid_argument("group has repeated qubits");
  if (g.front() < 0 || g.back() >= n) throw std::invalid_argument("group qubit out of range");
  return g;
}

// op acts on the sorted `group`; returns op (x) identity on the rest.
Matrix embed(const Matrix& op, const std::vector<int>& group, int n) {
  const auto dim = static_cast<Eigen::Index>(dimension_for(n));
  std::size_t group_mask = 0;
  for (int q : group) group_mask |= qubit_mask(q, n);
  auto local_index = [&](std::size_t full) {
    std::size_t local = 0;
    for (int q : group) local = (local << 1) | ((full & qubit_mask(q, n)) != 0 ? 1u : 0u);
    return static_cast<Eigen::Index>(local);
  };
  Matrix out = Matrix::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const auto rr = static_cast<std::size_t>(r);
    for (Eigen::Index c = 0; c < dim; ++c) {
      const auto cc = static_cast<std::size_t>(c);
      if ((rr & ~group_mask) != (cc & ~group_mask)) continue;
      out(r, c) = op(local_index(rr), local_index(cc));
    }
  }
  return out;
}

Matrix helstrom_observable(const Matrix& rho0, const Matrix& rho1) {
  const HermitianEigensystem es = eigendecompose_hermitian(rho0 - rho1);
  RealVector signs(es.values.size());
  for (Eigen::Index j = 0; j < signs.size(); ++j) signs(j) = es.values(j) < -1e-12 ? -1.0 : 1.0;
  return es.vectors * signs.asDiagonal() * es.vectors.adjoint();
}

double real_expectation(const Matrix& op, const StateVector& psi) {
  return psi.amplitudes().dot(op * psi.amplitudes()).real();
}

}  // namespace

double gram_deviation(std::span<const StateVector> states) {
  double worst = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      const Complex g = states[i].inner(states[j]);
      worst = std::max(worst, std::abs(g - Complex{i == j ? 1.0 : 0.0, 0.0}));
    }
  }
  return worst;
}

Eigen::MatrixXd distance_matrix(std::span<const StateVector> states, double p) {
  if (states.empty()) throw std::invalid_argument("distance_matrix: empty state list");
  require_orthonormal(states, "distance_matrix");
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = pairwise_noisy_distance(states[static_cast<std::size_t>(i)],
                                               states[static_cast<std::size_t>(j)], p);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

ConfusabilityMatrix confusability_matrix(const FamilyMembers& family, double p, std::span<const int> sizes,
                                         int jobs) {
  if (sizes.empty()) throw std::invalid_argument("confusability_matrix: empty size sweep");
  ConfusabilityMatrix out;
  out.sizes.assign(sizes.begin(), sizes.end());
  out.p = p;
  out.distances.resize(sizes.size());
  parallel_for(sizes.size(), jobs, [&](std::size_t s) {
    const std::vector<StateVector> states = family(sizes[s]);
    out.distances[s] = distance_matrix(states, p);
  });
  out.members = static_cast<int>(out.distances.front().rows());
  for (const auto& d : out.distances) {
    if (d.rows() != out.members) throw std::invalid_argument("confusability_matrix: member count varies with N");
  }
  for (int i = 0; i < out.members; ++i) {
    for (int j = i + 1; j < out.members; ++j) {
      std::vector<double> values;
      for (const auto& d : out.distances) values.push_back(d(i, j));
      out.pairs.push_back({i, j, classify_decay(out.sizes, values)});
    }
  }
  return out;
}

double equal_mixture_distance(std::span<const StateVector> states, double p) {
  if (states.empty()) throw std::invalid_argument("equal_mixture_distance: empty state list");
  require_orthonormal(states, "equal_mixture_distance");
  Matrix mixture = Matrix::Zero(states.front().amplitudes().size(), states.front().amplitudes().size());
  for (const auto& s : states) mixture += s.projector();
  mixture /= static_cast<double>(states.size());
  return 0.5 * trace_norm_hermitian(apply_to_operator(states.front().projector() - mixture, p));
}

int confusability_index_upper_bound(const PauliHamiltonian& h, double gap_threshold) {
  const SpectralInfo info = spectral_info(h);
  if (info.gap < gap_threshold) {
    throw std::domain_error("confusability_index_upper_bound: gap " + std::to_string(info.gap) +
                            " is below the threshold " + std::to_string(gap_threshold));
  }
  return info.ground_degeneracy;
}

GroupDistinguishability group_success_probability(const StateVector& psi0, const StateVector& psi1,
                                                  std::span<const int> group) {
  if (psi0.n_qubits() != psi1.n_qubits()) throw std::invalid_argument("group_success_probability: size mismatch");
  const int n = psi0.n_qubits();
  const std::vector<int> g = sorted_group(group, n);
  const Matrix rho0 = reduce_to(psi0.projector(), n, g);
  const Matrix rho1 = reduce_to(psi1.projector(), n, g);
  GroupDistinguishability out;
  out.group = g;
  out.success_probability = 0.5 + 0.25 * trace_norm_hermitian(rho0 - rho1);
  return out;
}

std::vector<Grouping> contiguous_blocks(int n) {
  if (n < 1) throw std::invalid_argument("contiguous_blocks: n must be positive");
  std::vector<Grouping> out;
  for (int m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    Grouping grouping;
    for (int start = 0; start < n; start += m) {
      std::vector<int> block;
      for (int q = start; q < start + m; ++q) block.push_back(q);
      grouping.push_back(std::move(block));
    }
    out.push_back(std::move(grouping));
  }
  return out;
}

int effective_size(const StateVector& psi0, const StateVector& psi1, double eps, const GroupingStrategy& strategy) {
  if (!(eps >= 0.0 && eps < 0.5)) throw std::invalid_argument("effective_size: eps must lie in [0, 1/2)");
  if (psi0.n_qubits() != psi1.n_qubits()) throw std::invalid_argument("effective_size: size mismatch");
  if (std::abs(psi0.inner(psi1)) > 1e-9) throw std::invalid_argument("effective_size: branches are not orthogonal");
  const int n = psi0.n_qubits();
  int best = 1;
  for (const Grouping& grouping : strategy(n)) {
    NoiseModel{1.0, grouping}.validate(n);
    const int count = static_cast<int>(grouping.size());
    if (count <= best) continue;
    const bool all_pass = std::all_of(grouping.begin(), grouping.end(), [&](const std::vector<int>& g) {
      return group_success_probability(psi0, psi1, g).success_probability >= 1.0 - eps - kProbabilityTolerance;
    });
    if (all_pass) best = count;
  }
  return best;
}

std::vector<IndependenceEntry> independence_diagnostic(const StateVector& psi0, const StateVector& psi1,
                                                       const Grouping& groups) {
  if (psi0.n_qubits() != psi1.n_qubits()) throw std::invalid_argument("independence_diagnostic: size mismatch");
  const int n = psi0.n_qubits();
  std::vector<Matrix> observables;
  for (const auto& group : groups) {
    const std::vector<int> g = sorted_group(group, n);
    const Matrix rho0 = reduce_to(psi0.projector(), n, g);
    const Matrix rho1 = reduce_to(psi1.projector(), n, g);
    observables.push_back(embed(helstrom_observable(rho0, rho1), g, n));
  }
  std::vector<IndependenceEntry> out;
  for (std::size_t i = 0; i < observables.size(); ++i) {
    for (std::size_t j = i + 1; j < observables.size(); ++j) {
      double worst = 0.0;
      for (const StateVector* psi : {&psi0, &psi1}) {
        const double joint = real_expectation(observables[i] * observables[j], *psi);
        const double product = real_expectation(observables[i], *psi) * real_expectation(observables[j], *psi);
        worst = std::max(worst, std::abs(joint - product));
      }
      out.push_back({static_cast<int>(i), static_cast<int>(j), worst});
    }
  }
  return out;
}

}  // namespace certilab
