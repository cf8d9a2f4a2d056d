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

#ifndef CERTILAB_FAMILIES_HPP
#define CERTILAB_FAMILIES_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "certilab/certify.hpp"
#include "certilab/hamiltonians.hpp"
#include "certilab/states.hpp"

/// Named, size-parametric state families with the structure each bound needs.
///
///   product             |0>^N, partner |N,1>, parent -Jz
///   ghz, ghz-pair       GHZ+, partner GHZ-, branches |0>^N and |1>^N
///   dicke (k)           |N,k>, partner |N,k+1> (|N,k-1> at k = N)
///   w                   dicke with k = 1
///   cluster (graph)     graph state, partner Z_0 |G>, parent -sum K_a
///   phase-family (m,k)  members k = 1..2^m, partner k + 1 (cyclic)
///   ghz-product (m,bits) members over all bit patterns, partner flips the last bit
///   logical-ghz (m)     N/m blocks, branches |0_L>^{N/m} and |1_L>^{N/m}
///   graph-superposition |G> + Z^N |G>, partner with a minus sign
///   w-superposition     |N,1> + |N,N-1>, partner with a minus sign
///   counterexample      psi of the pair-parity family, partner xi1
namespace certilab {

struct FamilySpec {
  std::string name;
  int k = 1;
  int m = 1;
  std::vector<int> bits;
  /// "line", "ring" or "empty".
  std::string graph = "line";

  /// Name plus the parameters the family reads, e.g. "dicke;k=2".
  std::string label() const;
};

/// GraphSpec::line, ring or empty by name.
GraphSpec graph_by_name(const std::string& kind, int n);

/// Names accepted by make_family, in documentation order.
std::vector<std::string> family_names();

struct MacroStructure {
  StateVector branch0;
  StateVector branch1;
};

struct FamilyInstance {
  int n = 0;
  StateVector state;
  StateVector partner;
  /// Mutually orthogonal set containing the state (confusability studies).
  std::vector<StateVector> members;
  /// Extra optimizer starting points.
  std::vector<StateVector> seeds;
  /// Hamiltonian with `state` as its ground state, when one is known.
  std::optional<PauliHamiltonian> parent;
  /// Present when `state` is (branch0 + branch1)/sqrt(2) and `partner` the
  /// sign-flipped superposition.
  std::optional<MacroStructure> macro;
  /// Present for the counterexample family: the pair-parity observable
  /// rescaled to unit spectral radius and the state it separates from psi.
  std::optional<Observable> witness;
  std::optional<StateVector> witness_partner;
};

/// Throws std::invalid_argument for unknown names or parameters that do not
/// fit n (for instance m not dividing n).
FamilyInstance make_family(const FamilySpec& spec, int n);

/// Closed-form bounds on C for one instance. Lower: gapped_ground_state (needs
/// a parent with unique gapped ground state). Upper: partner_distance and,
/// with macro structure, macro (effective size at eps = 0 on contiguous blocks).
struct FamilyBounds {
  std::vector<NamedValue> lower;
  std::vector<NamedValue> upper;
};
FamilyBounds family_bounds(const FamilyInstance& instance, double p);

/// certifiability_exact seeded with the family's candidates, with
/// family_bounds attached.
CertificationResult certify_family(const FamilyInstance& instance, double p, OptimizerOptions opts);

/// One record per (N, p) for exact and pairwise ("certifiability" and
/// "distance" rows), one per available bound for kind bound. Exact points run
/// one after another with parallel restarts; other kinds run points in
/// parallel. Output order is (N, p, quantity) regardless of `jobs`.
std::vector<SweepRecord> scaling_sweep(const FamilySpec& spec, std::span<const int> sizes,
                                       std::span<const double> ps, SweepQuantity kind, const OptimizerOptions& opts,
                                       const Limits& limits = {});

}  // namespace certilab

#endif  // CERTILAB_FAMILIES_HPP
