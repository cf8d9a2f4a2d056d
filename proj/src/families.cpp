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

#include "certilab/families.hpp"

#include <algorithm>
#include <stdexcept>

#include "certilab/confuse.hpp"
#include "certilab/parallel.hpp"

namespace certilab {

namespace {

void require_divides(int m, int n, const std::string& family) {
  if (m < 1 || n % m != 0) {
    throw std::invalid_argument(family + ": m = " + std::to_string(m) + " must divide N = " + std::to_string(n));
  }
}

std::vector<int> bits_of(unsigned pattern, int width) {
  std::vector<int> bits(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) bits[static_cast<std::size_t>(i)] = (pattern >> (width - 1 - i)) & 1u;
  return bits;
}

unsigned pattern_of(std::span<const int> bits) {
  unsigned out = 0;
  for (int b : bits) out = (out << 1) | static_cast<unsigned>(b & 1);
  return out;
}

FamilyInstance pair_instance(int n, StateVector state, StateVector partner) {
  FamilyInstance f{n, state, partner, {state, partner}, {partner}, std::nullopt, std::nullopt, std::nullopt,
                   std::nullopt};
  return f;
}

FamilyInstance macro_instance(int n, const StateVector& b0, const StateVector& b1) {
  FamilyInstance f = pair_instance(n, superpose(b0, b1, 1.0, 1.0), superpose(b0, b1, 1.0, -1.0));
  f.macro = MacroStructure{b0, b1};
  return f;
}

FamilyInstance dicke_instance(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("dicke: k must lie in [0, N]");
  if (n < 2) throw std::invalid_argument("dicke: needs N >= 2");
  const int other = k < n ? k + 1 : k - 1;
  FamilyInstance f = pair_instance(n, dicke(n, k), dicke(n, other));
  f.parent = dicke_hamiltonian(n, k);
  return f;
}

}  // namespace

GraphSpec graph_by_name(const std::string& kind, int n) {
  if (kind == "line") return GraphSpec::line(n);
  if (kind == "ring") return GraphSpec::ring(n);
  if (kind == "empty") return GraphSpec::empty(n);
  throw std::invalid_argument("unknown graph '" + kind + "' (expected line, ring or empty)");
}

std::string FamilySpec::label() const {
  if (name == "dicke") return name + ";k=" + std::to_string(k);
  if (name == "cluster" || name == "graph-superposition") return name + ";graph=" + graph;
  if (name == "phase-family") return name + ";m=" + std::to_string(m) + ";k=" + std::to_string(k);
  if (name == "logical-ghz") return name + ";m=" + std::to_string(m);
  if (name == "ghz-product") {
    std::string s = name + ";m=" + std::to_string(m) + ";bits=";
    for (int b : bits) s += std::to_string(b);
    return s;
  }
  return name;
}

std::vector<std::string> family_names() {
  return {"product",      "ghz",         "ghz-pair",    "dicke",
          "w",            "cluster",     "phase-family", "ghz-product",
          "logical-ghz",  "graph-superposition", "w-superposition", "counterexample"};
}

FamilyInstance make_family(const FamilySpec& spec, int n) {
  const std::string& name = spec.name;
  if (n < 1) throw std::invalid_argument(name + ": N must be positive");

  if (name == "product") {
    if (n < 2) throw std::invalid_argument("product: needs N >= 2");
    FamilyInstance f = pair_instance(n, product_zero(n), dicke(n, 1));
    f.parent = jz(n) * -1.0;
    return f;
  }
  if (name == "ghz" || name == "ghz-pair") {
    if (n < 2) throw std::invalid_argument(name + ": needs N >= 2");
    return macro_instance(n, product_zero(n), StateVector::basis(n, dimension_for(n) - 1));
  }
  if (name == "dicke") return dicke_instance(n, spec.k);
  if (name == "w") return dicke_instance(n, 1);
  if (name == "cluster") {
    const GraphSpec g = graph_by_name(spec.graph, n);
    const StateVector state = graph_state(g);
    FamilyInstance f = pair_instance(n, state, apply_pauli(state, Pauli::Z, 0).with_canonical_phase());
    f.parent = graph_hamiltonian(g);
    return f;
  }
  if (name == "phase-family") {
    require_divides(spec.m, n, name);
    if (spec.m > 6) throw std::invalid_argument("phase-family: m must be at most 6");
    const int levels = 1 << spec.m;
    if (spec.k < 1 || spec.k > levels) throw std::invalid_argument("phase-family: k must lie in [1, 2^m]");
    FamilyInstance f = pair_instance(n, phase_family(n, spec.m, spec.k),
                                     phase_family(n, spec.m, spec.k % levels + 1));
    f.members.clear();
    f.members.push_back(f.state);
    for (int j = 1; j <= levels; ++j) {
      if (j != spec.k) f.members.push_back(phase_family(n, spec.m, j));
    }
    f.seeds = std::vector<StateVector>(f.members.begin() + 1, f.members.end());
    return f;
  }
  if (name == "ghz-product") {
    require_divides(spec.m, n, name);
    if (spec.m > 6) throw std::invalid_argument("ghz-product: m must be at most 6");
    std::vector<int> bits = spec.bits.empty() ? std::vector<int>(static_cast<std::size_t>(spec.m), 0) : spec.bits;
    if (static_cast<int>(bits.size()) != spec.m) throw std::invalid_argument("ghz-product: needs exactly m bits");
    std::vector<int> flipped = bits;
    flipped.back() ^= 1;
    FamilyInstance f = pair_instance(n, ghz_product_family(n, spec.m, bits), ghz_product_family(n, spec.m, flipped));
    f.members.clear();
    f.members.push_back(f.state);
    const unsigned own = pattern_of(bits);
    for (unsigned pattern = 0; pattern < (1u << spec.m); ++pattern) {
      if (pattern != own) f.members.push_back(ghz_product_family(n, spec.m, bits_of(pattern, spec.m)));
    }
    f.seeds = std::vector<StateVector>(f.members.begin() + 1, f.members.end());
    return f;
  }
  if (name == "logical-ghz") {
    require_divides(spec.m, n, name);
    if (n / spec.m < 2) throw std::invalid_argument("logical-ghz: needs at least two blocks");
    return macro_instance(n, logical_branch(n / spec.m, spec.m, 0), logical_branch(n / spec.m, spec.m, 1));
  }
  if (name == "graph-superposition") {
    const StateVector g = graph_state(graph_by_name(spec.graph, n));
    const std::vector<Pauli> all_z(static_cast<std::size_t>(n), Pauli::Z);
    return macro_instance(n, g, apply_pauli_string(g, all_z));
  }
  if (name == "w-superposition") {
    if (n < 3) throw std::invalid_argument("w-superposition: needs N >= 3");
    return macro_instance(n, dicke(n, 1), dicke(n, n - 1));
  }
  if (name == "counterexample") {
    const CounterexampleStates c = counterexample_states(n);
    FamilyInstance f = pair_instance(n, c.psi, c.xi1);
    f.members = {c.psi, c.phi1, c.phi2};
    f.seeds = {c.phi1, c.phi2, c.xi1, c.xi2};
    f.witness = c.witness.rescaled_to_unit_radius();
    f.witness_partner = c.phi1;
    return f;
  }
  throw std::invalid_argument("unknown family '" + name + "'");
}

FamilyBounds family_bounds(const FamilyInstance& instance, double p) {
  FamilyBounds out;
  if (instance.parent) {
    try {
      out.lower.push_back({"gapped_ground_state", gapped_ground_state_bound(*instance.parent, p)});
    } catch (const std::domain_error&) {
      // No unique gapped ground state: the bound does not apply.
    }
  }
  out.upper.push_back({"partner_distance", pairwise_noisy_distance(instance.state, instance.partner, p)});
  if (instance.macro) {
    const int n_eff = effective_size(instance.macro->branch0, instance.macro->branch1, 0.0);
    out.upper.push_back({"macro", macro_upper_bound(instance.n, n_eff, p)});
  }
  return out;
}

CertificationResult certify_family(const FamilyInstance& instance, double p, OptimizerOptions opts) {
  opts.extra_seeds.insert(opts.extra_seeds.begin(), instance.seeds.begin(), instance.seeds.end());
  CertificationResult result = certifiability_exact(instance.state, p, opts);
  FamilyBounds bounds = family_bounds(instance, p);
  result.lower_bounds = std::move(bounds.lower);
  result.upper_bounds = std::move(bounds.upper);
  return result;
}

std::vector<SweepRecord> scaling_sweep(const FamilySpec& spec, std::span<const int> sizes,
                                       std::span<const double> ps, SweepQuantity kind, const OptimizerOptions& opts,
                                       const Limits& limits) {
  const int cap = kind == SweepQuantity::exact ? limits.exact_max_qubits : limits.pairwise_max_qubits;
  for (int n : sizes) {
    if (n > cap) {
      throw std::invalid_argument("scaling_sweep: N = " + std::to_string(n) + " exceeds the cap of " +
                                  std::to_string(cap) + " for " + to_string(kind) + " sweeps");
    }
  }
  for (double p : ps) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("scaling_sweep: p must lie in [0, 1]");
  }
  std::vector<int> sorted_sizes(sizes.begin(), sizes.end());
  std::sort(sorted_sizes.begin(), sorted_sizes.end());
  std::vector<double> sorted_ps(ps.begin(), ps.end());
  std::sort(sorted_ps.begin(), sorted_ps.end());
  // Build every instance up front so that parameter errors surface before any
  // expensive work starts.
  std::vector<FamilyInstance> instances;
  for (int n : sorted_sizes) instances.push_back(make_family(spec, n));

  struct Point {
    std::size_t instance;
    double p;
  };
  std::vector<Point> points;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (double p : sorted_ps) points.push_back({i, p});
  }
  const std::string label = spec.label();
  std::vector<std::vector<SweepRecord>> per_point(points.size());
  auto evaluate = [&](std::size_t idx, int restart_jobs) {
    const Point& pt = points[idx];
    const FamilyInstance& inst = instances[pt.instance];
    auto record = [&](std::string quantity, double value, bool converged = true) {
      per_point[idx].push_back({label, inst.n, pt.p, std::move(quantity), value, kind, converged});
    };
    switch (kind) {
      case SweepQuantity::exact: {
        OptimizerOptions local = opts;
        local.jobs = restart_jobs;
        local.max_qubits = limits.exact_max_qubits;
        const CertificationResult r = certify_family(inst, pt.p, local);
        record("certifiability", r.value, r.optimizer_report.converged);
        break;
      }
      case SweepQuantity::pairwise:
        record("distance", pairwise_noisy_distance(inst.state, inst.partner, pt.p));
        break;
      case SweepQuantity::bound: {
        const FamilyBounds b = family_bounds(inst, pt.p);
        for (const auto& v : b.lower) record(v.name, v.value);
        for (const auto& v : b.upper) record(v.name, v.value);
        break;
      }
    }
  };
  if (kind == SweepQuantity::exact) {
    for (std::size_t i = 0; i < points.size(); ++i) evaluate(i, opts.jobs);
  } else {
    parallel_for(points.size(), opts.jobs, [&](std::size_t i) { evaluate(i, 1); });
  }
  std::vector<SweepRecord> out;
  for (auto& batch : per_point) {
    for (auto& r : batch) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace certilab
