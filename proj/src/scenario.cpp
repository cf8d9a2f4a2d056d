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

#include "certilab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "certilab/channels.hpp"
#include "certilab/confuse.hpp"
#include "certilab/parallel.hpp"

namespace certilab {

namespace {

using Json = nlohmann::json;
using OutJson = nlohmann::ordered_json;

const std::set<std::string> kTopLevelKeys = {
    "command", "family", "hamiltonian", "terms",     "pad_to_weight", "N",           "p",
    "gamma",   "t",      "quantity",    "optimizer", "seed",          "eps",         "delta",
    "k",       "m",      "bits",        "graph",     "group_sizes",   "samples",     "output"};
const std::set<std::string> kFamilyKeys = {"name", "k", "m", "bits", "graph"};
const std::set<std::string> kOptimizerKeys = {"restarts", "max_evaluations", "relative_tolerance", "stall_window"};
const std::set<std::string> kOutputKeys = {"json", "csv"};

[[noreturn]] void fail(const std::string& message) { throw ScenarioError(message); }

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) fail("unknown key '" + key + "' in " + where);
  }
}

int as_int(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) fail(what + " must be an integer");
  const auto x = v.get<long long>();
  if (x < -1000000000LL || x > 1000000000LL) fail(what + " is out of range");
  return static_cast<int>(x);
}

double as_number(const Json& v, const std::string& what) {
  if (!v.is_number()) fail(what + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(what + " must be finite");
  return x;
}

std::string as_string(const Json& v, const std::string& what) {
  if (!v.is_string()) fail(what + " must be a string");
  return v.get<std::string>();
}

std::vector<double> as_number_list(const Json& v, const std::string& what) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(as_number(x, what + " entry"));
  } else {
    out.push_back(as_number(v, what));
  }
  if (out.empty()) fail(what + " must not be empty");
  return out;
}

// N: integer, list of integers, or "a..b".
std::vector<int> as_size_list(const Json& v) {
  std::vector<int> out;
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto dots = s.find("..");
    if (dots == std::string::npos) fail("N range must look like \"2..8\"");
    try {
      std::size_t used_lo = 0;
      std::size_t used_hi = 0;
      const std::string lo_text = s.substr(0, dots);
      const std::string hi_text = s.substr(dots + 2);
      const int lo = std::stoi(lo_text, &used_lo);
      const int hi = std::stoi(hi_text, &used_hi);
      if (used_lo != lo_text.size() || used_hi != hi_text.size() || lo > hi) fail("invalid N range '" + s + "'");
      for (int n = lo; n <= hi; ++n) out.push_back(n);
    } catch (const std::logic_error&) {
      fail("invalid N range '" + s + "'");
    }
  } else if (v.is_array()) {
    for (const auto& x : v) out.push_back(as_int(x, "N entry"));
  } else {
    out.push_back(as_int(v, "N"));
  }
  if (out.empty()) fail("N must not be empty");
  std::set<int> seen;
  for (int n : out) {
    if (n < 1) fail("N entries must be positive");
    if (!seen.insert(n).second) fail("N entries must be distinct");
  }
  std::sort(out.begin(), out.end());
  return out;
}

Command parse_command(const std::string& s) {
  if (s == "certify") return Command::certify;
  if (s == "sweep") return Command::sweep;
  if (s == "bounds") return Command::bounds;
  if (s == "confuse") return Command::confuse;
  if (s == "effective-size") return Command::effective_size;
  if (s == "gap") return Command::gap;
  if (s == "verify-channel") return Command::verify_channel;
  fail("unknown command '" + s + "'");
}

void read_family_params(const Json& obj, FamilySpec& spec) {
  if (obj.contains("k")) spec.k = as_int(obj["k"], "k");
  if (obj.contains("m")) spec.m = as_int(obj["m"], "m");
  if (obj.contains("graph")) spec.graph = as_string(obj["graph"], "graph");
  if (obj.contains("bits")) {
    if (!obj["bits"].is_array()) fail("bits must be an array of 0/1");
    spec.bits.clear();
    for (const auto& b : obj["bits"]) {
      const int bit = as_int(b, "bits entry");
      if (bit != 0 && bit != 1) fail("bits entries must be 0 or 1");
      spec.bits.push_back(bit);
    }
  }
}

std::vector<PauliTerm> parse_terms(const Json& v) {
  if (!v.is_array() || v.empty()) fail("terms must be a non-empty array of {coefficient, labels}");
  std::vector<PauliTerm> out;
  for (const auto& t : v) {
    if (!t.is_object()) fail("each term must be an object");
    reject_unknown(t, {"coefficient", "labels"}, "term");
    if (!t.contains("coefficient") || !t.contains("labels")) fail("each term needs coefficient and labels");
    PauliTerm term;
    term.coefficient = as_number(t["coefficient"], "term coefficient");
    try {
      term.labels = parse_pauli_labels(as_string(t["labels"], "term labels"));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    if (term.labels.empty()) fail("term labels must not be empty");
    if (!out.empty() && term.labels.size() != out.front().labels.size()) fail("term labels differ in length");
    out.push_back(std::move(term));
  }
  return out;
}

bool is_hamiltonian_name(const std::string& s) {
  return s == "dicke-hamiltonian" || s == "graph-hamiltonian" || s == "neg-jz-squared" || s == "custom";
}

PauliHamiltonian build_hamiltonian(const HamiltonianSource& src, const FamilySpec& family, int n) {
  PauliHamiltonian h(n);
  if (src.name == "dicke-hamiltonian") {
    h = dicke_hamiltonian(n, family.k);
  } else if (src.name == "graph-hamiltonian") {
    h = graph_hamiltonian(graph_by_name(family.graph, n));
  } else if (src.name == "neg-jz-squared") {
    h = neg_jz_squared(n);
  } else if (src.name == "custom") {
    h = PauliHamiltonian(n, src.terms);
  } else {
    FamilySpec spec = family;
    spec.name = src.name;
    const FamilyInstance inst = make_family(spec, n);
    if (!inst.parent) throw std::invalid_argument("family '" + src.name + "' has no parent Hamiltonian");
    h = *inst.parent;
  }
  if (src.pad_to_weight) h = pad_to_uniform_weight(h, *src.pad_to_weight);
  return h;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

OutJson named_values(const std::vector<NamedValue>& values) {
  OutJson out = OutJson::object();
  for (const auto& v : values) out[v.name] = v.value;
  return out;
}

OutJson header(const Scenario& s) {
  OutJson out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = to_string(s.command);
  out["seed"] = s.seed;
  return out;
}

OutJson record_json(const SweepRecord& r) {
  OutJson out;
  out["family"] = r.family;
  out["N"] = r.n;
  out["p"] = r.p;
  out["quantity"] = r.quantity;
  out["value"] = r.value;
  out["kind"] = to_string(r.kind);
  if (r.kind == SweepQuantity::exact) out["converged"] = r.converged;
  return out;
}

// Stable (N, p) order, matching the CSV.
std::vector<SweepRecord> sorted_records(std::span<const SweepRecord> records) {
  std::vector<SweepRecord> out(records.begin(), records.end());
  std::stable_sort(out.begin(), out.end(), [](const SweepRecord& a, const SweepRecord& b) {
    if (a.n != b.n) return a.n < b.n;
    return a.p < b.p;
  });
  return out;
}

OutJson fit_json(const DecayFit& fit) {
  OutJson out;
  out["classification"] = to_string(fit.classification);
  out["slope"] = fit.slope;
  out["exponential_slope"] = fit.exponential_slope;
  out["polynomial_slope"] = fit.polynomial_slope;
  out["exponential_residual"] = fit.exponential_residual;
  out["polynomial_residual"] = fit.polynomial_residual;
  out["clamped"] = fit.clamped;
  return out;
}

// Classification per (quantity, p) series with at least four sizes.
OutJson classifications(std::span<const SweepRecord> records) {
  std::map<std::pair<std::string, double>, std::vector<const SweepRecord*>> series;
  for (const auto& r : records) series[{r.quantity, r.p}].push_back(&r);
  OutJson out = OutJson::array();
  for (const auto& [key, rows] : series) {
    if (rows.size() < 4) continue;
    std::vector<int> sizes;
    std::vector<double> values;
    for (const SweepRecord* r : rows) {
      sizes.push_back(r->n);
      values.push_back(r->value);
    }
    OutJson entry;
    entry["quantity"] = key.first;
    entry["p"] = key.second;
    entry["fit"] = fit_json(classify_decay(sizes, values));
    out.push_back(std::move(entry));
  }
  return out;
}

void check_caps(const std::vector<int>& sizes, int cap, const char* what) {
  for (int n : sizes) {
    if (n > cap) {
      throw ScenarioError("N = " + std::to_string(n) + " exceeds the " + what + " cap of " + std::to_string(cap));
    }
  }
}

void require_unit_interval(const std::vector<double>& ps) {
  for (double p : ps) {
    if (!(p >= 0.0 && p <= 1.0)) fail("p values must lie in [0, 1]");
  }
}

ScenarioOutput run_certify(const Scenario& s, int jobs, const Limits& limits) {
  check_caps(s.sizes, limits.exact_max_qubits, "exact");
  std::vector<FamilyInstance> instances;
  for (int n : s.sizes) instances.push_back(make_family(s.family, n));
  ScenarioOutput out;
  OutJson doc = header(s);
  doc["family"] = s.family.label();
  OutJson results = OutJson::array();
  std::vector<SweepRecord> records;
  for (const auto& inst : instances) {
    for (double p : s.ps) {
      OptimizerOptions opts = s.optimizer;
      opts.seed = s.seed;
      opts.jobs = jobs;
      opts.max_qubits = limits.exact_max_qubits;
      const CertificationResult r = certify_family(inst, p, opts);
      out.converged = out.converged && r.optimizer_report.converged;
      OutJson entry;
      entry["N"] = inst.n;
      entry["p"] = p;
      entry["value"] = r.value;
      entry["converged"] = r.optimizer_report.converged;
      entry["lower_bounds"] = named_values(r.lower_bounds);
      entry["upper_bounds"] = named_values(r.upper_bounds);
      entry["bounds_consistent"] = r.bounds_consistent();
      if (s.delta) entry["epsilon_ball_certifiable"] = epsilon_ball_certifiable(r, *s.delta, s.eps);
      entry["overlap_with_partner"] = std::abs(inst.partner.inner(r.argmin_state));
      OutJson report;
      report["restarts"] = r.optimizer_report.restarts;
      report["iterations"] = r.optimizer_report.iterations;
      report["evaluations"] = r.optimizer_report.evaluations;
      report["gradient_norm"] = r.optimizer_report.gradient_norm;
      report["best_restart"] = r.optimizer_report.best_restart;
      entry["optimizer"] = std::move(report);
      results.push_back(std::move(entry));

      const std::string label = s.family.label();
      records.push_back({label, inst.n, p, "certifiability", r.value, SweepQuantity::exact,
                         r.optimizer_report.converged});
      for (const auto& b : r.lower_bounds) records.push_back({label, inst.n, p, b.name, b.value, SweepQuantity::bound});
      for (const auto& b : r.upper_bounds) records.push_back({label, inst.n, p, b.name, b.value, SweepQuantity::bound});
    }
  }
  doc["converged"] = out.converged;
  doc["results"] = std::move(results);
  out.json = doc.dump(2) + "\n";
  out.csv = emit_csv(records);
  return out;
}

ScenarioOutput run_sweep(const Scenario& s, int jobs, const Limits& limits, SweepQuantity kind) {
  OptimizerOptions opts = s.optimizer;
  opts.seed = s.seed;
  opts.jobs = jobs;
  check_caps(s.sizes, kind == SweepQuantity::exact ? limits.exact_max_qubits : limits.pairwise_max_qubits,
             kind == SweepQuantity::exact ? "exact" : "pairwise");
  std::vector<SweepRecord> records = scaling_sweep(s.family, s.sizes, s.ps, kind, opts, limits);
  if (kind == SweepQuantity::bound) {
    for (int n : s.sizes) {
      const FamilyInstance inst = make_family(s.family, n);
      if (!inst.witness) continue;
      for (double p : s.ps) {
        records.push_back({s.family.label(), n, p, "witness_separation",
                           witness_lower_bound(inst.state, *inst.witness_partner, *inst.witness, p),
                           SweepQuantity::bound});
      }
    }
  }
  const std::vector<SweepRecord> sorted = sorted_records(records);
  ScenarioOutput out;
  for (const auto& r : sorted) out.converged = out.converged && r.converged;
  OutJson doc = header(s);
  doc["family"] = s.family.label();
  doc["quantity"] = to_string(kind);
  doc["converged"] = out.converged;
  OutJson rows = OutJson::array();
  for (const auto& r : sorted) rows.push_back(record_json(r));
  doc["records"] = std::move(rows);
  doc["classifications"] = classifications(sorted);
  out.json = doc.dump(2) + "\n";
  out.csv = emit_csv(sorted);
  return out;
}

OutJson matrix_json(const Eigen::MatrixXd& m) {
  OutJson rows = OutJson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    OutJson row = OutJson::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ScenarioOutput run_confuse(const Scenario& s, int jobs, const Limits& limits) {
  check_caps(s.sizes, limits.pairwise_max_qubits, "pairwise");
  for (int n : s.sizes) make_family(s.family, n);
  const FamilySpec spec = s.family;
  const FamilyMembers members = [spec](int n) { return make_family(spec, n).members; };
  OutJson doc = header(s);
  doc["family"] = s.family.label();
  OutJson per_p = OutJson::array();
  for (double p : s.ps) {
    const ConfusabilityMatrix cm = confusability_matrix(members, p, s.sizes, jobs);
    OutJson entry;
    entry["p"] = p;
    entry["members"] = cm.members;
    OutJson sizes = OutJson::array();
    for (std::size_t i = 0; i < cm.sizes.size(); ++i) {
      const std::vector<StateVector> states = members(cm.sizes[i]);
      Matrix mixture = Matrix::Zero(states.front().amplitudes().size(), states.front().amplitudes().size());
      for (const auto& st : states) mixture += st.projector();
      mixture /= static_cast<double>(states.size());
      OutJson row;
      row["N"] = cm.sizes[i];
      row["distances"] = matrix_json(cm.distances[i]);
      row["max_pairwise_distance"] = cm.distances[i].maxCoeff();
      row["equal_mixture_distance"] = equal_mixture_distance(states, p);
      row["mixture_entropy"] = von_neumann_entropy(mixture);
      sizes.push_back(std::move(row));
    }
    entry["sizes"] = std::move(sizes);
    OutJson pairs = OutJson::array();
    if (cm.sizes.size() >= 4) {
      for (const auto& pair : cm.pairs) {
        OutJson pj;
        pj["first"] = pair.first;
        pj["second"] = pair.second;
        pj["fit"] = fit_json(pair.fit);
        pairs.push_back(std::move(pj));
      }
    }
    entry["pairs"] = std::move(pairs);
    per_p.push_back(std::move(entry));
  }
  doc["results"] = std::move(per_p);
  return {doc.dump(2) + "\n", std::nullopt, true};
}

ScenarioOutput run_effective_size(const Scenario& s, const Limits& limits) {
  check_caps(s.sizes, limits.pairwise_max_qubits, "pairwise");
  if (!(s.eps >= 0.0 && s.eps < 0.5)) fail("eps must lie in [0, 1/2) for effective-size");
  OutJson doc = header(s);
  doc["family"] = s.family.label();
  doc["eps"] = s.eps;
  OutJson results = OutJson::array();
  for (int n : s.sizes) {
    const FamilyInstance inst = make_family(s.family, n);
    if (!inst.macro) fail("family '" + s.family.name + "' has no branch structure");
    const StateVector& b0 = inst.macro->branch0;
    const StateVector& b1 = inst.macro->branch1;
    const int n_eff = effective_size(b0, b1, s.eps);
    OutJson entry;
    entry["N"] = n;
    entry["effective_size"] = n_eff;
    OutJson groupings = OutJson::array();
    std::optional<Grouping> chosen;
    for (const Grouping& g : contiguous_blocks(n)) {
      OutJson gj;
      gj["block_size"] = static_cast<int>(g.front().size());
      OutJson probs = OutJson::array();
      for (const auto& group : g) probs.push_back(group_success_probability(b0, b1, group).success_probability);
      gj["success_probabilities"] = std::move(probs);
      groupings.push_back(std::move(gj));
      if (static_cast<int>(g.size()) == n_eff) chosen = g;
    }
    entry["groupings"] = std::move(groupings);
    OutJson independence = OutJson::array();
    if (chosen && chosen->size() > 1) {
      for (const auto& e : independence_diagnostic(b0, b1, *chosen)) {
        OutJson ej;
        ej["first_group"] = e.first_group;
        ej["second_group"] = e.second_group;
        ej["correlation"] = e.correlation;
        independence.push_back(std::move(ej));
      }
    }
    entry["independence"] = std::move(independence);
    OutJson bounds = OutJson::array();
    for (double p : s.ps) {
      OutJson bj;
      const double q = group_retention(p, n / n_eff);
      bj["p"] = p;
      bj["q"] = q;
      bj["macro_upper_bound"] = macro_upper_bound(n, n_eff, p);
      bj["epsilon_macro_bound"] = epsilon_macro_bound(n_eff, q, s.eps);
      bj["pairwise_distance"] = pairwise_noisy_distance(inst.state, inst.partner, p);
      bounds.push_back(std::move(bj));
    }
    entry["bounds"] = std::move(bounds);
    results.push_back(std::move(entry));
  }
  doc["results"] = std::move(results);
  return {doc.dump(2) + "\n", std::nullopt, true};
}

ScenarioOutput run_gap(const Scenario& s, const Limits& limits) {
  const HamiltonianSource& src = *s.hamiltonian;
  std::vector<int> sizes = s.sizes;
  if (src.name == "custom") {
    const int n = static_cast<int>(src.terms.front().labels.size());
    if (!sizes.empty() && (sizes.size() != 1 || sizes.front() != n)) fail("N does not match the custom term labels");
    sizes = {n};
  }
  if (sizes.empty()) fail("gap needs N");
  const int extra = src.pad_to_weight.value_or(0);
  for (int n : sizes) {
    if (n + extra > limits.pairwise_max_qubits) fail("N = " + std::to_string(n + extra) + " exceeds the pairwise cap");
  }
  OutJson doc = header(s);
  doc["hamiltonian"] = src.name;
  OutJson results = OutJson::array();
  for (int n : sizes) {
    const PauliHamiltonian h = build_hamiltonian(src, s.family, n);
    const SpectralInfo info = spectral_info(h);
    OutJson entry;
    entry["N"] = h.n_qubits();
    entry["terms"] = static_cast<int>(h.size());
    entry["locality"] = h.locality();
    entry["ground_energy"] = info.ground_energy;
    entry["first_excited_energy"] = info.first_excited_energy;
    entry["gap"] = info.gap;
    entry["degeneracy"] = info.ground_degeneracy;
    entry["spectral_radius"] = info.spectral_radius;
    entry["rescaled_gap"] = info.spectral_radius > 0 ? info.gap / info.spectral_radius : 0.0;
    if (info.gap >= kDefaultGapThreshold) {
      entry["confusability_index_upper_bound"] = confusability_index_upper_bound(h);
    } else {
      entry["confusability_index_upper_bound"] = nullptr;
    }
    OutJson bounds = OutJson::array();
    if (info.ground_degeneracy == 1 && info.gap > kDegeneracyTolerance) {
      for (double p : s.ps) {
        OutJson bj;
        bj["p"] = p;
        bj["gapped_ground_state_bound"] = gapped_ground_state_bound(h, p);
        bounds.push_back(std::move(bj));
      }
    }
    entry["bounds"] = std::move(bounds);
    results.push_back(std::move(entry));
  }
  doc["results"] = std::move(results);
  return {doc.dump(2) + "\n", std::nullopt, true};
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

ScenarioOutput run_verify_channel(const Scenario& s, int jobs) {
  for (int m : s.group_sizes) {
    if (m < 1 || m > 6) fail("group_sizes entries must lie in [1, 6]");
  }
  if (s.samples < 1) fail("samples must be positive");
  for (double p : s.ps) {
    if (!(p > 0.0 && p <= 1.0)) fail("verify-channel needs p in (0, 1]");
  }
  std::vector<int> sizes = s.sizes;
  if (sizes.empty()) sizes = {4, 6};
  for (int n : sizes) {
    if (n > 8) fail("verify-channel factorization checks are limited to N <= 8");
  }

  struct Task {
    int m;
    double p;
  };
  std::vector<Task> tasks;
  for (int m : s.group_sizes) {
    for (double p : s.ps) tasks.push_back({m, p});
  }
  std::vector<OutJson> kraus_rows(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    const Task& t = tasks[i];
    const KrausSet kraus = correction_map_kraus(t.m, t.p);
    Rng rng = derive_stream(s.seed, i);
    double worst = 0.0;
    for (int k = 0; k < s.samples; ++k) {
      const DensityMatrix rho = random_density_matrix(t.m, rng);
      worst = std::max(worst, max_abs(kraus.apply(rho.matrix()) - correction_map(rho, t.p).matrix()));
    }
    OutJson row;
    row["m"] = t.m;
    row["p"] = t.p;
    row["kraus_operators"] = static_cast<int>(kraus.operators.size());
    row["completeness_error"] = kraus.completeness_error();
    row["max_kraus_vs_direct"] = worst;
    if (t.m <= 4) {
      const LinearMap map = [&](const Matrix& op) { return kraus.apply(op); };
      row["choi_min_eigenvalue"] = choi_min_eigenvalue(map, t.m);
    } else {
      row["choi_min_eigenvalue"] = nullptr;
    }
    kraus_rows[i] = std::move(row);
  });

  OutJson factorization = OutJson::array();
  std::uint64_t stream = tasks.size();
  for (int n : sizes) {
    for (int m : s.group_sizes) {
      if (n % m != 0) continue;
      Grouping groups;
      for (int start = 0; start < n; start += m) {
        std::vector<int> g;
        for (int q = start; q < start + m; ++q) g.push_back(q);
        groups.push_back(std::move(g));
      }
      for (double p : s.ps) {
        Rng rng = derive_stream(s.seed, stream++);
        const Matrix rho = random_state(n, rng).projector();
        OutJson row;
        row["N"] = n;
        row["m"] = m;
        row["p"] = p;
        row["max_error"] = max_abs(apply_grouped_noise(rho, n, groups, p) - apply_to_operator(rho, p));
        factorization.push_back(std::move(row));
      }
    }
  }
  OutJson doc = header(s);
  OutJson kraus = OutJson::array();
  for (auto& row : kraus_rows) kraus.push_back(std::move(row));
  doc["correction_map"] = std::move(kraus);
  doc["factorization"] = std::move(factorization);
  return {doc.dump(2) + "\n", std::nullopt, true};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ScenarioError("cannot open '" + path.string() + "' for writing");
  f << text;
  f.close();
  if (!f) throw ScenarioError("failed writing '" + path.string() + "'");
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::certify: return "certify";
    case Command::sweep: return "sweep";
    case Command::bounds: return "bounds";
    case Command::confuse: return "confuse";
    case Command::effective_size: return "effective-size";
    case Command::gap: return "gap";
    case Command::verify_channel: return "verify-channel";
  }
  return "unknown";
}

double gamma_t_to_p(double gamma, double t) {
  if (!(gamma >= 0.0) || !(t >= 0.0)) throw std::invalid_argument("gamma_t_to_p: gamma and t must be non-negative");
  return std::exp(-gamma * t);
}

Scenario parse_scenario(const Json& doc) {
  if (!doc.is_object()) fail("scenario must be a JSON object");
  reject_unknown(doc, kTopLevelKeys, "scenario");
  if (!doc.contains("command")) fail("scenario needs a command");
  Scenario s;
  s.command = parse_command(as_string(doc["command"], "command"));

  read_family_params(doc, s.family);
  if (doc.contains("family")) {
    const Json& f = doc["family"];
    if (f.is_string()) {
      s.family.name = f.get<std::string>();
    } else if (f.is_object()) {
      reject_unknown(f, kFamilyKeys, "family");
      if (!f.contains("name")) fail("family object needs a name");
      s.family.name = as_string(f["name"], "family name");
      read_family_params(f, s.family);
    } else {
      fail("family must be a name or an object");
    }
  }

  if (doc.contains("N")) s.sizes = as_size_list(doc["N"]);
  if (doc.contains("p") && (doc.contains("gamma") || doc.contains("t"))) fail("give either p or gamma and t");
  if (doc.contains("p")) {
    s.ps = as_number_list(doc["p"], "p");
  } else if (doc.contains("gamma") || doc.contains("t")) {
    if (!doc.contains("gamma") || !doc.contains("t")) fail("gamma and t must be given together");
    const double gamma = as_number(doc["gamma"], "gamma");
    for (double t : as_number_list(doc["t"], "t")) {
      if (gamma < 0.0 || t < 0.0) fail("gamma and t must be non-negative");
      s.ps.push_back(gamma_t_to_p(gamma, t));
    }
  }
  require_unit_interval(s.ps);
  std::sort(s.ps.begin(), s.ps.end());
  s.ps.erase(std::unique(s.ps.begin(), s.ps.end()), s.ps.end());

  if (doc.contains("quantity")) {
    try {
      s.quantity = parse_sweep_quantity(as_string(doc["quantity"], "quantity"));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  if (doc.contains("optimizer")) {
    const Json& o = doc["optimizer"];
    if (!o.is_object()) fail("optimizer must be an object");
    reject_unknown(o, kOptimizerKeys, "optimizer");
    if (o.contains("restarts")) s.optimizer.restarts = as_int(o["restarts"], "optimizer.restarts");
    if (o.contains("max_evaluations")) {
      s.optimizer.max_evaluations = as_int(o["max_evaluations"], "optimizer.max_evaluations");
    }
    if (o.contains("relative_tolerance")) {
      s.optimizer.relative_tolerance = as_number(o["relative_tolerance"], "optimizer.relative_tolerance");
    }
    if (o.contains("stall_window")) s.optimizer.stall_window = as_int(o["stall_window"], "optimizer.stall_window");
    if (s.optimizer.restarts < 1 || s.optimizer.stall_window < 1 || s.optimizer.relative_tolerance < 0.0 ||
        s.optimizer.max_evaluations < s.optimizer.restarts) {
      fail("optimizer options out of range");
    }
  }
  if (doc.contains("seed")) {
    const Json& v = doc["seed"];
    if (v.is_number_unsigned()) {
      s.seed = v.get<std::uint64_t>();
    } else if (v.is_number_integer() && v.get<long long>() >= 0) {
      s.seed = static_cast<std::uint64_t>(v.get<long long>());
    } else {
      fail("seed must be a non-negative 64-bit integer");
    }
  }
  if (doc.contains("eps")) s.eps = as_number(doc["eps"], "eps");
  if (s.eps < 0.0) fail("eps must be non-negative");
  if (doc.contains("delta")) {
    s.delta = as_number(doc["delta"], "delta");
    if (*s.delta < 0.0) fail("delta must be non-negative");
  }
  if (doc.contains("group_sizes")) {
    s.group_sizes.clear();
    for (double m : as_number_list(doc["group_sizes"], "group_sizes")) {
      if (m != std::floor(m)) fail("group_sizes entries must be integers");
      s.group_sizes.push_back(static_cast<int>(m));
    }
  }
  if (doc.contains("samples")) s.samples = as_int(doc["samples"], "samples");

  if (doc.contains("hamiltonian") || s.command == Command::gap) {
    HamiltonianSource src;
    if (doc.contains("hamiltonian")) {
      const Json& h = doc["hamiltonian"];
      if (h.is_string()) {
        src.name = h.get<std::string>();
      } else if (h.is_object()) {
        reject_unknown(h, {"name", "terms", "pad_to_weight"}, "hamiltonian");
        src.name = h.contains("name") ? as_string(h["name"], "hamiltonian name") : "custom";
        if (h.contains("terms")) src.terms = parse_terms(h["terms"]);
        if (h.contains("pad_to_weight")) src.pad_to_weight = as_int(h["pad_to_weight"], "pad_to_weight");
      } else {
        fail("hamiltonian must be a name or an object");
      }
    } else {
      src.name = doc.contains("terms") && s.family.name.empty() ? "custom" : s.family.name;
    }
    if (doc.contains("terms")) src.terms = parse_terms(doc["terms"]);
    if (doc.contains("pad_to_weight")) src.pad_to_weight = as_int(doc["pad_to_weight"], "pad_to_weight");
    if (src.name.empty()) fail("gap needs a hamiltonian or family");
    if (src.name == "custom" && src.terms.empty()) fail("custom hamiltonian needs terms");
    if (src.pad_to_weight && *src.pad_to_weight < 1) fail("pad_to_weight must be positive");
    if (!is_hamiltonian_name(src.name)) {
      const auto names = family_names();
      if (std::find(names.begin(), names.end(), src.name) == names.end()) {
        fail("unknown hamiltonian '" + src.name + "'");
      }
    }
    s.hamiltonian = std::move(src);
  }

  if (doc.contains("output")) {
    const Json& o = doc["output"];
    if (!o.is_object()) fail("output must be an object");
    reject_unknown(o, kOutputKeys, "output");
    if (o.contains("json")) s.json_name = as_string(o["json"], "output.json");
    if (o.contains("csv")) s.csv_name = as_string(o["csv"], "output.csv");
  }
  if (s.json_name.empty()) s.json_name = to_string(s.command) + ".json";
  if (s.csv_name.empty()) s.csv_name = to_string(s.command) + ".csv";

  // Command-level requirements.
  const bool needs_family = s.command != Command::gap && s.command != Command::verify_channel;
  if (needs_family) {
    if (s.family.name.empty()) fail(to_string(s.command) + " needs a family");
    const auto names = family_names();
    if (std::find(names.begin(), names.end(), s.family.name) == names.end()) {
      fail("unknown family '" + s.family.name + "'");
    }
    if (s.sizes.empty()) fail(to_string(s.command) + " needs N");
  }
  const bool needs_p = s.command != Command::gap;
  if (needs_p && s.ps.empty()) {
    if (s.command == Command::verify_channel) {
      s.ps = {0.3, 0.9};
    } else {
      fail(to_string(s.command) + " needs p (or gamma and t)");
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail("cannot read scenario '" + path.string() + "'");
  std::stringstream text;
  text << f.rdbuf();
  Json doc;
  try {
    doc = Json::parse(text.str());
  } catch (const Json::parse_error& e) {
    fail(std::string("malformed scenario JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

std::string emit_csv(std::span<const SweepRecord> records) {
  std::string out = "family,N,p,quantity,value,kind\n";
  for (const auto& r : sorted_records(records)) {
    out += r.family + "," + std::to_string(r.n) + "," + format_number(r.p) + "," + r.quantity + "," +
           format_number(r.value) + "," + to_string(r.kind) + "\n";
  }
  return out;
}

ScenarioOutput execute_scenario(const Scenario& s, int jobs, const Limits& limits) {
  try {
    switch (s.command) {
      case Command::certify: return run_certify(s, jobs, limits);
      case Command::sweep: return run_sweep(s, jobs, limits, s.quantity);
      case Command::bounds: return run_sweep(s, jobs, limits, SweepQuantity::bound);
      case Command::confuse: return run_confuse(s, jobs, limits);
      case Command::effective_size: return run_effective_size(s, limits);
      case Command::gap: return run_gap(s, limits);
      case Command::verify_channel: return run_verify_channel(s, jobs);
    }
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(e.what());
  } catch (const std::domain_error& e) {
    throw ScenarioError(e.what());
  }
  throw ScenarioError("unhandled command");
}

int run_scenario(const std::filesystem::path& path, const RunOptions& options, std::ostream& log) {
  std::vector<std::filesystem::path> written;
  try {
    Scenario s = load_scenario(path);
    if (options.seed) s.seed = *options.seed;
    Limits limits;
    try {
      limits = limits_from_environment();
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    const ScenarioOutput out = execute_scenario(s, options.jobs, limits);

    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);
    if (ec) fail("cannot create output directory '" + options.out_dir.string() + "'");
    const auto json_path = options.out_dir / s.json_name;
    write_file(json_path, out.json);
    written.push_back(json_path);
    if (out.csv) {
      const auto csv_path = options.out_dir / s.csv_name;
      write_file(csv_path, *out.csv);
      written.push_back(csv_path);
    }
    if (!out.converged) {
      log << "warning: optimization did not converge for at least one point (results written with converged=false)\n";
      return kExitNotConverged;
    }
    return kExitSuccess;
  } catch (const ScenarioError& e) {
    for (const auto& p : written) {
      std::error_code ec;
      std::filesystem::remove(p, ec);
    }
    log << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace certilab
