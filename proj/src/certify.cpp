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

#include "certilab/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <random>
#include <stdexcept>
#include <string>

#include "certilab/channels.hpp"
#include "certilab/parallel.hpp"
#include "certilab/states.hpp"

namespace certilab {

namespace {

constexpr double kSignCutoff = 1e-12;
constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-14;
constexpr double kMaxStep = 8.0;
constexpr double kGradientTolerance = 1e-12;
constexpr double kSeedNormFloor = 1e-8;
constexpr double kClampFloor = 1e-300;
// Seeds of this many restarts are always Haar random.
constexpr int kReservedRandomRestarts = 8;

void require_p(double p, const char* where) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(where) + ": p must lie in [0, 1]");
  }
}

void require_same_size(const StateVector& a, const StateVector& b, const char* where) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

void require_orthogonal(const StateVector& a, const StateVector& b, const char* where) {
  require_same_size(a, b, where);
  if (std::abs(a.inner(b)) > 1e-9) throw std::invalid_argument(std::string(where) + ": states are not orthogonal");
}

// f(u) = D[E(psi), E(V u u^dagger V^dagger)] on the unit sphere of the
// orthogonal complement, with an evaluation counter.
class Objective {
 public:
  Objective(const StateVector& psi, double p)
      : p_(p), target_(apply_to_operator(psi.projector(), p)), basis_(complement_isometry(psi)) {}

  Eigen::Index dimension() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  long evaluations() const { return evaluations_; }

  double value(const Vector& u) {
    ++evaluations_;
    return 0.5 * hermitian_eigenvalues(difference(u)).cwiseAbs().sum();
  }

  // Returns f(u) and writes the Riemannian subgradient into `tangent`.
  double value_and_gradient(const Vector& u, Vector& tangent) {
    ++evaluations_;
    const Vector phi = basis_ * u;
    const HermitianEigensystem es = eigendecompose_hermitian(difference_from(phi));
    RealVector signs(es.values.size());
    for (Eigen::Index j = 0; j < signs.size(); ++j) {
      const double v = es.values(j);
      signs(j) = std::abs(v) < kSignCutoff ? 0.0 : (v > 0 ? 1.0 : -1.0);
    }
    const Matrix sign_op = es.vectors * signs.asDiagonal() * es.vectors.adjoint();
    // The channel is self-adjoint, so d f = -Re <phi| E(S) |d phi>.
    const Matrix damped = apply_to_operator(sign_op, p_);
    const Vector g = -(basis_.adjoint() * (damped * phi));
    tangent = g - u.dot(g).real() * u;
    return 0.5 * es.values.cwiseAbs().sum();
  }

 private:
  Matrix difference(const Vector& u) const { return difference_from(basis_ * u); }
  Matrix difference_from(const Vector& phi) const {
    return target_ - apply_to_operator(phi * phi.adjoint(), p_);
  }

  double p_;
  Matrix target_;
  Matrix basis_;
  long evaluations_ = 0;
};

struct RestartOutcome {
  double value = 0.0;
  Vector u;
  long iterations = 0;
  long evaluations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
};

RestartOutcome descend(Objective& f, Vector u, long budget, const OptimizerOptions& opts) {
  RestartOutcome out;
  u.normalize();
  Vector grad;
  double value = f.value_and_gradient(u, grad);
  std::deque<double> history{value};
  double step = 1.0;
  while (true) {
    const double gnorm2 = grad.squaredNorm();
    out.gradient_norm = std::sqrt(gnorm2);
    if (out.gradient_norm < kGradientTolerance) {
      out.converged = true;
      break;
    }
    if (f.evaluations() >= budget) break;

    bool accepted = false;
    Vector candidate;
    double candidate_value = value;
    while (f.evaluations() < budget) {
      candidate = (u - step * grad).normalized();
      candidate_value = f.value(candidate);
      if (candidate_value <= value - kArmijo * step * gnorm2) {
        accepted = true;
        break;
      }
      step *= 0.5;
      if (step < kMinStep) break;
    }
    if (!accepted) {
      out.converged = step < kMinStep;
      break;
    }
    u = candidate;
    step = std::min(2.0 * step, kMaxStep);
    ++out.iterations;
    if (f.evaluations() >= budget) {
      value = candidate_value;
      break;
    }
    value = f.value_and_gradient(u, grad);

    history.push_back(value);
    if (static_cast<int>(history.size()) > opts.stall_window) {
      history.pop_front();
      const double old = history.front();
      if (old - value <= opts.relative_tolerance * std::max(std::abs(old), kClampFloor)) {
        out.converged = true;
        break;
      }
    }
  }
  out.value = value;
  out.u = std::move(u);
  out.evaluations = f.evaluations();
  return out;
}

// Generated seeds: user candidates, single-qubit Paulis on psi, and the
// collective flip sum_q X_q psi, all projected onto the complement.
std::vector<Vector> structured_seeds(const StateVector& psi, const Matrix& basis, const OptimizerOptions& opts) {
  std::vector<Vector> raw;
  for (const auto& s : opts.extra_seeds) {
    require_same_size(psi, s, "certifiability_exact extra seed");
    raw.push_back(s.amplitudes());
  }
  const int n = psi.n_qubits();
  Vector collective = Vector::Zero(psi.amplitudes().size());
  for (int q = 0; q < n; ++q) {
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      const Vector flipped = apply_pauli(psi, p, q).amplitudes();
      raw.push_back(flipped);
      if (p == Pauli::X) collective += flipped;
    }
  }
  raw.push_back(collective);

  std::vector<Vector> seeds;
  for (const Vector& r : raw) {
    Vector u = basis.adjoint() * r;
    const double norm = u.norm();
    if (norm < kSeedNormFloor) continue;
    u /= norm;
    const bool duplicate = std::any_of(seeds.begin(), seeds.end(), [&](const Vector& s) {
      return std::abs(std::abs(s.dot(u)) - 1.0) < 1e-10;
    });
    if (!duplicate) seeds.push_back(std::move(u));
  }
  const auto max_structured = static_cast<std::size_t>(std::max(0, opts.restarts - kReservedRandomRestarts));
  if (seeds.size() > max_structured) seeds.resize(std::max<std::size_t>(max_structured, opts.extra_seeds.size()));
  return seeds;
}

Vector haar_start(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector u(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    u(i) = Complex{re, im};
  }
  return u.normalized();
}

struct LinearFit {
  double slope = 0.0;
  double residual = 0.0;
};

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  const double intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + fit.slope * x[i]);
    fit.residual += r * r;
  }
  return fit;
}

}  // namespace

Limits limits_from_environment() {
  Limits limits;
  const char* raw = std::getenv("CERTILAB_MAX_QUBITS");
  if (raw == nullptr || *raw == '\0') return limits;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value < 1 || value > kHardQubitLimit) {
    throw std::invalid_argument("CERTILAB_MAX_QUBITS must be an integer in [1, " + std::to_string(kHardQubitLimit) +
                                "]");
  }
  limits.exact_max_qubits = static_cast<int>(value);
  limits.pairwise_max_qubits = static_cast<int>(value);
  return limits;
}

bool CertificationResult::bounds_consistent(double slack) const {
  for (const auto& b : lower_bounds) {
    if (b.value - slack > value) return false;
  }
  for (const auto& b : upper_bounds) {
    if (value > b.value + slack) return false;
  }
  return true;
}

CertificationResult certifiability_exact(const StateVector& psi, double p, const OptimizerOptions& opts) {
  require_p(p, "certifiability_exact");
  if (psi.n_qubits() > std::min(opts.max_qubits, kHardQubitLimit)) {
    throw std::invalid_argument("certifiability_exact: " + std::to_string(psi.n_qubits()) +
                                " qubits exceeds the cap of " + std::to_string(opts.max_qubits));
  }
  if (std::abs(psi.amplitudes().norm() - 1.0) > kConstructionTolerance) {
    throw std::invalid_argument("certifiability_exact: psi is not normalized");
  }
  if (opts.restarts < 1 || opts.max_evaluations < opts.restarts || opts.stall_window < 1) {
    throw std::invalid_argument("certifiability_exact: invalid optimizer options");
  }

  const Matrix basis = complement_isometry(psi);
  const std::vector<Vector> seeds = structured_seeds(psi, basis, opts);
  const long per_restart = opts.max_evaluations / opts.restarts;
  const auto restarts = static_cast<std::size_t>(std::max<int>(opts.restarts, static_cast<int>(seeds.size())));

  std::vector<RestartOutcome> outcomes(restarts);
  parallel_for(restarts, opts.jobs, [&](std::size_t r) {
    Objective f(psi, p);
    Vector start;
    if (r < seeds.size()) {
      start = seeds[r];
    } else {
      Rng rng = derive_stream(opts.seed, r);
      start = haar_start(f.dimension(), rng);
    }
    outcomes[r] = descend(f, std::move(start), per_restart, opts);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r) {
    if (outcomes[r].value < outcomes[best].value) best = r;
  }

  CertificationResult result{0.0, StateVector::basis(psi.n_qubits(), 0), {}, {}, {}};
  result.value = std::clamp(outcomes[best].value, 0.0, 1.0);
  result.argmin_state = StateVector::normalized(psi.n_qubits(), basis * outcomes[best].u).with_canonical_phase();
  auto& report = result.optimizer_report;
  report.restarts = static_cast<int>(restarts);
  for (const auto& o : outcomes) {
    report.iterations += o.iterations;
    report.evaluations += o.evaluations;
  }
  report.gradient_norm = outcomes[best].gradient_norm;
  report.converged = outcomes[best].converged;
  report.best_restart = static_cast<int>(best);
  return result;
}

double pairwise_noisy_distance(const StateVector& psi, const StateVector& phi, double p) {
  require_same_size(psi, phi, "pairwise_noisy_distance");
  require_p(p, "pairwise_noisy_distance");
  const Matrix delta = apply_to_operator(psi.projector() - phi.projector(), p);
  return 0.5 * trace_norm_hermitian(delta);
}

double witness_lower_bound(const StateVector& psi, const StateVector& phi, const Observable& a, double p,
                           WitnessRoute route) {
  require_same_size(psi, phi, "witness_lower_bound");
  require_p(p, "witness_lower_bound");
  if (a.n_qubits() != psi.n_qubits()) throw std::invalid_argument("witness_lower_bound: observable size mismatch");
  if (a.spectral_radius() > 1.0 + 1e-9) {
    throw std::invalid_argument("witness_lower_bound: observable spectral radius exceeds 1");
  }
  const Matrix diff = psi.projector() - phi.projector();
  Complex t;
  if (route == WitnessRoute::adjoint) {
    t = (apply_to_operator(a.matrix(), p) * diff).trace();
  } else {
    t = (a.matrix() * apply_to_operator(diff, p)).trace();
  }
  return 0.5 * std::abs(t.real());
}

double gapped_ground_state_bound(const PauliHamiltonian& h, double p) {
  require_p(p, "gapped_ground_state_bound");
  const auto [unit, radius] = rescale_to_unit_spectral_radius(h);
  const SpectralInfo info = spectral_info(unit);
  if (info.ground_degeneracy != 1) {
    throw std::domain_error("gapped_ground_state_bound: ground space is " + std::to_string(info.ground_degeneracy) +
                            "-fold degenerate");
  }
  if (!(info.gap > kDegeneracyTolerance)) throw std::domain_error("gapped_ground_state_bound: no spectral gap");
  return std::pow(p, unit.locality()) * info.gap / 2.0;
}

double macro_upper_bound(int n, int n_eff, double p) {
  require_p(p, "macro_upper_bound");
  if (n < 1 || n_eff < 1) throw std::invalid_argument("macro_upper_bound: sizes must be positive");
  if (n_eff > n) throw std::invalid_argument("macro_upper_bound: more groups than qubits");
  const double group_size = static_cast<double>(n) / n_eff;
  const double q = 1.0 - std::pow(1.0 - p, group_size);
  return std::pow(q, n_eff);
}

double epsilon_macro_bound(int n_eff, double q, double eps) {
  if (n_eff < 1) throw std::invalid_argument("epsilon_macro_bound: n_eff must be positive");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("epsilon_macro_bound: q must lie in [0, 1]");
  if (!(eps >= 0.0 && eps < 0.5)) throw std::invalid_argument("epsilon_macro_bound: eps must lie in [0, 1/2)");
  return std::pow(q + eps * (1.0 - q), n_eff);
}

std::vector<double> mixture_family_check(const StateVector& psi, const StateVector& phi, double p,
                                         std::span<const double> a_grid) {
  require_orthogonal(psi, phi, "mixture_family_check");
  require_p(p, "mixture_family_check");
  const Matrix pp = psi.projector();
  const Matrix fp = phi.projector();
  std::vector<double> out;
  out.reserve(a_grid.size());
  for (double a : a_grid) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("mixture_family_check: a must lie in [0, 1]");
    const Matrix rho = a * pp + (1.0 - a) * fp;
    out.push_back(0.5 * trace_norm_hermitian(apply_to_operator(pp - rho, p)));
  }
  return out;
}

double off_diagonal_group_trace(const StateVector& psi0, const StateVector& psi1, std::span<const int> group) {
  require_same_size(psi0, psi1, "off_diagonal_group_trace");
  const Matrix coherence = psi0.amplitudes() * psi1.amplitudes().adjoint();
  return trace_norm(partial_trace(coherence, psi0.n_qubits(), group));
}

bool epsilon_ball_certifiable(double value, double delta, double eps) {
  if (delta < 0.0 || eps < 0.0) throw std::invalid_argument("epsilon_ball_certifiable: negative threshold");
  return value > delta && value > 2.0 * eps;
}

bool epsilon_ball_certifiable(const CertificationResult& result, double delta, double eps) {
  return epsilon_ball_certifiable(result.value, delta, eps);
}

std::string to_string(SweepQuantity q) {
  switch (q) {
    case SweepQuantity::exact: return "exact";
    case SweepQuantity::pairwise: return "pairwise";
    case SweepQuantity::bound: return "bound";
  }
  return "unknown";
}

SweepQuantity parse_sweep_quantity(const std::string& s) {
  if (s == "exact") return SweepQuantity::exact;
  if (s == "pairwise") return SweepQuantity::pairwise;
  if (s == "bound") return SweepQuantity::bound;
  throw std::invalid_argument("unknown sweep quantity '" + s + "'");
}

std::string to_string(DecayClass c) {
  switch (c) {
    case DecayClass::exponential: return "exponential";
    case DecayClass::polynomial: return "polynomial";
    case DecayClass::inconclusive: return "inconclusive";
  }
  return "unknown";
}

DecayFit classify_decay(std::span<const int> sizes, std::span<const double> values, double margin) {
  if (sizes.size() != values.size()) throw std::invalid_argument("classify_decay: length mismatch");
  if (sizes.size() < 4) throw std::invalid_argument("classify_decay: needs at least 4 records");
  if (!(margin >= 1.0)) throw std::invalid_argument("classify_decay: margin must be at least 1");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw std::invalid_argument("classify_decay: sizes must be positive");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw std::invalid_argument("classify_decay: sizes must increase");
  }

  DecayFit fit;
  std::vector<double> n;
  std::vector<double> log_n;
  std::vector<double> log_c;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    double v = values[i];
    if (!(v > 0.0)) {
      v = kClampFloor;
      fit.clamped = true;
    }
    n.push_back(static_cast<double>(sizes[i]));
    log_n.push_back(std::log(static_cast<double>(sizes[i])));
    log_c.push_back(std::log(v));
  }
  const LinearFit e = least_squares(n, log_c);
  const LinearFit q = least_squares(log_n, log_c);
  fit.exponential_slope = e.slope;
  fit.polynomial_slope = q.slope;
  fit.exponential_residual = e.residual;
  fit.polynomial_residual = q.residual;

  constexpr double kExactFit = 1e-18;
  if (e.residual <= q.residual / margin && !(e.residual <= kExactFit && q.residual <= kExactFit)) {
    fit.classification = DecayClass::exponential;
    fit.slope = e.slope;
  } else if (q.residual <= e.residual / margin && !(e.residual <= kExactFit && q.residual <= kExactFit)) {
    fit.classification = DecayClass::polynomial;
    fit.slope = q.slope;
  } else if (e.residual <= kExactFit && q.residual <= kExactFit && std::abs(e.slope) < 1e-9) {
    // A constant is fitted exactly by both models; it is a degree-0 polynomial.
    fit.classification = DecayClass::polynomial;
    fit.slope = q.slope;
  } else {
    fit.classification = DecayClass::inconclusive;
    fit.slope = e.slope;
  }
  return fit;
}

DecayFit classify_decay(std::span<const SweepRecord> records, double margin) {
  std::vector<int> sizes;
  std::vector<double> values;
  for (const auto& r : records) {
    sizes.push_back(r.n);
    values.push_back(r.value);
  }
  return classify_decay(sizes, values, margin);
}

}  // namespace certilab
