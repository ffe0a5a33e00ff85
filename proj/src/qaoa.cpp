// Copyright 2026 The nqaoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "nqaoa/bench.hpp"
#include "nqaoa/errors.hpp"
#include "nqaoa/qaoa.hpp"

namespace nqaoa {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool is_noiseless(const NoiseParams& np) {
  if (np.depol_override) return *np.depol_override == 0.0 && np.d_thermal == 0.0;
  return np.d_depol == 0.0 && np.d_thermal == 0.0;
}

MixerVariant mixer_of(Variant v) {
  switch (v) {
    case Variant::kStandard:
    case Variant::kRqaoa:
      return MixerVariant::kStandard;
    case Variant::kWsInit:
      return MixerVariant::kWsInit;
    case Variant::kWsQaoa:
      return MixerVariant::kWsQaoa;
  }
  throw InternalError("unknown variant");
}

}  // namespace

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::kStandard:
      return "standard";
    case Variant::kWsInit:
      return "ws-init";
    case Variant::kWsQaoa:
      return "wsqaoa";
    case Variant::kRqaoa:
      return "rqaoa";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  if (name == "standard") return Variant::kStandard;
  if (name == "ws-init") return Variant::kWsInit;
  if (name == "wsqaoa") return Variant::kWsQaoa;
  if (name == "rqaoa") return Variant::kRqaoa;
  throw ArgumentError(fmt::format("unknown variant '{}'", name));
}

void QaoaParams::validate() const {
  if (betas.empty() || betas.size() != gammas.size()) {
    throw ArgumentError(fmt::format("need p >= 1 with matching angle lists, got {} and {}",
                                    betas.size(), gammas.size()));
  }
}

std::vector<double> QaoaParams::flatten() const {
  std::vector<double> x(betas);
  x.insert(x.end(), gammas.begin(), gammas.end());
  return x;
}

QaoaParams QaoaParams::unflatten(std::span<const double> x) {
  if (x.empty() || x.size() % 2 != 0) {
    throw ArgumentError(fmt::format("parameter vector of length {} is not 2p", x.size()));
  }
  const std::size_t p = x.size() / 2;
  return {std::vector<double>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(p)),
          std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(p), x.end())};
}

void VariantConfig::validate() const {
  if (p < 1) throw ArgumentError("p must be >= 1");
  optimizer.validate();
  if (repeats < 1) throw ArgumentError("repeats must be >= 1");
  if (shots < 1) throw ArgumentError("shots must be >= 1");
  if (rqaoa_samples < 1) throw ArgumentError("rqaoa_samples must be >= 1");
}

RunResult RunResult::aggregate(std::vector<SingleRun> runs) {
  if (runs.empty()) throw ArgumentError("no runs to aggregate");
  RunResult r;
  for (const auto& s : runs) {
    r.avg_quality += s.avg_quality;
    r.energy += s.energy;
    r.optimizer_evals += static_cast<double>(s.optimizer_evals);
    r.quantum_time_est_s += s.quantum_time_est_s;
    r.classical_time_s += s.classical_time_s;
  }
  const auto k = static_cast<double>(runs.size());
  r.avg_quality /= k;
  r.energy /= k;
  r.optimizer_evals /= k;
  r.quantum_time_est_s /= k;
  r.classical_time_s /= k;
  r.runs = std::move(runs);
  return r;
}

QaoaEvaluator::QaoaEvaluator(IsingModel model, MixerVariant mixer,
                             std::optional<std::vector<double>> warm_thetas, NoiseParams noise)
    : model_(std::move(model)),
      mixer_(mixer),
      warm_thetas_(std::move(warm_thetas)),
      noise_(std::move(noise)),
      noiseless_(is_noiseless(noise_)),
      energies_(model_.energy_table()) {
  noise_.validate();
  if (!noiseless_ && model_.num_vars() > DensityMatrix::kMaxQubits) {
    throw CapacityError(fmt::format("noisy simulation supports n <= {}, got {}",
                                    DensityMatrix::kMaxQubits, model_.num_vars()));
  }
}

Circuit QaoaEvaluator::circuit(const QaoaParams& params) const {
  params.validate();
  std::optional<std::span<const double>> thetas;
  if (warm_thetas_) thetas = *warm_thetas_;
  return build_qaoa_circuit(model_, params.betas, params.gammas, mixer_, thetas);
}

std::vector<double> QaoaEvaluator::probabilities(const QaoaParams& params) {
  const auto t0 = Clock::now();
  const Circuit c = circuit(params);
  std::vector<double> probs = noiseless_ ? statevector_probabilities(c)
                                         : measurement_probabilities(simulate(compile_noisy(c, noise_)));
  sim_seconds_ += seconds_since(t0);
  return probs;
}

double QaoaEvaluator::energy(std::span<const double> probabilities) const {
  if (probabilities.size() != energies_.size()) {
    throw ArgumentError(fmt::format("{} probabilities for {} basis states", probabilities.size(),
                                    energies_.size()));
  }
  double e = 0.0;
  for (std::size_t x = 0; x < energies_.size(); ++x) e += probabilities[x] * energies_[x];
  return e;
}

ScheduledCircuit QaoaEvaluator::scheduled(const QaoaParams& params) const {
  return schedule(transpile(circuit(params)), GateDurations::from(noise_));
}

QaoaParams random_params(std::size_t p, std::mt19937_64& rng) {
  if (p < 1) throw ArgumentError("p must be >= 1");
  std::uniform_real_distribution<double> beta(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> gamma(0.0, 2.0 * std::numbers::pi);
  QaoaParams params;
  for (std::size_t k = 0; k < p; ++k) params.betas.push_back(beta(rng));
  for (std::size_t k = 0; k < p; ++k) params.gammas.push_back(gamma(rng));
  return params;
}

SingleRun optimize_qaoa(QaoaEvaluator& evaluator, const VariantConfig& cfg,
                        std::mt19937_64& rng) {
  const auto t0 = Clock::now();
  const double sim0 = evaluator.simulation_seconds();
  const std::vector<double> x0 = random_params(cfg.p, rng).flatten();
  const Objective objective = [&](std::span<const double> x) {
    return evaluator.energy(evaluator.probabilities(QaoaParams::unflatten(x)));
  };
  const OptimizerResult opt = minimize(objective, x0, cfg.optimizer);

  SingleRun run;
  run.params = QaoaParams::unflatten(opt.x);
  run.probabilities = evaluator.probabilities(run.params);
  run.energy = evaluator.energy(run.probabilities);
  run.optimizer_evals = opt.evals;
  run.quantum_time_est_s = estimate_quantum_time(evaluator.scheduled(run.params),
                                                 evaluator.noise(), opt.evals, cfg.shots);
  run.simulation_time_s = evaluator.simulation_seconds() - sim0;
  run.classical_time_s = std::max(0.0, seconds_since(t0) - run.simulation_time_s);
  return run;
}

RunResult run_variational(const ProblemInstance& inst, const VariantConfig& cfg,
                          const NoiseParams& noise, std::mt19937_64& rng) {
  cfg.validate();
  if (cfg.variant == Variant::kRqaoa) throw ArgumentError("use run_rqaoa for the recursive variant");
  const IsingModel model = encode(inst);
  const std::vector<double> table = quality_table(inst, cfg.metric);
  const MixerVariant mixer = mixer_of(cfg.variant);

  std::vector<SingleRun> runs;
  for (std::size_t r = 0; r < cfg.repeats; ++r) {
    const auto t0 = Clock::now();
    std::optional<std::vector<double>> thetas;
    if (mixer != MixerVariant::kStandard) thetas = ws_thetas(warmstart(inst, rng));
    const double warm_s = seconds_since(t0);
    QaoaEvaluator evaluator(model, mixer, std::move(thetas), noise);
    SingleRun run = optimize_qaoa(evaluator, cfg, rng);
    run.classical_time_s += warm_s;
    run.avg_quality = average_quality(table, run.probabilities);
    runs.push_back(std::move(run));
  }
  return RunResult::aggregate(std::move(runs));
}

// -- RQAOA ------------------------------------------------------------------

std::vector<TermExpectation> expected_term_values(std::span<const BasisSample> samples,
                                                  const IsingModel& model) {
  if (samples.empty()) throw ArgumentError("no samples");
  const std::size_t n = model.num_vars();
  std::vector<TermExpectation> out;
  for (const auto& [a, b] : model.coupled_pairs()) out.push_back({{a, b}, 0.0, 0});
  for (std::size_t i = 0; i < n; ++i) {
    if (model.has_linear(i)) out.push_back({{i, std::nullopt}, 0.0, 0});
  }
  long long shots = 0;
  for (const auto& s : samples) {
    const auto mult = static_cast<long long>(s.multiplicity);
    shots += mult;
    for (auto& t : out) {
      int v = spin_of(s.bits, t.term.i);
      if (t.term.j) v *= spin_of(s.bits, *t.term.j);
      t.total += v * mult;
    }
  }
  if (shots == 0) throw ArgumentError("samples carry no shots");
  for (auto& t : out) t.value = static_cast<double>(t.total) / static_cast<double>(shots);
  return out;
}

const TermExpectation& select_term(std::span<const TermExpectation> expectations) {
  if (expectations.empty()) throw ArgumentError("no terms to select from");
  const TermExpectation* best = &expectations.front();
  for (const auto& t : expectations) {
    if (std::llabs(t.total) > std::llabs(best->total)) best = &t;
  }
  return *best;
}

IsingModel eliminate(const IsingModel& model, const EliminationRecord& rec) {
  const std::size_t n = model.num_vars();
  const bool merge = rec.kind == EliminationRecord::Kind::kMerge;
  if (rec.i >= n || (merge && (rec.j >= n || rec.j == rec.i))) {
    throw ArgumentError(fmt::format("elimination references dead variables ({}, {}) of {}",
                                    rec.i, rec.j, n));
  }
  if (rec.sigma != 1 && rec.sigma != -1) {
    throw ArgumentError(fmt::format("sigma must be +-1, got {}", rec.sigma));
  }
  const double sigma = rec.sigma;
  const std::size_t i = rec.i;

  std::vector<double> h(n);
  for (std::size_t k = 0; k < n; ++k) h[k] = model.h(k);
  std::vector<double> jm(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b) jm[a * n + b] = model.j(a, b);
    }
  }
  double offset = model.offset();

  if (merge) {
    const std::size_t j = rec.j;
    h[j] += sigma * h[i];
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      jm[k * n + j] += sigma * jm[k * n + i];
      jm[j * n + k] = jm[k * n + j];
    }
    offset -= sigma * jm[i * n + j];
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      if (k != i) h[k] += sigma * jm[i * n + k];
    }
    offset -= sigma * h[i];
  }

  IsingModel out(n - 1);
  auto shrink = [i](std::size_t k) { return k < i ? k : k - 1; };
  for (std::size_t a = 0; a < n; ++a) {
    if (a == i) continue;
    out.set_h(shrink(a), h[a]);
    for (std::size_t b = a + 1; b < n; ++b) {
      if (b == i || jm[a * n + b] == 0.0) continue;
      out.set_j(shrink(a), shrink(b), jm[a * n + b]);
    }
  }
  out.set_offset(offset);
  return out;
}

SpinAssignment back_substitute(std::span<const EliminationRecord> records,
                               std::span<const int> tail) {
  SpinAssignment s(tail.begin(), tail.end());
  for (auto it = records.rbegin(); it != records.rend(); ++it) {
    const std::size_t size = s.size() + 1;
    const bool merge = it->kind == EliminationRecord::Kind::kMerge;
    if (it->i >= size || (merge && (it->j >= size || it->j == it->i)) ||
        (it->sigma != 1 && it->sigma != -1)) {
      throw InternalError(fmt::format("inconsistent elimination record ({}, {}) for size {}",
                                      it->i, it->j, size));
    }
    s.insert(s.begin() + static_cast<std::ptrdiff_t>(it->i), it->sigma);
    if (merge) s[it->i] = it->sigma * s[it->j];
  }
  return s;
}

bool satisfies_records(std::span<const EliminationRecord> records, std::span<const int> full) {
  SpinAssignment s(full.begin(), full.end());
  for (const auto& rec : records) {
    if (rec.i >= s.size()) return false;
    if (rec.kind == EliminationRecord::Kind::kFix) {
      if (s[rec.i] != rec.sigma) return false;
    } else {
      if (rec.j >= s.size() || rec.j == rec.i || s[rec.i] != rec.sigma * s[rec.j]) return false;
    }
    s.erase(s.begin() + static_cast<std::ptrdiff_t>(rec.i));
  }
  return true;
}

SpinAssignment brute_force_ground_state(const IsingModel& model) {
  const std::size_t n = model.num_vars();
  if (n == 0) return {};
  const auto table = model.energy_table();
  std::size_t best = 0;
  for (std::size_t x = 1; x < table.size(); ++x) {
    if (table[x] < table[best]) best = x;
  }
  return spins_of_basis(best, n);
}

RqaoaTrace rqaoa_recursion(const IsingModel& model, const VariantConfig& cfg,
                           const NoiseParams& noise, std::mt19937_64& rng, SingleRun& run) {
  const auto t0 = Clock::now();
  RqaoaTrace trace;
  IsingModel current = model;
  double sim_s = 0.0;
  while (current.num_vars() > cfg.rqaoa_cutoff) {
    const bool has_terms = !current.coupled_pairs().empty() || [&] {
      for (std::size_t i = 0; i < current.num_vars(); ++i) {
        if (current.has_linear(i)) return true;
      }
      return false;
    }();
    if (!has_terms) break;

    QaoaEvaluator evaluator(current, MixerVariant::kStandard, std::nullopt, noise);
    SingleRun step = optimize_qaoa(evaluator, cfg, rng);
    const auto shots = sample_probabilities(step.probabilities, cfg.rqaoa_samples, rng);
    const ScheduledCircuit sc = evaluator.scheduled(step.params);
    run.optimizer_evals += step.optimizer_evals;
    run.quantum_time_est_s += step.quantum_time_est_s +
                              (sc.total_ns + noise.measure_duration_ns) * 1e-9 *
                                  static_cast<double>(cfg.rqaoa_samples);
    sim_s += step.simulation_time_s;
    run.params = step.params;

    const auto expectations = expected_term_values(shots, current);
    const TermExpectation& t = select_term(expectations);
    const int sigma = t.total >= 0 ? 1 : -1;
    const EliminationRecord rec = t.term.quadratic()
                                      ? EliminationRecord::merge(t.term.i, *t.term.j, sigma)
                                      : EliminationRecord::fix(t.term.i, sigma);
    current = eliminate(current, rec);
    trace.records.push_back(rec);
  }
  trace.assignment = back_substitute(trace.records, brute_force_ground_state(current));
  run.simulation_time_s += sim_s;
  run.classical_time_s += std::max(0.0, seconds_since(t0) - sim_s);
  return trace;
}

RunResult run_rqaoa(const ProblemInstance& inst, const VariantConfig& cfg,
                    const NoiseParams& noise, std::mt19937_64& rng) {
  cfg.validate();
  const IsingModel model = encode(inst);
  const std::vector<double> table = quality_table(inst, cfg.metric);
  std::vector<SingleRun> runs;
  for (std::size_t r = 0; r < cfg.repeats; ++r) {
    SingleRun run;
    RqaoaTrace trace = rqaoa_recursion(model, cfg, noise, rng, run);
    if (!satisfies_records(trace.records, trace.assignment)) {
      throw InternalError("recovered assignment violates an elimination constraint");
    }
    run.avg_quality = table[basis_of_spins(trace.assignment)];
    run.energy = model.energy(trace.assignment);
    run.assignment = std::move(trace.assignment);
    runs.push_back(std::move(run));
  }
  return RunResult::aggregate(std::move(runs));
}

RunResult run_variant(const ProblemInstance& inst, const VariantConfig& cfg,
                      const NoiseParams& noise, std::mt19937_64& rng) {
  return cfg.variant == Variant::kRqaoa ? run_rqaoa(inst, cfg, noise, rng)
                                        : run_variational(inst, cfg, noise, rng);
}

}  // namespace nqaoa
