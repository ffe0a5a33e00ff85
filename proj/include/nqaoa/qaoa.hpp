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

#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "nqaoa/circuits.hpp"
#include "nqaoa/noise.hpp"
#include "nqaoa/optimizer.hpp"
#include "nqaoa/problems.hpp"

namespace nqaoa {

enum class Variant { kStandard, kWsInit, kWsQaoa, kRqaoa };

std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view name);

struct QaoaParams {
  std::vector<double> betas;
  std::vector<double> gammas;

  std::size_t p() const { return betas.size(); }
  void validate() const;

  /// Optimizer layout: betas then gammas.
  std::vector<double> flatten() const;
  static QaoaParams unflatten(std::span<const double> x);
};

struct VariantConfig {
  Variant variant = Variant::kStandard;
  std::size_t p = 1;
  OptimizerOptions optimizer{};
  std::size_t repeats = 3;
  std::size_t shots = 1000;  // per optimizer iteration, for runtime estimates
  std::size_t rqaoa_samples = 10;
  /// Remaining variable count that is solved exactly.
  std::size_t rqaoa_cutoff = 1;
  PartitionMetric metric = PartitionMetric::kLighterSideSum;

  void validate() const;
};

/// One optimization (or one full recursion for RQAOA).
struct SingleRun {
  QaoaParams params;
  double avg_quality = 0.0;
  double energy = 0.0;
  std::size_t optimizer_evals = 0;
  double quantum_time_est_s = 0.0;
  double classical_time_s = 0.0;
  double simulation_time_s = 0.0;
  std::vector<double> probabilities;  // final state; empty for RQAOA
  std::optional<SpinAssignment> assignment;  // RQAOA only
};

/// Means over `runs` for the scalar fields.
struct RunResult {
  std::vector<SingleRun> runs;
  double avg_quality = 0.0;
  double energy = 0.0;
  double optimizer_evals = 0.0;
  double quantum_time_est_s = 0.0;
  double classical_time_s = 0.0;

  static RunResult aggregate(std::vector<SingleRun> runs);
};

/// Builds and simulates QAOA circuits for one Ising model under one noise
/// setting. Noiseless settings use pure-state simulation.
class QaoaEvaluator {
 public:
  QaoaEvaluator(IsingModel model, MixerVariant mixer, std::optional<std::vector<double>> warm_thetas,
                NoiseParams noise);

  const IsingModel& model() const { return model_; }
  const NoiseParams& noise() const { return noise_; }
  bool noiseless() const { return noiseless_; }

  Circuit circuit(const QaoaParams& params) const;
  std::vector<double> probabilities(const QaoaParams& params);
  double energy(std::span<const double> probabilities) const;
  /// Scheduled native circuit, used for runtime estimates.
  ScheduledCircuit scheduled(const QaoaParams& params) const;

  /// Wall-clock seconds spent inside probabilities().
  double simulation_seconds() const { return sim_seconds_; }

 private:
  IsingModel model_;
  MixerVariant mixer_;
  std::optional<std::vector<double>> warm_thetas_;
  NoiseParams noise_;
  bool noiseless_;
  std::vector<double> energies_;
  double sim_seconds_ = 0.0;
};

/// Seeded uniform start: beta in [0, pi), gamma in [0, 2 pi).
QaoaParams random_params(std::size_t p, std::mt19937_64& rng);

/// One variational optimization of `model`.
SingleRun optimize_qaoa(QaoaEvaluator& evaluator, const VariantConfig& cfg, std::mt19937_64& rng);

/// Standard, ws-init or wsqaoa; `cfg.repeats` fresh starts averaged.
RunResult run_variational(const ProblemInstance& inst, const VariantConfig& cfg,
                          const NoiseParams& noise, std::mt19937_64& rng);

// -- RQAOA ------------------------------------------------------------------

/// A spin term: linear (i) or quadratic (i, j) with i < j.
struct SpinTerm {
  std::size_t i = 0;
  std::optional<std::size_t> j;

  bool quadratic() const { return j.has_value(); }
  friend bool operator==(const SpinTerm&, const SpinTerm&) = default;
};

struct TermExpectation {
  SpinTerm term;
  double value = 0.0;
  /// Sum of term values over all shots; exact, used for tie detection.
  long long total = 0;
};

/// Empirical means of every live term of `model` (quadratic terms first in
/// lexicographic order, then linear terms by index).
std::vector<TermExpectation> expected_term_values(std::span<const BasisSample> samples,
                                                  const IsingModel& model);

/// Largest |E[t]|; ties resolved by the listing order above.
const TermExpectation& select_term(std::span<const TermExpectation> expectations);

/// fix: s_i = sigma. merge: s_i = sigma * s_j. Indices are those of the
/// model the record was applied to; variable i is removed.
struct EliminationRecord {
  enum class Kind { kFix, kMerge };
  Kind kind = Kind::kFix;
  std::size_t i = 0;
  std::size_t j = 0;
  int sigma = 1;

  static EliminationRecord fix(std::size_t i, int sigma) { return {Kind::kFix, i, 0, sigma}; }
  static EliminationRecord merge(std::size_t i, std::size_t j, int sigma) {
    return {Kind::kMerge, i, j, sigma};
  }
  friend bool operator==(const EliminationRecord&, const EliminationRecord&) = default;
};

IsingModel eliminate(const IsingModel& model, const EliminationRecord& rec);

SpinAssignment back_substitute(std::span<const EliminationRecord> records,
                               std::span<const int> tail);

/// True if `full` satisfies every record when replayed in elimination order.
bool satisfies_records(std::span<const EliminationRecord> records, std::span<const int> full);

/// Lowest-index minimizer of C.
SpinAssignment brute_force_ground_state(const IsingModel& model);

struct RqaoaTrace {
  std::vector<EliminationRecord> records;
  SpinAssignment assignment;
};

/// One recursion of RQAOA on `model`; fills `run` timings and evaluations.
RqaoaTrace rqaoa_recursion(const IsingModel& model, const VariantConfig& cfg,
                           const NoiseParams& noise, std::mt19937_64& rng, SingleRun& run);

RunResult run_rqaoa(const ProblemInstance& inst, const VariantConfig& cfg,
                    const NoiseParams& noise, std::mt19937_64& rng);

/// Dispatches on cfg.variant.
RunResult run_variant(const ProblemInstance& inst, const VariantConfig& cfg,
                      const NoiseParams& noise, std::mt19937_64& rng);

}  // namespace nqaoa
