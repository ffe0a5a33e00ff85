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

#include "json.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nqaoa/circuits.hpp"
#include "nqaoa/noise.hpp"
#include "nqaoa/problems.hpp"
#include "nqaoa/qaoa.hpp"

namespace nqaoa {

/// (circuit duration + measurement) x shots x optimizer evaluations.
double estimate_quantum_time(const ScheduledCircuit& circuit, const NoiseParams& np,
                             std::size_t optimizer_evals, std::size_t shots = 1000);

/// How the d_depol and d_thermal lists combine into noise cells.
enum class NoiseSweep { kCartesian, kJoint };

struct NoiseCell {
  double d_depol = 1.0;
  double d_thermal = 1.0;

  friend auto operator<=>(const NoiseCell&, const NoiseCell&) = default;
};

struct ExperimentConfig {
  std::vector<ProblemKind> problems{ProblemKind::kMaxCut, ProblemKind::kPartition,
                                    ProblemKind::kVertexCover};
  std::vector<std::size_t> sizes{5, 6, 7, 8, 9, 10};
  std::size_t instances_per_size = 100;
  std::vector<Variant> variants{Variant::kStandard, Variant::kWsInit, Variant::kWsQaoa,
                                Variant::kRqaoa};
  std::vector<std::size_t> layers{1, 2, 3, 4};
  std::vector<double> d_depol{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> d_thermal{0.0, 0.25, 0.5, 0.75, 1.0};
  NoiseSweep noise_sweep = NoiseSweep::kCartesian;
  std::size_t shots_per_iteration = 1000;
  std::uint64_t master_seed = 2023;
  std::size_t jobs = 1;
  std::size_t repeats = 3;
  OptimizerOptions optimizer{};
  std::size_t rqaoa_samples = 10;
  std::size_t rqaoa_cutoff = 1;
  PartitionMetric partition_metric = PartitionMetric::kLighterSideSum;
  /// Unscaled noise model; each cell scales it.
  NoiseParams noise = baseline_params();

  void validate() const;
  std::vector<NoiseCell> noise_cells() const;
  VariantConfig variant_config(Variant v, std::size_t p) const;
};

/// n in {5, 6, 7}, 20 instances, p = 1, noiseless and baseline cells.
ExperimentConfig desk_preset();
/// n in {5..10}, 100 instances, p in {1..4}, 5 x 5 noise grid.
ExperimentConfig paper_preset();
ExperimentConfig preset(std::string_view name);

void to_json(nlohmann::json& j, const ExperimentConfig& cfg);
/// Missing keys keep the values already in `cfg`.
void merge_json(const nlohmann::json& j, ExperimentConfig& cfg);
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base);

/// Stable seeds: splitmix64 hashes of their inputs.
std::uint64_t instance_seed(std::uint64_t master, ProblemKind problem, std::size_t n,
                            std::size_t index);
std::uint64_t run_seed(std::uint64_t instance_seed, Variant variant, std::size_t p);

struct SuiteEntry {
  std::size_t instance_id = 0;
  ProblemInstance instance;
};

/// Problem-major, then n, then index.
std::vector<SuiteEntry> generate_suite(const ExperimentConfig& cfg);

std::string instance_filename(ProblemKind problem, std::size_t n, std::size_t index);
void write_suite(const std::filesystem::path& dir, const std::vector<SuiteEntry>& suite);
/// Loads the files generate_suite() would produce for `cfg`.
std::vector<SuiteEntry> read_suite(const std::filesystem::path& dir, const ExperimentConfig& cfg);

struct ResultRecord {
  ProblemKind problem = ProblemKind::kMaxCut;
  std::size_t n = 0;
  std::size_t instance_id = 0;
  std::uint64_t seed = 0;
  Variant variant = Variant::kStandard;
  std::size_t p = 1;
  double d_depol = 0.0;
  double d_thermal = 0.0;
  double avg_quality = 0.0;
  double energy = 0.0;
  double optimizer_evals = 0.0;
  double quantum_time_est_s = 0.0;
  double classical_time_s = 0.0;
  std::size_t repeats = 0;
  /// Empty on success.
  std::string error;

  bool ok() const { return error.empty(); }
};

std::string csv_header();
/// Floats with 12 significant digits.
std::string csv_row(const ResultRecord& r);
/// csv_row() without the wall-clock column.
std::string csv_row_deterministic(const ResultRecord& r);
void write_results_csv(std::ostream& out, const std::vector<ResultRecord>& records);
std::vector<ResultRecord> read_results_csv(std::istream& in);

using RecordSink = std::function<void(const ResultRecord&)>;

/// Runs every (problem, n, instance, variant, p, noise cell) task on
/// `cfg.jobs` threads. `sink` sees records in task order as soon as all
/// earlier tasks are done. Failing cells yield records with `error` set.
std::vector<ResultRecord> run_matrix(const ExperimentConfig& cfg,
                                     const std::vector<SuiteEntry>& suite,
                                     const RecordSink& sink = {});
std::vector<ResultRecord> run_matrix(const ExperimentConfig& cfg);

struct AdvantageCell {
  NoiseCell cell;
  std::optional<double> ratio;  // absent if either layer count is missing
  std::size_t instances = 0;    // instances behind the layer-p mean
};

/// Mean quality at p over mean quality at p - 1, per noise cell.
std::vector<AdvantageCell> relative_advantage(const std::vector<ResultRecord>& records,
                                              Variant variant, ProblemKind problem,
                                              std::size_t p);

enum class ReportKind { kQualityByLayers, kQualityByN, kQualityVsRuntime, kAdvantageGrid };
ReportKind parse_report_kind(std::string_view name);
std::string_view report_kind_name(ReportKind kind);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write_csv(std::ostream& out) const;
};

Table report(const std::vector<ResultRecord>& records, ReportKind kind);

}  // namespace nqaoa
