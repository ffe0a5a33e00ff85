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
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "nqaoa/circuits.hpp"
#include "nqaoa/ising.hpp"

namespace nqaoa {

enum class ProblemKind { kMaxCut, kPartition, kVertexCover };

std::string_view problem_name(ProblemKind kind);
ProblemKind parse_problem(std::string_view name);

/// Graph problems use `edges` (each stored with first < second); Partition
/// uses `weights`.
struct ProblemInstance {
  ProblemKind kind = ProblemKind::kMaxCut;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<Edge> edges;
  std::vector<double> weights;

  void validate() const;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

/// G(n, edge_prob): every unordered pair included independently.
ProblemInstance gen_graph(std::size_t n, std::uint64_t seed, double edge_prob = 0.5,
                          ProblemKind kind = ProblemKind::kMaxCut);

/// n weights drawn i.i.d. from U[0, 1].
ProblemInstance gen_partition(std::size_t n, std::uint64_t seed);

ProblemInstance generate(ProblemKind kind, std::size_t n, std::uint64_t seed);

/// Vertex Cover penalty weights: A per uncovered edge, B per chosen vertex.
inline constexpr double kCoverPenaltyA = 2.0;
inline constexpr double kCoverPenaltyB = 1.0;

/// Ising form whose minima are the optimal solutions. Max-Cut: C = -cut.
/// Partition: C = (sum a_i s_i)^2. Vertex Cover: x_i = (1 - s_i)/2 marks
/// vertex i as chosen, C = A sum_E (1-x_u)(1-x_v) + B sum_v x_v.
IsingModel encode(const ProblemInstance& inst);

/// Problem-native measure of an assignment: cut size (Max-Cut), sum of the
/// lighter side (Partition) or cover size (Vertex Cover; invalid covers count
/// as the full vertex set).
double measure(const ProblemInstance& inst, std::span<const int> s);

bool is_vertex_cover(const ProblemInstance& inst, std::span<const int> s);

struct BruteForceResult {
  SpinAssignment optimum;  // lowest basis index among optimal assignments
  double optimal_measure = 0.0;
  double worst_measure = 0.0;
};

BruteForceResult brute_force(const ProblemInstance& inst);

/// Partition measure. kLighterSideSum is the default; kLighterSideCount
/// compares the element count of the lighter side instead and is kept only
/// for comparison.
enum class PartitionMetric { kLighterSideSum, kLighterSideCount };

/// Approximation quality in [0, 1]; 1 means optimal.
double quality(const ProblemInstance& inst, std::span<const int> s,
               PartitionMetric metric = PartitionMetric::kLighterSideSum);

/// quality() of every basis state, indexed by basis integer.
std::vector<double> quality_table(const ProblemInstance& inst,
                                  PartitionMetric metric = PartitionMetric::kLighterSideSum);

double average_quality(const ProblemInstance& inst, std::span<const double> probs,
                       PartitionMetric metric = PartitionMetric::kLighterSideSum);
double average_quality(std::span<const double> quality_table,
                       std::span<const double> probs);

/// Classical approximate solution used by the warm-start variants:
/// Goemans-Williamson-style rounding of a low-rank relaxation (Max-Cut),
/// greedy list scheduling (Partition), maximal-matching 2-approximation
/// (Vertex Cover). `rng` only drives the Max-Cut relaxation.
SpinAssignment warmstart(const ProblemInstance& inst, std::mt19937_64& rng);

/// Individual pieces of warmstart().
SpinAssignment maxcut_relaxation_rounding(const ProblemInstance& inst,
                                          std::mt19937_64& rng,
                                          std::size_t iterations = 500,
                                          std::size_t roundings = 100);
SpinAssignment greedy_list_scheduling(std::span<const double> weights);
SpinAssignment matching_vertex_cover(const ProblemInstance& inst);

/// theta_i = 2 asin(sqrt(0.5 - 0.25 z_i)).
std::vector<double> ws_thetas(std::span<const int> z);

void to_json(nlohmann::json& j, const ProblemInstance& inst);
void from_json(const nlohmann::json& j, ProblemInstance& inst);

void save_instance(const std::filesystem::path& path, const ProblemInstance& inst);
ProblemInstance load_instance(const std::filesystem::path& path);

}  // namespace nqaoa
