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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <Eigen/Dense>

#include "nqaoa/errors.hpp"
#include "nqaoa/problems.hpp"

namespace nqaoa {

namespace {

constexpr std::size_t kMaxBruteForce = 20;

void check_length(const ProblemInstance& inst, std::span<const int> s) {
  if (s.size() != inst.n) {
    throw ArgumentError(
        fmt::format("assignment has {} entries for an instance of size {}", s.size(), inst.n));
  }
}

void check_brute_force_size(std::size_t n) {
  if (n > kMaxBruteForce) {
    throw CapacityError(fmt::format("brute force supports n <= {}, got {}", kMaxBruteForce, n));
  }
}

double cut_size(const ProblemInstance& inst, std::span<const int> s) {
  double cut = 0.0;
  for (const auto& [u, v] : inst.edges) cut += s[u] != s[v] ? 1.0 : 0.0;
  return cut;
}

struct Sides {
  double plus_sum = 0.0;
  double minus_sum = 0.0;
  std::size_t plus_count = 0;
  std::size_t minus_count = 0;
};

Sides partition_sides(const ProblemInstance& inst, std::span<const int> s) {
  Sides sides;
  for (std::size_t i = 0; i < inst.n; ++i) {
    if (s[i] > 0) {
      sides.plus_sum += inst.weights[i];
      ++sides.plus_count;
    } else {
      sides.minus_sum += inst.weights[i];
      ++sides.minus_count;
    }
  }
  return sides;
}

// Element count of the lighter side; on equal sums the smaller count.
double lighter_side_count(const ProblemInstance& inst, std::span<const int> s) {
  const Sides sd = partition_sides(inst, s);
  if (sd.plus_sum < sd.minus_sum) return static_cast<double>(sd.plus_count);
  if (sd.minus_sum < sd.plus_sum) return static_cast<double>(sd.minus_count);
  return static_cast<double>(std::min(sd.plus_count, sd.minus_count));
}

std::size_t cover_size(const ProblemInstance& inst, std::span<const int> s) {
  if (!is_vertex_cover(inst, s)) return inst.n;
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), -1));
}

bool maximizes(ProblemKind kind) { return kind != ProblemKind::kVertexCover; }

double ratio_or_one(double num, double den) {
  if (den <= 0.0) return num <= 0.0 ? 1.0 : 0.0;
  return std::clamp(num / den, 0.0, 1.0);
}

double quality_from_measure(const ProblemInstance& inst, double value, double optimum) {
  switch (inst.kind) {
    case ProblemKind::kMaxCut:
      if (inst.edges.empty()) return 1.0;
      return ratio_or_one(value, optimum);
    case ProblemKind::kPartition:
      return ratio_or_one(value, optimum);
    case ProblemKind::kVertexCover:
      if (value <= 0.0) return optimum <= 0.0 ? 1.0 : 0.0;
      return ratio_or_one(optimum, value);
  }
  throw InternalError("unknown problem kind");
}

std::vector<double> count_table(const ProblemInstance& inst) {
  check_brute_force_size(inst.n);
  const std::uint64_t dim = std::uint64_t{1} << inst.n;
  std::vector<double> out(dim);
  for (std::uint64_t x = 0; x < dim; ++x) {
    out[x] = lighter_side_count(inst, spins_of_basis(x, inst.n));
  }
  return out;
}

}  // namespace

std::string_view problem_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kMaxCut:
      return "maxcut";
    case ProblemKind::kPartition:
      return "partition";
    case ProblemKind::kVertexCover:
      return "vertexcover";
  }
  return "unknown";
}

ProblemKind parse_problem(std::string_view name) {
  if (name == "maxcut") return ProblemKind::kMaxCut;
  if (name == "partition") return ProblemKind::kPartition;
  if (name == "vertexcover") return ProblemKind::kVertexCover;
  throw ArgumentError(fmt::format("unknown problem kind '{}'", name));
}

void ProblemInstance::validate() const {
  if (n == 0) throw ValidationError("instance has no variables");
  if (kind == ProblemKind::kPartition) {
    if (weights.size() != n) {
      throw ValidationError(fmt::format("{} weights for n = {}", weights.size(), n));
    }
    for (double w : weights) {
      if (!(w >= 0.0 && w <= 1.0)) {
        throw ValidationError(fmt::format("weight {} outside [0, 1]", w));
      }
    }
    if (!edges.empty()) throw ValidationError("partition instance carries edges");
    return;
  }
  if (!weights.empty()) throw ValidationError("graph instance carries weights");
  std::vector<char> seen(n * n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw ValidationError(fmt::format("edge ({}, {}) out of range for n = {}", u, v, n));
    }
    if (u == v) throw ValidationError(fmt::format("self-loop at vertex {}", u));
    auto& mark = seen[std::min(u, v) * n + std::max(u, v)];
    if (mark) throw ValidationError(fmt::format("duplicate edge ({}, {})", u, v));
    mark = 1;
  }
}

ProblemInstance gen_graph(std::size_t n, std::uint64_t seed, double edge_prob,
                          ProblemKind kind) {
  if (n < 2) throw ArgumentError(fmt::format("graph needs n >= 2, got {}", n));
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw ArgumentError(fmt::format("edge probability {} outside [0, 1]", edge_prob));
  }
  if (kind == ProblemKind::kPartition) throw ArgumentError("partition is not a graph problem");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(edge_prob);
  ProblemInstance inst{kind, n, seed, {}, {}};
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (coin(rng)) inst.edges.emplace_back(u, v);
    }
  }
  return inst;
}

ProblemInstance gen_partition(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw ArgumentError(fmt::format("partition needs n >= 2, got {}", n));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ProblemInstance inst{ProblemKind::kPartition, n, seed, {}, {}};
  inst.weights.resize(n);
  for (auto& w : inst.weights) w = unit(rng);
  return inst;
}

ProblemInstance generate(ProblemKind kind, std::size_t n, std::uint64_t seed) {
  return kind == ProblemKind::kPartition ? gen_partition(n, seed)
                                         : gen_graph(n, seed, 0.5, kind);
}

IsingModel encode(const ProblemInstance& inst) {
  inst.validate();
  IsingModel m(inst.n);
  switch (inst.kind) {
    case ProblemKind::kMaxCut:
      for (const auto& [u, v] : inst.edges) m.add_j(u, v, -0.5);
      m.set_offset(-0.5 * static_cast<double>(inst.edges.size()));
      break;
    case ProblemKind::kPartition: {
      double sq = 0.0;
      for (std::size_t i = 0; i < inst.n; ++i) {
        sq += inst.weights[i] * inst.weights[i];
        for (std::size_t k = i + 1; k < inst.n; ++k) {
          m.set_j(i, k, -2.0 * inst.weights[i] * inst.weights[k]);
        }
      }
      m.set_offset(sq);
      break;
    }
    case ProblemKind::kVertexCover: {
      const double a = kCoverPenaltyA;
      const double b = kCoverPenaltyB;
      for (std::size_t i = 0; i < inst.n; ++i) m.set_h(i, b / 2.0);
      for (const auto& [u, v] : inst.edges) {
        m.add_j(u, v, -a / 4.0);
        m.add_h(u, -a / 4.0);
        m.add_h(v, -a / 4.0);
      }
      m.set_offset(a * static_cast<double>(inst.edges.size()) / 4.0 +
                   b * static_cast<double>(inst.n) / 2.0);
      break;
    }
  }
  return m;
}

bool is_vertex_cover(const ProblemInstance& inst, std::span<const int> s) {
  check_length(inst, s);
  return std::all_of(inst.edges.begin(), inst.edges.end(),
                     [&](const Edge& e) { return s[e.first] < 0 || s[e.second] < 0; });
}

double measure(const ProblemInstance& inst, std::span<const int> s) {
  check_length(inst, s);
  switch (inst.kind) {
    case ProblemKind::kMaxCut:
      return cut_size(inst, s);
    case ProblemKind::kPartition: {
      const Sides sd = partition_sides(inst, s);
      return std::min(sd.plus_sum, sd.minus_sum);
    }
    case ProblemKind::kVertexCover:
      return static_cast<double>(cover_size(inst, s));
  }
  throw InternalError("unknown problem kind");
}

BruteForceResult brute_force(const ProblemInstance& inst) {
  inst.validate();
  check_brute_force_size(inst.n);
  const std::uint64_t dim = std::uint64_t{1} << inst.n;
  const bool maximize = maximizes(inst.kind);
  BruteForceResult r;
  std::uint64_t best_x = 0;
  for (std::uint64_t x = 0; x < dim; ++x) {
    const double v = measure(inst, spins_of_basis(x, inst.n));
    if (x == 0) {
      r.optimal_measure = r.worst_measure = v;
      continue;
    }
    const bool better = maximize ? v > r.optimal_measure : v < r.optimal_measure;
    const bool worse = maximize ? v < r.worst_measure : v > r.worst_measure;
    if (better) {
      r.optimal_measure = v;
      best_x = x;
    }
    if (worse) r.worst_measure = v;
  }
  r.optimum = spins_of_basis(best_x, inst.n);
  return r;
}

double quality(const ProblemInstance& inst, std::span<const int> s, PartitionMetric metric) {
  check_length(inst, s);
  if (inst.kind == ProblemKind::kPartition && metric == PartitionMetric::kLighterSideCount) {
    const auto table = count_table(inst);
    return ratio_or_one(lighter_side_count(inst, s),
                        *std::max_element(table.begin(), table.end()));
  }
  const BruteForceResult opt = brute_force(inst);
  return quality_from_measure(inst, measure(inst, s), opt.optimal_measure);
}

std::vector<double> quality_table(const ProblemInstance& inst, PartitionMetric metric) {
  inst.validate();
  check_brute_force_size(inst.n);
  const std::uint64_t dim = std::uint64_t{1} << inst.n;
  std::vector<double> out(dim);
  if (inst.kind == ProblemKind::kPartition && metric == PartitionMetric::kLighterSideCount) {
    const auto counts = count_table(inst);
    const double best = *std::max_element(counts.begin(), counts.end());
    for (std::uint64_t x = 0; x < dim; ++x) out[x] = ratio_or_one(counts[x], best);
    return out;
  }
  std::vector<double> values(dim);
  for (std::uint64_t x = 0; x < dim; ++x) values[x] = measure(inst, spins_of_basis(x, inst.n));
  const double optimum = maximizes(inst.kind) ? *std::max_element(values.begin(), values.end())
                                              : *std::min_element(values.begin(), values.end());
  for (std::uint64_t x = 0; x < dim; ++x) {
    out[x] = quality_from_measure(inst, values[x], optimum);
  }
  return out;
}

double average_quality(const ProblemInstance& inst, std::span<const double> probs,
                       PartitionMetric metric) {
  const auto table = quality_table(inst, metric);
  return average_quality(table, probs);
}

double average_quality(std::span<const double> quality_table, std::span<const double> probs) {
  if (quality_table.size() != probs.size()) {
    throw ArgumentError(fmt::format("{} probabilities for {} outcomes", probs.size(),
                                    quality_table.size()));
  }
  double acc = 0.0;
  for (std::size_t x = 0; x < probs.size(); ++x) acc += probs[x] * quality_table[x];
  return acc;
}

SpinAssignment maxcut_relaxation_rounding(const ProblemInstance& inst, std::mt19937_64& rng,
                                          std::size_t iterations, std::size_t roundings) {
  const std::size_t n = inst.n;
  SpinAssignment best(n, 1);
  if (inst.edges.empty()) return best;

  const auto rank = static_cast<Eigen::Index>(std::ceil(std::sqrt(2.0 * static_cast<double>(n))));
  const auto rows = static_cast<Eigen::Index>(n);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd v(rows, rank);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index k = 0; k < rank; ++k) v(i, k) = gauss(rng);
    v.row(i).normalize();
  }
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(rows, rows);
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [a, b] : inst.edges) {
    adj(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = 1.0;
    adj(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = 1.0;
    ++degree[a];
    ++degree[b];
  }
  const double step = 1.0 / static_cast<double>(*std::max_element(degree.begin(), degree.end()));

  // Ascent on sum_E (1 - v_u . v_v) / 2 with rows projected back to the sphere.
  for (std::size_t it = 0; it < iterations; ++it) {
    Eigen::MatrixXd next = v - step * (adj * v);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double norm = next.row(i).norm();
      if (norm > 1e-12) v.row(i) = next.row(i) / norm;
    }
  }

  double best_cut = -1.0;
  SpinAssignment s(n);
  Eigen::VectorXd r(rank);
  for (std::size_t t = 0; t < roundings; ++t) {
    for (Eigen::Index k = 0; k < rank; ++k) r(k) = gauss(rng);
    const Eigen::VectorXd proj = v * r;
    for (std::size_t i = 0; i < n; ++i) s[i] = proj(static_cast<Eigen::Index>(i)) >= 0.0 ? 1 : -1;
    const double c = cut_size(inst, s);
    if (c > best_cut) {
      best_cut = c;
      best = s;
    }
  }
  return best;
}

SpinAssignment greedy_list_scheduling(std::span<const double> weights) {
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
  SpinAssignment s(weights.size(), 1);
  double plus = 0.0;
  double minus = 0.0;
  for (auto i : order) {
    if (plus <= minus) {
      plus += weights[i];
    } else {
      s[i] = -1;
      minus += weights[i];
    }
  }
  return s;
}

SpinAssignment matching_vertex_cover(const ProblemInstance& inst) {
  SpinAssignment s(inst.n, 1);
  for (const auto& [u, v] : inst.edges) {
    if (s[u] > 0 && s[v] > 0) {
      s[u] = -1;
      s[v] = -1;
    }
  }
  return s;
}

SpinAssignment warmstart(const ProblemInstance& inst, std::mt19937_64& rng) {
  inst.validate();
  switch (inst.kind) {
    case ProblemKind::kMaxCut:
      return maxcut_relaxation_rounding(inst, rng);
    case ProblemKind::kPartition:
      return greedy_list_scheduling(inst.weights);
    case ProblemKind::kVertexCover:
      return matching_vertex_cover(inst);
  }
  throw InternalError("unknown problem kind");
}

std::vector<double> ws_thetas(std::span<const int> z) {
  std::vector<double> out;
  out.reserve(z.size());
  for (int zi : z) {
    if (zi != 1 && zi != -1) throw ArgumentError(fmt::format("spin value {} not in {{-1, +1}}", zi));
    out.push_back(2.0 * std::asin(std::sqrt(0.5 - 0.25 * zi)));
  }
  return out;
}

void to_json(nlohmann::json& j, const ProblemInstance& inst) {
  j = nlohmann::json{{"kind", problem_name(inst.kind)}, {"n", inst.n}, {"seed", inst.seed}};
  if (inst.kind == ProblemKind::kPartition) {
    j["weights"] = inst.weights;
  } else {
    auto edges = nlohmann::json::array();
    for (const auto& [u, v] : inst.edges) edges.push_back({u, v});
    j["edges"] = std::move(edges);
  }
}

void from_json(const nlohmann::json& j, ProblemInstance& inst) {
  try {
    inst = ProblemInstance{};
    inst.kind = parse_problem(j.at("kind").get<std::string>());
    inst.n = j.at("n").get<std::size_t>();
    inst.seed = j.value("seed", std::uint64_t{0});
    if (inst.kind == ProblemKind::kPartition) {
      inst.weights = j.at("weights").get<std::vector<double>>();
    } else {
      for (const auto& e : j.at("edges")) {
        const auto u = e.at(0).get<std::size_t>();
        const auto v = e.at(1).get<std::size_t>();
        inst.edges.emplace_back(std::min(u, v), std::max(u, v));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed instance: {}", e.what()));
  }
  inst.validate();
}

void save_instance(const std::filesystem::path& path, const ProblemInstance& inst) {
  std::ofstream out(path);
  if (!out) throw ArgumentError(fmt::format("cannot write {}", path.string()));
  out << nlohmann::json(inst).dump(2) << '\n';
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError(fmt::format("cannot read {}", path.string()));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
  }
  return j.get<ProblemInstance>();
}

}  // namespace nqaoa
