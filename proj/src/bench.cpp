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
#include <atomic>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "nqaoa/bench.hpp"
#include "nqaoa/errors.hpp"
#include "nqaoa/log.hpp"

namespace nqaoa {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) { return splitmix64(h ^ splitmix64(v)); }

std::string fmt_double(double v) { return fmt::format("{:.12g}", v); }

template <typename T>
void require_nonempty(const std::vector<T>& v, std::string_view what) {
  if (v.empty()) throw ArgumentError(fmt::format("config list '{}' is empty", what));
}

std::string_view metric_name(PartitionMetric m) {
  return m == PartitionMetric::kLighterSideSum ? "sum" : "count";
}

PartitionMetric parse_metric(std::string_view s) {
  if (s == "sum") return PartitionMetric::kLighterSideSum;
  if (s == "count") return PartitionMetric::kLighterSideCount;
  throw ArgumentError(fmt::format("unknown partition metric '{}'", s));
}

std::string_view sweep_name(NoiseSweep s) { return s == NoiseSweep::kCartesian ? "cartesian" : "joint"; }

NoiseSweep parse_sweep(std::string_view s) {
  if (s == "cartesian") return NoiseSweep::kCartesian;
  if (s == "joint") return NoiseSweep::kJoint;
  throw ArgumentError(fmt::format("unknown noise sweep '{}'", s));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ls(line);
  while (std::getline(ls, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string sanitize(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == ',' || c == '\n' || c == '\r'; },
                  ';');
  return s;
}

struct Mean {
  double sum = 0.0;
  std::size_t count = 0;
  void add(double v) {
    sum += v;
    ++count;
  }
  double value() const { return sum / static_cast<double>(count); }
};

}  // namespace

double estimate_quantum_time(const ScheduledCircuit& circuit, const NoiseParams& np,
                             std::size_t optimizer_evals, std::size_t shots) {
  return (circuit.total_ns + np.measure_duration_ns) * 1e-9 * static_cast<double>(shots) *
         static_cast<double>(optimizer_evals);
}

void ExperimentConfig::validate() const {
  require_nonempty(problems, "problems");
  require_nonempty(sizes, "sizes");
  require_nonempty(variants, "variants");
  require_nonempty(layers, "layers");
  require_nonempty(d_depol, "d_depol");
  require_nonempty(d_thermal, "d_thermal");
  if (instances_per_size < 1) throw ArgumentError("instances_per_size must be >= 1");
  for (auto n : sizes) {
    if (n < 2) throw ArgumentError(fmt::format("size {} below 2", n));
  }
  for (auto p : layers) {
    if (p < 1) throw ArgumentError("layer counts must be >= 1");
  }
  if (noise_sweep == NoiseSweep::kJoint && d_depol.size() != d_thermal.size()) {
    throw ArgumentError("joint noise sweep needs equally long d_depol and d_thermal lists");
  }
  for (const auto& c : noise_cells()) scale_params(noise, c.d_depol, c.d_thermal).validate();
  if (jobs < 1) throw ArgumentError("jobs must be >= 1");
  variant_config(variants.front(), layers.front()).validate();
}

std::vector<NoiseCell> ExperimentConfig::noise_cells() const {
  std::vector<NoiseCell> cells;
  if (noise_sweep == NoiseSweep::kJoint) {
    for (std::size_t k = 0; k < std::min(d_depol.size(), d_thermal.size()); ++k) {
      cells.push_back({d_depol[k], d_thermal[k]});
    }
    return cells;
  }
  for (double dd : d_depol) {
    for (double dt : d_thermal) cells.push_back({dd, dt});
  }
  return cells;
}

VariantConfig ExperimentConfig::variant_config(Variant v, std::size_t p) const {
  VariantConfig vc;
  vc.variant = v;
  vc.p = p;
  vc.optimizer = optimizer;
  vc.repeats = repeats;
  vc.shots = shots_per_iteration;
  vc.rqaoa_samples = rqaoa_samples;
  vc.rqaoa_cutoff = rqaoa_cutoff;
  vc.metric = partition_metric;
  return vc;
}

ExperimentConfig desk_preset() {
  ExperimentConfig cfg;
  cfg.problems = {ProblemKind::kMaxCut};
  cfg.sizes = {5, 6, 7};
  cfg.instances_per_size = 20;
  cfg.layers = {1};
  cfg.d_depol = {0.0, 1.0};
  cfg.d_thermal = {0.0, 1.0};
  cfg.noise_sweep = NoiseSweep::kJoint;
  cfg.repeats = 3;
  return cfg;
}

ExperimentConfig paper_preset() { return ExperimentConfig{}; }

ExperimentConfig preset(std::string_view name) {
  if (name == "desk") return desk_preset();
  if (name == "paper") return paper_preset();
  throw ArgumentError(fmt::format("unknown preset '{}'", name));
}

void to_json(nlohmann::json& j, const ExperimentConfig& cfg) {
  auto problems = nlohmann::json::array();
  for (auto p : cfg.problems) problems.push_back(problem_name(p));
  auto variants = nlohmann::json::array();
  for (auto v : cfg.variants) variants.push_back(variant_name(v));
  j = nlohmann::json{
      {"problems", problems},
      {"sizes", cfg.sizes},
      {"instances_per_size", cfg.instances_per_size},
      {"variants", variants},
      {"layers", cfg.layers},
      {"d_depol", cfg.d_depol},
      {"d_thermal", cfg.d_thermal},
      {"noise_sweep", sweep_name(cfg.noise_sweep)},
      {"shots_per_iteration", cfg.shots_per_iteration},
      {"master_seed", cfg.master_seed},
      {"jobs", cfg.jobs},
      {"repeats", cfg.repeats},
      {"optimizer",
       {{"tolerance", cfg.optimizer.tolerance},
        {"max_evals", cfg.optimizer.max_evals},
        {"initial_radius", cfg.optimizer.initial_radius}}},
      {"rqaoa_samples", cfg.rqaoa_samples},
      {"rqaoa_cutoff", cfg.rqaoa_cutoff},
      {"partition_metric", metric_name(cfg.partition_metric)},
      {"noise", cfg.noise},
  };
}

void merge_json(const nlohmann::json& j, ExperimentConfig& cfg) {
  try {
    if (j.contains("problems")) {
      cfg.problems.clear();
      for (const auto& p : j.at("problems")) cfg.problems.push_back(parse_problem(p.get<std::string>()));
    }
    if (j.contains("variants")) {
      cfg.variants.clear();
      for (const auto& v : j.at("variants")) cfg.variants.push_back(parse_variant(v.get<std::string>()));
    }
    cfg.sizes = j.value("sizes", cfg.sizes);
    cfg.instances_per_size = j.value("instances_per_size", cfg.instances_per_size);
    cfg.layers = j.value("layers", cfg.layers);
    cfg.d_depol = j.value("d_depol", cfg.d_depol);
    cfg.d_thermal = j.value("d_thermal", cfg.d_thermal);
    if (j.contains("noise_sweep")) cfg.noise_sweep = parse_sweep(j.at("noise_sweep").get<std::string>());
    cfg.shots_per_iteration = j.value("shots_per_iteration", cfg.shots_per_iteration);
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    cfg.jobs = j.value("jobs", cfg.jobs);
    cfg.repeats = j.value("repeats", cfg.repeats);
    if (j.contains("optimizer")) {
      const auto& o = j.at("optimizer");
      cfg.optimizer.tolerance = o.value("tolerance", cfg.optimizer.tolerance);
      cfg.optimizer.max_evals = o.value("max_evals", cfg.optimizer.max_evals);
      cfg.optimizer.initial_radius = o.value("initial_radius", cfg.optimizer.initial_radius);
    }
    cfg.rqaoa_samples = j.value("rqaoa_samples", cfg.rqaoa_samples);
    cfg.rqaoa_cutoff = j.value("rqaoa_cutoff", cfg.rqaoa_cutoff);
    if (j.contains("partition_metric")) {
      cfg.partition_metric = parse_metric(j.at("partition_metric").get<std::string>());
    }
    if (j.contains("noise")) cfg.noise = j.at("noise").get<NoiseParams>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed config: {}", e.what()));
  }
  cfg.validate();
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ArgumentError(fmt::format("cannot read {}", path.string()));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
  }
  merge_json(j, base);
  return base;
}

std::uint64_t instance_seed(std::uint64_t master, ProblemKind problem, std::size_t n,
                            std::size_t index) {
  std::uint64_t h = splitmix64(master);
  h = hash_combine(h, static_cast<std::uint64_t>(problem));
  h = hash_combine(h, n);
  return hash_combine(h, index);
}

std::uint64_t run_seed(std::uint64_t inst_seed, Variant variant, std::size_t p) {
  return hash_combine(hash_combine(splitmix64(inst_seed), static_cast<std::uint64_t>(variant)), p);
}

std::vector<SuiteEntry> generate_suite(const ExperimentConfig& cfg) {
  std::vector<SuiteEntry> suite;
  for (auto problem : cfg.problems) {
    for (auto n : cfg.sizes) {
      for (std::size_t k = 0; k < cfg.instances_per_size; ++k) {
        suite.push_back({k, generate(problem, n, instance_seed(cfg.master_seed, problem, n, k))});
      }
    }
  }
  return suite;
}

std::string instance_filename(ProblemKind problem, std::size_t n, std::size_t index) {
  return fmt::format("{}_n{}_{:03}.json", problem_name(problem), n, index);
}

void write_suite(const std::filesystem::path& dir, const std::vector<SuiteEntry>& suite) {
  std::filesystem::create_directories(dir);
  for (const auto& e : suite) {
    save_instance(dir / instance_filename(e.instance.kind, e.instance.n, e.instance_id), e.instance);
  }
}

std::vector<SuiteEntry> read_suite(const std::filesystem::path& dir, const ExperimentConfig& cfg) {
  std::vector<SuiteEntry> suite;
  for (auto problem : cfg.problems) {
    for (auto n : cfg.sizes) {
      for (std::size_t k = 0; k < cfg.instances_per_size; ++k) {
        ProblemInstance inst = load_instance(dir / instance_filename(problem, n, k));
        if (inst.kind != problem || inst.n != n) {
          throw ValidationError(fmt::format("{} does not hold a {} instance of size {}",
                                            instance_filename(problem, n, k),
                                            problem_name(problem), n));
        }
        suite.push_back({k, std::move(inst)});
      }
    }
  }
  return suite;
}

std::string csv_header() {
  return "problem,n,instance_id,seed,variant,p,d_depol,d_thermal,avg_quality,energy,"
         "optimizer_evals,quantum_time_est_s,classical_time_s,repeats,error";
}

namespace {

std::string csv_row_impl(const ResultRecord& r, bool with_wall_clock) {
  auto num = [&](double v) { return r.ok() ? fmt_double(v) : std::string{}; };
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", problem_name(r.problem), r.n,
                     r.instance_id, r.seed, variant_name(r.variant), r.p, fmt_double(r.d_depol),
                     fmt_double(r.d_thermal), num(r.avg_quality), num(r.energy),
                     num(r.optimizer_evals), num(r.quantum_time_est_s),
                     with_wall_clock ? num(r.classical_time_s) : std::string{}, r.repeats,
                     sanitize(r.error));
}

}  // namespace

std::string csv_row(const ResultRecord& r) { return csv_row_impl(r, true); }

std::string csv_row_deterministic(const ResultRecord& r) { return csv_row_impl(r, false); }

void write_results_csv(std::ostream& out, const std::vector<ResultRecord>& records) {
  out << csv_header() << '\n';
  for (const auto& r : records) out << csv_row(r) << '\n';
}

std::vector<ResultRecord> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("results file is empty");
  const auto header = split_csv_line(line);
  const auto expected = split_csv_line(csv_header());
  if (header.size() < expected.size() - 1 ||
      !std::equal(expected.begin(), expected.end() - 1, header.begin())) {
    throw ValidationError(fmt::format("unexpected results header '{}'", line));
  }
  std::vector<ResultRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() < 14) throw ValidationError(fmt::format("line {}: {} fields", lineno, f.size()));
    try {
      ResultRecord r;
      r.problem = parse_problem(f[0]);
      r.n = std::stoul(f[1]);
      r.instance_id = std::stoul(f[2]);
      r.seed = std::stoull(f[3]);
      r.variant = parse_variant(f[4]);
      r.p = std::stoul(f[5]);
      r.d_depol = std::stod(f[6]);
      r.d_thermal = std::stod(f[7]);
      r.repeats = std::stoul(f[13]);
      r.error = f.size() > 14 ? f[14] : std::string{};
      if (r.ok()) {
        r.avg_quality = std::stod(f[8]);
        r.energy = std::stod(f[9]);
        r.optimizer_evals = std::stod(f[10]);
        r.quantum_time_est_s = std::stod(f[11]);
        r.classical_time_s = f[12].empty() ? 0.0 : std::stod(f[12]);
      }
      out.push_back(std::move(r));
    } catch (const std::logic_error& e) {
      throw ValidationError(fmt::format("line {}: {}", lineno, e.what()));
    }
  }
  return out;
}

std::vector<ResultRecord> run_matrix(const ExperimentConfig& cfg,
                                     const std::vector<SuiteEntry>& suite,
                                     const RecordSink& sink) {
  cfg.validate();
  struct Task {
    const SuiteEntry* entry;
    Variant variant;
    std::size_t p;
    NoiseCell cell;
  };
  const auto cells = cfg.noise_cells();
  std::vector<Task> tasks;
  for (const auto& e : suite) {
    for (auto v : cfg.variants) {
      for (auto p : cfg.layers) {
        for (const auto& c : cells) tasks.push_back({&e, v, p, c});
      }
    }
  }

  auto execute = [&](const Task& t) {
    const ProblemInstance& inst = t.entry->instance;
    ResultRecord r;
    r.problem = inst.kind;
    r.n = inst.n;
    r.instance_id = t.entry->instance_id;
    r.seed = inst.seed;
    r.variant = t.variant;
    r.p = t.p;
    r.d_depol = t.cell.d_depol;
    r.d_thermal = t.cell.d_thermal;
    r.repeats = cfg.repeats;
    try {
      std::mt19937_64 rng(run_seed(inst.seed, t.variant, t.p));
      const RunResult res = run_variant(inst, cfg.variant_config(t.variant, t.p),
                                        scale_params(cfg.noise, t.cell.d_depol, t.cell.d_thermal),
                                        rng);
      r.avg_quality = res.avg_quality;
      r.energy = res.energy;
      r.optimizer_evals = res.optimizer_evals;
      r.quantum_time_est_s = res.quantum_time_est_s;
      r.classical_time_s = res.classical_time_s;
    } catch (const std::exception& e) {
      r.error = e.what();
      log::warning(fmt::format("{} n={} instance {} {} p={}: {}", problem_name(inst.kind), inst.n,
                               r.instance_id, variant_name(t.variant), t.p, e.what()));
    }
    return r;
  };

  std::vector<std::optional<ResultRecord>> done(tasks.size());
  std::vector<ResultRecord> out;
  out.reserve(tasks.size());
  std::mutex mu;
  std::size_t flushed = 0;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      ResultRecord r = execute(tasks[k]);
      std::lock_guard lock(mu);
      done[k] = std::move(r);
      while (flushed < done.size() && done[flushed]) {
        if (sink) sink(*done[flushed]);
        out.push_back(std::move(*done[flushed]));
        done[flushed].reset();
        ++flushed;
      }
    }
  };
  const std::size_t threads = std::min(cfg.jobs, std::max<std::size_t>(1, tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return out;
}

std::vector<ResultRecord> run_matrix(const ExperimentConfig& cfg) {
  return run_matrix(cfg, generate_suite(cfg));
}

std::vector<AdvantageCell> relative_advantage(const std::vector<ResultRecord>& records,
                                              Variant variant, ProblemKind problem,
                                              std::size_t p) {
  if (p < 2) throw ArgumentError("relative advantage needs p >= 2");
  std::map<NoiseCell, std::pair<Mean, Mean>> by_cell;  // (layer p - 1, layer p)
  for (const auto& r : records) {
    if (!r.ok() || r.variant != variant || r.problem != problem) continue;
    if (r.p != p && r.p + 1 != p) continue;
    auto& m = by_cell[{r.d_depol, r.d_thermal}];
    (r.p == p ? m.second : m.first).add(r.avg_quality);
  }
  std::vector<AdvantageCell> out;
  for (const auto& [cell, m] : by_cell) {
    AdvantageCell a{cell, std::nullopt, m.second.count};
    if (m.first.count > 0 && m.second.count > 0 && m.first.value() > 0.0) {
      a.ratio = m.second.value() / m.first.value();
    }
    out.push_back(a);
  }
  return out;
}

ReportKind parse_report_kind(std::string_view name) {
  if (name == "quality-by-layers") return ReportKind::kQualityByLayers;
  if (name == "quality-by-n") return ReportKind::kQualityByN;
  if (name == "quality-vs-runtime") return ReportKind::kQualityVsRuntime;
  if (name == "advantage-grid") return ReportKind::kAdvantageGrid;
  throw ArgumentError(fmt::format("unknown report kind '{}'", name));
}

std::string_view report_kind_name(ReportKind kind) {
  switch (kind) {
    case ReportKind::kQualityByLayers:
      return "quality-by-layers";
    case ReportKind::kQualityByN:
      return "quality-by-n";
    case ReportKind::kQualityVsRuntime:
      return "quality-vs-runtime";
    case ReportKind::kAdvantageGrid:
      return "advantage-grid";
  }
  return "unknown";
}

void Table::write_csv(std::ostream& out) const {
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) out << (k ? "," : "") << fields[k];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

Table report(const std::vector<ResultRecord>& records, ReportKind kind) {
  std::vector<const ResultRecord*> ok;
  for (const auto& r : records) {
    if (r.ok()) ok.push_back(&r);
  }
  if (ok.empty()) throw ArgumentError("no successful records to report on");
  Table t;
  auto str = [](auto v) { return fmt::format("{}", v); };

  switch (kind) {
    case ReportKind::kQualityByLayers: {
      using Key = std::tuple<ProblemKind, Variant, std::size_t, double, double>;
      std::map<Key, Mean> groups;
      for (const auto* r : ok) {
        groups[{r->problem, r->variant, r->p, r->d_depol, r->d_thermal}].add(r->avg_quality);
      }
      t.header = {"problem", "variant", "p", "d_depol", "d_thermal", "mean_quality", "count"};
      for (const auto& [k, m] : groups) {
        t.rows.push_back({std::string(problem_name(std::get<0>(k))),
                          std::string(variant_name(std::get<1>(k))), str(std::get<2>(k)),
                          fmt_double(std::get<3>(k)), fmt_double(std::get<4>(k)),
                          fmt_double(m.value()), str(m.count)});
      }
      break;
    }
    case ReportKind::kQualityByN: {
      using Key = std::tuple<ProblemKind, Variant, std::size_t, std::size_t, double, double>;
      std::map<Key, Mean> groups;
      for (const auto* r : ok) {
        groups[{r->problem, r->variant, r->n, r->p, r->d_depol, r->d_thermal}].add(r->avg_quality);
      }
      t.header = {"problem", "variant", "n", "p", "d_depol", "d_thermal", "mean_quality", "count"};
      for (const auto& [k, m] : groups) {
        t.rows.push_back({std::string(problem_name(std::get<0>(k))),
                          std::string(variant_name(std::get<1>(k))), str(std::get<2>(k)),
                          str(std::get<3>(k)), fmt_double(std::get<4>(k)),
                          fmt_double(std::get<5>(k)), fmt_double(m.value()), str(m.count)});
      }
      break;
    }
    case ReportKind::kQualityVsRuntime: {
      using Key = std::tuple<Variant, std::size_t, std::size_t, ProblemKind, double, double>;
      struct Acc {
        Mean quality, quantum, classical;
      };
      std::map<Key, Acc> groups;
      for (const auto* r : ok) {
        auto& a = groups[{r->variant, r->p, r->n, r->problem, r->d_depol, r->d_thermal}];
        a.quality.add(r->avg_quality);
        a.quantum.add(r->quantum_time_est_s);
        a.classical.add(r->classical_time_s);
      }
      t.header = {"variant",    "p",
                  "n",          "problem",
                  "d_depol",    "d_thermal",
                  "mean_quantum_time_est_s", "mean_classical_time_s",
                  "mean_quality", "count"};
      for (const auto& [k, a] : groups) {
        t.rows.push_back({std::string(variant_name(std::get<0>(k))), str(std::get<1>(k)),
                          str(std::get<2>(k)), std::string(problem_name(std::get<3>(k))),
                          fmt_double(std::get<4>(k)), fmt_double(std::get<5>(k)),
                          fmt_double(a.quantum.value()), fmt_double(a.classical.value()),
                          fmt_double(a.quality.value()), str(a.quality.count)});
      }
      break;
    }
    case ReportKind::kAdvantageGrid: {
      std::map<std::tuple<ProblemKind, Variant>, std::vector<std::size_t>> layers;
      std::vector<NoiseCell> grid;
      for (const auto* r : ok) {
        auto& ps = layers[{r->problem, r->variant}];
        if (std::find(ps.begin(), ps.end(), r->p) == ps.end()) ps.push_back(r->p);
        const NoiseCell c{r->d_depol, r->d_thermal};
        if (std::find(grid.begin(), grid.end(), c) == grid.end()) grid.push_back(c);
      }
      std::sort(grid.begin(), grid.end());
      t.header = {"problem", "variant", "p", "d_depol", "d_thermal", "ratio", "count"};
      for (auto& [key, ps] : layers) {
        std::sort(ps.begin(), ps.end());
        for (auto p : ps) {
          if (p < 2) continue;
          const auto cells = relative_advantage(records, std::get<1>(key), std::get<0>(key), p);
          for (const auto& c : grid) {
            const auto it = std::find_if(cells.begin(), cells.end(),
                                         [&](const AdvantageCell& a) { return a.cell == c; });
            const bool have = it != cells.end() && it->ratio;
            t.rows.push_back({std::string(problem_name(std::get<0>(key))),
                              std::string(variant_name(std::get<1>(key))), str(p),
                              fmt_double(c.d_depol), fmt_double(c.d_thermal),
                              have ? fmt_double(*it->ratio) : std::string{},
                              str(it != cells.end() ? it->instances : 0)});
          }
        }
      }
      break;
    }
  }
  return t;
}

}  // namespace nqaoa
