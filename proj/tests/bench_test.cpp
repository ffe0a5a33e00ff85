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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "nqaoa/bench.hpp"
#include "nqaoa/errors.hpp"

using namespace nqaoa;

namespace {

ExperimentConfig tiny() {
  ExperimentConfig cfg;
  cfg.problems = {ProblemKind::kMaxCut};
  cfg.sizes = {5};
  cfg.instances_per_size = 2;
  cfg.variants = {Variant::kStandard};
  cfg.layers = {1};
  cfg.d_depol = {0.0};
  cfg.d_thermal = {0.0};
  cfg.repeats = 1;
  cfg.optimizer.max_evals = 40;
  return cfg;
}

std::string deterministic_csv(const std::vector<ResultRecord>& records) {
  std::string out = csv_header() + "\n";
  for (const auto& r : records) out += csv_row_deterministic(r) + "\n";
  return out;
}

ResultRecord record(Variant v, std::size_t p, double dd, double dt, double q,
                    std::size_t id = 0, std::size_t n = 5) {
  ResultRecord r;
  r.variant = v;
  r.p = p;
  r.d_depol = dd;
  r.d_thermal = dt;
  r.avg_quality = q;
  r.instance_id = id;
  r.n = n;
  r.repeats = 1;
  r.quantum_time_est_s = 0.01 * (p + n);
  r.classical_time_s = 0.5;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("nqaoa_bench_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(bench, runtime_estimate_closed_forms) {
  const NoiseParams np = baseline_params();
  const GateDurations d = GateDurations::from(np);
  const auto empty = schedule(Circuit(2), d);
  EXPECT_NEAR(estimate_quantum_time(empty, np, 1), 4.09e-3, 1e-15);
  Circuit cx(2);
  cx.add(Gate::cx(0, 1));
  const auto one = schedule(cx, d);
  EXPECT_NEAR(estimate_quantum_time(one, np, 1), 4.49e-3, 1e-15);
  EXPECT_NEAR(estimate_quantum_time(one, np, 2), 2 * estimate_quantum_time(one, np, 1), 1e-15);
  EXPECT_NEAR(estimate_quantum_time(one, np, 7, 10), 7 * 4.49e-5, 1e-15);
  EXPECT_EQ(estimate_quantum_time(one, np, 0), 0.0);
}

TEST(bench, rqaoa_estimate_exceeds_its_first_inner_run) {
  const auto inst = generate(ProblemKind::kMaxCut, 5, 3);
  const IsingModel m = encode(inst);
  VariantConfig cfg;
  cfg.variant = Variant::kRqaoa;
  cfg.optimizer.max_evals = 30;
  for (const NoiseParams& np : {noiseless_params(), baseline_params()}) {
    std::mt19937_64 a(8), b(8);
    QaoaEvaluator ev(m, MixerVariant::kStandard, std::nullopt, np);
    const SingleRun inner = optimize_qaoa(ev, cfg, a);
    SingleRun whole;
    rqaoa_recursion(m, cfg, np, b, whole);
    EXPECT_GT(inner.quantum_time_est_s, 0.0);
    EXPECT_GT(whole.quantum_time_est_s, inner.quantum_time_est_s);
  }
}

TEST(bench, presets) {
  const auto desk = desk_preset();
  EXPECT_EQ(desk.sizes, (std::vector<std::size_t>{5, 6, 7}));
  EXPECT_EQ(desk.instances_per_size, 20u);
  EXPECT_EQ(desk.repeats, 3u);
  EXPECT_EQ(desk.layers, (std::vector<std::size_t>{1}));
  EXPECT_EQ(desk.variants.size(), 4u);
  const auto cells = desk.noise_cells();
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(cells[0], (NoiseCell{0.0, 0.0}));
  EXPECT_EQ(cells[1], (NoiseCell{1.0, 1.0}));

  const auto paper = paper_preset();
  EXPECT_EQ(paper.sizes, (std::vector<std::size_t>{5, 6, 7, 8, 9, 10}));
  EXPECT_EQ(paper.instances_per_size, 100u);
  EXPECT_EQ(paper.layers, (std::vector<std::size_t>{1, 2, 3, 4}));
  EXPECT_EQ(paper.noise_cells().size(), 25u);
  EXPECT_EQ(paper.shots_per_iteration, 1000u);
  EXPECT_EQ(paper.optimizer.max_evals, 150u);
  EXPECT_EQ(paper.optimizer.tolerance, 0.01);
  EXPECT_EQ(paper.rqaoa_samples, 10u);
  EXPECT_THROW(preset("laptop"), ArgumentError);
}

TEST(bench, config_validation) {
  ExperimentConfig cfg = tiny();
  EXPECT_NO_THROW(cfg.validate());
  cfg.sizes.clear();
  EXPECT_THROW(cfg.validate(), ArgumentError);
  cfg = tiny();
  cfg.layers = {0};
  EXPECT_THROW(cfg.validate(), ArgumentError);
  cfg = tiny();
  cfg.noise_sweep = NoiseSweep::kJoint;
  cfg.d_depol = {0.0, 1.0};
  EXPECT_THROW(cfg.validate(), ArgumentError);
  cfg = tiny();
  cfg.jobs = 0;
  EXPECT_THROW(cfg.validate(), ArgumentError);
}

TEST(bench, config_json_round_trip_and_partial_merge) {
  ExperimentConfig cfg = paper_preset();
  cfg.master_seed = 77;
  cfg.noise_sweep = NoiseSweep::kJoint;
  cfg.d_depol = {0.0, 0.5};
  cfg.d_thermal = {0.0, 0.25};
  cfg.partition_metric = PartitionMetric::kLighterSideCount;
  cfg.optimizer.max_evals = 90;
  cfg.noise.t1_ns = 80'000.0;
  const nlohmann::json j = cfg;
  ExperimentConfig back = desk_preset();
  merge_json(j, back);
  EXPECT_EQ(nlohmann::json(back), j);
  EXPECT_EQ(back.noise, cfg.noise);
  EXPECT_EQ(back.variant_config(Variant::kWsQaoa, 3).optimizer.max_evals, 90u);

  ExperimentConfig partial = desk_preset();
  merge_json(nlohmann::json::parse(R"({"sizes": [4], "repeats": 2})"), partial);
  EXPECT_EQ(partial.sizes, (std::vector<std::size_t>{4}));
  EXPECT_EQ(partial.repeats, 2u);
  EXPECT_EQ(partial.instances_per_size, desk_preset().instances_per_size);

  EXPECT_THROW(merge_json(nlohmann::json::parse(R"({"variants": ["qaoa9"]})"), partial),
               std::exception);
  EXPECT_THROW(merge_json(nlohmann::json::parse(R"({"sizes": "five"})"), partial), ValidationError);

  const auto dir = scratch("config");
  std::ofstream(dir / "cfg.json") << R"({"problems": ["partition"], "master_seed": 5})";
  const auto loaded = load_config(dir / "cfg.json", desk_preset());
  EXPECT_EQ(loaded.problems, (std::vector<ProblemKind>{ProblemKind::kPartition}));
  EXPECT_EQ(loaded.master_seed, 5u);
  EXPECT_THROW(load_config(dir / "missing.json", desk_preset()), ArgumentError);
  std::filesystem::remove_all(dir);
}

TEST(bench, seeds_are_stable_and_distinct) {
  std::set<std::uint64_t> seen;
  for (auto k : {ProblemKind::kMaxCut, ProblemKind::kPartition, ProblemKind::kVertexCover}) {
    for (std::size_t n = 5; n <= 7; ++n) {
      for (std::size_t i = 0; i < 20; ++i) seen.insert(instance_seed(2023, k, n, i));
    }
  }
  EXPECT_EQ(seen.size(), 3u * 3u * 20u);
  EXPECT_EQ(instance_seed(1, ProblemKind::kMaxCut, 5, 0), instance_seed(1, ProblemKind::kMaxCut, 5, 0));
  EXPECT_NE(instance_seed(1, ProblemKind::kMaxCut, 5, 0), instance_seed(2, ProblemKind::kMaxCut, 5, 0));
  EXPECT_NE(run_seed(10, Variant::kStandard, 1), run_seed(10, Variant::kStandard, 2));
  EXPECT_NE(run_seed(10, Variant::kStandard, 1), run_seed(10, Variant::kRqaoa, 1));
}

TEST(bench, suite_generation_and_files) {
  ExperimentConfig cfg = tiny();
  cfg.problems = {ProblemKind::kPartition, ProblemKind::kVertexCover};
  cfg.sizes = {3, 4};
  const auto suite = generate_suite(cfg);
  ASSERT_EQ(suite.size(), 8u);
  EXPECT_EQ(suite[0].instance.kind, ProblemKind::kPartition);
  EXPECT_EQ(suite[0].instance.n, 3u);
  EXPECT_EQ(suite[1].instance_id, 1u);
  EXPECT_EQ(suite[2].instance.n, 4u);
  EXPECT_EQ(suite[4].instance.kind, ProblemKind::kVertexCover);
  EXPECT_EQ(suite[5].instance.seed, instance_seed(cfg.master_seed, ProblemKind::kVertexCover, 3, 1));

  cfg.sizes = {3, 4, 5};
  const auto bigger = generate_suite(cfg);
  EXPECT_EQ(bigger[0].instance, suite[0].instance);

  EXPECT_EQ(instance_filename(ProblemKind::kMaxCut, 7, 3), "maxcut_n7_003.json");
  const auto dir = scratch("suite");
  cfg.sizes = {3, 4};
  write_suite(dir, suite);
  const auto back = read_suite(dir, cfg);
  ASSERT_EQ(back.size(), suite.size());
  for (std::size_t k = 0; k < suite.size(); ++k) {
    EXPECT_EQ(back[k].instance, suite[k].instance);
    EXPECT_EQ(back[k].instance_id, suite[k].instance_id);
  }
  cfg.instances_per_size = 3;
  EXPECT_ANY_THROW(read_suite(dir, cfg));
  std::filesystem::remove_all(dir);
}

TEST(bench, csv_schema_and_round_trip) {
  EXPECT_EQ(csv_header().rfind(
                "problem,n,instance_id,seed,variant,p,d_depol,d_thermal,avg_quality,energy,"
                "optimizer_evals,quantum_time_est_s,classical_time_s,repeats",
                0),
            0u);
  ResultRecord r = record(Variant::kWsQaoa, 2, 0.25, 0.75, 1.0 / 3.0, 4, 6);
  r.problem = ProblemKind::kVertexCover;
  r.seed = 18446744073709551557ULL;
  r.energy = -2.0 / 7.0;
  r.optimizer_evals = 41.0 / 3.0;
  const std::string row = csv_row(r);
  EXPECT_NE(row.find(",0.333333333333,"), std::string::npos);
  EXPECT_NE(row.find(",-0.285714285714,"), std::string::npos);
  EXPECT_EQ(row.rfind("vertexcover,6,4,18446744073709551557,wsqaoa,2,0.25,0.75,", 0), 0u);

  ResultRecord failed = record(Variant::kRqaoa, 1, 0.0, 0.0, 0.0);
  failed.error = "capacity exceeded, n = 13";
  std::stringstream ss;
  write_results_csv(ss, {r, failed});
  const auto back = read_results_csv(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].problem, r.problem);
  EXPECT_EQ(back[0].seed, r.seed);
  EXPECT_EQ(back[0].variant, r.variant);
  EXPECT_NEAR(back[0].avg_quality, r.avg_quality, 1e-12);
  EXPECT_NEAR(back[0].optimizer_evals, r.optimizer_evals, 1e-10);
  EXPECT_TRUE(back[0].ok());
  // commas would break the row, so they are written as semicolons
  EXPECT_EQ(back[1].error, "capacity exceeded; n = 13");
  EXPECT_EQ(csv_row(back[0]), row);

  const std::string det = csv_row_deterministic(r);
  EXPECT_EQ(det.find(",0.5,"), std::string::npos);

  std::istringstream bad("problem,n\n");
  EXPECT_THROW(read_results_csv(bad), ValidationError);
}

TEST(bench, minimal_run_matrix) {
  std::vector<ResultRecord> streamed;
  const auto cfg = tiny();
  const auto records = run_matrix(cfg, generate_suite(cfg),
                                  [&](const ResultRecord& r) { streamed.push_back(r); });
  ASSERT_EQ(records.size(), 2u);
  ASSERT_EQ(streamed.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_TRUE(records[k].ok()) << records[k].error;
    EXPECT_GE(records[k].avg_quality, 0.0);
    EXPECT_LE(records[k].avg_quality, 1.0);
    EXPECT_GT(records[k].quantum_time_est_s, 0.0);
    EXPECT_EQ(records[k].instance_id, k);
    EXPECT_EQ(csv_row(streamed[k]), csv_row(records[k]));
  }
}

TEST(bench, run_matrix_is_deterministic_and_job_count_independent) {
  ExperimentConfig cfg = tiny();
  cfg.sizes = {4};
  cfg.instances_per_size = 3;
  cfg.variants = {Variant::kStandard, Variant::kWsInit, Variant::kWsQaoa, Variant::kRqaoa};
  cfg.d_depol = {0.0, 1.0};
  cfg.d_thermal = {0.0, 1.0};
  cfg.optimizer.max_evals = 15;
  const auto a = run_matrix(cfg);
  const auto b = run_matrix(cfg);
  cfg.jobs = 3;
  const auto c = run_matrix(cfg);
  ASSERT_EQ(a.size(), 3u * 4u * 4u);
  EXPECT_EQ(deterministic_csv(a), deterministic_csv(b));
  EXPECT_EQ(deterministic_csv(a), deterministic_csv(c));
}

TEST(bench, failing_cells_are_recorded_not_fatal) {
  ExperimentConfig cfg = tiny();
  cfg.sizes = {13};
  cfg.instances_per_size = 1;
  cfg.d_depol = {1.0};
  cfg.d_thermal = {1.0};
  const auto records = run_matrix(cfg);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_FALSE(records[0].ok());
  EXPECT_NE(records[0].error.find("12"), std::string::npos);
}

TEST(bench, relative_advantage_semantics) {
  std::vector<ResultRecord> rs;
  for (std::size_t id = 0; id < 3; ++id) {
    rs.push_back(record(Variant::kStandard, 1, 0.0, 0.0, 0.6 + 0.1 * id, id));
    rs.push_back(record(Variant::kStandard, 2, 0.0, 0.0, 0.6 + 0.1 * id, id));
    rs.push_back(record(Variant::kStandard, 1, 1.0, 1.0, 0.8, id));
    rs.push_back(record(Variant::kStandard, 2, 1.0, 1.0, 0.4, id));
  }
  rs.push_back(record(Variant::kStandard, 2, 0.5, 0.5, 0.9));
  const auto cells = relative_advantage(rs, Variant::kStandard, ProblemKind::kMaxCut, 2);
  ASSERT_EQ(cells.size(), 3u);
  EXPECT_EQ(cells[0].cell, (NoiseCell{0.0, 0.0}));
  EXPECT_NEAR(*cells[0].ratio, 1.0, 1e-15);
  EXPECT_EQ(cells[0].instances, 3u);
  EXPECT_FALSE(cells[1].ratio.has_value());
  EXPECT_NEAR(*cells[2].ratio, 0.5, 1e-15);

  // the (0, 0) cell does not depend on other cells
  std::vector<ResultRecord> only_zero(rs.begin(), rs.end());
  std::erase_if(only_zero, [](const ResultRecord& r) { return r.d_depol != 0.0; });
  EXPECT_EQ(*relative_advantage(only_zero, Variant::kStandard, ProblemKind::kMaxCut, 2)[0].ratio,
            *cells[0].ratio);
  EXPECT_THROW(relative_advantage(rs, Variant::kStandard, ProblemKind::kMaxCut, 1), ArgumentError);
}

TEST(bench, report_shapes_and_means) {
  const std::vector<ResultRecord> one{record(Variant::kStandard, 1, 0.0, 0.0, 0.75)};
  const auto t1 = report(one, ReportKind::kQualityByLayers);
  ASSERT_EQ(t1.rows.size(), 1u);
  EXPECT_EQ(t1.rows[0][5], "0.75");

  std::vector<ResultRecord> rs;
  const std::vector<double> grid{0.0, 0.5, 1.0};
  for (auto v : {Variant::kRqaoa, Variant::kStandard}) {
    for (std::size_t p : {1, 2, 3}) {
      for (std::size_t n : {6, 5}) {
        for (double dd : grid) {
          for (double dt : grid) rs.push_back(record(v, p, dd, dt, 0.1 * p + 0.01 * n, 0, n));
        }
      }
    }
  }
  const auto adv = report(rs, ReportKind::kAdvantageGrid);
  EXPECT_EQ(adv.rows.size(), 2u * 2u * grid.size() * grid.size());
  for (const auto& row : adv.rows) EXPECT_FALSE(row[5].empty());

  const auto qvr = report(rs, ReportKind::kQualityVsRuntime);
  EXPECT_EQ(qvr.header[0], "variant");
  EXPECT_EQ(qvr.rows.size(), 2u * 3u * 2u * grid.size() * grid.size());
  for (std::size_t k = 1; k < qvr.rows.size(); ++k) {
    const auto key = [](const std::vector<std::string>& r) {
      return std::make_tuple(parse_variant(r[0]), std::stoul(r[1]), std::stoul(r[2]));
    };
    EXPECT_LE(key(qvr.rows[k - 1]), key(qvr.rows[k]));
  }

  const auto byn = report(rs, ReportKind::kQualityByN);
  EXPECT_EQ(byn.rows.size(), qvr.rows.size());
  const auto byl = report(rs, ReportKind::kQualityByLayers);
  EXPECT_EQ(byl.rows.size(), 2u * 3u * grid.size() * grid.size());
  // mean over n = 5 and 6 at p = 1: 0.1 + 0.055
  EXPECT_NEAR(std::stod(byl.rows[0][5]), 0.155, 1e-12);

  std::stringstream ss;
  byl.write_csv(ss);
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "problem,variant,p,d_depol,d_thermal,mean_quality,count");

  EXPECT_THROW(parse_report_kind("histogram"), ArgumentError);
  for (auto k : {ReportKind::kQualityByLayers, ReportKind::kQualityByN,
                 ReportKind::kQualityVsRuntime, ReportKind::kAdvantageGrid}) {
    EXPECT_EQ(parse_report_kind(report_kind_name(k)), k);
  }
  EXPECT_THROW(report({}, ReportKind::kQualityByN), ArgumentError);
}
