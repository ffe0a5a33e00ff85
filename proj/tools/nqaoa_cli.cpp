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

#include "CLI11.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "nqaoa/bench.hpp"
#include "nqaoa/errors.hpp"
#include "nqaoa/log.hpp"

namespace {

using namespace nqaoa;

struct CommonOptions {
  std::string config;
  std::string preset = "desk";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "Experiment config (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--preset", o.preset, "Base configuration")
      ->check(CLI::IsMember({"desk", "paper"}));
  cmd->add_option("--seed", o.seed, "Master seed override");
  cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

ExperimentConfig resolve(const CommonOptions& o) {
  ExperimentConfig cfg = preset(o.preset);
  if (!o.config.empty()) cfg = load_config(o.config, cfg);
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.jobs) cfg.jobs = *o.jobs;
  cfg.validate();
  return cfg;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError(fmt::format("cannot write {}", path));
  return out;
}

std::vector<SuiteEntry> suite_for(const ExperimentConfig& cfg, const std::string& dir) {
  return dir.empty() ? generate_suite(cfg) : read_suite(dir, cfg);
}

/// Streams records to `path` while the matrix runs.
std::vector<ResultRecord> run_to_csv(const ExperimentConfig& cfg,
                                     const std::vector<SuiteEntry>& suite,
                                     const std::string& path) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!path.empty()) {
    file = open_out(path);
    out = &file;
  }
  *out << csv_header() << '\n';
  std::size_t done = 0;
  return run_matrix(cfg, suite, [&](const ResultRecord& r) {
    *out << csv_row(r) << '\n';
    out->flush();
    if (++done % 50 == 0) log::info(fmt::format("{} records written", done));
  });
}

void write_table(const Table& t, const std::string& path) {
  if (path.empty()) {
    t.write_csv(std::cout);
    return;
  }
  auto out = open_out(path);
  t.write_csv(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noisy QAOA variant benchmarks"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Progress messages on stderr");

  CommonOptions gen_opts;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "Write the instance suite as JSON files");
  add_common(gen, gen_opts);
  gen->add_option("--out", gen_out, "Output directory")->required();

  CommonOptions run_opts;
  std::string run_instances, run_out;
  auto* run = app.add_subcommand("run", "Execute the run matrix and write results CSV");
  add_common(run, run_opts);
  run->add_option("--instances", run_instances, "Instance directory from `generate`")
      ->check(CLI::ExistingDirectory);
  run->add_option("--out", run_out, "Results CSV (default stdout)");

  std::string rep_in, rep_kind, rep_out;
  auto* rep = app.add_subcommand("report", "Aggregate a results CSV");
  rep->add_option("--in", rep_in, "Results CSV")->required()->check(CLI::ExistingFile);
  rep->add_option("--kind", rep_kind, "Report kind")
      ->required()
      ->check(CLI::IsMember(
          {"quality-by-layers", "quality-by-n", "quality-vs-runtime", "advantage-grid"}));
  rep->add_option("--out", rep_out, "Report CSV (default stdout)");

  CommonOptions sweep_opts;
  std::string sweep_instances, sweep_out, sweep_results;
  auto* sweep = app.add_subcommand("sweep-noise", "Run the noise grid and emit advantage grids");
  add_common(sweep, sweep_opts);
  sweep->add_option("--instances", sweep_instances, "Instance directory from `generate`")
      ->check(CLI::ExistingDirectory);
  sweep->add_option("--out", sweep_out, "Advantage grid CSV (default stdout)");
  sweep->add_option("--results", sweep_results, "Also keep the raw results CSV here");

  std::string circ_instance, circ_variant = "standard", circ_out, circ_sched;
  std::size_t circ_p = 1;
  std::uint64_t circ_seed = 0;
  auto* circ = app.add_subcommand("circuit", "Dump the native circuit and schedule for one instance");
  circ->add_option("--instance", circ_instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  circ->add_option("--variant", circ_variant, "standard, ws-init or wsqaoa")
      ->check(CLI::IsMember({"standard", "ws-init", "wsqaoa"}));
  circ->add_option("--p", circ_p, "Layer count")->check(CLI::PositiveNumber);
  circ->add_option("--seed", circ_seed, "Seed for angles and warm start");
  circ->add_option("--out", circ_out, "Circuit text (default stdout)");
  circ->add_option("--schedule", circ_sched, "Schedule CSV");

  CLI11_PARSE(app, argc, argv);
  log::set_level(verbose ? log::Level::kInfo : log::Level::kWarning);

  try {
    if (*gen) {
      const ExperimentConfig cfg = resolve(gen_opts);
      const auto suite = generate_suite(cfg);
      write_suite(gen_out, suite);
      std::ofstream(std::filesystem::path(gen_out) / "config.json")
          << nlohmann::json(cfg).dump(2) << '\n';
      log::info(fmt::format("{} instances written to {}", suite.size(), gen_out));
    } else if (*run) {
      const ExperimentConfig cfg = resolve(run_opts);
      run_to_csv(cfg, suite_for(cfg, run_instances), run_out);
    } else if (*rep) {
      std::ifstream in(rep_in);
      write_table(report(read_results_csv(in), parse_report_kind(rep_kind)), rep_out);
    } else if (*sweep) {
      const ExperimentConfig cfg = resolve(sweep_opts);
      if (std::none_of(cfg.layers.begin(), cfg.layers.end(), [](std::size_t p) { return p >= 2; })) {
        throw ArgumentError("sweep-noise needs at least two consecutive layer counts");
      }
      const auto suite = suite_for(cfg, sweep_instances);
      std::vector<ResultRecord> records;
      if (sweep_results.empty()) {
        records = run_matrix(cfg, suite);
      } else {
        records = run_to_csv(cfg, suite, sweep_results);
      }
      write_table(report(records, ReportKind::kAdvantageGrid), sweep_out);
    } else if (*circ) {
      const ProblemInstance inst = load_instance(circ_instance);
      const Variant v = parse_variant(circ_variant);
      std::mt19937_64 rng(circ_seed);
      std::optional<std::vector<double>> thetas;
      const MixerVariant mixer = v == Variant::kStandard ? MixerVariant::kStandard
                                 : v == Variant::kWsInit ? MixerVariant::kWsInit
                                                         : MixerVariant::kWsQaoa;
      if (mixer != MixerVariant::kStandard) thetas = ws_thetas(warmstart(inst, rng));
      const QaoaEvaluator evaluator(encode(inst), mixer, thetas, baseline_params());
      const ScheduledCircuit sc = evaluator.scheduled(random_params(circ_p, rng));
      if (circ_out.empty()) {
        write_circuit_text(std::cout, sc.circuit);
      } else {
        auto out = open_out(circ_out);
        write_circuit_text(out, sc.circuit);
      }
      if (!circ_sched.empty()) {
        auto out = open_out(circ_sched);
        write_schedule_csv(out, sc);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "nqaoa: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
