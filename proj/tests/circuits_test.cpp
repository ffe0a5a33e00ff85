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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "nqaoa/circuits.hpp"
#include "nqaoa/errors.hpp"
#include "nqaoa/noise.hpp"
#include "nqaoa/problems.hpp"
#include "oracle.hpp"

using namespace nqaoa;
using std::numbers::pi;

namespace {

const Complex I{0.0, 1.0};

using oracle::m2;
using oracle::random_circuit;
using oracle::reference_matrix;
using oracle::reference_unitary;

void expect_valid_coloring(std::size_t n, const std::vector<Edge>& edges) {
  const auto colors = misra_gries_coloring(n, edges);
  ASSERT_EQ(colors.size(), edges.size());
  for (std::size_t a = 0; a < edges.size(); ++a) {
    for (std::size_t b = a + 1; b < edges.size(); ++b) {
      const bool incident = edges[a].first == edges[b].first || edges[a].first == edges[b].second ||
                            edges[a].second == edges[b].first || edges[a].second == edges[b].second;
      if (incident) {
        EXPECT_NE(colors[a], colors[b]);
      }
    }
  }
  EXPECT_TRUE(oracle::valid_edge_coloring(n, edges, colors));
  for (auto c : colors) EXPECT_LE(c, oracle::max_degree(n, edges));
  EXPECT_TRUE(is_proper_edge_coloring(n, edges, colors));
}

IsingModel single_edge() {
  ProblemInstance inst{ProblemKind::kMaxCut, 2, 0, {{0, 1}}, {}};
  return encode(inst);
}

}  // namespace

TEST(circuits, gate_matrices_match_textbook_forms) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Circuit c = random_circuit(2, 8, rng, false);
    for (const auto& g : c.gates()) {
      EXPECT_LT(oracle::max_abs(gate_matrix(g) - reference_matrix(g)), 1e-14) << gate_name(g.kind);
    }
  }
}

TEST(circuits, gate_names_round_trip) {
  for (auto k : {GateKind::kRZ, GateKind::kSX, GateKind::kX, GateKind::kH, GateKind::kRX,
                 GateKind::kRY, GateKind::kRZZ, GateKind::kCX}) {
    EXPECT_EQ(gate_kind_from_name(gate_name(k)), k);
  }
  EXPECT_FALSE(gate_kind_from_name("CCX").has_value());
  EXPECT_TRUE(is_native(GateKind::kSX));
  EXPECT_FALSE(is_native(GateKind::kH));
}

TEST(circuits, circuit_rejects_bad_targets) {
  Circuit c(2);
  EXPECT_THROW(c.add(Gate::cx(1, 1)), ArgumentError);
  EXPECT_THROW(c.add(Gate::sx(2)), ArgumentError);
  c.add(Gate::cx(0, 1)).add(Gate::sx(0));
  EXPECT_EQ(c.count(GateKind::kSX), 1u);
}

TEST(circuits, qaoa_single_coupling_gate_sequence) {
  const IsingModel m = single_edge();
  const std::vector<double> b{0.3}, g{0.7};
  const Circuit c = build_qaoa_circuit(m, b, g, MixerVariant::kStandard);
  std::vector<GateKind> kinds;
  for (const auto& gate : c.gates()) kinds.push_back(gate.kind);
  EXPECT_EQ(kinds, (std::vector<GateKind>{GateKind::kH, GateKind::kH, GateKind::kRZZ,
                                          GateKind::kRX, GateKind::kRX}));
  EXPECT_NEAR(c.gates()[3].theta, 0.6, 1e-15);
}

TEST(circuits, qaoa_separator_is_objective_phase) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = generate(trial % 2 ? ProblemKind::kVertexCover : ProblemKind::kPartition,
                               4, 50 + trial);
    const IsingModel m = encode(inst);
    const double gamma = 0.37 + 0.1 * trial;
    const std::vector<double> b{0.0}, g{gamma};
    const Circuit c = build_qaoa_circuit(m, b, g, MixerVariant::kStandard);
    CMatrix expected = CMatrix::Zero(16, 16);
    for (std::uint64_t x = 0; x < 16; ++x) expected(x, x) = std::exp(-I * gamma * m.energy_of_basis(x));
    Circuit hadamards(4);
    for (std::size_t q = 0; q < 4; ++q) hadamards.add(Gate::h(q));
    expected = expected * reference_unitary(hadamards);
    EXPECT_LT(oracle::phase_distance(reference_unitary(c), expected), 1e-12);
  }
}

TEST(circuits, qaoa_mixer_is_transverse_field_evolution) {
  const IsingModel m = single_edge();
  const double beta = 0.81;
  const std::vector<double> b{beta}, g{0.0};
  const Circuit c = build_qaoa_circuit(m, b, g, MixerVariant::kStandard);
  CMatrix x = m2(0, 1, 1, 0);
  const CMatrix rx = std::cos(beta) * CMatrix::Identity(2, 2) - I * std::sin(beta) * x;
  const CMatrix h = m2(1, 1, 1, -1) / std::sqrt(2.0);
  const CMatrix expected = Eigen::kroneckerProduct(rx, rx).eval() * Eigen::kroneckerProduct(h, h).eval();
  EXPECT_LT(oracle::phase_distance(reference_unitary(c), expected), 1e-12);
}

TEST(circuits, warm_variants_prep_and_mixer) {
  const IsingModel m = single_edge();
  const std::vector<double> b{0.4}, g{0.2}, th{0.5, 2.6};
  const Circuit wi = build_qaoa_circuit(m, b, g, MixerVariant::kWsInit, th);
  EXPECT_EQ(wi.gates()[0], Gate::ry(0, 0.5));
  EXPECT_EQ(wi.gates()[1], Gate::ry(1, 2.6));
  EXPECT_EQ(wi.count(GateKind::kRX), 2u);

  const Circuit ws = build_qaoa_circuit(m, b, g, MixerVariant::kWsQaoa, th);
  const auto& gs = ws.gates();
  ASSERT_EQ(gs.size(), 9u);
  EXPECT_EQ(gs[3], Gate::ry(0, -0.5));
  EXPECT_EQ(gs[4], Gate::rz(0, -0.8));
  EXPECT_EQ(gs[5], Gate::ry(0, 0.5));
  EXPECT_EQ(gs[6], Gate::ry(1, -2.6));

  EXPECT_THROW(build_qaoa_circuit(m, b, g, MixerVariant::kWsQaoa), ArgumentError);
  EXPECT_THROW(build_qaoa_circuit(m, b, g, MixerVariant::kStandard, th), ArgumentError);
  const std::vector<double> short_th{0.5};
  EXPECT_THROW(build_qaoa_circuit(m, b, g, MixerVariant::kWsInit, short_th), ArgumentError);
  const std::vector<double> two{0.1, 0.2};
  EXPECT_THROW(build_qaoa_circuit(m, two, g, MixerVariant::kStandard), ArgumentError);
}

TEST(circuits, zero_angles_leave_uniform_superposition) {
  const IsingModel m = encode(generate(ProblemKind::kMaxCut, 4, 9));
  const std::vector<double> z{0.0, 0.0};
  const auto p = statevector_probabilities(build_qaoa_circuit(m, z, z, MixerVariant::kStandard));
  for (double v : p) EXPECT_NEAR(v, 1.0 / 16.0, 1e-14);
}

TEST(circuits, misra_gries_witnesses) {
  const std::vector<Edge> k3{{0, 1}, {0, 2}, {1, 2}};
  expect_valid_coloring(3, k3);
  const auto c3 = misra_gries_coloring(3, k3);
  EXPECT_EQ(std::set<std::size_t>(c3.begin(), c3.end()).size(), 3u);

  const std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  expect_valid_coloring(5, star);
  const auto cs = misra_gries_coloring(5, star);
  EXPECT_EQ(std::set<std::size_t>(cs.begin(), cs.end()).size(), 4u);

  expect_valid_coloring(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  expect_valid_coloring(4, {});
  EXPECT_FALSE(is_proper_edge_coloring(3, k3, std::vector<std::size_t>{0, 0, 1}));
}

TEST(circuits, misra_gries_random_graphs) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = gen_graph(10, seed, 0.5);
    expect_valid_coloring(10, g.edges);
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) expect_valid_coloring(12, gen_graph(12, seed, 0.9).edges);
}

TEST(circuits, separator_depth_bounded_by_color_count) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = gen_graph(8, seed, 0.5);
    const IsingModel m = encode(inst);
    const std::vector<double> b{0.1}, g{0.2};
    Circuit seps(8);
    for (const auto& gate : build_qaoa_circuit(m, b, g, MixerVariant::kStandard).gates()) {
      if (gate.kind == GateKind::kRZZ) seps.add(gate);
    }
    const ScheduledCircuit s = schedule(transpile(seps), GateDurations{});
    const double slot = 2 * 400.0;
    EXPECT_LE(s.total_ns, slot * static_cast<double>(oracle::max_degree(8, inst.edges) + 1) + 1e-9);
  }
}

TEST(circuits, transpile_examples) {
  Circuit h(1);
  h.add(Gate::h(0));
  const Circuit th = transpile(h);
  ASSERT_EQ(th.size(), 3u);
  EXPECT_EQ(th.gates()[0].kind, GateKind::kRZ);
  EXPECT_EQ(th.gates()[1].kind, GateKind::kSX);
  EXPECT_EQ(th.gates()[2].kind, GateKind::kRZ);
  EXPECT_NEAR(std::remainder(th.gates()[0].theta - pi / 2, 2 * pi), 0.0, 1e-12);
  EXPECT_NEAR(std::remainder(th.gates()[2].theta - pi / 2, 2 * pi), 0.0, 1e-12);
  EXPECT_LT(oracle::phase_distance(reference_unitary(th), reference_unitary(h)), 1e-12);

  Circuit rz(1);
  rz.add(Gate::rz(0, 0.42));
  EXPECT_EQ(transpile(rz).gates(), rz.gates());

  Circuit rzz(2);
  rzz.add(Gate::rzz(0, 1, 0.9));
  const Circuit tz = transpile(rzz);
  EXPECT_EQ(tz.count(GateKind::kCX), 2u);
  EXPECT_EQ(tz.count(GateKind::kRZ), 1u);
}

TEST(circuits, transpile_preserves_unitary_on_random_circuits) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const Circuit c = random_circuit(n, 4 + trial % 20, rng, false);
    const Circuit t = transpile(c);
    for (const auto& g : t.gates()) EXPECT_TRUE(is_native(g.kind));
    EXPECT_LT(oracle::phase_distance(reference_unitary(t), reference_unitary(c)), 1e-9)
        << "trial " << trial;
  }
}

TEST(circuits, unitary_of_examples) {
  EXPECT_LT(oracle::max_abs(unitary_of(Circuit(2)) - CMatrix::Identity(4, 4)), 0.0 + 1e-300);
  Circuit x(1);
  x.add(Gate::x(0));
  EXPECT_LT(oracle::max_abs(unitary_of(x) - m2(0, 1, 1, 0)), 1e-15);
  EXPECT_THROW(unitary_of(Circuit(7)), CapacityError);
  std::mt19937_64 rng(4);
  const Circuit c = random_circuit(3, 15, rng, false);
  EXPECT_LT(oracle::max_abs(unitary_of(c) - reference_unitary(c)), 1e-12);
}

TEST(circuits, schedule_examples) {
  const GateDurations d = GateDurations::from(baseline_params());
  Circuit one(2);
  one.add(Gate::sx(0));
  const auto s1 = schedule(one, d);
  EXPECT_DOUBLE_EQ(s1.total_ns, 35.0);
  EXPECT_TRUE(s1.timelines[1].empty());

  Circuit two(2);
  two.add(Gate::sx(0)).add(Gate::cx(0, 1));
  const auto s2 = schedule(two, d);
  EXPECT_DOUBLE_EQ(s2.total_ns, 435.0);
  ASSERT_EQ(s2.timelines[1].size(), 2u);
  EXPECT_TRUE(s2.timelines[1][0].is_idle());
  EXPECT_DOUBLE_EQ(s2.timelines[1][0].duration_ns, 35.0);
  EXPECT_EQ(s2.timelines[1][1].gate_index, 1u);
  EXPECT_DOUBLE_EQ(s2.timelines[1][1].start_ns, 35.0);
  EXPECT_EQ(s2.idle_segment_count(), 1u);

  Circuit rz(3);
  rz.add(Gate::rz(0, 1.0)).add(Gate::rz(2, 2.0));
  EXPECT_DOUBLE_EQ(schedule(rz, d).total_ns, 0.0);

  Circuit logical(1);
  logical.add(Gate::h(0));
  EXPECT_THROW(schedule(logical, d), ArgumentError);
}

TEST(circuits, schedule_invariants_on_random_native_circuits) {
  std::mt19937_64 rng(17);
  const GateDurations d{};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const Circuit c = random_circuit(n, 30, rng, true);
    const auto s = schedule(c, d);
    ASSERT_EQ(s.gate_start_ns.size(), c.size());
    for (std::size_t q = 0; q < n; ++q) {
      const auto& tl = s.timelines[q];
      if (tl.empty()) continue;
      double t = 0.0;
      std::size_t last_gate = 0;
      bool seen = false;
      for (const auto& seg : tl) {
        EXPECT_NEAR(seg.start_ns, t, 1e-9);
        t = seg.start_ns + seg.duration_ns;
        if (!seg.is_idle()) {
          if (seen) {
            EXPECT_GT(seg.gate_index, last_gate);
          }
          last_gate = seg.gate_index;
          seen = true;
          EXPECT_DOUBLE_EQ(seg.start_ns, s.gate_start_ns[seg.gate_index]);
        }
      }
      EXPECT_NEAR(t, s.total_ns, 1e-9);
    }
    // every gate appears on each of its targets' timelines
    for (std::size_t gi = 0; gi < c.size(); ++gi) {
      for (auto q : c.gates()[gi].targets()) {
        const auto& tl = s.timelines[q];
        EXPECT_TRUE(std::any_of(tl.begin(), tl.end(), [&](const Segment& seg) {
          return seg.gate_index == gi;
        }));
      }
    }
  }
}

TEST(circuits, noise_insertion_counts) {
  std::mt19937_64 rng(31);
  const NoiseParams np = baseline_params();
  for (int trial = 0; trial < 50; ++trial) {
    const Circuit c = random_circuit(2 + trial % 4, 25, rng, true);
    const auto s = schedule(c, GateDurations::from(np));
    const auto noisy = insert_noise(s, np);
    EXPECT_EQ(noisy.count(ChannelRole::kGateThermal),
              c.count(GateKind::kSX) + 2 * c.count(GateKind::kCX));
    EXPECT_EQ(noisy.count(ChannelRole::kIdleThermal), s.idle_segment_count());
    EXPECT_EQ(noisy.count(ChannelRole::kGateDepolarizing),
              c.count(GateKind::kSX) + c.count(GateKind::kCX));
    for (std::size_t k = 1; k < noisy.channels.size(); ++k) {
      EXPECT_LE(noisy.channels[k - 1].position, noisy.channels[k].position);
    }
    for (const auto& ch : noisy.channels) EXPECT_TRUE(ch.channel->is_trace_preserving());
  }

  Circuit rz(2);
  rz.add(Gate::rz(0, 0.3)).add(Gate::rz(1, 0.3));
  EXPECT_TRUE(compile_noisy(rz, np).channels.empty());
}

TEST(circuits, single_sx_noise_matches_gate_error) {
  Circuit c(1);
  c.add(Gate::sx(0));
  const auto noisy = compile_noisy(c, baseline_params());
  ASSERT_EQ(noisy.channels.size(), 2u);
  EXPECT_EQ(noisy.channels[0].role, ChannelRole::kGateThermal);
  EXPECT_EQ(noisy.channels[1].role, ChannelRole::kGateDepolarizing);
  const auto combined = compose(*noisy.channels[0].channel, *noisy.channels[1].channel);
  EXPECT_NEAR(average_fidelity(combined), 1.0 - 0.0003, 1e-9);
}

TEST(circuits, zero_scale_noise_matches_noiseless_simulation) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const Circuit c = random_circuit(4, 20, rng, false);
    const auto noisy = compile_noisy(c, noiseless_params());
    const CMatrix u = reference_unitary(c);
    Eigen::VectorXcd psi = u.col(0);
    const oracle::Storage expected = psi * psi.adjoint();
    EXPECT_LT(oracle::max_abs(simulate(noisy).matrix() - expected), 1e-12);
    EXPECT_LT(oracle::max_abs(simulate(c).matrix() - expected), 1e-12);
    const auto probs = statevector_probabilities(c);
    for (std::size_t x = 0; x < probs.size(); ++x) EXPECT_NEAR(probs[x], std::norm(psi(x)), 1e-12);
  }
}

TEST(circuits, full_depolarizing_override_gives_maximally_mixed_state) {
  const IsingModel m = encode(generate(ProblemKind::kMaxCut, 4, 2));
  const std::vector<double> b{0.3}, g{1.1};
  NoiseParams np = scale_params(baseline_params(), 1.0, 0.0);
  np.depol_override = 1.0;
  const auto rho = simulate(compile_noisy(build_qaoa_circuit(m, b, g, MixerVariant::kStandard), np));
  EXPECT_LT(oracle::max_abs(rho.matrix() - oracle::Storage::Identity(16, 16) / 16.0), 1e-12);
}

TEST(circuits, fused_and_sequential_simulation_agree) {
  std::mt19937_64 rng(12);
  NoiseParams np = scale_params(baseline_params(), 20.0, 30.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Circuit c = random_circuit(2 + trial % 4, 40, rng, false);
    const auto noisy = compile_noisy(c, np);
    const StatePrep prep = trial % 2 ? StatePrep::uniform_plus() : StatePrep::all_zero();
    const auto a = simulate(noisy, prep, true);
    const auto b = simulate(noisy, prep, false);
    EXPECT_LT(a.max_abs_diff(b), 1e-12);
  }
}

TEST(circuits, noisy_cut_expectation_below_noiseless_at_good_angles) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = gen_graph(5, 300 + seed, 0.5);
    if (inst.edges.empty()) continue;
    const IsingModel m = encode(inst);
    const auto table = m.energy_table();
    auto cut_of = [&](const std::vector<double>& probs) {
      double e = 0.0;
      for (std::size_t x = 0; x < probs.size(); ++x) e += probs[x] * -table[x];
      return e;
    };
    double best = -1.0;
    std::vector<double> bb{0.0}, gg{0.0};
    for (int i = 0; i < 16; ++i) {
      for (int j = 0; j < 16; ++j) {
        const std::vector<double> b{pi * i / 16}, g{2 * pi * j / 16};
        const double v = cut_of(statevector_probabilities(build_qaoa_circuit(m, b, g, MixerVariant::kStandard)));
        if (v > best) best = v, bb = b, gg = g;
      }
    }
    const auto logical = build_qaoa_circuit(m, bb, gg, MixerVariant::kStandard);
    const double noisy = cut_of(measurement_probabilities(simulate(compile_noisy(logical, baseline_params()))));
    EXPECT_LE(noisy, best) << "seed " << seed;
  }
}

TEST(circuits, text_dump_round_trip) {
  std::mt19937_64 rng(5);
  const Circuit c = random_circuit(4, 30, rng, false);
  std::stringstream ss;
  write_circuit_text(ss, c);
  const std::string text = ss.str();
  EXPECT_EQ(text.rfind("GATE ", 0), 0u);
  const Circuit back = read_circuit_text(ss, 4);
  ASSERT_EQ(back.size(), c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    EXPECT_EQ(back.gates()[k].kind, c.gates()[k].kind);
    EXPECT_EQ(back.gates()[k].qubits, c.gates()[k].qubits);
    EXPECT_EQ(back.gates()[k].theta, c.gates()[k].theta);
  }
  std::istringstream bad("GATE FOO 0\n");
  EXPECT_THROW(read_circuit_text(bad, 1), ArgumentError);
}

TEST(circuits, schedule_csv_layout) {
  Circuit two(2);
  two.add(Gate::sx(0)).add(Gate::cx(0, 1));
  std::stringstream ss;
  write_schedule_csv(ss, schedule(two, GateDurations{}));
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, "qubit,start_ns,duration_ns,label");
  std::size_t rows = 0;
  while (std::getline(ss, line)) ++rows;
  EXPECT_EQ(rows, 4u);
}
