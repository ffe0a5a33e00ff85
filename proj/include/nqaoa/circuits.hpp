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

#include <array>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "nqaoa/densim.hpp"
#include "nqaoa/ising.hpp"
#include "nqaoa/noise.hpp"

namespace nqaoa {

enum class GateKind { kRZ, kSX, kX, kH, kRX, kRY, kRZZ, kCX };

std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_kind_from_name(std::string_view name);
std::size_t gate_arity(GateKind kind);
bool is_parametric(GateKind kind);
/// RZ, SX and CX.
bool is_native(GateKind kind);

/// For CX, qubits[0] is the control and qubits[1] the target.
struct Gate {
  GateKind kind = GateKind::kRZ;
  std::array<std::size_t, 2> qubits{0, 0};
  double theta = 0.0;

  std::span<const std::size_t> targets() const {
    return {qubits.data(), gate_arity(kind)};
  }

  static Gate rz(std::size_t q, double theta) { return {GateKind::kRZ, {q, 0}, theta}; }
  static Gate sx(std::size_t q) { return {GateKind::kSX, {q, 0}, 0.0}; }
  static Gate x(std::size_t q) { return {GateKind::kX, {q, 0}, 0.0}; }
  static Gate h(std::size_t q) { return {GateKind::kH, {q, 0}, 0.0}; }
  static Gate rx(std::size_t q, double theta) { return {GateKind::kRX, {q, 0}, theta}; }
  static Gate ry(std::size_t q, double theta) { return {GateKind::kRY, {q, 0}, theta}; }
  static Gate rzz(std::size_t a, std::size_t b, double theta) {
    return {GateKind::kRZZ, {a, b}, theta};
  }
  static Gate cx(std::size_t control, std::size_t target) {
    return {GateKind::kCX, {control, target}, 0.0};
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Unitary of a gate in the library's local-index convention (see densim.hpp).
CMatrix gate_matrix(const Gate& gate);

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t n) : n_(n) {}

  std::size_t num_qubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  /// Throws ArgumentError for out-of-range or repeated targets.
  Circuit& add(const Gate& gate);

  std::size_t count(GateKind kind) const;

 private:
  std::size_t n_ = 0;
  std::vector<Gate> gates_;
};

// -- QAOA construction ------------------------------------------------------

enum class MixerVariant { kStandard, kWsInit, kWsQaoa };

/// Separator layers implement exp(-i gamma H_C) with H_C|x> = C(spins(x))|x>
/// (offset dropped as a global phase), mixers exp(-i beta sum X) for the
/// standard and ws-init variants, and RY(-theta) RZ(-2 beta) RY(theta) per
/// qubit (time order) for wsqaoa.
Circuit build_qaoa_circuit(const IsingModel& model, std::span<const double> betas,
                           std::span<const double> gammas, MixerVariant variant,
                           std::optional<std::span<const double>> warm_thetas = {});

using Edge = std::pair<std::size_t, std::size_t>;

/// Proper edge coloring with at most max-degree + 1 colors (fan rotation and
/// cd-path inversion). Colors are returned in input edge order.
std::vector<std::size_t> misra_gries_coloring(std::size_t n, std::span<const Edge> edges);

/// True iff incident edges never share a color.
bool is_proper_edge_coloring(std::size_t n, std::span<const Edge> edges,
                             std::span<const std::size_t> colors);

// -- Transpilation ----------------------------------------------------------

/// Lowers to {RZ, SX, CX}: single-qubit gates through the ZXZXZ template
/// RZ . SX . RZ . SX . RZ (shortened when the Euler angle allows),
/// RZZ(t) -> CX . RZ(t) . CX, then merges adjacent RZs per qubit.
/// Equal to the input up to global phase.
Circuit transpile(const Circuit& circuit);

// -- Scheduling -------------------------------------------------------------

struct GateDurations {
  double rz_ns = 0.0;
  double sx_ns = 35.0;
  double cx_ns = 400.0;

  static GateDurations from(const NoiseParams& np) {
    return {np.rz.duration_ns, np.sx.duration_ns, np.cx.duration_ns};
  }
  double of(GateKind kind) const;
};

struct Segment {
  static constexpr std::size_t kIdle = static_cast<std::size_t>(-1);

  std::size_t gate_index = kIdle;  // kIdle for idle periods
  double start_ns = 0.0;
  double duration_ns = 0.0;

  bool is_idle() const { return gate_index == kIdle; }
};

/// Qubits never touched by a gate have an empty timeline; every other
/// timeline covers [0, total_ns] without gaps.
struct ScheduledCircuit {
  Circuit circuit;
  std::vector<std::vector<Segment>> timelines;
  std::vector<double> gate_start_ns;
  double total_ns = 0.0;

  std::size_t idle_segment_count() const;
};

/// As-soon-as-possible list schedule of a native circuit.
ScheduledCircuit schedule(const Circuit& native, const GateDurations& durations);

// -- Noise insertion --------------------------------------------------------

enum class ChannelRole { kGateThermal, kGateDepolarizing, kIdleThermal };

struct InsertedChannel {
  std::shared_ptr<const KrausChannel> channel;
  std::array<std::size_t, 2> qubits{0, 0};
  /// Applied after gates [0, position) and before gate `position`.
  std::size_t position = 0;
  ChannelRole role = ChannelRole::kGateThermal;

  std::span<const std::size_t> targets() const {
    return {qubits.data(), channel->arity()};
  }
};

struct NoisyCircuit {
  ScheduledCircuit base;
  /// Nondecreasing in position; per-qubit order matches the timelines.
  std::vector<InsertedChannel> channels;

  std::size_t count(ChannelRole role) const;
};

NoisyCircuit insert_noise(const ScheduledCircuit& scheduled, const NoiseParams& np);

/// Transpile, schedule with np's durations, insert np's channels.
NoisyCircuit compile_noisy(const Circuit& logical, const NoiseParams& np);

// -- Evaluation -------------------------------------------------------------

/// Product of embedded gate matrices in circuit order; n <= 6.
CMatrix unitary_of(const Circuit& circuit);

/// Largest entrywise deviation between a and b after removing the best
/// global phase.
double phase_insensitive_distance(const CMatrix& a, const CMatrix& b);

DensityMatrix simulate(const Circuit& circuit,
                       const StatePrep& prep = StatePrep::all_zero());
/// With `fuse`, runs of operations on the same one or two qubits are
/// combined into single superoperators before touching the state.
DensityMatrix simulate(const NoisyCircuit& circuit,
                       const StatePrep& prep = StatePrep::all_zero(), bool fuse = true);

/// Pure-state evolution from |0...0>; measurement probabilities of the
/// result. Agrees with simulate() for circuits without channels.
std::vector<double> statevector_probabilities(const Circuit& circuit);

// -- Debug dumps ------------------------------------------------------------

/// One `GATE kind targets [theta]` line per gate.
void write_circuit_text(std::ostream& out, const Circuit& circuit);
Circuit read_circuit_text(std::istream& in, std::size_t n);
/// CSV rows: qubit,start_ns,duration_ns,label.
void write_schedule_csv(std::ostream& out, const ScheduledCircuit& scheduled);

}  // namespace nqaoa
