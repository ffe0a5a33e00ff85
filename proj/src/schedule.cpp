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

#include "nqaoa/circuits.hpp"
#include "nqaoa/errors.hpp"

namespace nqaoa {

namespace {
// Gaps shorter than this are rounding noise, not idle periods.
constexpr double kGapTol = 1e-9;
}  // namespace

std::size_t ScheduledCircuit::idle_segment_count() const {
  std::size_t k = 0;
  for (const auto& t : timelines) {
    for (const auto& s : t) k += s.is_idle() ? 1 : 0;
  }
  return k;
}

ScheduledCircuit schedule(const Circuit& native, const GateDurations& durations) {
  const std::size_t n = native.num_qubits();
  ScheduledCircuit s;
  s.circuit = native;
  s.timelines.assign(n, {});
  s.gate_start_ns.reserve(native.size());
  std::vector<double> free_at(n, 0.0);

  for (std::size_t gi = 0; gi < native.size(); ++gi) {
    const Gate& g = native.gates()[gi];
    if (!is_native(g.kind)) {
      throw ArgumentError(
          fmt::format("cannot schedule non-native gate {}", gate_name(g.kind)));
    }
    const double dur = durations.of(g.kind);
    double start = 0.0;
    for (auto q : g.targets()) start = std::max(start, free_at[q]);
    for (auto q : g.targets()) {
      auto& line = s.timelines[q];
      if (start - free_at[q] > kGapTol) {
        line.push_back({Segment::kIdle, free_at[q], start - free_at[q]});
      }
      line.push_back({gi, start, dur});
      free_at[q] = start + dur;
    }
    s.gate_start_ns.push_back(start);
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (!s.timelines[q].empty()) s.total_ns = std::max(s.total_ns, free_at[q]);
  }
  for (std::size_t q = 0; q < n; ++q) {
    auto& line = s.timelines[q];
    if (!line.empty() && s.total_ns - free_at[q] > kGapTol) {
      line.push_back({Segment::kIdle, free_at[q], s.total_ns - free_at[q]});
    }
  }
  return s;
}

std::size_t NoisyCircuit::count(ChannelRole role) const {
  return static_cast<std::size_t>(std::count_if(
      channels.begin(), channels.end(),
      [role](const InsertedChannel& c) { return c.role == role; }));
}

NoisyCircuit insert_noise(const ScheduledCircuit& scheduled, const NoiseParams& np) {
  np.validate();
  const std::size_t num_gates = scheduled.circuit.size();
  const std::size_t n = scheduled.circuit.num_qubits();

  const auto sx_thermal = std::make_shared<const KrausChannel>(
      thermal_channel(np.t1_ns, np.t2_ns, np.sx.duration_ns * np.d_thermal));
  const auto cx_thermal = std::make_shared<const KrausChannel>(
      thermal_channel(np.t1_ns, np.t2_ns, np.cx.duration_ns * np.d_thermal));
  const auto sx_depol =
      std::make_shared<const KrausChannel>(depolarizing_channel(1, sx_depol_probability(np)));
  const auto cx_depol =
      std::make_shared<const KrausChannel>(depolarizing_channel(2, cx_depol_probability(np)));

  // idle_before[g]: (qubit, duration) of idle periods ending at gate g; the
  // entry at num_gates holds the trailing idles before measurement.
  std::vector<std::vector<std::pair<std::size_t, double>>> idle_before(num_gates + 1);
  for (std::size_t q = 0; q < n; ++q) {
    const auto& line = scheduled.timelines[q];
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (!line[k].is_idle()) continue;
      const std::size_t next = k + 1 < line.size() ? line[k + 1].gate_index : num_gates;
      idle_before[next].emplace_back(q, line[k].duration_ns);
    }
  }

  NoisyCircuit out;
  out.base = scheduled;
  auto emit = [&](std::shared_ptr<const KrausChannel> ch, std::size_t q0, std::size_t q1,
                  std::size_t pos, ChannelRole role) {
    out.channels.push_back({std::move(ch), {q0, q1}, pos, role});
  };
  auto emit_idles = [&](std::size_t pos) {
    for (const auto& [q, dur] : idle_before[pos]) {
      emit(std::make_shared<const KrausChannel>(
               thermal_channel(np.t1_ns, np.t2_ns, dur * np.d_thermal)),
           q, 0, pos, ChannelRole::kIdleThermal);
    }
  };

  for (std::size_t gi = 0; gi < num_gates; ++gi) {
    emit_idles(gi);
    const Gate& g = scheduled.circuit.gates()[gi];
    switch (g.kind) {
      case GateKind::kRZ:
        break;  // virtual
      case GateKind::kSX:
        emit(sx_thermal, g.qubits[0], 0, gi + 1, ChannelRole::kGateThermal);
        emit(sx_depol, g.qubits[0], 0, gi + 1, ChannelRole::kGateDepolarizing);
        break;
      case GateKind::kCX:
        emit(cx_thermal, g.qubits[0], 0, gi + 1, ChannelRole::kGateThermal);
        emit(cx_thermal, g.qubits[1], 0, gi + 1, ChannelRole::kGateThermal);
        emit(cx_depol, g.qubits[0], g.qubits[1], gi + 1, ChannelRole::kGateDepolarizing);
        break;
      default:
        throw ArgumentError(
            fmt::format("noise insertion needs native gates, found {}", gate_name(g.kind)));
    }
  }
  emit_idles(num_gates);
  return out;
}

NoisyCircuit compile_noisy(const Circuit& logical, const NoiseParams& np) {
  return insert_noise(schedule(transpile(logical), GateDurations::from(np)), np);
}

}  // namespace nqaoa
