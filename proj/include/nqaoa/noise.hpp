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
#include <optional>
#include <random>
#include <string>

#include "nqaoa/densim.hpp"

namespace nqaoa {

struct GateNoise {
  double error = 0.0;        // 1 - average fidelity
  double duration_ns = 0.0;

  friend bool operator==(const GateNoise&, const GateNoise&) = default;
};

/// Transmon-style noise model shared by every qubit.
struct NoiseParams {
  double t1_ns = 100'000.0;
  double t2_ns = 150'000.0;
  GateNoise rz{0.0, 0.0};
  GateNoise sx{0.0003, 35.0};
  GateNoise cx{0.01, 400.0};
  double measure_duration_ns = 4'090.0;
  double d_depol = 1.0;    // multiplies every depolarizing probability
  double d_thermal = 1.0;  // multiplies every relaxation time argument
  /// Replaces every depolarizing probability when set (diagnostics only).
  std::optional<double> depol_override;

  /// Throws ModelError / ArgumentError on inadmissible values.
  void validate() const;

  friend bool operator==(const NoiseParams&, const NoiseParams&) = default;
};

NoiseParams baseline_params();

/// Baseline with both noise sources switched off.
NoiseParams noiseless_params();

/// Copy of `base` carrying the given scale factors.
NoiseParams scale_params(const NoiseParams& base, double d_depol, double d_thermal);

/// Amplitude damping toward |0> (population factor e^{-t/T1}) followed by
/// pure dephasing so the coherence factor is e^{-t/T2} in total.
KrausChannel thermal_channel(double t1_ns, double t2_ns, double t_ns);

/// 1/2 + (2 e^{-t/T2} + e^{-t/T1}) / 6.
double thermal_avg_fidelity(double t1_ns, double t2_ns, double t_ns);

/// E(rho) = (1 - p) rho + p I / 2^arity, Kraus form over the Pauli basis.
KrausChannel depolarizing_channel(std::size_t arity, double p);

/// 1 - p (1 - 2^-arity).
double depolarizing_avg_fidelity(std::size_t arity, double p);

struct DepolMatch {
  double probability = 0.0;
  /// Relaxation alone already exceeds the allowed infidelity.
  bool budget_exceeded = false;
};

/// Depolarizing probability that, applied after a channel of average
/// fidelity `thermal_fidelity`, yields `target_fidelity` overall.
DepolMatch match_depol_probability(double target_fidelity, double thermal_fidelity,
                                   std::size_t arity);

/// Average fidelity of the product of two identical one-qubit relaxation
/// channels (one per CX operand).
double thermal_pair_avg_fidelity(double t1_ns, double t2_ns, double t_ns);

/// Matched, scaled depolarizing probabilities for the noisy native gates.
double sx_depol_probability(const NoiseParams& np);
double cx_depol_probability(const NoiseParams& np);

/// Exact Haar-average fidelity via the entanglement fidelity,
/// F = (d F_e + 1) / (d + 1), F_e = sum_k |tr K_k|^2 / d^2.
double average_fidelity(const KrausChannel& channel);

/// Haar Monte-Carlo estimate of <psi| E(|psi><psi|) |psi>.
double monte_carlo_avg_fidelity(const KrausChannel& channel, std::size_t samples,
                                std::mt19937_64& rng);

struct FidelityReport {
  std::string channel_id;
  double analytic = 0.0;
  double monte_carlo = 0.0;
  std::size_t samples = 0;
};

FidelityReport fidelity_report(std::string channel_id, const KrausChannel& channel,
                               double analytic, std::size_t samples,
                               std::mt19937_64& rng);

void to_json(nlohmann::json& j, const NoiseParams& np);
void from_json(const nlohmann::json& j, NoiseParams& np);

}  // namespace nqaoa
