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

#include "nqaoa/noise.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>

#include "nqaoa/errors.hpp"
#include "nqaoa/log.hpp"

namespace nqaoa {

namespace {

void check_time(double value, const char* what, bool strictly_positive) {
  if (!std::isfinite(value) || value < 0.0 || (strictly_positive && value == 0.0)) {
    throw ArgumentError(fmt::format("{} must be {} and finite, got {}", what,
                                    strictly_positive ? "positive" : "non-negative",
                                    value));
  }
}

void check_relaxation(double t1, double t2) {
  check_time(t1, "T1", true);
  check_time(t2, "T2", true);
  if (t2 > 2.0 * t1) {
    throw ModelError(
        fmt::format("T2 = {} ns exceeds 2 T1 = {} ns; relaxation would not be CP", t2,
                    2.0 * t1));
  }
}

void check_scale(double d, const char* what) {
  if (!std::isfinite(d) || d < 0.0) {
    throw ArgumentError(fmt::format("{} must be a non-negative number, got {}", what, d));
  }
}

std::array<CMatrix, 4> paulis() {
  const Complex i{0.0, 1.0};
  CMatrix id = CMatrix::Identity(2, 2);
  CMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  return {id, x, y, z};
}

}  // namespace

void NoiseParams::validate() const {
  check_relaxation(t1_ns, t2_ns);
  for (const auto* g : {&rz, &sx, &cx}) {
    if (!(g->error >= 0.0 && g->error < 1.0)) {
      throw ArgumentError(fmt::format("gate error {} outside [0, 1)", g->error));
    }
    check_time(g->duration_ns, "gate duration", false);
  }
  check_time(measure_duration_ns, "measurement duration", false);
  check_scale(d_depol, "d_depol");
  check_scale(d_thermal, "d_thermal");
  if (depol_override && !(*depol_override >= 0.0 && *depol_override <= 1.0)) {
    throw ArgumentError("depolarizing override outside [0, 1]");
  }
}

NoiseParams baseline_params() { return NoiseParams{}; }

NoiseParams noiseless_params() { return scale_params(baseline_params(), 0.0, 0.0); }

NoiseParams scale_params(const NoiseParams& base, double d_depol, double d_thermal) {
  check_scale(d_depol, "d_depol");
  check_scale(d_thermal, "d_thermal");
  NoiseParams out = base;
  out.d_depol = d_depol;
  out.d_thermal = d_thermal;
  return out;
}

KrausChannel thermal_channel(double t1_ns, double t2_ns, double t_ns) {
  check_relaxation(t1_ns, t2_ns);
  check_time(t_ns, "relaxation time", false);
  const double keep = std::exp(-t_ns / t1_ns);  // excited population factor
  const double gamma = 1.0 - keep;
  // Amplitude damping leaves coherences scaled by sqrt(keep); dephasing
  // supplies the rest of e^{-t/T2}.
  const double mu = std::exp(-t_ns / t2_ns + t_ns / (2.0 * t1_ns));

  CMatrix k0(2, 2), k1(2, 2);
  k0 << 1, 0, 0, std::sqrt(keep);
  k1 << 0, std::sqrt(gamma), 0, 0;
  const auto p = paulis();
  const double a = std::sqrt((1.0 + mu) / 2.0);
  const double b = std::sqrt(std::max(0.0, (1.0 - mu) / 2.0));
  std::vector<CMatrix> ops;
  for (const CMatrix* k : {&k0, &k1}) {
    ops.emplace_back(a * *k);
    ops.emplace_back(b * (p[3] * *k));
  }
  return KrausChannel(std::move(ops));
}

double thermal_avg_fidelity(double t1_ns, double t2_ns, double t_ns) {
  check_relaxation(t1_ns, t2_ns);
  check_time(t_ns, "relaxation time", false);
  return 0.5 + (2.0 * std::exp(-t_ns / t2_ns) + std::exp(-t_ns / t1_ns)) / 6.0;
}

double thermal_pair_avg_fidelity(double t1_ns, double t2_ns, double t_ns) {
  const double f1 = thermal_avg_fidelity(t1_ns, t2_ns, t_ns);
  const double fe1 = (3.0 * f1 - 1.0) / 2.0;
  return (4.0 * fe1 * fe1 + 1.0) / 5.0;
}

KrausChannel depolarizing_channel(std::size_t arity, double p) {
  if (arity != 1 && arity != 2) throw ArgumentError("depolarizing arity must be 1 or 2");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ArgumentError(fmt::format("depolarizing probability {} outside [0, 1]", p));
  }
  const auto pa = paulis();
  const double d2 = arity == 1 ? 4.0 : 16.0;
  const double w_id = std::sqrt(1.0 - p * (d2 - 1.0) / d2);
  const double w = std::sqrt(p / d2);
  std::vector<CMatrix> ops;
  if (arity == 1) {
    for (std::size_t k = 0; k < 4; ++k) ops.emplace_back((k == 0 ? w_id : w) * pa[k]);
    return KrausChannel(std::move(ops));
  }
  for (std::size_t hi = 0; hi < 4; ++hi) {
    for (std::size_t lo = 0; lo < 4; ++lo) {
      CMatrix m(4, 4);
      for (Eigen::Index r = 0; r < 4; ++r)
        for (Eigen::Index c = 0; c < 4; ++c)
          m(r, c) = pa[hi](r / 2, c / 2) * pa[lo](r % 2, c % 2);
      ops.emplace_back((hi == 0 && lo == 0 ? w_id : w) * m);
    }
  }
  return KrausChannel(std::move(ops));
}

double depolarizing_avg_fidelity(std::size_t arity, double p) {
  if (arity != 1 && arity != 2) throw ArgumentError("depolarizing arity must be 1 or 2");
  const double d = arity == 1 ? 2.0 : 4.0;
  return 1.0 - p * (1.0 - 1.0 / d);
}

DepolMatch match_depol_probability(double target_fidelity, double thermal_fidelity,
                                   std::size_t arity) {
  if (arity != 1 && arity != 2) throw ArgumentError("arity must be 1 or 2");
  const double lower = std::ldexp(1.0, -2 * static_cast<int>(arity));
  for (double f : {target_fidelity, thermal_fidelity}) {
    if (!(f > lower && f <= 1.0 + 1e-15)) {
      throw ArgumentError(
          fmt::format("fidelity {} outside ({}, 1] for arity {}", f, lower, arity));
    }
  }
  if (thermal_fidelity < target_fidelity) {
    log::warning(fmt::format(
        "relaxation alone gives fidelity {:.9f} below target {:.9f}; no depolarizing "
        "noise added",
        thermal_fidelity, target_fidelity));
    return {0.0, true};
  }
  // (1 - p) F_T + p / d = F_target
  const double d = std::ldexp(1.0, static_cast<int>(arity));
  const double denom = thermal_fidelity - 1.0 / d;
  if (denom <= 0.0) return {thermal_fidelity > target_fidelity ? 1.0 : 0.0, false};
  const double p = (thermal_fidelity - target_fidelity) / denom;
  return {std::clamp(p, 0.0, 1.0), false};
}

namespace {
double scaled_probability(const NoiseParams& np, double base) {
  if (np.depol_override) return *np.depol_override;
  return std::min(1.0, base * np.d_depol);
}
}  // namespace

double sx_depol_probability(const NoiseParams& np) {
  const double thermal = thermal_avg_fidelity(np.t1_ns, np.t2_ns, np.sx.duration_ns);
  const auto m = match_depol_probability(1.0 - np.sx.error, thermal, 1);
  return scaled_probability(np, m.probability);
}

double cx_depol_probability(const NoiseParams& np) {
  const double thermal = thermal_pair_avg_fidelity(np.t1_ns, np.t2_ns, np.cx.duration_ns);
  const auto m = match_depol_probability(1.0 - np.cx.error, thermal, 2);
  return scaled_probability(np, m.probability);
}

double average_fidelity(const KrausChannel& channel) {
  const double d = static_cast<double>(channel.local_dim());
  double fe = 0.0;
  for (const auto& k : channel.kraus_ops()) fe += std::norm(k.trace());
  fe /= d * d;
  return (d * fe + 1.0) / (d + 1.0);
}

double monte_carlo_avg_fidelity(const KrausChannel& channel, std::size_t samples,
                                std::mt19937_64& rng) {
  if (samples == 0) throw ArgumentError("need at least one Monte-Carlo sample");
  const auto d = static_cast<Eigen::Index>(channel.local_dim());
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd psi(d);
  double acc = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < d; ++i) psi(i) = Complex{gauss(rng), gauss(rng)};
    psi.normalize();
    double f = 0.0;
    for (const auto& k : channel.kraus_ops()) f += std::norm(psi.dot(k * psi));
    acc += f;
  }
  return acc / static_cast<double>(samples);
}

FidelityReport fidelity_report(std::string channel_id, const KrausChannel& channel,
                               double analytic, std::size_t samples,
                               std::mt19937_64& rng) {
  return {std::move(channel_id), analytic,
          monte_carlo_avg_fidelity(channel, samples, rng), samples};
}

void to_json(nlohmann::json& j, const NoiseParams& np) {
  auto gate = [](const GateNoise& g) {
    return nlohmann::json{{"error", g.error}, {"duration_ns", g.duration_ns}};
  };
  j = nlohmann::json{{"t1_ns", np.t1_ns},
                     {"t2_ns", np.t2_ns},
                     {"gates", {{"rz", gate(np.rz)}, {"sx", gate(np.sx)}, {"cx", gate(np.cx)}}},
                     {"measure_duration_ns", np.measure_duration_ns},
                     {"d_depol", np.d_depol},
                     {"d_thermal", np.d_thermal}};
  if (np.depol_override) j["depol_override"] = *np.depol_override;
}

void from_json(const nlohmann::json& j, NoiseParams& np) {
  np = baseline_params();
  np.t1_ns = j.value("t1_ns", np.t1_ns);
  np.t2_ns = j.value("t2_ns", np.t2_ns);
  if (j.contains("gates")) {
    const auto& g = j.at("gates");
    auto read = [&](const char* key, GateNoise& out) {
      if (!g.contains(key)) return;
      out.error = g.at(key).value("error", out.error);
      out.duration_ns = g.at(key).value("duration_ns", out.duration_ns);
    };
    read("rz", np.rz);
    read("sx", np.sx);
    read("cx", np.cx);
  }
  np.measure_duration_ns = j.value("measure_duration_ns", np.measure_duration_ns);
  np.d_depol = j.value("d_depol", np.d_depol);
  np.d_thermal = j.value("d_thermal", np.d_thermal);
  if (j.contains("depol_override") && !j.at("depol_override").is_null()) {
    np.depol_override = j.at("depol_override").get<double>();
  }
  np.validate();
}

}  // namespace nqaoa
