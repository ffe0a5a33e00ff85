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

#include <cmath>
#include <numbers>

#include "nqaoa/circuits.hpp"
#include "nqaoa/errors.hpp"

namespace nqaoa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleTol = 1e-12;

/// Wraps to (-pi, pi]; RZ angles differing by 2 pi agree up to global phase.
double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

/// u = e^{i alpha} RZ(phi) RY(theta) RZ(lambda), theta in [0, pi].
struct ZyzAngles {
  double phi;
  double theta;
  double lambda;
};

ZyzAngles zyz_angles(const CMatrix& u) {
  const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  const Complex s = std::sqrt(det);
  const Complex a = u(0, 0) / s;
  const Complex b = u(1, 0) / s;
  const double theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  const double arg_a = std::abs(a) > kAngleTol ? std::arg(a) : 0.0;
  const double arg_b = std::abs(b) > kAngleTol ? std::arg(b) : 0.0;
  return {arg_b - arg_a, theta, -arg_a - arg_b};
}

class NativeBuilder {
 public:
  explicit NativeBuilder(std::size_t n) : out_(n), pending_rz_(n, kNone) {}

  void rz(std::size_t q, double theta) {
    if (pending_rz_[q] != kNone) {
      gates_[pending_rz_[q]].theta += theta;
      return;
    }
    pending_rz_[q] = gates_.size();
    gates_.push_back(Gate::rz(q, theta));
  }

  void sx(std::size_t q) {
    pending_rz_[q] = kNone;
    gates_.push_back(Gate::sx(q));
  }

  void cx(std::size_t c, std::size_t t) {
    pending_rz_[c] = kNone;
    pending_rz_[t] = kNone;
    gates_.push_back(Gate::cx(c, t));
  }

  void single_qubit(std::size_t q, const CMatrix& u) {
    const auto [phi, theta, lambda] = zyz_angles(u);
    if (theta < kAngleTol) {
      rz(q, phi + lambda);
    } else if (std::abs(theta - kPi / 2) < kAngleTol) {
      rz(q, lambda - kPi / 2);
      sx(q);
      rz(q, phi + kPi / 2);
    } else {
      rz(q, lambda);
      sx(q);
      rz(q, theta + kPi);
      sx(q);
      rz(q, phi + kPi);
    }
  }

  Circuit finish() && {
    for (auto& g : gates_) {
      if (g.kind == GateKind::kRZ) {
        g.theta = wrap_angle(g.theta);
        if (std::abs(g.theta) < kAngleTol) continue;
      }
      out_.add(g);
    }
    return std::move(out_);
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  Circuit out_;
  std::vector<Gate> gates_;
  std::vector<std::size_t> pending_rz_;
};

}  // namespace

Circuit transpile(const Circuit& circuit) {
  NativeBuilder b(circuit.num_qubits());
  for (const auto& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::kRZ:
        b.rz(g.qubits[0], g.theta);
        break;
      case GateKind::kSX:
        b.sx(g.qubits[0]);
        break;
      case GateKind::kCX:
        b.cx(g.qubits[0], g.qubits[1]);
        break;
      case GateKind::kX:
      case GateKind::kH:
      case GateKind::kRX:
      case GateKind::kRY:
        b.single_qubit(g.qubits[0], gate_matrix(g));
        break;
      case GateKind::kRZZ:
        b.cx(g.qubits[0], g.qubits[1]);
        b.rz(g.qubits[1], g.theta);
        b.cx(g.qubits[0], g.qubits[1]);
        break;
      default:
        throw TranspileError(fmt::format("cannot transpile gate kind {}",
                                         static_cast<int>(g.kind)));
    }
  }
  return std::move(b).finish();
}

}  // namespace nqaoa
