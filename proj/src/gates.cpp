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

#include "nqaoa/circuits.hpp"
#include "nqaoa/errors.hpp"

namespace nqaoa {

namespace {
constexpr std::array<std::pair<GateKind, std::string_view>, 8> kNames{{
    {GateKind::kRZ, "RZ"},
    {GateKind::kSX, "SX"},
    {GateKind::kX, "X"},
    {GateKind::kH, "H"},
    {GateKind::kRX, "RX"},
    {GateKind::kRY, "RY"},
    {GateKind::kRZZ, "RZZ"},
    {GateKind::kCX, "CX"},
}};
}  // namespace

std::string_view gate_name(GateKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::size_t gate_arity(GateKind kind) {
  return kind == GateKind::kRZZ || kind == GateKind::kCX ? 2 : 1;
}

bool is_parametric(GateKind kind) {
  switch (kind) {
    case GateKind::kRZ:
    case GateKind::kRX:
    case GateKind::kRY:
    case GateKind::kRZZ:
      return true;
    default:
      return false;
  }
}

bool is_native(GateKind kind) {
  return kind == GateKind::kRZ || kind == GateKind::kSX || kind == GateKind::kCX;
}

CMatrix gate_matrix(const Gate& gate) {
  const Complex i{0.0, 1.0};
  const double c = std::cos(gate.theta / 2);
  const double s = std::sin(gate.theta / 2);
  const Complex em = std::exp(-i * (gate.theta / 2));
  const Complex ep = std::exp(i * (gate.theta / 2));
  switch (gate.kind) {
    case GateKind::kRZ: {
      CMatrix m = CMatrix::Zero(2, 2);
      m(0, 0) = em;
      m(1, 1) = ep;
      return m;
    }
    case GateKind::kSX: {
      CMatrix m(2, 2);
      m << Complex{0.5, 0.5}, Complex{0.5, -0.5}, Complex{0.5, -0.5}, Complex{0.5, 0.5};
      return m;
    }
    case GateKind::kX: {
      CMatrix m(2, 2);
      m << 0, 1, 1, 0;
      return m;
    }
    case GateKind::kH: {
      CMatrix m(2, 2);
      m << M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2;
      return m;
    }
    case GateKind::kRX: {
      CMatrix m(2, 2);
      m << c, -i * s, -i * s, c;
      return m;
    }
    case GateKind::kRY: {
      CMatrix m(2, 2);
      m << c, -s, s, c;
      return m;
    }
    case GateKind::kRZZ: {
      // exp(-i theta/2 Z (x) Z): phase depends on the parity of the two bits.
      CMatrix m = CMatrix::Zero(4, 4);
      m(0, 0) = em;
      m(1, 1) = ep;
      m(2, 2) = ep;
      m(3, 3) = em;
      return m;
    }
    case GateKind::kCX: {
      // Local index = control + 2 * target.
      CMatrix m = CMatrix::Zero(4, 4);
      m(0, 0) = 1;
      m(2, 2) = 1;
      m(3, 1) = 1;
      m(1, 3) = 1;
      return m;
    }
  }
  throw ArgumentError("unknown gate kind");
}

Circuit& Circuit::add(const Gate& gate) {
  const auto t = gate.targets();
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] >= n_) {
      throw ArgumentError(fmt::format("{} targets qubit {} in a {}-qubit circuit",
                                      gate_name(gate.kind), t[k], n_));
    }
  }
  if (t.size() == 2 && t[0] == t[1]) {
    throw ArgumentError(fmt::format("{} with repeated qubit {}", gate_name(gate.kind), t[0]));
  }
  if (!std::isfinite(gate.theta)) throw ArgumentError("non-finite gate angle");
  gates_.push_back(gate);
  return *this;
}

std::size_t Circuit::count(GateKind kind) const {
  std::size_t k = 0;
  for (const auto& g : gates_) k += g.kind == kind ? 1 : 0;
  return k;
}

double GateDurations::of(GateKind kind) const {
  switch (kind) {
    case GateKind::kRZ:
      return rz_ns;
    case GateKind::kSX:
      return sx_ns;
    case GateKind::kCX:
      return cx_ns;
    default:
      throw ArgumentError(
          fmt::format("no duration for non-native gate {}", gate_name(kind)));
  }
}

}  // namespace nqaoa
