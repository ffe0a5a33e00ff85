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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nqaoa {

/// Spin assignment s in {-1, +1}^n.
using SpinAssignment = std::vector<int>;

/// Spin value of variable `i` for computational basis state `x`:
/// qubit i is bit i of x (bit 0 least significant), spin = (-1)^bit.
inline int spin_of(std::uint64_t x, std::size_t i) {
  return ((x >> i) & 1U) != 0U ? -1 : 1;
}

SpinAssignment spins_of_basis(std::uint64_t x, std::size_t n);
std::uint64_t basis_of_spins(std::span<const int> s);

/// Objective C(s) = -sum_{i<j} J_ij s_i s_j - sum_i h_i s_i + offset.
///
/// Couplings are stored symmetrically so that j(a, b) == j(b, a); only
/// pairs a != b are meaningful.
class IsingModel {
 public:
  IsingModel() = default;
  explicit IsingModel(std::size_t n);

  std::size_t num_vars() const { return n_; }

  double h(std::size_t i) const { return h_.at(i); }
  void set_h(std::size_t i, double value);
  void add_h(std::size_t i, double delta);

  double j(std::size_t a, std::size_t b) const;
  void set_j(std::size_t a, std::size_t b, double value);
  void add_j(std::size_t a, std::size_t b, double delta);

  double offset() const { return offset_; }
  void set_offset(double value) { offset_ = value; }
  void add_offset(double delta) { offset_ += delta; }

  double energy(std::span<const int> spins) const;
  double energy_of_basis(std::uint64_t x) const;

  /// C evaluated on every basis state, indexed by basis integer. n <= 20.
  std::vector<double> energy_table() const;

  /// Magnitudes at or below this are treated as absent terms.
  static constexpr double kZeroTol = 1e-12;

  bool has_linear(std::size_t i) const;
  bool has_coupling(std::size_t a, std::size_t b) const;

  /// Pairs (a, b), a < b, with a nonzero coupling, in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> coupled_pairs() const;

  friend bool operator==(const IsingModel&, const IsingModel&) = default;

 private:
  void check_pair(std::size_t a, std::size_t b) const;

  std::size_t n_ = 0;
  std::vector<double> h_;
  std::vector<double> j_;  // n_ x n_, symmetric, zero diagonal
  double offset_ = 0.0;
};

}  // namespace nqaoa
