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

#include "nqaoa/ising.hpp"

#include <fmt/format.h>

#include <cmath>

#include "nqaoa/errors.hpp"

namespace nqaoa {

SpinAssignment spins_of_basis(std::uint64_t x, std::size_t n) {
  SpinAssignment s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = spin_of(x, i);
  return s;
}

std::uint64_t basis_of_spins(std::span<const int> s) {
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == -1) {
      x |= std::uint64_t{1} << i;
    } else if (s[i] != 1) {
      throw ArgumentError(fmt::format("spin {} has value {}", i, s[i]));
    }
  }
  return x;
}

IsingModel::IsingModel(std::size_t n) : n_(n), h_(n, 0.0), j_(n * n, 0.0) {}

void IsingModel::set_h(std::size_t i, double value) { h_.at(i) = value; }
void IsingModel::add_h(std::size_t i, double delta) { h_.at(i) += delta; }

void IsingModel::check_pair(std::size_t a, std::size_t b) const {
  if (a >= n_ || b >= n_ || a == b) {
    throw ArgumentError(
        fmt::format("invalid coupling pair ({}, {}) for {} variables", a, b, n_));
  }
}

double IsingModel::j(std::size_t a, std::size_t b) const {
  check_pair(a, b);
  return j_[a * n_ + b];
}

void IsingModel::set_j(std::size_t a, std::size_t b, double value) {
  check_pair(a, b);
  j_[a * n_ + b] = value;
  j_[b * n_ + a] = value;
}

void IsingModel::add_j(std::size_t a, std::size_t b, double delta) {
  set_j(a, b, j(a, b) + delta);
}

double IsingModel::energy(std::span<const int> spins) const {
  if (spins.size() != n_) {
    throw ArgumentError(fmt::format("assignment has {} spins, model has {}",
                                    spins.size(), n_));
  }
  double c = offset_;
  for (std::size_t a = 0; a < n_; ++a) {
    c -= h_[a] * spins[a];
    for (std::size_t b = a + 1; b < n_; ++b) {
      c -= j_[a * n_ + b] * spins[a] * spins[b];
    }
  }
  return c;
}

double IsingModel::energy_of_basis(std::uint64_t x) const {
  double c = offset_;
  for (std::size_t a = 0; a < n_; ++a) {
    const int sa = spin_of(x, a);
    c -= h_[a] * sa;
    for (std::size_t b = a + 1; b < n_; ++b) {
      c -= j_[a * n_ + b] * sa * spin_of(x, b);
    }
  }
  return c;
}

std::vector<double> IsingModel::energy_table() const {
  if (n_ > 20) {
    throw CapacityError(fmt::format("energy table for {} variables", n_));
  }
  std::vector<double> table(std::size_t{1} << n_);
  for (std::uint64_t x = 0; x < table.size(); ++x) table[x] = energy_of_basis(x);
  return table;
}

bool IsingModel::has_linear(std::size_t i) const {
  return std::abs(h_.at(i)) > kZeroTol;
}

bool IsingModel::has_coupling(std::size_t a, std::size_t b) const {
  return std::abs(j(a, b)) > kZeroTol;
}

std::vector<std::pair<std::size_t, std::size_t>> IsingModel::coupled_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = a + 1; b < n_; ++b) {
      if (std::abs(j_[a * n_ + b]) > kZeroTol) pairs.emplace_back(a, b);
    }
  }
  return pairs;
}

}  // namespace nqaoa
