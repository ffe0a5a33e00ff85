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
#include <numeric>
#include <numbers>

#include "nqaoa/densim.hpp"
#include "nqaoa/errors.hpp"
#include "oracle.hpp"

using namespace nqaoa;

namespace {

std::vector<std::size_t> random_targets(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  return all;
}

CMatrix diag2(Complex a, Complex b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST(densim, initial_state_is_all_zero_projector) {
  DensityMatrix rho(3);
  EXPECT_EQ(rho.dim(), 8u);
  EXPECT_EQ(rho(0, 0), Complex(1.0, 0.0));
  EXPECT_DOUBLE_EQ(rho.matrix().cwiseAbs().sum(), 1.0);
}

TEST(densim, uniform_plus_has_flat_entries) {
  const DensityMatrix rho = init_state(3, StatePrep::uniform_plus());
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) EXPECT_NEAR(std::abs(rho(r, c) - 0.125), 0.0, 1e-15);
}

TEST(densim, product_ry_populations) {
  const double t0 = 0.7, t1 = 2.1;
  const DensityMatrix rho = init_state(2, StatePrep::product_ry({t0, t1}));
  const double p0 = std::pow(std::sin(t0 / 2), 2);
  const double p1 = std::pow(std::sin(t1 / 2), 2);
  EXPECT_NEAR(rho(1, 1).real(), p0 * (1 - p1), 1e-14);
  EXPECT_NEAR(rho(2, 2).real(), (1 - p0) * p1, 1e-14);
  EXPECT_NEAR(rho(3, 3).real(), p0 * p1, 1e-14);
  EXPECT_THROW(init_state(2, StatePrep::product_ry({0.1})), ArgumentError);
}

TEST(densim, capacity_limits) {
  EXPECT_THROW(init_state(0, StatePrep::all_zero()), CapacityError);
  EXPECT_THROW(init_state(DensityMatrix::kMaxQubits + 1, StatePrep::all_zero()), CapacityError);
  EXPECT_NO_THROW(init_state(DensityMatrix::kMaxQubits, StatePrep::all_zero()));
}

TEST(densim, unitary_matches_kronecker_oracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const std::size_t k = n == 1 ? 1 : 1 + trial % 2;
    const auto targets = random_targets(n, k, rng);
    const CMatrix u = oracle::random_unitary(Eigen::Index{1} << k, rng);
    const oracle::Storage rho0 = oracle::random_density(n, rng);
    DensityMatrix rho = DensityMatrix::from_matrix(n, rho0);
    apply_unitary_in_place(rho, u, targets);
    const CMatrix full = oracle::embed(u, targets, n);
    const oracle::Storage expected = full * rho0 * full.adjoint();
    EXPECT_LT(oracle::max_abs(rho.matrix() - expected), 1e-12) << "trial " << trial;
  }
}

TEST(densim, diagonal_and_permutation_paths_match_oracle) {
  std::mt19937_64 rng(5);
  CMatrix cx = CMatrix::Zero(4, 4);
  cx(0, 0) = cx(2, 2) = cx(3, 1) = cx(1, 3) = 1.0;
  CMatrix phased_x = CMatrix::Zero(2, 2);
  phased_x(0, 1) = Complex(0, 1);
  phased_x(1, 0) = Complex(0, 1);
  const std::vector<std::pair<CMatrix, std::vector<std::size_t>>> cases{
      {diag2(std::polar(1.0, 0.3), std::polar(1.0, -1.2)), {2}},
      {cx, {0, 2}},
      {cx, {3, 1}},
      {phased_x, {1}},
  };
  for (const auto& [u, t] : cases) {
    const oracle::Storage rho0 = oracle::random_density(4, rng);
    DensityMatrix rho = DensityMatrix::from_matrix(4, rho0);
    apply_unitary_in_place(rho, u, t);
    const CMatrix full = oracle::embed(u, t, 4);
    EXPECT_LT(oracle::max_abs(rho.matrix() - full * rho0 * full.adjoint()), 1e-13);
  }
}

TEST(densim, unitary_argument_checks) {
  DensityMatrix rho(2);
  CMatrix bad = CMatrix::Identity(2, 2);
  bad(0, 0) = 2.0;
  const std::vector<std::size_t> q0{0};
  const std::vector<std::size_t> dup{1, 1};
  const std::vector<std::size_t> out_of_range{2};
  EXPECT_THROW(apply_unitary_in_place(rho, bad, q0), ValidationError);
  EXPECT_THROW(apply_unitary_in_place(rho, CMatrix::Identity(4, 4), q0), ArgumentError);
  EXPECT_THROW(apply_unitary_in_place(rho, CMatrix::Identity(4, 4), dup), ArgumentError);
  EXPECT_THROW(apply_unitary_in_place(rho, CMatrix::Identity(2, 2), out_of_range), ArgumentError);
}

TEST(densim, channel_matches_kraus_oracle) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const std::size_t k = 1 + trial % 2;
    const auto targets = random_targets(n, k, rng);
    const auto ops = oracle::random_kraus(Eigen::Index{1} << k, 3, rng);
    const oracle::Storage rho0 = oracle::random_density(n, rng);
    DensityMatrix rho = DensityMatrix::from_matrix(n, rho0);
    apply_channel_in_place(rho, KrausChannel(ops), targets);
    EXPECT_LT(oracle::max_abs(rho.matrix() - oracle::apply_kraus(rho0, ops, targets, n)), 1e-12);
  }
}

TEST(densim, channel_completeness_enforced_on_apply) {
  CMatrix half = CMatrix::Identity(2, 2) * 0.5;
  const KrausChannel leaky({half});
  EXPECT_FALSE(leaky.is_trace_preserving());
  EXPECT_NEAR(leaky.completeness_error(), 0.75, 1e-15);
  DensityMatrix rho(1);
  const std::vector<std::size_t> q0{0};
  EXPECT_THROW(apply_channel_in_place(rho, leaky, q0), ValidationError);
  EXPECT_THROW(KrausChannel({CMatrix::Identity(3, 3)}), ArgumentError);
}

TEST(densim, identity_channel_is_noop) {
  std::mt19937_64 rng(3);
  const oracle::Storage rho0 = oracle::random_density(3, rng);
  DensityMatrix rho = DensityMatrix::from_matrix(3, rho0);
  const std::vector<std::size_t> t{2, 0};
  EXPECT_TRUE(KrausChannel::identity(2).is_identity());
  apply_channel_in_place(rho, KrausChannel::identity(2), t);
  EXPECT_EQ(oracle::max_abs(rho.matrix() - rho0), 0.0);
}

TEST(densim, compose_and_tensor_match_sequential_application) {
  std::mt19937_64 rng(8);
  const KrausChannel a(oracle::random_kraus(2, 2, rng));
  const KrausChannel b(oracle::random_kraus(2, 3, rng));
  const oracle::Storage rho0 = oracle::random_density(2, rng);
  const std::vector<std::size_t> q1{1};
  DensityMatrix seq = DensityMatrix::from_matrix(2, rho0);
  apply_channel_in_place(seq, a, q1);
  apply_channel_in_place(seq, b, q1);
  DensityMatrix fused = DensityMatrix::from_matrix(2, rho0);
  apply_channel_in_place(fused, compose(a, b), q1);
  EXPECT_LT(seq.max_abs_diff(fused), 1e-13);

  const std::vector<std::size_t> q0{0};
  const std::vector<std::size_t> both{0, 1};
  DensityMatrix sep = DensityMatrix::from_matrix(2, rho0);
  apply_channel_in_place(sep, a, q0);
  apply_channel_in_place(sep, b, q1);
  DensityMatrix joint = DensityMatrix::from_matrix(2, rho0);
  apply_channel_in_place(joint, tensor(a, b), both);
  EXPECT_LT(sep.max_abs_diff(joint), 1e-13);
}

TEST(densim, superoperator_product_equals_sequence) {
  std::mt19937_64 rng(19);
  const CMatrix u = oracle::random_unitary(4, rng);
  const KrausChannel ch(oracle::random_kraus(4, 2, rng));
  const oracle::Storage rho0 = oracle::random_density(3, rng);
  const std::vector<std::size_t> t{2, 0};
  DensityMatrix seq = DensityMatrix::from_matrix(3, rho0);
  apply_unitary_in_place(seq, u, t);
  apply_channel_in_place(seq, ch, t);
  DensityMatrix fused = DensityMatrix::from_matrix(3, rho0);
  apply_superoperator_in_place(fused, dense_superoperator(ch) * unitary_superoperator(u), t);
  EXPECT_LT(seq.max_abs_diff(fused), 1e-13);
}

TEST(densim, probabilities_and_negative_diagonal) {
  std::mt19937_64 rng(2);
  const DensityMatrix rho = DensityMatrix::from_matrix(3, oracle::random_density(3, rng));
  const auto p = measurement_probabilities(rho);
  double total = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    EXPECT_NEAR(p[x], rho(x, x).real(), 1e-14);
    total += p[x];
  }
  EXPECT_NEAR(total, 1.0, 1e-14);

  oracle::Storage broken = oracle::Storage::Zero(2, 2);
  broken(0, 0) = 1.1;
  broken(1, 1) = -0.1;
  EXPECT_THROW(measurement_probabilities(DensityMatrix::from_matrix(1, broken)), ValidationError);
}

TEST(densim, sampling_is_seeded_sorted_and_unbiased) {
  const DensityMatrix rho = init_state(2, StatePrep::product_ry({std::numbers::pi / 2, 0.0}));
  std::mt19937_64 a(42), b(42);
  const auto s1 = sample(rho, 1000, a);
  const auto s2 = sample(rho, 1000, b);
  EXPECT_EQ(s1, s2);
  std::size_t total = 0;
  for (std::size_t k = 0; k < s1.size(); ++k) {
    total += s1[k].multiplicity;
    if (k > 0) {
      EXPECT_LT(s1[k - 1].bits, s1[k].bits);
    }
    EXPECT_TRUE(s1[k].bits == 0 || s1[k].bits == 1);
  }
  EXPECT_EQ(total, 1000u);

  std::mt19937_64 rng(7);
  const std::vector<double> probs{0.1, 0.2, 0.3, 0.4};
  const auto big = sample_probabilities(probs, 100000, rng);
  ASSERT_EQ(big.size(), 4u);
  for (const auto& s : big) {
    EXPECT_NEAR(static_cast<double>(s.multiplicity) / 1e5, probs[s.bits], 0.01);
  }
  EXPECT_THROW(sample(rho, 0, rng), ArgumentError);
}

TEST(densim, bitstring_prints_qubit_zero_first) {
  EXPECT_EQ((BasisSample{0b001, 1}.bitstring(3)), "100");
  EXPECT_EQ((BasisSample{0b110, 1}.bitstring(3)), "011");
}

TEST(densim, ising_expectation_matches_weighted_energies) {
  std::mt19937_64 rng(4);
  IsingModel m(3);
  m.set_h(0, 0.4);
  m.set_j(0, 2, -1.3);
  m.set_j(1, 2, 0.7);
  m.set_offset(0.25);
  const DensityMatrix rho = DensityMatrix::from_matrix(3, oracle::random_density(3, rng));
  double expected = 0.0;
  for (std::uint64_t x = 0; x < 8; ++x) {
    const int s0 = (x & 1) ? -1 : 1, s1 = (x & 2) ? -1 : 1, s2 = (x & 4) ? -1 : 1;
    const double c = 1.3 * s0 * s2 - 0.7 * s1 * s2 - 0.4 * s0 + 0.25;
    expected += rho(x, x).real() * c;
  }
  EXPECT_NEAR(expectation_ising(rho, m), expected, 1e-14);
  EXPECT_THROW(expectation_ising(rho, IsingModel(2)), ArgumentError);
}

TEST(densim, hermiticity_and_spectrum_diagnostics) {
  std::mt19937_64 rng(9);
  const DensityMatrix rho = DensityMatrix::from_matrix(2, oracle::random_density(2, rng));
  EXPECT_LT(rho.hermiticity_error(), 1e-15);
  EXPECT_GT(rho.min_eigenvalue(), -1e-12);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-14);
}
