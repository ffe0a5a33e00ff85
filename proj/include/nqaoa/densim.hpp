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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "nqaoa/ising.hpp"

namespace nqaoa {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Embedding convention shared by every operator in the library: qubit q is
/// bit q of the basis-state integer (qubit 0 least significant). When a
/// 2^k x 2^k operator acts on targets {t_0, ..., t_{k-1}}, its local index is
/// sum_m bit(t_m) << m, i.e. targets[0] is the operator's low bit.
class DensityMatrix {
 public:
  using Storage =
      Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  static constexpr std::size_t kMaxQubits = 12;

  /// |0...0><0...0| on n qubits.
  explicit DensityMatrix(std::size_t n);

  /// Wraps an explicit matrix. Throws if the shape does not match 2^n.
  static DensityMatrix from_matrix(std::size_t n, Storage data);

  std::size_t num_qubits() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }

  Complex operator()(std::size_t r, std::size_t c) const { return data_(r, c); }
  Complex& operator()(std::size_t r, std::size_t c) { return data_(r, c); }

  const Storage& matrix() const { return data_; }
  Storage& matrix() { return data_; }

  Complex trace() const { return data_.trace(); }
  /// max |rho_ij - conj(rho_ji)|
  double hermiticity_error() const;
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;
  double max_abs_diff(const DensityMatrix& other) const;

 private:
  DensityMatrix(std::size_t n, Storage data) : n_(n), data_(std::move(data)) {}

  std::size_t n_;
  Storage data_;
};

/// CPTP map given by Kraus operators {K_k}.
///
/// The constructor checks shapes only. Completeness is measured once and
/// enforced when the channel is applied, so malformed channels can still be
/// built for diagnostics.
class KrausChannel {
 public:
  struct SuperEntry {
    std::uint16_t out;
    std::uint16_t in;
    Complex coeff;
  };

  explicit KrausChannel(std::vector<CMatrix> ops);

  static KrausChannel identity(std::size_t arity);
  static KrausChannel from_unitary(const CMatrix& u);

  std::size_t arity() const { return arity_; }
  std::size_t local_dim() const { return std::size_t{1} << arity_; }
  const std::vector<CMatrix>& kraus_ops() const { return ops_; }

  /// max-norm of sum_k K_k^dagger K_k - I.
  double completeness_error() const { return completeness_error_; }
  bool is_trace_preserving(double tol = 1e-10) const {
    return completeness_error_ <= tol;
  }
  /// True when the superoperator is exactly the identity map.
  bool is_identity() const { return is_identity_; }

  /// Nonzero entries of S with rho'_(ab) = sum S_(ab),(cd) rho_(cd); the
  /// flattened index of a local matrix element (row a, column b) is a*d + b.
  const std::vector<SuperEntry>& superoperator() const { return super_; }

 private:
  std::size_t arity_ = 0;
  std::vector<CMatrix> ops_;
  double completeness_error_ = 0.0;
  bool is_identity_ = false;
  std::vector<SuperEntry> super_;
};

/// second after first (same arity).
KrausChannel compose(const KrausChannel& first, const KrausChannel& second);
/// low acts on the operator's low local bit, high on the next bit(s).
KrausChannel tensor(const KrausChannel& low, const KrausChannel& high);

struct StatePrep {
  enum class Kind { kAllZero, kUniformPlus, kProductRy };

  Kind kind = Kind::kAllZero;
  std::vector<double> thetas;

  static StatePrep all_zero() { return {}; }
  static StatePrep uniform_plus() { return {Kind::kUniformPlus, {}}; }
  static StatePrep product_ry(std::vector<double> thetas) {
    return {Kind::kProductRy, std::move(thetas)};
  }
};

struct BasisSample {
  std::uint64_t bits = 0;
  std::size_t multiplicity = 0;

  /// Qubit 0 printed first.
  std::string bitstring(std::size_t n) const;

  friend bool operator==(const BasisSample&, const BasisSample&) = default;
};

DensityMatrix init_state(std::size_t n, const StatePrep& prep);

/// rho <- U rho U^dagger with U embedded on `targets`.
void apply_unitary_in_place(DensityMatrix& rho, const CMatrix& u,
                            std::span<const std::size_t> targets);
DensityMatrix apply_unitary(DensityMatrix rho, const CMatrix& u,
                            std::span<const std::size_t> targets);

/// rho <- sum_k K_k rho K_k^dagger with the channel embedded on `targets`.
void apply_channel_in_place(DensityMatrix& rho, const KrausChannel& channel,
                            std::span<const std::size_t> targets);
DensityMatrix apply_channel(DensityMatrix rho, const KrausChannel& channel,
                            std::span<const std::size_t> targets);

/// Dense d^2 x d^2 superoperators in the layout of
/// KrausChannel::superoperator().
CMatrix dense_superoperator(const KrausChannel& channel);
CMatrix unitary_superoperator(const CMatrix& u);

/// rho <- S(rho) on `targets`. S is trusted: no positivity or trace check.
void apply_superoperator_in_place(DensityMatrix& rho, const CMatrix& superop,
                                  std::span<const std::size_t> targets);

std::vector<double> measurement_probabilities(const DensityMatrix& rho);

/// Outcomes with nonzero multiplicity, ascending by basis integer.
std::vector<BasisSample> sample(const DensityMatrix& rho, std::size_t shots,
                                std::mt19937_64& rng);
std::vector<BasisSample> sample_probabilities(std::span<const double> probs, std::size_t shots,
                                              std::mt19937_64& rng);

double expectation_ising(const DensityMatrix& rho, const IsingModel& model);
/// Same value with a precomputed IsingModel::energy_table().
double expectation_ising(const DensityMatrix& rho,
                         std::span<const double> energy_table);

/// max |u^dagger u - I|
double unitarity_error(const CMatrix& u);

}  // namespace nqaoa
