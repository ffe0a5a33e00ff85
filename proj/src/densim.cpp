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

#include "nqaoa/densim.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nqaoa/errors.hpp"

namespace nqaoa {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kCompletenessTol = 1e-10;
constexpr double kNegativeProbTol = 1e-9;

void check_capacity(std::size_t n) {
  if (n < 1 || n > DensityMatrix::kMaxQubits) {
    throw CapacityError(fmt::format("{} qubits outside supported range [1, {}]",
                                    n, DensityMatrix::kMaxQubits));
  }
}

void check_targets(std::size_t n, std::span<const std::size_t> targets) {
  if (targets.empty()) throw ArgumentError("empty target list");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= n) {
      throw ArgumentError(
          fmt::format("target qubit {} out of range for {} qubits", targets[i], n));
    }
    for (std::size_t k = 0; k < i; ++k) {
      if (targets[k] == targets[i]) {
        throw ArgumentError(fmt::format("duplicate target qubit {}", targets[i]));
      }
    }
  }
}

struct Embedding {
  std::vector<std::size_t> offsets;  // local index -> global bit pattern
  std::vector<std::size_t> bases;    // global indices with all target bits 0
};

Embedding make_embedding(std::size_t n, std::span<const std::size_t> targets) {
  Embedding e;
  const std::size_t dk = std::size_t{1} << targets.size();
  e.offsets.resize(dk);
  std::size_t mask = 0;
  for (std::size_t a = 0; a < dk; ++a) {
    std::size_t off = 0;
    for (std::size_t m = 0; m < targets.size(); ++m) {
      if ((a >> m) & 1U) off |= std::size_t{1} << targets[m];
    }
    e.offsets[a] = off;
  }
  for (auto t : targets) mask |= std::size_t{1} << t;
  const std::size_t dim = std::size_t{1} << n;
  e.bases.reserve(dim / dk);
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & mask) == 0) e.bases.push_back(i);
  }
  return e;
}

// Calls fn(block) for every (row base, column base) pair; `block` holds the
// dk x dk local submatrix in row-major order and is written back afterwards.
template <typename Fn>
void for_each_block(DensityMatrix& rho, const Embedding& e, Fn&& fn) {
  const std::size_t dim = rho.dim();
  const std::size_t dk = e.offsets.size();
  Complex* data = rho.matrix().data();
  std::vector<Complex> block(dk * dk);
  for (std::size_t r0 : e.bases) {
    for (std::size_t c0 : e.bases) {
      for (std::size_t a = 0; a < dk; ++a) {
        const Complex* row = data + (r0 + e.offsets[a]) * dim + c0;
        for (std::size_t b = 0; b < dk; ++b) block[a * dk + b] = row[e.offsets[b]];
      }
      fn(block);
      for (std::size_t a = 0; a < dk; ++a) {
        Complex* row = data + (r0 + e.offsets[a]) * dim + c0;
        for (std::size_t b = 0; b < dk; ++b) row[e.offsets[b]] = block[a * dk + b];
      }
    }
  }
}

bool is_diagonal(const CMatrix& u) {
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      if (r != c && u(r, c) != Complex{0.0, 0.0}) return false;
    }
  }
  return true;
}

// Permutation with phases: one nonzero per row. Fills perm[row] = column.
bool is_monomial(const CMatrix& u, std::vector<std::size_t>& perm) {
  perm.assign(static_cast<std::size_t>(u.rows()), 0);
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    int count = 0;
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      if (u(r, c) != Complex{0.0, 0.0}) {
        ++count;
        perm[static_cast<std::size_t>(r)] = static_cast<std::size_t>(c);
      }
    }
    if (count != 1) return false;
  }
  return true;
}

void apply_sparse(DensityMatrix& rho, const std::vector<KrausChannel::SuperEntry>& entries,
                  std::span<const std::size_t> targets) {
  const Embedding e = make_embedding(rho.num_qubits(), targets);
  std::vector<Complex> out(e.offsets.size() * e.offsets.size());
  for_each_block(rho, e, [&](std::vector<Complex>& blk) {
    std::fill(out.begin(), out.end(), Complex{0.0, 0.0});
    for (const auto& s : entries) out[s.out] += s.coeff * blk[s.in];
    blk.swap(out);
  });
}

void apply_diagonal(DensityMatrix& rho, const CMatrix& u,
                    std::span<const std::size_t> targets) {
  const std::size_t dim = rho.dim();
  std::vector<Complex> phase(dim);
  bool trivial = true;
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t local = 0;
    for (std::size_t m = 0; m < targets.size(); ++m) {
      if ((x >> targets[m]) & 1U) local |= std::size_t{1} << m;
    }
    phase[x] = u(static_cast<Eigen::Index>(local), static_cast<Eigen::Index>(local));
    if (phase[x] != Complex{1.0, 0.0}) trivial = false;
  }
  if (trivial) return;
  Complex* data = rho.matrix().data();
  for (std::size_t r = 0; r < dim; ++r) {
    const Complex pr = phase[r];
    Complex* row = data + r * dim;
    for (std::size_t c = 0; c < dim; ++c) row[c] *= pr * std::conj(phase[c]);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(std::size_t n) : n_(n) {
  check_capacity(n);
  data_ = Storage::Zero(static_cast<Eigen::Index>(dim()),
                        static_cast<Eigen::Index>(dim()));
  data_(0, 0) = 1.0;
}

DensityMatrix DensityMatrix::from_matrix(std::size_t n, Storage data) {
  check_capacity(n);
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
  if (data.rows() != d || data.cols() != d) {
    throw ArgumentError(fmt::format("matrix is {}x{}, expected {}x{}", data.rows(),
                                    data.cols(), d, d));
  }
  return DensityMatrix(n, std::move(data));
}

double DensityMatrix::hermiticity_error() const {
  return (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const CMatrix herm = 0.5 * (data_ + data_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double DensityMatrix::max_abs_diff(const DensityMatrix& other) const {
  if (other.n_ != n_) throw ArgumentError("qubit count mismatch");
  return (data_ - other.data_).cwiseAbs().maxCoeff();
}

std::string BasisSample::bitstring(std::size_t n) const {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    if ((bits >> i) & 1U) s[i] = '1';
  }
  return s;
}

// ---------------------------------------------------------------------------
// KrausChannel

KrausChannel::KrausChannel(std::vector<CMatrix> ops) {
  if (ops.empty()) throw ArgumentError("channel needs at least one Kraus operator");
  const Eigen::Index d = ops.front().rows();
  if (d != 2 && d != 4) {
    throw ArgumentError(fmt::format("Kraus operators must be 2x2 or 4x4, got {}x{}",
                                    d, ops.front().cols()));
  }
  for (const auto& k : ops) {
    if (k.rows() != d || k.cols() != d) {
      throw ArgumentError("Kraus operators have inconsistent shapes");
    }
  }
  arity_ = d == 2 ? 1 : 2;

  // Exactly-zero operators contribute nothing.
  for (auto& k : ops) {
    if (!k.isZero(0.0)) ops_.push_back(std::move(k));
  }
  if (ops_.empty()) ops_.push_back(CMatrix::Zero(d, d));

  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& k : ops_) sum += k.adjoint() * k;
  completeness_error_ = (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();

  const auto dk = static_cast<std::size_t>(d);
  std::vector<Complex> dense(dk * dk * dk * dk, Complex{0.0, 0.0});
  for (const auto& k : ops_) {
    for (std::size_t a = 0; a < dk; ++a)
      for (std::size_t b = 0; b < dk; ++b)
        for (std::size_t c = 0; c < dk; ++c)
          for (std::size_t e = 0; e < dk; ++e) {
            const Complex v = k(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(c)) *
                              std::conj(k(static_cast<Eigen::Index>(b),
                                          static_cast<Eigen::Index>(e)));
            dense[(a * dk + b) * dk * dk + (c * dk + e)] += v;
          }
  }
  constexpr double kIdentityTol = 1e-14;
  is_identity_ = true;
  const std::size_t flat = dk * dk;
  for (std::size_t out = 0; out < flat; ++out) {
    for (std::size_t in = 0; in < flat; ++in) {
      const Complex v = dense[out * flat + in];
      const Complex expected = out == in ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      if (std::abs(v - expected) > kIdentityTol) is_identity_ = false;
      if (v != Complex{0.0, 0.0}) {
        super_.push_back({static_cast<std::uint16_t>(out),
                          static_cast<std::uint16_t>(in), v});
      }
    }
  }
}

KrausChannel KrausChannel::identity(std::size_t arity) {
  if (arity != 1 && arity != 2) throw ArgumentError("channel arity must be 1 or 2");
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << arity);
  return KrausChannel({CMatrix::Identity(d, d)});
}

KrausChannel KrausChannel::from_unitary(const CMatrix& u) { return KrausChannel({u}); }

KrausChannel compose(const KrausChannel& first, const KrausChannel& second) {
  if (first.arity() != second.arity()) {
    throw ArgumentError("cannot compose channels of different arity");
  }
  std::vector<CMatrix> ops;
  for (const auto& b : second.kraus_ops()) {
    for (const auto& a : first.kraus_ops()) ops.emplace_back(b * a);
  }
  return KrausChannel(std::move(ops));
}

KrausChannel tensor(const KrausChannel& low, const KrausChannel& high) {
  if (low.arity() + high.arity() > 2) {
    throw ArgumentError("tensor product exceeds supported channel arity");
  }
  const Eigen::Index dl = static_cast<Eigen::Index>(low.local_dim());
  const Eigen::Index dh = static_cast<Eigen::Index>(high.local_dim());
  std::vector<CMatrix> ops;
  for (const auto& h : high.kraus_ops()) {
    for (const auto& l : low.kraus_ops()) {
      CMatrix m(dl * dh, dl * dh);
      for (Eigen::Index r = 0; r < dl * dh; ++r)
        for (Eigen::Index c = 0; c < dl * dh; ++c)
          m(r, c) = h(r / dl, c / dl) * l(r % dl, c % dl);
      ops.push_back(std::move(m));
    }
  }
  return KrausChannel(std::move(ops));
}

// ---------------------------------------------------------------------------
// Operations

DensityMatrix init_state(std::size_t n, const StatePrep& prep) {
  check_capacity(n);
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::array<double, 2>> qubit_amps(n, {1.0, 0.0});
  switch (prep.kind) {
    case StatePrep::Kind::kAllZero:
      return DensityMatrix(n);
    case StatePrep::Kind::kUniformPlus:
      for (auto& a : qubit_amps) a = {M_SQRT1_2, M_SQRT1_2};
      break;
    case StatePrep::Kind::kProductRy:
      if (prep.thetas.size() != n) {
        throw ArgumentError(fmt::format("product-ry needs {} angles, got {}", n,
                                        prep.thetas.size()));
      }
      for (std::size_t i = 0; i < n; ++i) {
        const double t = prep.thetas[i];
        if (!std::isfinite(t)) throw ArgumentError("non-finite RY angle");
        qubit_amps[i] = {std::cos(t / 2), std::sin(t / 2)};
      }
      break;
  }
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(dim));
  for (std::size_t x = 0; x < dim; ++x) {
    double amp = 1.0;
    for (std::size_t i = 0; i < n; ++i) amp *= qubit_amps[i][(x >> i) & 1U];
    psi(static_cast<Eigen::Index>(x)) = amp;
  }
  DensityMatrix::Storage data = psi * psi.adjoint();
  return DensityMatrix::from_matrix(n, std::move(data));
}

double unitarity_error(const CMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()))
      .cwiseAbs()
      .maxCoeff();
}

void apply_unitary_in_place(DensityMatrix& rho, const CMatrix& u,
                            std::span<const std::size_t> targets) {
  check_targets(rho.num_qubits(), targets);
  const auto dk = static_cast<Eigen::Index>(std::size_t{1} << targets.size());
  if (u.rows() != dk || u.cols() != dk) {
    throw ArgumentError(fmt::format("{}x{} operator cannot act on {} qubits", u.rows(),
                                    u.cols(), targets.size()));
  }
  const double err = unitarity_error(u);
  if (!(err <= kUnitaryTol)) {
    throw ValidationError(fmt::format("operator is not unitary (error {:.3e})", err));
  }

  if (is_diagonal(u)) {
    apply_diagonal(rho, u, targets);
    return;
  }

  const Embedding e = make_embedding(rho.num_qubits(), targets);
  const auto d = static_cast<std::size_t>(dk);
  std::vector<std::size_t> perm;
  if (is_monomial(u, perm)) {
    std::vector<Complex> coef(d);
    for (std::size_t a = 0; a < d; ++a) {
      coef[a] = u(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(perm[a]));
    }
    std::vector<Complex> tmp(d * d);
    for_each_block(rho, e, [&](std::vector<Complex>& blk) {
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          tmp[a * d + b] = coef[a] * std::conj(coef[b]) * blk[perm[a] * d + perm[b]];
      blk.swap(tmp);
    });
    return;
  }

  std::vector<Complex> um(d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      um[a * d + b] = u(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  std::vector<Complex> tmp(d * d);
  for_each_block(rho, e, [&](std::vector<Complex>& blk) {
    // tmp = U * blk
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        Complex s{0.0, 0.0};
        for (std::size_t c = 0; c < d; ++c) s += um[a * d + c] * blk[c * d + b];
        tmp[a * d + b] = s;
      }
    // blk = tmp * U^dagger
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        Complex s{0.0, 0.0};
        for (std::size_t c = 0; c < d; ++c) s += tmp[a * d + c] * std::conj(um[b * d + c]);
        blk[a * d + b] = s;
      }
  });
}

DensityMatrix apply_unitary(DensityMatrix rho, const CMatrix& u,
                            std::span<const std::size_t> targets) {
  apply_unitary_in_place(rho, u, targets);
  return rho;
}

void apply_channel_in_place(DensityMatrix& rho, const KrausChannel& channel,
                            std::span<const std::size_t> targets) {
  check_targets(rho.num_qubits(), targets);
  if (targets.size() != channel.arity()) {
    throw ArgumentError(fmt::format("channel of arity {} applied to {} targets",
                                    channel.arity(), targets.size()));
  }
  if (!channel.is_trace_preserving(kCompletenessTol)) {
    throw ValidationError(fmt::format("channel violates completeness (error {:.3e})",
                                      channel.completeness_error()));
  }
  if (channel.is_identity()) return;

  apply_sparse(rho, channel.superoperator(), targets);
}

CMatrix dense_superoperator(const KrausChannel& channel) {
  const auto d2 = static_cast<Eigen::Index>(channel.local_dim() * channel.local_dim());
  CMatrix s = CMatrix::Zero(d2, d2);
  for (const auto& e : channel.superoperator()) s(e.out, e.in) += e.coeff;
  return s;
}

CMatrix unitary_superoperator(const CMatrix& u) {
  const Eigen::Index d = u.rows();
  CMatrix s(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      for (Eigen::Index c = 0; c < d; ++c)
        for (Eigen::Index e = 0; e < d; ++e) s(a * d + b, c * d + e) = u(a, c) * std::conj(u(b, e));
  return s;
}

void apply_superoperator_in_place(DensityMatrix& rho, const CMatrix& superop,
                                  std::span<const std::size_t> targets) {
  check_targets(rho.num_qubits(), targets);
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << targets.size());
  if (superop.rows() != d * d || superop.cols() != d * d) {
    throw ArgumentError(fmt::format("{}x{} superoperator cannot act on {} qubits",
                                    superop.rows(), superop.cols(), targets.size()));
  }
  std::vector<KrausChannel::SuperEntry> entries;
  for (Eigen::Index r = 0; r < superop.rows(); ++r) {
    for (Eigen::Index c = 0; c < superop.cols(); ++c) {
      if (superop(r, c) != Complex{0.0, 0.0}) {
        entries.push_back({static_cast<std::uint16_t>(r), static_cast<std::uint16_t>(c),
                           superop(r, c)});
      }
    }
  }
  apply_sparse(rho, entries, targets);
}

DensityMatrix apply_channel(DensityMatrix rho, const KrausChannel& channel,
                            std::span<const std::size_t> targets) {
  apply_channel_in_place(rho, channel, targets);
  return rho;
}

std::vector<double> measurement_probabilities(const DensityMatrix& rho) {
  const std::size_t dim = rho.dim();
  std::vector<double> p(dim);
  double total = 0.0;
  for (std::size_t x = 0; x < dim; ++x) {
    double v = rho(x, x).real();
    if (v < -kNegativeProbTol) {
      throw ValidationError(
          fmt::format("diagonal entry {} is negative ({:.3e})", x, v));
    }
    v = std::max(v, 0.0);
    p[x] = v;
    total += v;
  }
  if (!(total > 0.0)) throw ValidationError("state has zero trace");
  for (auto& v : p) v /= total;
  return p;
}

std::vector<BasisSample> sample(const DensityMatrix& rho, std::size_t shots,
                                std::mt19937_64& rng) {
  return sample_probabilities(measurement_probabilities(rho), shots, rng);
}

std::vector<BasisSample> sample_probabilities(std::span<const double> p, std::size_t shots,
                                              std::mt19937_64& rng) {
  if (shots < 1) throw ArgumentError("shots must be at least 1");
  if (p.empty()) throw ArgumentError("empty probability vector");
  std::vector<double> cumulative(p.size());
  std::partial_sum(p.begin(), p.end(), cumulative.begin());
  std::vector<std::size_t> counts(p.size(), 0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = uniform(rng) * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    auto idx = static_cast<std::size_t>(it - cumulative.begin());
    if (idx >= p.size()) idx = p.size() - 1;
    ++counts[idx];
  }
  std::vector<BasisSample> out;
  for (std::size_t x = 0; x < counts.size(); ++x) {
    if (counts[x] > 0) out.push_back({x, counts[x]});
  }
  return out;
}

double expectation_ising(const DensityMatrix& rho, const IsingModel& model) {
  if (model.num_vars() != rho.num_qubits()) {
    throw ArgumentError(fmt::format("model has {} variables, state has {} qubits",
                                    model.num_vars(), rho.num_qubits()));
  }
  const auto table = model.energy_table();
  return expectation_ising(rho, table);
}

double expectation_ising(const DensityMatrix& rho, std::span<const double> energy_table) {
  if (energy_table.size() != rho.dim()) {
    throw ArgumentError("energy table size does not match state dimension");
  }
  const auto p = measurement_probabilities(rho);
  double e = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) e += p[x] * energy_table[x];
  return e;
}

}  // namespace nqaoa
