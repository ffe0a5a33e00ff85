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
#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "nqaoa/circuits.hpp"
#include "nqaoa/errors.hpp"

namespace nqaoa {

CMatrix unitary_of(const Circuit& circuit) {
  const std::size_t n = circuit.num_qubits();
  if (n > 6) throw CapacityError(fmt::format("unitary_of supports n <= 6, got {}", n));
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  CMatrix u = CMatrix::Identity(dim, dim);
  for (const auto& g : circuit.gates()) {
    const CMatrix gm = gate_matrix(g);
    const auto t = g.targets();
    // Full embedding: G[x][y] = gm[loc(x)][loc(y)] when the non-target bits agree.
    std::size_t mask = 0;
    for (auto q : t) mask |= std::size_t{1} << q;
    auto local = [&](std::size_t x) {
      Eigen::Index l = 0;
      for (std::size_t m = 0; m < t.size(); ++m) {
        if ((x >> t[m]) & 1U) l |= Eigen::Index{1} << m;
      }
      return l;
    };
    CMatrix full = CMatrix::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
      for (Eigen::Index y = 0; y < dim; ++y) {
        const auto ux = static_cast<std::size_t>(x);
        const auto uy = static_cast<std::size_t>(y);
        if ((ux & ~mask) != (uy & ~mask)) continue;
        full(x, y) = gm(local(ux), local(uy));
      }
    }
    u = full * u;
  }
  return u;
}

double phase_insensitive_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError("matrix shapes differ");
  }
  // Best phase aligns the largest entry of b with a.
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  Complex phase{1.0, 0.0};
  if (std::abs(b(r, c)) > 0.0 && std::abs(a(r, c)) > 0.0) {
    const Complex ratio = a(r, c) / b(r, c);
    phase = ratio / std::abs(ratio);
  }
  return (a - phase * b).cwiseAbs().maxCoeff();
}

DensityMatrix simulate(const Circuit& circuit, const StatePrep& prep) {
  DensityMatrix rho = init_state(circuit.num_qubits(), prep);
  for (const auto& g : circuit.gates()) {
    apply_unitary_in_place(rho, gate_matrix(g), g.targets());
  }
  return rho;
}

namespace {

constexpr std::size_t kOpen = static_cast<std::size_t>(-1);

/// Lifts `s`, acting on `op`, to the qubit list `group` (op is a subset).
CMatrix lift(const CMatrix& s, std::span<const std::size_t> op,
             std::span<const std::size_t> group) {
  if (std::equal(op.begin(), op.end(), group.begin(), group.end())) return s;
  std::vector<std::size_t> pos(op.size());
  std::size_t op_mask = 0;
  for (std::size_t m = 0; m < op.size(); ++m) {
    pos[m] = static_cast<std::size_t>(std::find(group.begin(), group.end(), op[m]) - group.begin());
    op_mask |= std::size_t{1} << pos[m];
  }
  const std::size_t dk = std::size_t{1} << op.size();
  const std::size_t dg = std::size_t{1} << group.size();
  auto project = [&](std::size_t x) {
    std::size_t a = 0;
    for (std::size_t m = 0; m < pos.size(); ++m) {
      if ((x >> pos[m]) & 1U) a |= std::size_t{1} << m;
    }
    return a;
  };
  const auto g2 = static_cast<Eigen::Index>(dg * dg);
  CMatrix out = CMatrix::Zero(g2, g2);
  for (std::size_t a = 0; a < dg; ++a)
    for (std::size_t b = 0; b < dg; ++b)
      for (std::size_t c = 0; c < dg; ++c) {
        if ((a & ~op_mask) != (c & ~op_mask)) continue;
        for (std::size_t e = 0; e < dg; ++e) {
          if ((b & ~op_mask) != (e & ~op_mask)) continue;
          out(static_cast<Eigen::Index>(a * dg + b), static_cast<Eigen::Index>(c * dg + e)) =
              s(static_cast<Eigen::Index>(project(a) * dk + project(b)),
                static_cast<Eigen::Index>(project(c) * dk + project(e)));
        }
      }
  return out;
}

/// Greedy fusion of consecutive operations into one- and two-qubit blocks.
/// Blocks are emitted in an order that keeps every qubit's history intact.
class Fuser {
 public:
  explicit Fuser(std::size_t n) : open_(n, kOpen) {}

  void push(std::span<const std::size_t> t, const CMatrix& superop) {
    if (t.size() == 1) {
      const std::size_t g = open_[t[0]];
      if (g != kOpen) {
        blocks_[g].superop = lift(superop, t, blocks_[g].targets) * blocks_[g].superop;
      } else {
        open_[t[0]] = add({t[0]}, superop);
      }
      return;
    }
    const std::size_t ga = open_[t[0]];
    const std::size_t gb = open_[t[1]];
    if (ga != kOpen && ga == gb) {
      blocks_[ga].superop = lift(superop, t, blocks_[ga].targets) * blocks_[ga].superop;
      return;
    }
    for (std::size_t g : {ga, gb}) {
      if (g != kOpen && blocks_[g].targets.size() == 2) close(g);
    }
    const std::vector<std::size_t> targets(t.begin(), t.end());
    CMatrix acc = CMatrix::Identity(16, 16);
    for (std::size_t q : targets) {
      const std::size_t g = open_[q];
      if (g == kOpen) continue;
      acc = lift(blocks_[g].superop, blocks_[g].targets, targets) * acc;
      blocks_[g].absorbed = true;
      open_[q] = kOpen;
    }
    acc = superop * acc;
    const std::size_t g = add(targets, acc);
    open_[t[0]] = open_[t[1]] = g;
  }

  struct Block {
    std::vector<std::size_t> targets;
    CMatrix superop;
    bool absorbed = false;
  };

  std::vector<Block> finish() && {
    for (std::size_t g = 0; g < blocks_.size(); ++g) {
      if (!blocks_[g].absorbed && !std::count(emitted_.begin(), emitted_.end(), g)) {
        emitted_.push_back(g);
      }
    }
    std::vector<Block> out;
    out.reserve(emitted_.size());
    for (std::size_t g : emitted_) out.push_back(std::move(blocks_[g]));
    return out;
  }

 private:
  std::size_t add(std::vector<std::size_t> targets, CMatrix superop) {
    blocks_.push_back({std::move(targets), std::move(superop), false});
    return blocks_.size() - 1;
  }

  void close(std::size_t g) {
    emitted_.push_back(g);
    for (std::size_t q : blocks_[g].targets) open_[q] = kOpen;
  }

  std::vector<Block> blocks_;
  std::vector<std::size_t> emitted_;
  std::vector<std::size_t> open_;
};

}  // namespace

DensityMatrix simulate(const NoisyCircuit& circuit, const StatePrep& prep, bool fuse) {
  const Circuit& c = circuit.base.circuit;
  DensityMatrix rho = init_state(c.num_qubits(), prep);
  const auto& channels = circuit.channels;
  for (std::size_t k = 1; k < channels.size(); ++k) {
    if (channels[k].position < channels[k - 1].position) {
      throw InternalError("noise channels out of position order");
    }
  }
  if (!channels.empty() && channels.back().position > c.size()) {
    throw InternalError("noise channel positioned past the circuit end");
  }

  if (!fuse) {
    std::size_t next = 0;
    auto flush = [&](std::size_t pos) {
      for (; next < channels.size() && channels[next].position == pos; ++next) {
        apply_channel_in_place(rho, *channels[next].channel, channels[next].targets());
      }
    };
    for (std::size_t gi = 0; gi < c.size(); ++gi) {
      flush(gi);
      const Gate& g = c.gates()[gi];
      apply_unitary_in_place(rho, gate_matrix(g), g.targets());
    }
    flush(c.size());
    return rho;
  }

  Fuser fuser(c.num_qubits());
  std::unordered_map<const KrausChannel*, CMatrix> cache;
  std::size_t next = 0;
  auto flush = [&](std::size_t pos) {
    for (; next < channels.size() && channels[next].position == pos; ++next) {
      const KrausChannel& ch = *channels[next].channel;
      if (!ch.is_trace_preserving()) {
        throw ValidationError(fmt::format("channel violates completeness (error {:.3e})",
                                          ch.completeness_error()));
      }
      if (ch.is_identity()) continue;
      auto it = cache.find(&ch);
      if (it == cache.end()) it = cache.emplace(&ch, dense_superoperator(ch)).first;
      fuser.push(channels[next].targets(), it->second);
    }
  };
  for (std::size_t gi = 0; gi < c.size(); ++gi) {
    flush(gi);
    const Gate& g = c.gates()[gi];
    fuser.push(g.targets(), unitary_superoperator(gate_matrix(g)));
  }
  flush(c.size());
  for (const auto& block : std::move(fuser).finish()) {
    apply_superoperator_in_place(rho, block.superop, block.targets);
  }
  return rho;
}

std::vector<double> statevector_probabilities(const Circuit& circuit) {
  const std::size_t n = circuit.num_qubits();
  if (n < 1 || n > 20) {
    throw CapacityError(fmt::format("statevector supports 1..20 qubits, got {}", n));
  }
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Complex> psi(dim, Complex{0.0, 0.0});
  psi[0] = 1.0;
  for (const auto& g : circuit.gates()) {
    const CMatrix u = gate_matrix(g);
    if (gate_arity(g.kind) == 1) {
      const std::size_t bit = std::size_t{1} << g.qubits[0];
      for (std::size_t x = 0; x < dim; ++x) {
        if (x & bit) continue;
        const Complex a0 = psi[x];
        const Complex a1 = psi[x | bit];
        psi[x] = u(0, 0) * a0 + u(0, 1) * a1;
        psi[x | bit] = u(1, 0) * a0 + u(1, 1) * a1;
      }
    } else {
      const std::size_t b0 = std::size_t{1} << g.qubits[0];
      const std::size_t b1 = std::size_t{1} << g.qubits[1];
      for (std::size_t x = 0; x < dim; ++x) {
        if (x & (b0 | b1)) continue;
        const std::array<std::size_t, 4> idx{x, x | b0, x | b1, x | b0 | b1};
        std::array<Complex, 4> in{};
        for (std::size_t k = 0; k < 4; ++k) in[k] = psi[idx[k]];
        for (Eigen::Index r = 0; r < 4; ++r) {
          Complex acc{0.0, 0.0};
          for (Eigen::Index c = 0; c < 4; ++c) acc += u(r, c) * in[static_cast<std::size_t>(c)];
          psi[idx[static_cast<std::size_t>(r)]] = acc;
        }
      }
    }
  }
  std::vector<double> probs(dim);
  for (std::size_t x = 0; x < dim; ++x) probs[x] = std::norm(psi[x]);
  return probs;
}

void write_circuit_text(std::ostream& out, const Circuit& circuit) {
  for (const auto& g : circuit.gates()) {
    out << "GATE " << gate_name(g.kind);
    for (auto q : g.targets()) out << ' ' << q;
    if (is_parametric(g.kind)) out << ' ' << fmt::format("{:.17g}", g.theta);
    out << '\n';
  }
}

Circuit read_circuit_text(std::istream& in, std::size_t n) {
  Circuit c(n);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag, name;
    ls >> tag >> name;
    const auto kind = gate_kind_from_name(name);
    if (tag != "GATE" || !kind) {
      throw ArgumentError(fmt::format("line {}: cannot parse '{}'", lineno, line));
    }
    Gate g{*kind, {0, 0}, 0.0};
    for (std::size_t k = 0; k < gate_arity(*kind); ++k) {
      if (!(ls >> g.qubits[k])) throw ArgumentError(fmt::format("line {}: missing qubit", lineno));
    }
    if (is_parametric(*kind) && !(ls >> g.theta)) {
      throw ArgumentError(fmt::format("line {}: missing angle", lineno));
    }
    c.add(g);
  }
  return c;
}

void write_schedule_csv(std::ostream& out, const ScheduledCircuit& scheduled) {
  out << "qubit,start_ns,duration_ns,label\n";
  for (std::size_t q = 0; q < scheduled.timelines.size(); ++q) {
    for (const auto& s : scheduled.timelines[q]) {
      const std::string_view label =
          s.is_idle() ? std::string_view{"idle"}
                      : gate_name(scheduled.circuit.gates()[s.gate_index].kind);
      out << fmt::format("{},{:.12g},{:.12g},{}\n", q, s.start_ns, s.duration_ns, label);
    }
  }
}

}  // namespace nqaoa
