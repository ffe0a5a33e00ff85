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
#include <numeric>

#include "nqaoa/circuits.hpp"
#include "nqaoa/errors.hpp"

namespace nqaoa {

Circuit build_qaoa_circuit(const IsingModel& model, std::span<const double> betas,
                           std::span<const double> gammas, MixerVariant variant,
                           std::optional<std::span<const double>> warm_thetas) {
  const std::size_t n = model.num_vars();
  if (betas.empty() || betas.size() != gammas.size()) {
    throw ArgumentError(fmt::format("need p >= 1 matching angles, got {} betas and {} gammas",
                                    betas.size(), gammas.size()));
  }
  const bool warm = variant != MixerVariant::kStandard;
  if (warm != warm_thetas.has_value()) {
    throw ArgumentError(warm ? "warm-start variant requires warm-start angles"
                             : "standard QAOA takes no warm-start angles");
  }
  if (warm && warm_thetas->size() != n) {
    throw ArgumentError(
        fmt::format("{} warm-start angles for {} qubits", warm_thetas->size(), n));
  }

  // RZZ terms are grouped by color class so each class is one parallel slot.
  const auto pairs = model.coupled_pairs();
  const auto colors = misra_gries_coloring(n, pairs);
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return colors[a] < colors[b]; });

  Circuit c(n);
  for (std::size_t q = 0; q < n; ++q) {
    c.add(warm ? Gate::ry(q, (*warm_thetas)[q]) : Gate::h(q));
  }
  for (std::size_t layer = 0; layer < betas.size(); ++layer) {
    const double gamma = gammas[layer];
    const double beta = betas[layer];
    // exp(-i gamma (-h Z)) = RZ(-2 gamma h); likewise for -J ZZ.
    for (std::size_t q = 0; q < n; ++q) {
      if (model.has_linear(q)) c.add(Gate::rz(q, -2.0 * gamma * model.h(q)));
    }
    for (auto idx : order) {
      const auto [a, b] = pairs[idx];
      c.add(Gate::rzz(a, b, -2.0 * gamma * model.j(a, b)));
    }
    for (std::size_t q = 0; q < n; ++q) {
      if (variant == MixerVariant::kWsQaoa) {
        const double theta = (*warm_thetas)[q];
        c.add(Gate::ry(q, -theta));
        c.add(Gate::rz(q, -2.0 * beta));
        c.add(Gate::ry(q, theta));
      } else {
        c.add(Gate::rx(q, 2.0 * beta));
      }
    }
  }
  return c;
}

}  // namespace nqaoa
