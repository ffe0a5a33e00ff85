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
#include <functional>
#include <span>
#include <vector>

namespace nqaoa {

struct OptimizerOptions {
  double initial_radius = 1.0;
  /// Final trust-region radius.
  double tolerance = 0.01;
  std::size_t max_evals = 150;

  void validate() const;
};

struct OptimizerResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t evals = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free minimization with linear interpolation models on a
/// simplex and a shrinking trust region (Powell's COBYLA without
/// constraints). Returns the best point evaluated, so f <= f(x0).
/// Throws OptimizerError if the objective returns a non-finite value.
OptimizerResult minimize(const Objective& f, std::span<const double> x0,
                         const OptimizerOptions& options = {});

}  // namespace nqaoa
