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
#include <limits>

#include <Eigen/Dense>

#include "nqaoa/errors.hpp"
#include "nqaoa/optimizer.hpp"

namespace nqaoa {

namespace {

// Simplex acceptability thresholds and step fractions, relative to the
// trust-region radius.
constexpr double kMinFaceDistance = 0.25;
constexpr double kMaxEdgeLength = 2.1;
constexpr double kGeometryStep = 0.5;
constexpr double kShrink = 0.5;
constexpr double kAcceptRatio = 0.1;

struct Vertex {
  Eigen::VectorXd x;
  double f;
};

class Search {
 public:
  Search(const Objective& f, const OptimizerOptions& options) : f_(f), options_(options) {}

  bool exhausted() const { return evals_ >= options_.max_evals; }

  double evaluate(const Eigen::VectorXd& x) {
    const double v = f_(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
    ++evals_;
    if (!std::isfinite(v)) {
      throw OptimizerError(fmt::format("objective returned {} at evaluation {}", v, evals_));
    }
    if (evals_ == 1 || v < best_.f) best_ = {x, v};
    return v;
  }

  OptimizerResult result() const {
    return {std::vector<double>(best_.x.data(), best_.x.data() + best_.x.size()), best_.f,
            evals_};
  }

 private:
  const Objective& f_;
  const OptimizerOptions& options_;
  std::size_t evals_ = 0;
  Vertex best_{Eigen::VectorXd(), 0.0};
};

}  // namespace

void OptimizerOptions::validate() const {
  if (!(tolerance > 0.0)) throw ArgumentError(fmt::format("tolerance must be > 0, got {}", tolerance));
  if (!(initial_radius >= tolerance)) {
    throw ArgumentError(fmt::format("initial radius {} below tolerance {}", initial_radius,
                                    tolerance));
  }
  if (max_evals < 1) throw ArgumentError("max_evals must be >= 1");
}

OptimizerResult minimize(const Objective& f, std::span<const double> x0,
                         const OptimizerOptions& options) {
  options.validate();
  if (x0.empty()) throw ArgumentError("cannot optimize over zero parameters");
  const auto d = static_cast<Eigen::Index>(x0.size());
  Search search(f, options);
  double rho = options.initial_radius;

  Eigen::VectorXd start(d);
  for (Eigen::Index i = 0; i < d; ++i) start(i) = x0[static_cast<std::size_t>(i)];
  std::vector<Vertex> simplex;
  simplex.push_back({start, search.evaluate(start)});

  auto rebuild = [&](Vertex pole) {
    simplex.assign(1, pole);
    for (Eigen::Index i = 0; i < d && !search.exhausted(); ++i) {
      Eigen::VectorXd x = pole.x;
      x(i) += rho;
      simplex.push_back({x, search.evaluate(x)});
    }
  };
  rebuild(simplex.front());

  // Returns false once the radius cannot shrink further.
  auto shrink = [&]() {
    if (rho <= options.tolerance) return false;
    rho = std::max(rho * kShrink, options.tolerance);
    return true;
  };

  while (!search.exhausted() && simplex.size() == static_cast<std::size_t>(d) + 1) {
    std::size_t pole = 0;
    for (std::size_t k = 1; k < simplex.size(); ++k) {
      if (simplex[k].f < simplex[pole].f) pole = k;
    }
    std::swap(simplex[0], simplex[pole]);
    const Vertex& b = simplex[0];

    Eigen::MatrixXd edges(d, d);
    Eigen::VectorXd rise(d);
    for (Eigen::Index k = 0; k < d; ++k) {
      const auto& v = simplex[static_cast<std::size_t>(k) + 1];
      edges.row(k) = (v.x - b.x).transpose();
      rise(k) = v.f - b.f;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(edges);
    if (!lu.isInvertible()) {
      rebuild(b);
      continue;
    }
    const Eigen::MatrixXd inv = lu.inverse();
    const Eigen::VectorXd grad = inv * rise;

    // Column k of inv is normal to the face opposite vertex k + 1.
    Eigen::Index far = 0, flat = 0;
    double far_len = 0.0, flat_dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < d; ++k) {
      const double len = edges.row(k).norm();
      const double dist = 1.0 / inv.col(k).norm();
      if (len > far_len) {
        far_len = len;
        far = k;
      }
      if (dist < flat_dist) {
        flat_dist = dist;
        flat = k;
      }
    }
    const bool too_long = far_len > kMaxEdgeLength * rho;
    const bool too_flat = flat_dist < kMinFaceDistance * rho;
    if (too_long || too_flat) {
      const Eigen::Index k = too_long ? far : flat;
      Eigen::VectorXd normal = inv.col(k).normalized();
      if (grad.dot(normal) > 0.0) normal = -normal;
      const Eigen::VectorXd x = b.x + kGeometryStep * rho * normal;
      simplex[static_cast<std::size_t>(k) + 1] = {x, search.evaluate(x)};
      continue;
    }

    const double gnorm = grad.norm();
    if (!(gnorm > 0.0)) {
      if (!shrink()) break;
      continue;
    }
    const Eigen::VectorXd x = b.x - (rho / gnorm) * grad;
    const double fx = search.evaluate(x);
    const double predicted = rho * gnorm;
    const double actual = b.f - fx;

    // Swap in the new point where it keeps the largest simplex volume.
    const Eigen::VectorXd coords = inv.transpose() * (x - b.x);
    Eigen::Index slot = 0;
    coords.cwiseAbs().maxCoeff(&slot);
    if (std::abs(coords(slot)) > 0.0) simplex[static_cast<std::size_t>(slot) + 1] = {x, fx};

    if (actual < kAcceptRatio * predicted && !shrink()) break;
  }
  return search.result();
}

}  // namespace nqaoa
