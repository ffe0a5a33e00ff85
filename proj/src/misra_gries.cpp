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

#include "nqaoa/circuits.hpp"
#include "nqaoa/errors.hpp"

namespace nqaoa {

namespace {

constexpr int kUncolored = -1;

class EdgeColorer {
 public:
  EdgeColorer(std::size_t n, std::span<const Edge> edges)
      : n_(n), adj_(n), color_(n * n, kUncolored) {
    for (const auto& [u, v] : edges) {
      if (u >= n || v >= n || u == v) {
        throw ArgumentError(fmt::format("edge ({}, {}) invalid for {} vertices", u, v, n));
      }
      if (std::find(adj_[u].begin(), adj_[u].end(), v) != adj_[u].end()) {
        throw ArgumentError(fmt::format("duplicate edge ({}, {})", u, v));
      }
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& a : adj_) {
      std::sort(a.begin(), a.end());
      max_degree_ = std::max(max_degree_, a.size());
    }
  }

  int color(std::size_t u, std::size_t v) const { return color_[u * n_ + v]; }

  void color_edge(std::size_t u, std::size_t v) {
    std::vector<std::size_t> fan = maximal_fan(u, v);
    const int c = free_color(u);
    const int d = free_color(fan.back());
    invert_path(u, c, d);
    const auto w = std::find_if(fan.begin(), fan.end(),
                                [&](std::size_t x) { return is_free(x, d); });
    if (w == fan.end()) throw InternalError("fan has no vertex with the free color");
    for (auto it = fan.begin(); it != w; ++it) set(u, *it, color(u, *(it + 1)));
    set(u, *w, d);
  }

 private:
  void set(std::size_t u, std::size_t v, int c) {
    color_[u * n_ + v] = c;
    color_[v * n_ + u] = c;
  }

  bool is_free(std::size_t v, int c) const {
    for (auto w : adj_[v]) {
      if (color(v, w) == c) return false;
    }
    return true;
  }

  int free_color(std::size_t v) const {
    for (int c = 0; c <= static_cast<int>(max_degree_); ++c) {
      if (is_free(v, c)) return c;
    }
    throw InternalError("no free color within max degree + 1");
  }

  std::vector<std::size_t> maximal_fan(std::size_t u, std::size_t v) const {
    std::vector<std::size_t> fan{v};
    bool extended = true;
    while (extended) {
      extended = false;
      for (auto w : adj_[u]) {
        const int cw = color(u, w);
        if (cw == kUncolored) continue;
        if (std::find(fan.begin(), fan.end(), w) != fan.end()) continue;
        if (is_free(fan.back(), cw)) {
          fan.push_back(w);
          extended = true;
        }
      }
    }
    return fan;
  }

  // Swaps colors c and d along the maximal path from u that starts with d.
  void invert_path(std::size_t u, int c, int d) {
    std::vector<Edge> path;
    std::size_t x = u;
    int want = d;
    for (std::size_t guard = 0; guard <= n_ * n_; ++guard) {
      auto it = std::find_if(adj_[x].begin(), adj_[x].end(),
                             [&](std::size_t w) { return color(x, w) == want; });
      if (it == adj_[x].end()) break;
      path.emplace_back(x, *it);
      x = *it;
      want = want == d ? c : d;
    }
    for (const auto& [a, b] : path) set(a, b, color(a, b) == d ? c : d);
  }

  std::size_t n_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<int> color_;
  std::size_t max_degree_ = 0;
};

}  // namespace

std::vector<std::size_t> misra_gries_coloring(std::size_t n, std::span<const Edge> edges) {
  EdgeColorer colorer(n, edges);
  for (const auto& [u, v] : edges) colorer.color_edge(u, v);
  std::vector<std::size_t> out;
  out.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    const int c = colorer.color(u, v);
    if (c == kUncolored) throw InternalError("edge left uncolored");
    out.push_back(static_cast<std::size_t>(c));
  }
  return out;
}

bool is_proper_edge_coloring(std::size_t n, std::span<const Edge> edges,
                             std::span<const std::size_t> colors) {
  if (colors.size() != edges.size()) return false;
  std::vector<std::vector<std::size_t>> seen(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (auto v : {edges[e].first, edges[e].second}) {
      if (v >= n) return false;
      auto& s = seen[v];
      if (std::find(s.begin(), s.end(), colors[e]) != s.end()) return false;
      s.push_back(colors[e]);
    }
  }
  return true;
}

}  // namespace nqaoa
