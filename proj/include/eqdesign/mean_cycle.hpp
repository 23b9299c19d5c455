// Copyright 2026 The eqdesign Authors
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
#include <utility>
#include <vector>

#include "eqdesign/rational.hpp"

namespace eqd {

/// Directed graph with integer edge weights.
struct WeightedDigraph {
  explicit WeightedDigraph(std::size_t n = 0) : out(n) {}
  std::size_t size() const { return out.size(); }
  std::size_t add_node() {
    out.emplace_back();
    return out.size() - 1;
  }
  void add_edge(std::size_t u, std::size_t v, std::int64_t w) { out[u].emplace_back(v, w); }

  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> out;
};

/// Tarjan's algorithm. comp[v] is the component of v; components are numbered
/// in reverse topological order (a component only reaches lower numbers).
struct SccDecomposition {
  std::vector<std::size_t> comp;
  std::size_t count = 0;
};
SccDecomposition strongly_connected_components(const std::vector<std::vector<std::size_t>>& adj);

/// Maximum cycle mean over cycles reachable from `source`. Every reachable
/// node must have an outgoing edge.
Rational max_mean_cycle(const WeightedDigraph& g, std::size_t source);

/// For every node, the maximum cycle mean reachable from it.
std::vector<Rational> max_mean_values(const WeightedDigraph& g);
/// For every node, the minimum cycle mean reachable from it.
std::vector<Rational> min_mean_values(const WeightedDigraph& g);

}  // namespace eqd
