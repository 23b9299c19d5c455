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

#include "eqdesign/mean_cycle.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "eqdesign/errors.hpp"

namespace eqd {

SccDecomposition strongly_connected_components(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, none), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  SccDecomposition out;
  out.comp.assign(n, none);
  std::size_t counter = 0;
  // explicit call stack: (node, next edge position)
  std::vector<std::pair<std::size_t, std::size_t>> calls;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != none) continue;
    calls.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!calls.empty()) {
      auto& [v, pos] = calls.back();
      if (pos < adj[v].size()) {
        std::size_t w = adj[v][pos++];
        if (index[w] == none) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          calls.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        while (true) {
          std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.comp[w] = out.count;
          if (w == v) break;
        }
        ++out.count;
      }
      std::size_t done = v;
      calls.pop_back();
      if (!calls.empty()) {
        std::size_t parent = calls.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return out;
}

namespace {

constexpr std::int64_t kNoWalk = std::numeric_limits<std::int64_t>::min();

// Karp's theorem on one strongly connected component.
Rational karp_max(const WeightedDigraph& g, const std::vector<std::size_t>& nodes,
                  const std::vector<std::size_t>& local) {
  const std::size_t m = nodes.size();
  if (m > 6000) throw LimitExceeded("strongly connected component too large for Karp's algorithm");
  std::vector<std::int64_t> d((m + 1) * m, kNoWalk);
  d[0] = 0;  // source: nodes[0]
  for (std::size_t k = 1; k <= m; ++k)
    for (std::size_t u = 0; u < m; ++u) {
      std::int64_t du = d[(k - 1) * m + u];
      if (du == kNoWalk) continue;
      for (auto [v, w] : g.out[nodes[u]]) {
        std::size_t lv = local[v];
        if (lv == static_cast<std::size_t>(-1)) continue;
        std::int64_t& slot = d[k * m + lv];
        slot = std::max(slot, du + w);
      }
    }
  std::optional<Rational> best;
  for (std::size_t v = 0; v < m; ++v) {
    std::int64_t dm = d[m * m + v];
    if (dm == kNoWalk) continue;
    std::optional<Rational> worst;
    for (std::size_t k = 0; k < m; ++k) {
      std::int64_t dk = d[k * m + v];
      if (dk == kNoWalk) continue;
      Rational r(dm - dk, static_cast<long long>(m - k));
      if (!worst || r < *worst) worst = r;
    }
    if (worst && (!best || *worst > *best)) best = worst;
  }
  return *best;
}

std::vector<Rational> mean_values(const WeightedDigraph& g, const std::vector<bool>& relevant) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t u = 0; u < n; ++u) {
    if (!relevant[u]) continue;
    if (g.out[u].empty()) throw ValidationError("node " + std::to_string(u) + " has no outgoing edge");
    for (auto [v, w] : g.out[u]) adj[u].push_back(v);
  }
  SccDecomposition scc = strongly_connected_components(adj);
  std::vector<std::vector<std::size_t>> members(scc.count);
  for (std::size_t v = 0; v < n; ++v)
    if (relevant[v]) members[scc.comp[v]].push_back(v);

  std::vector<std::optional<Rational>> comp_value(scc.count);
  std::vector<std::size_t> local(n, static_cast<std::size_t>(-1));
  for (std::size_t c = 0; c < scc.count; ++c) {
    const auto& nodes = members[c];
    if (nodes.empty()) continue;
    bool has_cycle = nodes.size() > 1;
    if (!has_cycle)
      for (auto [v, w] : g.out[nodes[0]]) has_cycle |= v == nodes[0];
    std::optional<Rational> best;
    if (has_cycle) {
      for (std::size_t k = 0; k < nodes.size(); ++k) local[nodes[k]] = k;
      best = karp_max(g, nodes, local);
      for (std::size_t v : nodes) local[v] = static_cast<std::size_t>(-1);
    }
    // components are numbered sinks first, so successors are already done
    for (std::size_t u : nodes)
      for (auto [v, w] : g.out[u])
        if (scc.comp[v] != c && comp_value[scc.comp[v]] && (!best || *comp_value[scc.comp[v]] > *best))
          best = comp_value[scc.comp[v]];
    comp_value[c] = best;
  }
  std::vector<Rational> out(n);
  for (std::size_t v = 0; v < n; ++v)
    if (relevant[v]) out[v] = *comp_value[scc.comp[v]];
  return out;
}

}  // namespace

Rational max_mean_cycle(const WeightedDigraph& g, std::size_t source) {
  std::vector<bool> reach(g.size(), false);
  std::vector<std::size_t> todo{source};
  reach[source] = true;
  while (!todo.empty()) {
    std::size_t u = todo.back();
    todo.pop_back();
    for (auto [v, w] : g.out[u])
      if (!reach[v]) {
        reach[v] = true;
        todo.push_back(v);
      }
  }
  return mean_values(g, reach)[source];
}

std::vector<Rational> max_mean_values(const WeightedDigraph& g) {
  return mean_values(g, std::vector<bool>(g.size(), true));
}

std::vector<Rational> min_mean_values(const WeightedDigraph& g) {
  WeightedDigraph neg(g.size());
  for (std::size_t u = 0; u < g.size(); ++u)
    for (auto [v, w] : g.out[u]) neg.add_edge(u, v, -w);
  auto vals = max_mean_values(neg);
  for (auto& r : vals) r = -r;
  return vals;
}

}  // namespace eqd
