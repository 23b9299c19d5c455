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

#include <doctest.h>

#include "eqdesign/mean_cycle.hpp"

using namespace eqd;

TEST_CASE("Karp mean cycle values") {
  // 0 -> 1 -> 0 with weights 1, 2; 1 -> 2 self-loop of weight 5 at 2
  WeightedDigraph g(3);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 0, 2);
  g.add_edge(1, 2, -7);
  g.add_edge(2, 2, 5);
  auto hi = max_mean_values(g);
  auto lo = min_mean_values(g);
  CHECK(hi[0] == Rational(5));
  CHECK(hi[2] == Rational(5));
  CHECK(lo[0] == Rational(3, 2));
  CHECK(lo[2] == Rational(5));
  CHECK(max_mean_cycle(g, 0) == Rational(5));
}

TEST_CASE("mean of a long cycle is exact") {
  WeightedDigraph g(7);
  for (std::size_t v = 0; v < 7; ++v) g.add_edge(v, (v + 1) % 7, v == 0 ? 1 : 0);
  CHECK(max_mean_values(g)[3] == Rational(1, 7));
}

TEST_CASE("strongly connected components are numbered sinks first") {
  std::vector<std::vector<std::size_t>> adj{{1}, {0, 2}, {3}, {2}};
  auto scc = strongly_connected_components(adj);
  CHECK(scc.count == 2);
  CHECK(scc.comp[0] == scc.comp[1]);
  CHECK(scc.comp[2] == scc.comp[3]);
  CHECK(scc.comp[2] < scc.comp[0]);
}
