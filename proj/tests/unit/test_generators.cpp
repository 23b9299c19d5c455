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

#include "eqdesign/errors.hpp"
#include "eqdesign/generators.hpp"
#include "eqdesign/io.hpp"

using namespace eqd;

TEST_CASE("delivery example arena") {
  Example1 ex = gen_example1();
  const Game& g = ex.game;
  CHECK(g.num_players() == 1);
  CHECK(g.num_states() == 4);
  CHECK(g.state_name(g.initial()) == "t");
  CHECK(g.global_weight(*g.find_state("m")) == 2);
  CHECK(g.global_weight(*g.find_state("l")) == 1);
  CHECK(g.protocol(*g.find_state("m"), 0).size() == 1);
  CHECK(ex.m.num_states() == 3);
}

TEST_CASE("random generators are deterministic") {
  RandomGameSizes sz;
  sz.states = 4;
  CHECK(serialize_game(gen_random_game(5, sz)) == serialize_game(gen_random_game(5, sz)));
  CHECK(serialize_game(gen_random_game(5, sz)) != serialize_game(gen_random_game(6, sz)));
  Game g = gen_random_game(9, sz);
  CHECK(serialize_rm(gen_random_rm(9, g, 2, 2), g) == serialize_rm(gen_random_rm(9, g, 2, 2), g));
  CHECK(is_beta_rm(gen_random_rm(9, g, 2, 2), 2));
  sz.states = 65;
  CHECK_THROWS_AS(gen_random_game(1, sz), LimitExceeded);
}

TEST_CASE("TSP reduction size and brute force") {
  CostDigraph g = gen_random_tsp(1, 4, 1, 9);
  CHECK(g.edges.size() == 12);
  Game game = gen_tsp_game(g);
  CHECK(game.num_states() == g.edges.size() + 1);
  CHECK(game.num_players() == 4);
  auto cost = brute_force_tour_cost(g);
  REQUIRE(cost);
  CHECK(*cost >= 4);
  CHECK(*cost <= 36);

  CostDigraph line = CostDigraph::with_vertices(3);
  line.add_edge(0, 1, 1);
  line.add_edge(1, 2, 1);
  CHECK_FALSE(brute_force_tour_cost(line).has_value());
  CHECK(has_hamiltonian_path(line));
  CHECK_FALSE(has_hamiltonian_cycle(line));
}

TEST_CASE("digraph validation") {
  CostDigraph g = CostDigraph::with_vertices(2);
  g.add_edge(0, 0);
  CHECK_THROWS_AS(g.validate(false), ValidationError);
  CostDigraph h = CostDigraph::with_vertices(2);
  h.add_edge(0, 1);
  CHECK_NOTHROW(h.validate(false));
  CHECK_THROWS_AS(h.validate(true), ValidationError);
}

TEST_CASE("Hamiltonian reductions add the pennies players") {
  CostDigraph g = CostDigraph::with_vertices(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 0);
  Game strong = gen_hamiltonian_game(g);
  Game weak = gen_hamiltonian_complement_game(g);
  CHECK(strong.num_players() == 5);
  CHECK(strong.find_player(kPennies1).has_value());
  CHECK(strong.find_state(kBoxState).has_value());
  StateId box = *weak.find_state(kBoxState), tri = *weak.find_state(kTriangleState);
  CHECK(weak.weight(*weak.find_player(kPennies1), box) == 1);
  CHECK(weak.weight(*weak.find_player(kPennies2), tri) == 1);
  for (StateId s = 0; s < strong.num_states(); ++s) CHECK(strong.weight(*strong.find_player(kPennies1), s) == 0);
  ReductionInstance inst = hamiltonian_instance(g, false);
  CHECK(inst.beta == 1);
  CHECK(inst.delta == Rational(1, 2));
}
