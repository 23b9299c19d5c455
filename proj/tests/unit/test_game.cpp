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
#include "eqdesign/game.hpp"
#include "eqdesign/generators.hpp"
#include "eqdesign/lasso.hpp"
#include "eqdesign/strategy.hpp"

using namespace eqd;

namespace {

// Two players, two states; the joint action (a, a) stays, anything else moves.
Game tiny() {
  GameBuilder b;
  b.add_player("p");
  b.add_player("q");
  ActionId a = b.add_action("a"), c = b.add_action("c");
  StateId s0 = b.add_state("s0"), s1 = b.add_state("s1");
  b.set_initial(s0);
  for (StateId s : {s0, s1}) {
    b.set_protocol(s, 0, {a, c});
    b.set_protocol(s, 1, {a, c});
    b.set_global_weight(s, static_cast<std::int64_t>(s));
    for (PlayerId i : {0, 1}) b.set_weight(i, s, static_cast<std::int64_t>(s + i));
  }
  b.set_transitions([&](StateId s, const JointAction& j) { return j[0] == a && j[1] == a ? s : 1 - s; });
  return b.build();
}

}  // namespace

TEST_CASE("joint actions use mixed radix with player 0 most significant") {
  Game g = tiny();
  REQUIRE(g.joint_count(0) == 4);
  CHECK(g.joint_action(0, 0) == JointAction{0, 0});
  CHECK(g.joint_action(0, 1) == JointAction{0, 1});
  CHECK(g.joint_action(0, 2) == JointAction{1, 0});
  CHECK(g.joint_index(0, {1, 1}) == 3);
  CHECK(g.replace_action(0, 0, 1, 1) == 1);
  CHECK(g.successor(0, JointAction{0, 0}) == 0);
  CHECK(g.successor(0, JointAction{1, 0}) == 1);
}

TEST_CASE("builder rejects incomplete games") {
  GameBuilder b;
  b.add_player("p");
  ActionId a = b.add_action("a");
  StateId s = b.add_state("s");
  b.set_initial(s);
  b.set_protocol(s, 0, {a});
  b.set_weight(0, s, 0);
  SUBCASE("missing transition") {
    b.set_global_weight(s, 0);
    CHECK_THROWS_AS(b.build(), ValidationError);
  }
  SUBCASE("missing global weight") {
    b.set_transition(s, {a}, s);
    CHECK_THROWS_AS(b.build(), ValidationError);
  }
  SUBCASE("empty protocol") {
    b.set_global_weight(s, 0);
    b.set_transition(s, {a}, s);
    b.set_protocol(s, 0, {});
    CHECK_THROWS_AS(b.build(), ValidationError);
  }
}

TEST_CASE("weight ranges and reachability") {
  Game g = tiny();
  auto r = min_max_weights(g);
  REQUIRE(r.size() == 3);
  CHECK(r[0].min == 0);
  CHECK(r[1].max == 2);
  CHECK(r[2].min == 0);
  CHECK(r[2].max == 1);
  auto reach = reachable_states(g);
  CHECK(reach[0]);
  CHECK(reach[1]);
}

TEST_CASE("lasso payoffs on the delivery robot") {
  Example1 ex = gen_example1();
  Lasso l = make_lasso(ex.game, std::vector<std::string>{}, std::vector<std::string>{"t", "l", "m"});
  CHECK(l.length() == 3);
  Payoffs p = payoffs(ex.game, l);
  CHECK(p.global == Rational(1));
  CHECK(p.players[0] == Rational(0));
  Lasso r = make_lasso(ex.game, std::vector<std::string>{}, std::vector<std::string>{"t", "r"});
  CHECK(payoffs(ex.game, r).global == Rational(0));
  CHECK_THROWS_AS(make_lasso(ex.game, std::vector<std::string>{}, std::vector<std::string>{"t", "m"}),
                  ValidationError);
}

TEST_CASE("run_profile stops at the first repeated configuration") {
  Example1 ex = gen_example1();
  const Game& g = ex.game;
  // memoryless: t -> l, l -> m, m -> t, r -> t
  std::vector<ActionId> act(g.num_states());
  act[*g.find_state("t")] = *g.find_action("l");
  act[*g.find_state("l")] = *g.find_action("m");
  act[*g.find_state("m")] = *g.find_action("t");
  act[*g.find_state("r")] = *g.find_action("t");
  StrategyProfile prof(1);
  prof.strategies[0] = MealyStrategy::memoryless(act);
  Lasso l = run_profile(g, prof);
  CHECK(l.prefix.empty());
  CHECK(l.cycle.size() == 3);
  auto steps = simulate(g, prof, g.initial(), 7);
  CHECK(steps.size() == 7);
  CHECK(steps[3] == g.initial());
}
