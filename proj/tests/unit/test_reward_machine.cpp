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
#include "eqdesign/ne_solver.hpp"
#include "eqdesign/reward_machine.hpp"

using namespace eqd;

TEST_CASE("delivery machines raise the worst NE of the delivery example") {
  Example1 ex = gen_example1();
  Product p1 = implement(ex.game, ex.m);
  Product p2 = implement(ex.game, ex.m_prime);
  CHECK(p1.game.num_states() == 6);
  CHECK(p2.game.num_states() == 12);
  CHECK(NeSolver(p1.game).global_extreme(Extreme::Min) == Rational(2, 3));
  CHECK(NeSolver(p2.game).global_extreme(Extreme::Min) == Rational(5, 6));
  CHECK(is_beta_rm(ex.m, 1));
  CHECK_FALSE(is_beta_rm(ex.m, 0));
}

TEST_CASE("product charges the global weight with the reward norm") {
  Example1 ex = gen_example1();
  Product p = implement(ex.game, ex.m);
  for (StateId x = 0; x < p.game.num_states(); ++x) {
    auto [s, q] = p.origin[x];
    auto r = ex.m.reward(q, s);
    CHECK(p.game.global_weight(x) == ex.game.global_weight(s) - static_cast<std::int64_t>(norm1(r)));
    CHECK(p.game.weight(0, x) == ex.game.weight(0, s) + static_cast<std::int64_t>(r[0]));
    CHECK(p.find(s, q) == x);
  }
}

TEST_CASE("subsidy schemes are single-state machines") {
  Example1 ex = gen_example1();
  std::vector<RewardVector> kappa(ex.game.num_states(), RewardVector{0});
  kappa[*ex.game.find_state("m")] = {1};
  RewardMachine rm = from_subsidy_scheme(kappa);
  CHECK(rm.num_states() == 1);
  Product p = implement(ex.game, rm);
  CHECK(p.game.num_states() == ex.game.num_states());
  CHECK(p.game.weight(0, *p.find(*ex.game.find_state("m"), 0)) == 1);
}

TEST_CASE("minimization merges equivalent states and drops unreachable ones") {
  Example1 ex = gen_example1();
  RewardMachine k2 = k_cycle_delivery_rm(2, ex.game);
  RewardMachine small = minimize(k2);
  CHECK(small.num_states() <= k2.num_states());
  // a machine with two identical zero states collapses to one
  const std::size_t S = ex.game.num_states();
  std::vector<RmState> next(2 * S);
  for (std::size_t c = 0; c < 2 * S; ++c) next[c] = c < S ? 1 : 0;
  RewardMachine twin(2, S, 1, 0, next, std::vector<RewardVector>(2 * S, RewardVector{0}));
  CHECK(minimize(twin).num_states() == 1);
  // minimization keeps the product values
  CHECK(NeSolver(implement(ex.game, small).game).global_extreme(Extreme::Min) == Rational(5, 6));
}

TEST_CASE("machine validation") {
  CHECK_THROWS_AS(RewardMachine(0, 1, 1, 0, {}, {}), ValidationError);
  CHECK_THROWS_AS(RewardMachine(1, 1, 1, 0, {1}, {RewardVector{0}}), ValidationError);
  CHECK_THROWS_AS(RewardMachine(1, 1, 2, 0, {0}, {RewardVector{0}}), ValidationError);
  Example1 ex = gen_example1();
  RewardMachine wrong(1, 2, 1, 0, {0, 0}, {RewardVector{0}, RewardVector{0}});
  CHECK_THROWS_AS(implement(ex.game, wrong), ValidationError);
}
