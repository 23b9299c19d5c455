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

#include "eqdesign/generators.hpp"
#include "eqdesign/synthesis.hpp"

using namespace eqd;

TEST_CASE("worst bisection on the delivery example follows the halving trace") {
  Example1 ex = gen_example1();
  EpsilonResult r = epsilon_search(ex.game, Rational(1, 4), false, Extreme::Min);
  CHECK(r.value == Rational(1, 8));
  CHECK(r.iterations == 4);
  REQUIRE(r.trace.size() == 4);
  CHECK(r.trace[0] == std::make_pair(Rational(0), Rational(1)));
  CHECK(r.trace[3] == std::make_pair(Rational(0), Rational(1, 8)));
  SearchOptions oracle{Backend::Oracle, 12};
  CHECK(epsilon_search(ex.game, Rational(1, 4), false, Extreme::Min, oracle).value == Rational(1, 8));
}

TEST_CASE("best bisection returns the lower end") {
  Example1 ex = gen_example1();
  EpsilonResult r = epsilon_search(ex.game, Rational(1, 10), false, Extreme::Max);
  CHECK(r.value <= Rational(1));
  CHECK(r.value > Rational(1) - Rational(1, 10));
  REQUIRE(r.witness);
  CHECK(r.witness->payoffs.global >= r.value);
}

TEST_CASE("no NE gives MinW without iterating") {
  Game g = gen_pennies_gadget();
  EpsilonResult r = epsilon_search(g, Rational(1, 10), false, Extreme::Min);
  CHECK_FALSE(r.has_ne);
  CHECK(r.iterations == 0);
  CHECK(r.value == Rational(min_max_weights(g)[g.num_players()].min));
}

TEST_CASE("replay strategy follows the lasso and pays nothing off it") {
  Example1 ex = gen_example1();
  AuxiliaryGame aux = build_auxiliary(ex.game, 1);
  EpsilonResult best = epsilon_search(aux.game, Rational(1, 10), true, Extreme::Max);
  REQUIRE(best.witness);
  const Lasso& l = best.witness->lasso;
  MealyStrategy replay = replay_strategy(aux, l);
  CHECK(replay.memory_size() == l.length() + 1);
  StrategyProfile prof(2);
  prof.strategies[0] = replay;
  prof.strategies[1] = best.witness->profile.at(1);
  CHECK(payoffs(aux.game, run_profile(aux.game, prof)) == best.witness->payoffs);
  RewardMachine rm = rm_from_lasso(aux, l);
  CHECK(is_beta_rm(rm, 1));
  CHECK(rm.num_states() <= l.length() + 1);
}

TEST_CASE("certified strong improvement on the delivery example") {
  Example1 ex = gen_example1();
  ImprovementQuery q;
  q.beta = 1;
  q.delta = Rational(1, 2);
  q.epsilon = Rational(1, 10);
  ImprovementAnswer a = decide_improvement(ex.game, q);
  CHECK(a.decision);
  REQUIRE(a.witness_rm);
  CHECK(is_beta_rm(*a.witness_rm, 1));
  CHECK(a.improved_value >= Rational(2, 3) - Rational(1, 10));
  NeSolver check(implement(ex.game, *a.witness_rm).game);
  CHECK(check.global_extreme(Extreme::Min) >= Rational(2, 3) - Rational(1, 10));

  q.delta = Rational(10);
  CHECK_FALSE(decide_improvement(ex.game, q).decision);
  CHECK_THROWS(synthesize_rm(ex.game, q));
}

TEST_CASE("weak improvement needs no refinement on the delivery example") {
  Example1 ex = gen_example1();
  ImprovementQuery q;
  q.beta = 1;
  q.delta = Rational(0);
  q.epsilon = Rational(1, 10);
  q.mode = ImprovementMode::Weak;
  ImprovementAnswer a = decide_improvement(ex.game, q);
  // the best NE already reaches 1 and rewards only cost
  CHECK_FALSE(a.decision);
}

TEST_CASE("strong Hamiltonian reduction needs a tour, not only a path") {
  CostDigraph path = CostDigraph::with_vertices(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  REQUIRE(has_hamiltonian_path(path));
  REQUIRE_FALSE(has_hamiltonian_cycle(path));
  ReductionInstance inst = hamiltonian_instance(path, false);
  ImprovementQuery q;
  q.beta = inst.beta;
  q.delta = inst.delta;
  q.epsilon = inst.epsilon;
  q.mode = ImprovementMode::Strong;
  q.method = ImprovementMethod::Certify;
  CHECK_FALSE(decide_improvement(inst.game, q).decision);
}
