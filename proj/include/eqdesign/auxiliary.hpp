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
#include <optional>
#include <utility>
#include <vector>

#include "eqdesign/game.hpp"
#include "eqdesign/reward_machine.hpp"
#include "eqdesign/strategy.hpp"

namespace eqd {

/// All natural vectors of length n with entry sum at most beta, in
/// lexicographic order (the zero vector first).
std::vector<RewardVector> reward_vectors(std::size_t n, Budget beta);

/// Game G' where agent 0 picks a reward vector every step. Player i of the
/// source game is player i + 1 here. A state (s, v) remembers the last vector
/// played. The global weight of G' is agent 0's weight w_g(s) - |v|.
struct AuxiliaryGame {
  Game game;
  Budget beta = 0;
  std::size_t num_source_states = 0;
  std::vector<RewardVector> vectors;
  /// Action id in `game` of every vector.
  std::vector<ActionId> vector_action;
  /// (source state, vector index) of every state of `game`.
  std::vector<std::pair<StateId, std::size_t>> origin;

  std::optional<StateId> find(StateId s, std::size_t v) const;
  std::size_t vector_index(const RewardVector& v) const;
  /// Vector index played by agent 0 under `action`.
  std::size_t vector_of_action(ActionId action) const;
};

AuxiliaryGame build_auxiliary(const Game& game, Budget beta);

/// Agent-0 strategy with memory Q: on (s, v) in q it pays reward(q, s) and
/// moves to next(q, s).
MealyStrategy rm_to_strategy(const AuxiliaryGame& aux, const RewardMachine& rm);

/// Machine with states (t, v) reachable from (t0, 0): reading s in (t, v) it
/// pays rho0((s, v), t) and moves to (gamma0((s, v), t), that payment).
/// Pairs (s, v) that are not states of G' never occur in a play and are
/// mapped to a zero self-loop.
RewardMachine strategy_to_rm(const AuxiliaryGame& aux, const MealyStrategy& sigma0);

/// Strategy of player i in G†M as a strategy of player i + 1 in G' with
/// memory T x Q.
MealyStrategy lift_strategy(const AuxiliaryGame& aux, const Product& product, const RewardMachine& rm,
                            PlayerId i, const MealyStrategy& sigma);

/// Strategy of player i + 1 in G' as a strategy of player i in G†M with
/// memory T x V, where the second component tracks the last reward paid.
MealyStrategy lower_strategy(const AuxiliaryGame& aux, const Product& product, const RewardMachine& rm,
                             PlayerId i, const MealyStrategy& sigma_hat);

}  // namespace eqd
