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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqdesign/game.hpp"

namespace eqd {

using RmState = std::size_t;
using RewardVector = std::vector<std::uint64_t>;

/// Per-step reward capacity: the Manhattan norm bound of every emitted vector.
using Budget = std::uint64_t;

std::uint64_t norm1(const RewardVector& v);

/// Mealy machine over game states emitting one natural reward per player.
/// Both tables are indexed (q, s): on reading s in q the machine pays
/// reward(q, s) and moves to next(q, s).
class RewardMachine {
 public:
  RewardMachine(std::size_t num_states, std::size_t num_game_states, std::size_t num_players, RmState initial,
                std::vector<RmState> next, std::vector<RewardVector> reward,
                std::vector<std::string> names = {});

  std::size_t num_states() const { return num_states_; }
  std::size_t num_game_states() const { return num_game_states_; }
  std::size_t num_players() const { return num_players_; }
  RmState initial() const { return initial_; }
  RmState next(RmState q, StateId s) const { return next_[q * num_game_states_ + s]; }
  const RewardVector& reward(RmState q, StateId s) const { return reward_[q * num_game_states_ + s]; }
  const std::string& state_name(RmState q) const { return names_[q]; }
  const std::vector<std::string>& state_names() const { return names_; }

  /// Copy with reward(q, s) replaced.
  RewardMachine with_reward(RmState q, StateId s, RewardVector r) const;

  friend bool operator==(const RewardMachine&, const RewardMachine&) = default;

 private:
  std::size_t num_states_, num_game_states_, num_players_;
  RmState initial_;
  std::vector<RmState> next_;
  std::vector<RewardVector> reward_;
  std::vector<std::string> names_;
};

/// Throws ValidationError unless the machine reads exactly the game's states
/// and pays one entry per player.
void check_compatible(const Game& game, const RewardMachine& rm);

bool is_beta_rm(const RewardMachine& rm, Budget beta);

/// Single-state machine paying kappa[s] on every visit to s.
RewardMachine from_subsidy_scheme(const std::vector<RewardVector>& kappa);

/// Machine for the delivery game of gen_example1() that pays 1 to the robot
/// once every k completed t -> l -> m rounds. States (j, phase) with phase 0
/// waiting for t, 1 waiting for l, 2 waiting for m.
RewardMachine k_cycle_delivery_rm(std::size_t k, const Game& delivery_game);

/// Equivalent machine restricted to reachable states with equivalent states
/// merged (Moore partition refinement).
RewardMachine minimize(const RewardMachine& rm);

/// The implementation G†M with the origin (s, q) of every product state.
struct Product {
  Game game;
  std::vector<std::pair<StateId, RmState>> origin;
  std::optional<StateId> find(StateId s, RmState q) const;
};

/// Product restricted to pairs reachable from (s_in, q_0). Player weights gain
/// the reward, the global weight loses its norm.
Product implement(const Game& game, const RewardMachine& rm);

}  // namespace eqd
