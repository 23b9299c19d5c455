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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eqdesign/rational.hpp"

namespace eqd {

using PlayerId = std::size_t;
using StateId = std::size_t;
using ActionId = std::size_t;

/// One action per player, indexed by player.
using JointAction = std::vector<ActionId>;

/// Weighted concurrent game structure. Immutable once built.
///
/// Joint actions available at a state are numbered in mixed radix over the
/// players' protocol lists, player 0 most significant, so index order is the
/// lexicographic order of the protocol positions.
class Game {
 public:
  /// Empty placeholder with no states; only GameBuilder makes real games.
  Game() = default;

  std::size_t num_players() const { return player_names_.size(); }
  std::size_t num_states() const { return state_names_.size(); }
  std::size_t num_actions() const { return action_names_.size(); }

  const std::string& player_name(PlayerId i) const { return player_names_.at(i); }
  const std::string& state_name(StateId s) const { return state_names_.at(s); }
  const std::string& action_name(ActionId a) const { return action_names_.at(a); }
  const std::vector<std::string>& player_names() const { return player_names_; }
  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::vector<std::string>& action_names() const { return action_names_; }

  std::optional<PlayerId> find_player(const std::string& name) const;
  std::optional<StateId> find_state(const std::string& name) const;
  std::optional<ActionId> find_action(const std::string& name) const;

  StateId initial() const { return initial_; }

  /// Sorted list d_i(s).
  const std::vector<ActionId>& protocol(StateId s, PlayerId i) const { return protocol_[s][i]; }
  bool allows(StateId s, PlayerId i, ActionId a) const;

  std::size_t joint_count(StateId s) const { return successor_[s].size(); }
  JointAction joint_action(StateId s, std::size_t index) const;
  /// Throws ValidationError when some component is not protocol-allowed.
  std::size_t joint_index(StateId s, const JointAction& a) const;
  /// Index of the joint action obtained from `index` by replacing player i's
  /// choice with `a`.
  std::size_t replace_action(StateId s, std::size_t index, PlayerId i, ActionId a) const;

  StateId successor(StateId s, std::size_t joint_index) const { return successor_[s][joint_index]; }
  StateId successor(StateId s, const JointAction& a) const { return successor_[s][joint_index(s, a)]; }

  std::int64_t weight(PlayerId i, StateId s) const { return weights_[i][s]; }
  std::span<const std::int64_t> weights(PlayerId i) const { return weights_[i]; }
  std::int64_t global_weight(StateId s) const { return global_weights_[s]; }
  std::span<const std::int64_t> global_weights() const { return global_weights_; }

 private:
  friend class GameBuilder;

  std::vector<std::string> player_names_, action_names_, state_names_;
  StateId initial_ = 0;
  std::vector<std::vector<std::vector<ActionId>>> protocol_;  // [s][i]
  std::vector<std::vector<std::size_t>> stride_;              // [s][i]
  std::vector<std::vector<StateId>> successor_;               // [s][joint]
  std::vector<std::vector<std::int64_t>> weights_;            // [i][s]
  std::vector<std::int64_t> global_weights_;
};

/// Incremental construction with validation in build().
class GameBuilder {
 public:
  PlayerId add_player(const std::string& name);
  ActionId add_action(const std::string& name);
  StateId add_state(const std::string& name);
  /// Returns the id of an existing action or creates it.
  ActionId action(const std::string& name);

  void set_initial(StateId s) { initial_ = s; }
  void set_protocol(StateId s, PlayerId i, std::vector<ActionId> actions);
  void set_weight(PlayerId i, StateId s, std::int64_t w);
  void set_global_weight(StateId s, std::int64_t w);
  void set_transition(StateId s, const JointAction& a, StateId target);
  /// Fills every protocol-allowed joint action of every state.
  void set_transitions(const std::function<StateId(StateId, const JointAction&)>& tr);

  std::size_t num_players() const { return players_.size(); }
  std::size_t num_states() const { return states_.size(); }

  Game build() const;

 private:
  std::vector<std::string> players_, actions_, states_;
  std::optional<StateId> initial_;
  std::vector<std::vector<std::optional<std::vector<ActionId>>>> protocol_;  // [s][i]
  std::vector<std::vector<std::optional<std::int64_t>>> weights_;            // [i][s]
  std::vector<std::optional<std::int64_t>> global_;
  std::vector<std::vector<std::pair<JointAction, StateId>>> transitions_;    // [s]
};

/// (MinW, MaxW) of one weight table.
struct WeightRange {
  std::int64_t min = 0;
  std::int64_t max = 0;
};

/// Ranges for each player followed by the global weight at index num_players().
std::vector<WeightRange> min_max_weights(const Game& game);

/// Every state reachable from the initial state under some joint action sequence.
std::vector<bool> reachable_states(const Game& game);

}  // namespace eqd
