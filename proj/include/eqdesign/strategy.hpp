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
#include <vector>

#include "eqdesign/game.hpp"
#include "eqdesign/lasso.hpp"

namespace eqd {

using MemoryId = std::size_t;

/// Finite-memory strategy reading states only: in state s with memory t the
/// player plays act(s, t) and moves its memory to next(s, t).
class MealyStrategy {
 public:
  MealyStrategy(std::size_t num_states, std::size_t memory_size, MemoryId initial,
                std::vector<MemoryId> next, std::vector<ActionId> action);
  static MealyStrategy memoryless(std::vector<ActionId> action_per_state);

  std::size_t num_states() const { return num_states_; }
  std::size_t memory_size() const { return memory_size_; }
  MemoryId initial() const { return initial_; }
  MemoryId next(StateId s, MemoryId t) const { return next_[s * memory_size_ + t]; }
  ActionId act(StateId s, MemoryId t) const { return action_[s * memory_size_ + t]; }

 private:
  std::size_t num_states_;
  std::size_t memory_size_;
  MemoryId initial_;
  std::vector<MemoryId> next_;
  std::vector<ActionId> action_;
};

/// Throws ValidationError unless every act(s, t) is in d_i(s).
void validate_strategy(const Game& game, PlayerId i, const MealyStrategy& sigma);

/// One optional strategy per player; an empty slot marks a free player.
struct StrategyProfile {
  std::vector<std::optional<MealyStrategy>> strategies;

  StrategyProfile() = default;
  explicit StrategyProfile(std::size_t n) : strategies(n) {}
  std::size_t size() const { return strategies.size(); }
  bool complete() const;
  const MealyStrategy& at(PlayerId i) const;
  StrategyProfile without(PlayerId i) const;
};

/// Outcome of a complete profile from `start`, cut at the first repeated
/// (state, memory vector) configuration.
Lasso run_profile(const Game& game, const StrategyProfile& profile, StateId start);
Lasso run_profile(const Game& game, const StrategyProfile& profile);

/// The first `steps` states of the outcome, by direct simulation.
std::vector<StateId> simulate(const Game& game, const StrategyProfile& profile, StateId start, std::size_t steps);

}  // namespace eqd
