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

#include "eqdesign/strategy.hpp"

#include <map>

#include "eqdesign/errors.hpp"

namespace eqd {

MealyStrategy::MealyStrategy(std::size_t num_states, std::size_t memory_size, MemoryId initial,
                             std::vector<MemoryId> next, std::vector<ActionId> action)
    : num_states_(num_states),
      memory_size_(memory_size),
      initial_(initial),
      next_(std::move(next)),
      action_(std::move(action)) {
  if (memory_size_ == 0) throw ValidationError("strategy memory is empty");
  if (initial_ >= memory_size_) throw ValidationError("initial memory out of range");
  if (next_.size() != num_states_ * memory_size_ || action_.size() != num_states_ * memory_size_)
    throw ValidationError("strategy tables do not cover states x memory");
  for (MemoryId t : next_)
    if (t >= memory_size_) throw ValidationError("memory update out of range");
}

MealyStrategy MealyStrategy::memoryless(std::vector<ActionId> action_per_state) {
  std::size_t n = action_per_state.size();
  return MealyStrategy(n, 1, 0, std::vector<MemoryId>(n, 0), std::move(action_per_state));
}

void validate_strategy(const Game& game, PlayerId i, const MealyStrategy& sigma) {
  if (sigma.num_states() != game.num_states())
    throw ValidationError("strategy of player " + game.player_name(i) + " covers " +
                          std::to_string(sigma.num_states()) + " states, game has " +
                          std::to_string(game.num_states()));
  for (StateId s = 0; s < game.num_states(); ++s)
    for (MemoryId t = 0; t < sigma.memory_size(); ++t)
      if (!game.allows(s, i, sigma.act(s, t)))
        throw ValidationError("strategy of player " + game.player_name(i) + " plays a forbidden action at " +
                              game.state_name(s));
}

bool StrategyProfile::complete() const {
  for (const auto& s : strategies)
    if (!s) return false;
  return true;
}

const MealyStrategy& StrategyProfile::at(PlayerId i) const {
  if (i >= strategies.size() || !strategies[i])
    throw ValidationError("profile has no strategy for player " + std::to_string(i));
  return *strategies[i];
}

StrategyProfile StrategyProfile::without(PlayerId i) const {
  StrategyProfile p = *this;
  p.strategies.at(i).reset();
  return p;
}

namespace {

void check_profile(const Game& game, const StrategyProfile& profile) {
  if (profile.size() != game.num_players()) throw ValidationError("profile size does not match the game");
  for (PlayerId i = 0; i < game.num_players(); ++i) validate_strategy(game, i, profile.at(i));
}

}  // namespace

Lasso run_profile(const Game& game, const StrategyProfile& profile, StateId start) {
  check_profile(game, profile);
  const std::size_t n = game.num_players();
  std::vector<std::size_t> config(n + 1);
  config[0] = start;
  for (PlayerId i = 0; i < n; ++i) config[i + 1] = profile.at(i).initial();

  std::map<std::vector<std::size_t>, std::size_t> seen;
  std::vector<StateId> states;
  std::vector<JointAction> actions;
  while (true) {
    auto [it, fresh] = seen.emplace(config, states.size());
    if (!fresh) {
      std::size_t p = it->second;
      Lasso l;
      l.prefix.assign(states.begin(), states.begin() + static_cast<std::ptrdiff_t>(p));
      l.prefix_actions.assign(actions.begin(), actions.begin() + static_cast<std::ptrdiff_t>(p));
      l.cycle.assign(states.begin() + static_cast<std::ptrdiff_t>(p), states.end());
      l.cycle_actions.assign(actions.begin() + static_cast<std::ptrdiff_t>(p), actions.end());
      return l;
    }
    StateId s = config[0];
    JointAction a(n);
    for (PlayerId i = 0; i < n; ++i) {
      a[i] = profile.at(i).act(s, config[i + 1]);
      config[i + 1] = profile.at(i).next(s, config[i + 1]);
    }
    states.push_back(s);
    actions.push_back(a);
    config[0] = game.successor(s, a);
  }
}

Lasso run_profile(const Game& game, const StrategyProfile& profile) {
  return run_profile(game, profile, game.initial());
}

std::vector<StateId> simulate(const Game& game, const StrategyProfile& profile, StateId start, std::size_t steps) {
  check_profile(game, profile);
  std::vector<MemoryId> mem;
  for (PlayerId i = 0; i < game.num_players(); ++i) mem.push_back(profile.at(i).initial());
  std::vector<StateId> out;
  StateId s = start;
  for (std::size_t k = 0; k < steps; ++k) {
    out.push_back(s);
    JointAction a(game.num_players());
    for (PlayerId i = 0; i < game.num_players(); ++i) {
      a[i] = profile.at(i).act(s, mem[i]);
      mem[i] = profile.at(i).next(s, mem[i]);
    }
    s = game.successor(s, a);
  }
  return out;
}

}  // namespace eqd
