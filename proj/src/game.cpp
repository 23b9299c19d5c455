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

#include "eqdesign/game.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "eqdesign/errors.hpp"

namespace eqd {

namespace {

template <class T>
std::optional<std::size_t> index_of(const std::vector<T>& v, const T& x) {
  auto it = std::find(v.begin(), v.end(), x);
  if (it == v.end()) return std::nullopt;
  return static_cast<std::size_t>(it - v.begin());
}

std::string joint_to_string(const std::vector<std::string>& names, const JointAction& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ",";
    out += a[i] < names.size() ? names[a[i]] : "?";
  }
  return out + ")";
}

}  // namespace

std::optional<PlayerId> Game::find_player(const std::string& name) const {
  return index_of(player_names_, name);
}
std::optional<StateId> Game::find_state(const std::string& name) const {
  return index_of(state_names_, name);
}
std::optional<ActionId> Game::find_action(const std::string& name) const {
  return index_of(action_names_, name);
}

bool Game::allows(StateId s, PlayerId i, ActionId a) const {
  const auto& d = protocol_[s][i];
  return std::binary_search(d.begin(), d.end(), a);
}

JointAction Game::joint_action(StateId s, std::size_t index) const {
  JointAction a(num_players());
  for (PlayerId i = 0; i < num_players(); ++i) {
    const auto& d = protocol_[s][i];
    a[i] = d[(index / stride_[s][i]) % d.size()];
  }
  return a;
}

std::size_t Game::joint_index(StateId s, const JointAction& a) const {
  if (a.size() != num_players())
    throw ValidationError("joint action has " + std::to_string(a.size()) + " components, game has " +
                          std::to_string(num_players()) + " players");
  std::size_t idx = 0;
  for (PlayerId i = 0; i < num_players(); ++i) {
    const auto& d = protocol_[s][i];
    auto it = std::lower_bound(d.begin(), d.end(), a[i]);
    if (it == d.end() || *it != a[i])
      throw ValidationError("action " + joint_to_string(action_names_, a) + " not allowed for player " +
                            player_names_[i] + " at state " + state_names_[s]);
    idx += static_cast<std::size_t>(it - d.begin()) * stride_[s][i];
  }
  return idx;
}

std::size_t Game::replace_action(StateId s, std::size_t index, PlayerId i, ActionId a) const {
  const auto& d = protocol_[s][i];
  std::size_t cur = (index / stride_[s][i]) % d.size();
  auto it = std::lower_bound(d.begin(), d.end(), a);
  std::size_t pos = static_cast<std::size_t>(it - d.begin());
  return index - cur * stride_[s][i] + pos * stride_[s][i];
}

PlayerId GameBuilder::add_player(const std::string& name) {
  players_.push_back(name);
  weights_.emplace_back(states_.size());
  for (auto& row : protocol_) row.emplace_back();
  return players_.size() - 1;
}

ActionId GameBuilder::add_action(const std::string& name) {
  actions_.push_back(name);
  return actions_.size() - 1;
}

ActionId GameBuilder::action(const std::string& name) {
  if (auto i = index_of(actions_, name)) return *i;
  return add_action(name);
}

StateId GameBuilder::add_state(const std::string& name) {
  states_.push_back(name);
  protocol_.emplace_back(players_.size());
  for (auto& w : weights_) w.emplace_back();
  global_.emplace_back();
  transitions_.emplace_back();
  return states_.size() - 1;
}

void GameBuilder::set_protocol(StateId s, PlayerId i, std::vector<ActionId> actions) {
  std::sort(actions.begin(), actions.end());
  actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
  protocol_.at(s).at(i) = std::move(actions);
}

void GameBuilder::set_weight(PlayerId i, StateId s, std::int64_t w) { weights_.at(i).at(s) = w; }

void GameBuilder::set_global_weight(StateId s, std::int64_t w) { global_.at(s) = w; }

void GameBuilder::set_transition(StateId s, const JointAction& a, StateId target) {
  transitions_.at(s).emplace_back(a, target);
}

void GameBuilder::set_transitions(const std::function<StateId(StateId, const JointAction&)>& tr) {
  for (StateId s = 0; s < states_.size(); ++s) {
    std::size_t count = 1;
    for (PlayerId i = 0; i < players_.size(); ++i) {
      if (!protocol_[s][i] || protocol_[s][i]->empty())
        throw ValidationError("protocol missing for player " + players_[i] + " at state " + states_[s]);
      count *= protocol_[s][i]->size();
    }
    for (std::size_t idx = 0; idx < count; ++idx) {
      JointAction a(players_.size());
      std::size_t rest = idx;
      for (PlayerId i = players_.size(); i-- > 0;) {
        const auto& d = *protocol_[s][i];
        a[i] = d[rest % d.size()];
        rest /= d.size();
      }
      transitions_[s].emplace_back(a, tr(s, a));
    }
  }
}

Game GameBuilder::build() const {
  auto check_names = [](const std::vector<std::string>& names, const char* what) {
    std::set<std::string> seen;
    for (const auto& n : names) {
      if (n.empty()) throw ValidationError(std::string("empty ") + what + " name");
      if (!seen.insert(n).second) throw ValidationError(std::string("duplicate ") + what + " '" + n + "'");
    }
  };
  check_names(players_, "player");
  check_names(actions_, "action");
  check_names(states_, "state");
  if (players_.empty()) throw ValidationError("game has no players");
  if (states_.empty()) throw ValidationError("game has no states");
  if (!initial_ || *initial_ >= states_.size()) throw ValidationError("initial state missing or unknown");

  Game g;
  g.player_names_ = players_;
  g.action_names_ = actions_;
  g.state_names_ = states_;
  g.initial_ = *initial_;
  const std::size_t n = players_.size();
  g.protocol_.resize(states_.size());
  g.stride_.resize(states_.size());
  g.successor_.resize(states_.size());
  for (StateId s = 0; s < states_.size(); ++s) {
    g.protocol_[s].resize(n);
    g.stride_[s].resize(n);
    std::size_t count = 1;
    for (PlayerId i = n; i-- > 0;) {
      const auto& d = protocol_[s][i];
      if (!d || d->empty())
        throw ValidationError("empty protocol for player " + players_[i] + " at state " + states_[s]);
      for (ActionId a : *d)
        if (a >= actions_.size()) throw ValidationError("unknown action id in protocol at state " + states_[s]);
      g.protocol_[s][i] = *d;
      g.stride_[s][i] = count;
      count *= d->size();
      if (count > (std::size_t{1} << 24))
        throw LimitExceeded("too many joint actions at state " + states_[s]);
    }
    constexpr StateId unset = static_cast<StateId>(-1);
    g.successor_[s].assign(count, unset);
    for (const auto& [a, target] : transitions_[s]) {
      std::size_t idx = g.joint_index(s, a);
      if (target >= states_.size())
        throw ValidationError("transition from " + states_[s] + " leads to an unknown state");
      if (g.successor_[s][idx] != unset && g.successor_[s][idx] != target)
        throw ValidationError("conflicting transitions from " + states_[s] + " under " +
                              joint_to_string(actions_, a));
      g.successor_[s][idx] = target;
    }
    for (std::size_t idx = 0; idx < count; ++idx)
      if (g.successor_[s][idx] == unset)
        throw ValidationError("missing transition from " + states_[s] + " under " +
                              joint_to_string(actions_, g.joint_action(s, idx)));
  }
  g.weights_.assign(n, std::vector<std::int64_t>(states_.size()));
  for (PlayerId i = 0; i < n; ++i)
    for (StateId s = 0; s < states_.size(); ++s) {
      if (!weights_[i][s])
        throw ValidationError("weight of player " + players_[i] + " missing at state " + states_[s]);
      g.weights_[i][s] = *weights_[i][s];
    }
  g.global_weights_.resize(states_.size());
  for (StateId s = 0; s < states_.size(); ++s) {
    if (!global_[s]) throw ValidationError("global weight missing at state " + states_[s]);
    g.global_weights_[s] = *global_[s];
  }
  return g;
}

std::vector<WeightRange> min_max_weights(const Game& game) {
  std::vector<WeightRange> out;
  auto range = [](std::span<const std::int64_t> w) {
    auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    return WeightRange{*lo, *hi};
  };
  for (PlayerId i = 0; i < game.num_players(); ++i) out.push_back(range(game.weights(i)));
  out.push_back(range(game.global_weights()));
  return out;
}

std::vector<bool> reachable_states(const Game& game) {
  std::vector<bool> seen(game.num_states(), false);
  std::deque<StateId> queue{game.initial()};
  seen[game.initial()] = true;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (std::size_t a = 0; a < game.joint_count(s); ++a) {
      StateId t = game.successor(s, a);
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  return seen;
}

}  // namespace eqd
