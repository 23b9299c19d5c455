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

#include "eqdesign/reward_machine.hpp"

#include <deque>
#include <map>

#include "eqdesign/errors.hpp"

namespace eqd {

std::uint64_t norm1(const RewardVector& v) {
  std::uint64_t s = 0;
  for (auto x : v) s += x;
  return s;
}

RewardMachine::RewardMachine(std::size_t num_states, std::size_t num_game_states, std::size_t num_players,
                             RmState initial, std::vector<RmState> next, std::vector<RewardVector> reward,
                             std::vector<std::string> names)
    : num_states_(num_states),
      num_game_states_(num_game_states),
      num_players_(num_players),
      initial_(initial),
      next_(std::move(next)),
      reward_(std::move(reward)),
      names_(std::move(names)) {
  if (num_states_ == 0) throw ValidationError("reward machine has no states");
  if (initial_ >= num_states_) throw ValidationError("reward machine initial state out of range");
  const std::size_t cells = num_states_ * num_game_states_;
  if (next_.size() != cells || reward_.size() != cells)
    throw ValidationError("reward machine tables do not cover Q x St");
  for (RmState q : next_)
    if (q >= num_states_) throw ValidationError("reward machine transition out of range");
  for (const auto& r : reward_)
    if (r.size() != num_players_) throw ValidationError("reward vector length differs from player count");
  if (names_.empty())
    for (std::size_t q = 0; q < num_states_; ++q) names_.push_back("q" + std::to_string(q));
  if (names_.size() != num_states_) throw ValidationError("reward machine state names do not match");
}

RewardMachine RewardMachine::with_reward(RmState q, StateId s, RewardVector r) const {
  RewardMachine out = *this;
  if (r.size() != num_players_) throw ValidationError("reward vector length differs from player count");
  out.reward_.at(q * num_game_states_ + s) = std::move(r);
  return out;
}

void check_compatible(const Game& game, const RewardMachine& rm) {
  if (rm.num_game_states() != game.num_states())
    throw ValidationError("reward machine reads " + std::to_string(rm.num_game_states()) +
                          " game states, game has " + std::to_string(game.num_states()));
  if (rm.num_players() != game.num_players())
    throw ValidationError("reward machine pays " + std::to_string(rm.num_players()) +
                          " players, game has " + std::to_string(game.num_players()));
}

bool is_beta_rm(const RewardMachine& rm, Budget beta) {
  for (RmState q = 0; q < rm.num_states(); ++q)
    for (StateId s = 0; s < rm.num_game_states(); ++s)
      if (norm1(rm.reward(q, s)) > beta) return false;
  return true;
}

RewardMachine from_subsidy_scheme(const std::vector<RewardVector>& kappa) {
  if (kappa.empty()) throw ValidationError("subsidy scheme over an empty state set");
  std::size_t n = kappa.front().size();
  return RewardMachine(1, kappa.size(), n, 0, std::vector<RmState>(kappa.size(), 0), kappa);
}

RewardMachine k_cycle_delivery_rm(std::size_t k, const Game& game) {
  if (k < 1) throw std::invalid_argument("k_cycle_delivery_rm needs k >= 1");
  auto t = game.find_state("t"), l = game.find_state("l"), m = game.find_state("m");
  if (!t || !l || !m || game.num_players() != 1)
    throw ValidationError("k_cycle_delivery_rm targets the one-player delivery game");
  const std::size_t S = game.num_states();
  std::vector<RmState> next(3 * k * S);
  std::vector<RewardVector> reward(3 * k * S, RewardVector(1, 0));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t phase = 0; phase < 3; ++phase) {
      RmState q = 3 * j + phase;
      for (StateId s = 0; s < S; ++s) {
        RmState to = 3 * j;  // start over in this round
        if (s == *t) to = 3 * j + 1;
        else if (phase == 1 && s == *l) to = 3 * j + 2;
        else if (phase == 2 && s == *m) to = 3 * ((j + 1) % k);
        next[q * S + s] = to;
      }
    }
  reward[(3 * (k - 1) + 2) * S + *m] = RewardVector{1};
  return RewardMachine(3 * k, S, 1, 0, std::move(next), std::move(reward));
}

RewardMachine minimize(const RewardMachine& rm) {
  const std::size_t S = rm.num_game_states();
  // reachable states in BFS order
  std::vector<RmState> order;
  std::vector<std::size_t> pos(rm.num_states(), static_cast<std::size_t>(-1));
  order.push_back(rm.initial());
  pos[rm.initial()] = 0;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (StateId s = 0; s < S; ++s) {
      RmState q = rm.next(order[k], s);
      if (pos[q] == static_cast<std::size_t>(-1)) {
        pos[q] = order.size();
        order.push_back(q);
      }
    }
  // Moore refinement
  std::vector<std::size_t> cls(order.size());
  {
    std::map<std::vector<RewardVector>, std::size_t> sig;
    for (std::size_t k = 0; k < order.size(); ++k) {
      std::vector<RewardVector> row;
      for (StateId s = 0; s < S; ++s) row.push_back(rm.reward(order[k], s));
      cls[k] = sig.emplace(row, sig.size()).first->second;
    }
  }
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> sig;
    std::vector<std::size_t> refined(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      std::vector<std::size_t> row{cls[k]};
      for (StateId s = 0; s < S; ++s) row.push_back(cls[pos[rm.next(order[k], s)]]);
      refined[k] = sig.emplace(row, sig.size()).first->second;
    }
    bool stable = true;
    std::size_t before = 0, after = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      before = std::max(before, cls[k] + 1);
      after = std::max(after, refined[k] + 1);
    }
    stable = before == after;
    cls = std::move(refined);
    if (stable) break;
  }
  // classes renumbered in BFS order of their first member
  std::vector<std::size_t> renum(order.size(), static_cast<std::size_t>(-1));
  std::vector<std::size_t> rep;
  for (std::size_t k = 0; k < order.size(); ++k)
    if (renum[cls[k]] == static_cast<std::size_t>(-1)) {
      renum[cls[k]] = rep.size();
      rep.push_back(k);
    }
  const std::size_t Q = rep.size();
  std::vector<RmState> next(Q * S);
  std::vector<RewardVector> reward(Q * S);
  for (std::size_t c = 0; c < Q; ++c)
    for (StateId s = 0; s < S; ++s) {
      RmState q = order[rep[c]];
      next[c * S + s] = renum[cls[pos[rm.next(q, s)]]];
      reward[c * S + s] = rm.reward(q, s);
    }
  return RewardMachine(Q, S, rm.num_players(), 0, std::move(next), std::move(reward));
}

std::optional<StateId> Product::find(StateId s, RmState q) const {
  for (StateId p = 0; p < origin.size(); ++p)
    if (origin[p].first == s && origin[p].second == q) return p;
  return std::nullopt;
}

Product implement(const Game& game, const RewardMachine& rm) {
  check_compatible(game, rm);
  std::map<std::pair<StateId, RmState>, StateId> index;
  std::vector<std::pair<StateId, RmState>> origin;
  auto intern = [&](StateId s, RmState q) {
    auto [it, fresh] = index.emplace(std::make_pair(s, q), origin.size());
    if (fresh) origin.emplace_back(s, q);
    return it->second;
  };
  intern(game.initial(), rm.initial());
  for (std::size_t p = 0; p < origin.size(); ++p) {
    auto [s, q] = origin[p];
    RmState q2 = rm.next(q, s);
    for (std::size_t a = 0; a < game.joint_count(s); ++a) intern(game.successor(s, a), q2);
  }

  GameBuilder b;
  for (PlayerId i = 0; i < game.num_players(); ++i) b.add_player(game.player_name(i));
  for (ActionId a = 0; a < game.num_actions(); ++a) b.add_action(game.action_name(a));
  for (auto [s, q] : origin) b.add_state(game.state_name(s) + "@" + rm.state_name(q));
  b.set_initial(0);
  for (StateId p = 0; p < origin.size(); ++p) {
    auto [s, q] = origin[p];
    const RewardVector& r = rm.reward(q, s);
    for (PlayerId i = 0; i < game.num_players(); ++i) {
      b.set_protocol(p, i, game.protocol(s, i));
      b.set_weight(i, p, game.weight(i, s) + static_cast<std::int64_t>(r[i]));
    }
    b.set_global_weight(p, game.global_weight(s) - static_cast<std::int64_t>(norm1(r)));
  }
  b.set_transitions([&](StateId p, const JointAction& a) {
    auto [s, q] = origin[p];
    return index.at({game.successor(s, a), rm.next(q, s)});
  });
  return Product{b.build(), std::move(origin)};
}

}  // namespace eqd
