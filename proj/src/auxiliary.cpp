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

#include "eqdesign/auxiliary.hpp"

#include <algorithm>
#include <map>

#include "eqdesign/errors.hpp"

namespace eqd {

std::vector<RewardVector> reward_vectors(std::size_t n, Budget beta) {
  std::vector<RewardVector> out;
  RewardVector v(n, 0);
  // odometer in lexicographic order, skipping vectors over budget
  while (true) {
    out.push_back(v);
    std::size_t i = n;
    while (i > 0) {
      --i;
      ++v[i];
      if (norm1(v) <= beta) break;
      v[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

std::optional<StateId> AuxiliaryGame::find(StateId s, std::size_t v) const {
  auto it = std::lower_bound(origin.begin(), origin.end(), std::make_pair(s, v));
  if (it != origin.end() && *it == std::make_pair(s, v)) return static_cast<StateId>(it - origin.begin());
  return std::nullopt;
}

std::size_t AuxiliaryGame::vector_index(const RewardVector& v) const {
  auto it = std::lower_bound(vectors.begin(), vectors.end(), v);
  if (it == vectors.end() || *it != v) throw ValidationError("reward vector exceeds the budget");
  return static_cast<std::size_t>(it - vectors.begin());
}

std::size_t AuxiliaryGame::vector_of_action(ActionId action) const {
  auto it = std::find(vector_action.begin(), vector_action.end(), action);
  if (it == vector_action.end()) throw ValidationError("action is not a reward vector");
  return static_cast<std::size_t>(it - vector_action.begin());
}

namespace {

std::string vector_name(const RewardVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "]";
}

std::string fresh(const std::vector<std::string>& taken, std::string name) {
  while (std::find(taken.begin(), taken.end(), name) != taken.end()) name += "'";
  return name;
}

}  // namespace

AuxiliaryGame build_auxiliary(const Game& game, Budget beta) {
  const std::size_t n = game.num_players();
  AuxiliaryGame aux;
  aux.beta = beta;
  aux.num_source_states = game.num_states();
  aux.vectors = reward_vectors(n, beta);
  const std::size_t V = aux.vectors.size();

  // reachable (s, v) pairs, stored sorted so find() can binary search
  std::vector<std::vector<bool>> seen(game.num_states(), std::vector<bool>(V, false));
  std::vector<std::pair<StateId, std::size_t>> todo{{game.initial(), 0}};
  seen[game.initial()][0] = true;
  while (!todo.empty()) {
    auto [s, v] = todo.back();
    todo.pop_back();
    std::vector<bool> next(game.num_states(), false);
    for (std::size_t a = 0; a < game.joint_count(s); ++a) next[game.successor(s, a)] = true;
    for (StateId t = 0; t < game.num_states(); ++t)
      if (next[t])
        for (std::size_t u = 0; u < V; ++u)
          if (!seen[t][u]) {
            seen[t][u] = true;
            todo.emplace_back(t, u);
          }
  }
  for (StateId s = 0; s < game.num_states(); ++s)
    for (std::size_t v = 0; v < V; ++v)
      if (seen[s][v]) aux.origin.emplace_back(s, v);

  GameBuilder b;
  b.add_player(fresh(game.player_names(), "agent0"));
  for (PlayerId i = 0; i < n; ++i) b.add_player(game.player_name(i));
  for (ActionId a = 0; a < game.num_actions(); ++a) b.add_action(game.action_name(a));
  for (const auto& v : aux.vectors) aux.vector_action.push_back(b.add_action(fresh(game.action_names(), vector_name(v))));
  for (auto [s, v] : aux.origin) b.add_state(game.state_name(s) + "#" + vector_name(aux.vectors[v]));
  b.set_initial(*aux.find(game.initial(), 0));
  for (StateId p = 0; p < aux.origin.size(); ++p) {
    auto [s, v] = aux.origin[p];
    const RewardVector& vec = aux.vectors[v];
    b.set_protocol(p, 0, aux.vector_action);
    for (PlayerId i = 0; i < n; ++i) {
      b.set_protocol(p, i + 1, game.protocol(s, i));
      b.set_weight(i + 1, p, game.weight(i, s) + static_cast<std::int64_t>(vec[i]));
    }
    std::int64_t w0 = game.global_weight(s) - static_cast<std::int64_t>(norm1(vec));
    b.set_weight(0, p, w0);
    b.set_global_weight(p, w0);
  }
  const ActionId first_vector = aux.vector_action.front();
  b.set_transitions([&](StateId p, const JointAction& a) {
    JointAction inner(a.begin() + 1, a.end());
    StateId t = game.successor(aux.origin[p].first, inner);
    return *aux.find(t, a[0] - first_vector);
  });
  aux.game = b.build();
  return aux;
}

MealyStrategy rm_to_strategy(const AuxiliaryGame& aux, const RewardMachine& rm) {
  const std::size_t P = aux.origin.size(), Q = rm.num_states();
  std::vector<MemoryId> next(P * Q);
  std::vector<ActionId> act(P * Q);
  for (StateId p = 0; p < P; ++p) {
    StateId s = aux.origin[p].first;
    for (RmState q = 0; q < Q; ++q) {
      next[p * Q + q] = rm.next(q, s);
      act[p * Q + q] = aux.vector_action[aux.vector_index(rm.reward(q, s))];
    }
  }
  return MealyStrategy(P, Q, rm.initial(), std::move(next), std::move(act));
}

RewardMachine strategy_to_rm(const AuxiliaryGame& aux, const MealyStrategy& sigma0) {
  validate_strategy(aux.game, 0, sigma0);
  const std::size_t num_game_states = aux.num_source_states;
  const std::size_t n = aux.vectors.front().size();

  std::map<std::pair<MemoryId, std::size_t>, RmState> index;
  std::vector<std::pair<MemoryId, std::size_t>> states;
  auto intern = [&](MemoryId t, std::size_t v) {
    auto [it, fresh_state] = index.emplace(std::make_pair(t, v), states.size());
    if (fresh_state) states.emplace_back(t, v);
    return it->second;
  };
  intern(sigma0.initial(), 0);
  std::vector<RmState> next;
  std::vector<RewardVector> reward;
  for (std::size_t k = 0; k < states.size(); ++k) {
    auto [t, v] = states[k];
    for (StateId s = 0; s < num_game_states; ++s) {
      auto p = aux.find(s, v);
      if (!p) {
        next.push_back(k);
        reward.emplace_back(n, 0);
        continue;
      }
      std::size_t u = aux.vector_of_action(sigma0.act(*p, t));
      RmState to = intern(sigma0.next(*p, t), u);
      next.push_back(to);
      reward.push_back(aux.vectors[u]);
    }
  }
  std::vector<std::string> names;
  for (auto [t, v] : states) names.push_back("t" + std::to_string(t) + "v" + std::to_string(v));
  return RewardMachine(states.size(), num_game_states, n, 0, std::move(next), std::move(reward), std::move(names));
}

namespace {

std::vector<std::vector<std::optional<StateId>>> product_table(const Product& product, std::size_t num_states,
                                                               std::size_t Q) {
  std::vector<std::vector<std::optional<StateId>>> t(num_states, std::vector<std::optional<StateId>>(Q));
  for (StateId p = 0; p < product.origin.size(); ++p) t[product.origin[p].first][product.origin[p].second] = p;
  return t;
}

}  // namespace

MealyStrategy lift_strategy(const AuxiliaryGame& aux, const Product& product, const RewardMachine& rm, PlayerId i,
                            const MealyStrategy& sigma) {
  validate_strategy(product.game, i, sigma);
  const std::size_t T = sigma.memory_size(), Q = rm.num_states(), P = aux.origin.size();
  auto table = product_table(product, rm.num_game_states(), Q);
  std::vector<MemoryId> next(P * T * Q);
  std::vector<ActionId> act(P * T * Q);
  for (StateId p = 0; p < P; ++p) {
    StateId s = aux.origin[p].first;
    for (MemoryId t = 0; t < T; ++t)
      for (RmState q = 0; q < Q; ++q) {
        std::size_t cell = p * T * Q + t * Q + q;
        if (auto ps = table[s][q]) {
          act[cell] = sigma.act(*ps, t);
          next[cell] = sigma.next(*ps, t) * Q + rm.next(q, s);
        } else {
          act[cell] = aux.game.protocol(p, i + 1).front();
          next[cell] = t * Q + q;
        }
      }
  }
  return MealyStrategy(P, T * Q, sigma.initial() * Q + rm.initial(), std::move(next), std::move(act));
}

MealyStrategy lower_strategy(const AuxiliaryGame& aux, const Product& product, const RewardMachine& rm, PlayerId i,
                             const MealyStrategy& sigma_hat) {
  validate_strategy(aux.game, i + 1, sigma_hat);
  const std::size_t T = sigma_hat.memory_size(), V = aux.vectors.size(), P = product.origin.size();
  std::vector<MemoryId> next(P * T * V);
  std::vector<ActionId> act(P * T * V);
  for (StateId p = 0; p < P; ++p) {
    auto [s, q] = product.origin[p];
    std::size_t paid = aux.vector_index(rm.reward(q, s));
    for (MemoryId t = 0; t < T; ++t)
      for (std::size_t v = 0; v < V; ++v) {
        std::size_t cell = p * T * V + t * V + v;
        if (auto ap = aux.find(s, v)) {
          act[cell] = sigma_hat.act(*ap, t);
          next[cell] = sigma_hat.next(*ap, t) * V + paid;
        } else {
          act[cell] = product.game.protocol(p, i).front();
          next[cell] = t * V + paid;
        }
      }
  }
  return MealyStrategy(P, T * V, sigma_hat.initial() * V, std::move(next), std::move(act));
}

}  // namespace eqd
