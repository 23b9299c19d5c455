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

#include "eqdesign/punishment.hpp"

#include <algorithm>
#include <map>

#include "eqdesign/errors.hpp"
#include "eqdesign/mean_cycle.hpp"

namespace eqd {

std::size_t PunishmentSolution::joint_index(const Game& game, StateId s) const {
  return game.replace_action(s, coalition[s], player, response[s]);
}

namespace {

// Coalition choices of one state: a base joint index (player i at its first
// action) and the successor for each of i's actions.
struct Choice {
  std::size_t base;
  std::vector<StateId> succ;
};

struct Arena {
  PlayerId player;
  std::vector<std::vector<Choice>> choices;  // [s]
  std::vector<std::int64_t> weight;
};

Arena make_arena(const Game& game, PlayerId i) {
  Arena ar{i, std::vector<std::vector<Choice>>(game.num_states()), {}};
  ar.weight.assign(game.weights(i).begin(), game.weights(i).end());
  for (StateId s = 0; s < game.num_states(); ++s) {
    const auto& di = game.protocol(s, i);
    ActionId first = di.front();
    for (std::size_t idx = 0; idx < game.joint_count(s); ++idx) {
      if (game.joint_action(s, idx)[i] != first) continue;
      Choice c{idx, {}};
      for (ActionId a : di) c.succ.push_back(game.successor(s, game.replace_action(s, idx, i, a)));
      ar.choices[s].push_back(std::move(c));
    }
  }
  return ar;
}

// Graph where the coalition is fixed to `sigma` and the player moves freely.
WeightedDigraph fix_coalition(const Arena& ar, const std::vector<std::size_t>& sigma) {
  WeightedDigraph g(ar.choices.size());
  for (StateId s = 0; s < ar.choices.size(); ++s)
    for (StateId t : ar.choices[s][sigma[s]].succ) g.add_edge(s, t, ar.weight[s]);
  return g;
}

// Graph where the player answers every coalition choice by `tau`.
WeightedDigraph fix_player(const Arena& ar, const std::vector<std::vector<std::size_t>>& tau) {
  WeightedDigraph g(ar.choices.size());
  for (StateId s = 0; s < ar.choices.size(); ++s)
    for (std::size_t c = 0; c < ar.choices[s].size(); ++c)
      g.add_edge(s, ar.choices[s][c].succ[tau[s][c]], ar.weight[s]);
  return g;
}

PunishmentSolution package(const Game& game, const Arena& ar, std::vector<Rational> values,
                           const std::vector<std::size_t>& sigma, const std::vector<std::size_t>& answer) {
  PunishmentSolution sol;
  sol.player = ar.player;
  sol.values = std::move(values);
  for (StateId s = 0; s < ar.choices.size(); ++s) {
    sol.coalition.push_back(ar.choices[s][sigma[s]].base);
    sol.response.push_back(game.protocol(s, ar.player)[answer[s]]);
  }
  return sol;
}

// Positional answer to a fixed coalition strategy that is optimal from every
// state. Enumerates the player's positional strategies.
std::vector<std::size_t> enumerate_answer(const Arena& ar, const std::vector<std::size_t>& sigma,
                                          const std::vector<Rational>& target) {
  const std::size_t n = ar.choices.size();
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    bool ok = true;
    for (StateId s = 0; s < n && ok; ++s) {
      std::vector<std::size_t> pos(n, static_cast<std::size_t>(-1));
      std::vector<StateId> path;
      StateId v = s;
      while (pos[v] == static_cast<std::size_t>(-1)) {
        pos[v] = path.size();
        path.push_back(v);
        v = ar.choices[v][sigma[v]].succ[pick[v]];
      }
      long long sum = 0;
      for (std::size_t k = pos[v]; k < path.size(); ++k) sum += ar.weight[path[k]];
      ok = Rational(sum, static_cast<long long>(path.size() - pos[v])) == target[s];
    }
    if (ok) return pick;
    StateId s = 0;
    for (; s < n; ++s) {
      std::size_t width = ar.choices[s][sigma[s]].succ.size();
      if (++pick[s] < width) break;
      pick[s] = 0;
    }
    if (s == n) throw std::logic_error("no uniformly optimal positional answer found");
  }
}

PunishmentSolution solve_enumeration(const Game& game, const Arena& ar) {
  const std::size_t n = ar.choices.size();
  double total = 1;
  for (const auto& c : ar.choices) total *= static_cast<double>(c.size());
  if (total > 2e5) throw LimitExceeded("too many positional coalition strategies to enumerate");
  std::vector<std::size_t> sigma(n, 0), best_sigma;
  std::vector<std::vector<Rational>> all;
  std::vector<std::vector<std::size_t>> sigmas;
  std::vector<Rational> value;
  while (true) {
    auto u = max_mean_values(fix_coalition(ar, sigma));
    if (value.empty()) {
      value = u;
    } else {
      for (StateId s = 0; s < n; ++s) value[s] = std::min(value[s], u[s]);
    }
    all.push_back(std::move(u));
    sigmas.push_back(sigma);
    StateId s = 0;
    for (; s < n; ++s) {
      if (++sigma[s] < ar.choices[s].size()) break;
      sigma[s] = 0;
    }
    if (s == n) break;
  }
  for (std::size_t k = 0; k < all.size(); ++k)
    if (all[k] == value) {
      best_sigma = sigmas[k];
      break;
    }
  if (best_sigma.empty()) throw std::logic_error("no uniformly optimal coalition strategy found");
  auto answer = enumerate_answer(ar, best_sigma, value);
  return package(game, ar, value, best_sigma, answer);
}

PunishmentSolution solve_iteration(const Game& game, const Arena& ar) {
  const std::size_t n = ar.choices.size();
  std::vector<std::int64_t> v(n, 0), next(n);
  std::size_t k = 0;
  std::size_t checkpoint = 2 * n;
  const std::size_t limit = std::max<std::size_t>(1 << 16, 64 * n * n);
  while (k <= limit) {
    for (StateId s = 0; s < n; ++s) {
      std::int64_t best = 0;
      bool first = true;
      for (const auto& c : ar.choices[s]) {
        std::int64_t m = v[c.succ[0]];
        for (StateId t : c.succ) m = std::max(m, v[t]);
        if (first || m < best) best = m;
        first = false;
      }
      next[s] = ar.weight[s] + best;
    }
    v.swap(next);
    ++k;
    if (k < checkpoint) continue;
    checkpoint *= 2;

    std::vector<std::size_t> sigma(n);
    std::vector<std::vector<std::size_t>> tau(n);
    for (StateId s = 0; s < n; ++s) {
      std::int64_t best = 0;
      for (std::size_t ci = 0; ci < ar.choices[s].size(); ++ci) {
        const auto& c = ar.choices[s][ci];
        std::size_t arg = 0;
        for (std::size_t a = 1; a < c.succ.size(); ++a)
          if (v[c.succ[a]] > v[c.succ[arg]]) arg = a;
        tau[s].push_back(arg);
        if (ci == 0 || v[c.succ[arg]] < best) {
          best = v[c.succ[arg]];
          sigma[s] = ci;
        }
      }
    }
    auto upper = max_mean_values(fix_coalition(ar, sigma));
    auto lower = min_mean_values(fix_player(ar, tau));
    if (upper == lower) {
      std::vector<std::size_t> answer(n);
      for (StateId s = 0; s < n; ++s) answer[s] = tau[s][sigma[s]];
      return package(game, ar, upper, sigma, answer);
    }
  }
  return solve_enumeration(game, ar);
}

}  // namespace

PunishmentSolution solve_punishment(const Game& game, PlayerId i, PunishmentBackend backend) {
  if (i >= game.num_players()) throw ValidationError("unknown player id");
  Arena ar = make_arena(game, i);
  return backend == PunishmentBackend::Enumeration ? solve_enumeration(game, ar) : solve_iteration(game, ar);
}

std::vector<Rational> punishment_values(const Game& game, PlayerId i, PunishmentBackend backend) {
  return solve_punishment(game, i, backend).values;
}

Rational best_response_value(const Game& game, const StrategyProfile& others, PlayerId i, StateId start) {
  const std::size_t n = game.num_players();
  if (others.size() != n) throw ValidationError("profile size does not match the game");
  for (PlayerId j = 0; j < n; ++j)
    if (j != i) validate_strategy(game, j, others.at(j));

  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<std::vector<std::size_t>> configs;
  auto intern = [&](std::vector<std::size_t> c) {
    auto [it, fresh] = index.emplace(c, configs.size());
    if (fresh) configs.push_back(std::move(c));
    return it->second;
  };
  std::vector<std::size_t> init(n + 1, 0);
  init[0] = start;
  for (PlayerId j = 0; j < n; ++j)
    if (j != i) init[j + 1] = others.at(j).initial();
  intern(init);

  WeightedDigraph g;
  for (std::size_t v = 0; v < configs.size(); ++v) {
    std::vector<std::size_t> c = configs[v];
    StateId s = c[0];
    JointAction a(n);
    std::vector<std::size_t> moved = c;
    for (PlayerId j = 0; j < n; ++j)
      if (j != i) {
        a[j] = others.at(j).act(s, c[j + 1]);
        moved[j + 1] = others.at(j).next(s, c[j + 1]);
      }
    std::vector<std::pair<std::size_t, std::int64_t>> edges;
    for (ActionId ai : game.protocol(s, i)) {
      a[i] = ai;
      moved[0] = game.successor(s, a);
      edges.emplace_back(intern(moved), game.weight(i, s));
    }
    if (configs.size() > 2'000'000) throw LimitExceeded("best-response arena too large");
    while (g.size() <= v) g.add_node();
    for (auto [t, w] : edges) g.add_edge(v, t, w);
  }
  while (g.size() < configs.size()) g.add_node();
  return max_mean_cycle(g, 0);
}

}  // namespace eqd
