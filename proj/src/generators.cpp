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

#include "eqdesign/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "eqdesign/errors.hpp"

namespace eqd {

CostDigraph CostDigraph::with_vertices(std::size_t n) {
  CostDigraph g;
  for (std::size_t v = 1; v <= n; ++v) g.vertices.push_back(std::to_string(v));
  return g;
}

void CostDigraph::add_edge(std::size_t from, std::size_t to, std::optional<std::int64_t> cost) {
  edges.push_back(Edge{from, to, cost});
}

void CostDigraph::validate(bool need_costs) const {
  if (vertices.empty()) throw ValidationError("graph has no vertices");
  std::set<std::string> names(vertices.begin(), vertices.end());
  if (names.size() != vertices.size()) throw ValidationError("duplicate vertex name");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : edges) {
    if (e.from >= vertices.size() || e.to >= vertices.size()) throw ValidationError("edge endpoint out of range");
    if (e.from == e.to) throw ValidationError("self-loop at vertex " + vertices[e.from]);
    if (!seen.emplace(e.from, e.to).second)
      throw ValidationError("parallel edge " + vertices[e.from] + ">" + vertices[e.to]);
    if (need_costs && !e.cost)
      throw ValidationError("edge " + vertices[e.from] + ">" + vertices[e.to] + " has no cost");
  }
  if (edges.empty()) throw ValidationError("graph has no edges");
}

Example1 gen_example1() {
  GameBuilder b;
  b.add_player("robot");
  const char* names[] = {"t", "l", "m", "r"};
  StateId t = 0, l = 1, m = 2, r = 3;
  for (const char* n : names) {
    b.add_state(n);
    b.add_action(n);
  }
  const std::vector<std::vector<StateId>> moves = {{l, r}, {t, m}, {t}, {t, m}};
  const std::int64_t wg[] = {0, 1, 2, 0};
  b.set_initial(t);
  for (StateId s = 0; s < 4; ++s) {
    std::vector<ActionId> acts(moves[s].begin(), moves[s].end());
    b.set_protocol(s, 0, acts);
    b.set_weight(0, s, 0);
    b.set_global_weight(s, wg[s]);
  }
  // action ids coincide with destination state ids
  b.set_transitions([](StateId, const JointAction& a) { return static_cast<StateId>(a[0]); });
  Game game = b.build();
  RewardMachine fig = k_cycle_delivery_rm(1, game);
  RewardMachine mp = k_cycle_delivery_rm(2, game);
  return Example1{std::move(game), std::move(fig), std::move(mp)};
}

namespace {

enum class Reduction { Tsp, Hamiltonian, Complement };

Game build_reduction(const CostDigraph& g, Reduction kind, bool negate) {
  g.validate(kind == Reduction::Tsp);
  const std::size_t n = g.vertices.size();
  const bool pennies = kind != Reduction::Tsp;
  const auto V = static_cast<std::int64_t>(n);
  for (const auto& v : g.vertices)
    if (v.empty() || v[0] == '*' || (pennies && (v == kPennies1 || v == kPennies2)))
      throw ValidationError("vertex name '" + v + "' clashes with a reserved name");

  GameBuilder b;
  for (const auto& v : g.vertices) b.add_player(v);
  PlayerId pen1 = 0, pen2 = 0;
  if (pennies) {
    pen1 = b.add_player(kPennies1);
    pen2 = b.add_player(kPennies2);
  }
  const std::size_t players = b.num_players();
  const ActionId star = b.add_action(kStarAction), circle = b.add_action(kCircleAction);

  std::vector<ActionId> edge_action;
  std::vector<std::vector<ActionId>> out(n);
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const auto& e = g.edges[k];
    std::string name = g.vertices[e.from] + ">" + g.vertices[e.to];
    b.add_state(name);
    edge_action.push_back(b.add_action(name));
    out[e.from].push_back(edge_action.back());
  }
  const StateId sink = b.add_state(kSinkState);
  StateId box = sink, tri = sink;
  if (pennies) {
    box = b.add_state(kBoxState);
    tri = b.add_state(kTriangleState);
  }
  b.set_initial(0);

  std::int64_t max_cost = 0;
  for (const auto& e : g.edges) max_cost = std::max(max_cost, e.cost.value_or(0));
  const std::int64_t sign = negate ? -1 : 1;

  for (StateId s = 0; s < b.num_states(); ++s) {
    const bool edge_state = s < g.edges.size();
    const std::size_t v = edge_state ? g.edges[s].to : n;
    for (PlayerId i = 0; i < players; ++i) {
      if (edge_state && i == v) {
        std::vector<ActionId> acts = out[v];
        acts.push_back(star);
        b.set_protocol(s, i, acts);
      } else {
        b.set_protocol(s, i, {circle, star});
      }
      std::int64_t w = 1;
      if (i >= n) {
        w = 0;
        if (kind == Reduction::Complement) w = (i == pen1 && s == box) || (i == pen2 && s == tri) ? 1 : 0;
      } else if (edge_state) {
        w = i == v ? V : 0;
      }
      b.set_weight(i, s, w);
    }
    std::int64_t wg = 0;
    switch (kind) {
      case Reduction::Tsp:
        wg = sign * (edge_state ? *g.edges[s].cost : max_cost) * V;
        break;
      case Reduction::Hamiltonian:
        wg = edge_state ? V : 0;
        break;
      case Reduction::Complement:
        wg = edge_state ? V : (s == tri ? 2 : 0);
        break;
    }
    b.set_global_weight(s, wg);
  }

  b.set_transitions([&](StateId s, const JointAction& a) -> StateId {
    if (s < g.edges.size()) {
      for (std::size_t i = 0; i < n; ++i)
        if (a[i] == star) return sink;
      ActionId chosen = a[g.edges[s].to];
      return static_cast<StateId>(std::find(edge_action.begin(), edge_action.end(), chosen) - edge_action.begin());
    }
    if (s == sink && pennies) return a[pen1] == a[pen2] ? box : tri;
    return s;
  });
  return b.build();
}

}  // namespace

Game gen_tsp_game(const CostDigraph& g, bool negate) { return build_reduction(g, Reduction::Tsp, negate); }

Game gen_hamiltonian_game(const CostDigraph& g) { return build_reduction(g, Reduction::Hamiltonian, false); }

Game gen_hamiltonian_complement_game(const CostDigraph& g) {
  return build_reduction(g, Reduction::Complement, false);
}

ReductionInstance hamiltonian_instance(const CostDigraph& g, bool complement) {
  return ReductionInstance{complement ? gen_hamiltonian_complement_game(g) : gen_hamiltonian_game(g)};
}

Game gen_infinite_memory_example() {
  GameBuilder b;
  b.add_player("1");
  b.add_player("2");
  const ActionId L = b.add_action("L"), R = b.add_action("R");
  const StateId t = b.add_state("t"), l = b.add_state("l"), bs = b.add_state("b"), r = b.add_state("r");
  b.set_initial(t);
  const std::int64_t w1[] = {0, 1, 0, 0}, w2[] = {0, 0, 0, 1};
  for (StateId s = 0; s < 4; ++s) {
    b.set_protocol(s, 0, {L, R});
    b.set_protocol(s, 1, {L, R});
    b.set_weight(0, s, w1[s]);
    b.set_weight(1, s, w2[s]);
    b.set_global_weight(s, -w1[s]);
  }
  b.set_transitions([&](StateId s, const JointAction& a) -> StateId {
    if (s == t) return l;
    if (s == l) return a[1] == L ? l : bs;
    if (s == bs) return r;
    return a[0] == L ? t : r;
  });
  return b.build();
}

Game gen_pennies_gadget() {
  GameBuilder b;
  b.add_player(kPennies1);
  b.add_player(kPennies2);
  const ActionId heads = b.add_action("H"), tails = b.add_action("T");
  const StateId start = b.add_state("start"), box = b.add_state(kBoxState), tri = b.add_state(kTriangleState);
  b.set_initial(start);
  const std::int64_t w1[] = {0, 1, 0}, w2[] = {0, 0, 1}, wg[] = {1, 2, 3};
  for (StateId s = 0; s < 3; ++s) {
    b.set_protocol(s, 0, {heads, tails});
    b.set_protocol(s, 1, {heads, tails});
    b.set_weight(0, s, w1[s]);
    b.set_weight(1, s, w2[s]);
    b.set_global_weight(s, wg[s]);
  }
  b.set_transitions([&](StateId s, const JointAction& a) -> StateId {
    if (s != start) return s;
    return a[0] == a[1] ? box : tri;
  });
  return b.build();
}

namespace {

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

std::int64_t pick_in(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(pick(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

}  // namespace

Game gen_random_game(std::uint64_t seed, const RandomGameSizes& sizes) {
  if (sizes.players == 0 || sizes.states == 0 || sizes.actions == 0 || sizes.min_weight > sizes.max_weight)
    throw ValidationError("random game sizes out of range");
  if (sizes.players > 8 || sizes.states > 64 || sizes.actions > 8)
    throw LimitExceeded("random game sizes above 8 players, 64 states or 8 actions");
  std::mt19937_64 rng(seed);
  GameBuilder b;
  for (std::size_t i = 0; i < sizes.players; ++i) b.add_player("p" + std::to_string(i + 1));
  for (std::size_t a = 0; a < sizes.actions; ++a) b.add_action("a" + std::to_string(a));
  for (std::size_t s = 0; s < sizes.states; ++s) b.add_state("s" + std::to_string(s));
  b.set_initial(0);
  for (StateId s = 0; s < sizes.states; ++s) {
    for (PlayerId i = 0; i < sizes.players; ++i) {
      std::vector<ActionId> acts;
      for (ActionId a = 0; a < sizes.actions; ++a)
        if (pick(rng, 2) == 0) acts.push_back(a);
      if (acts.empty()) acts.push_back(pick(rng, sizes.actions));
      b.set_protocol(s, i, acts);
      b.set_weight(i, s, pick_in(rng, sizes.min_weight, sizes.max_weight));
    }
    b.set_global_weight(s, pick_in(rng, sizes.min_weight, sizes.max_weight));
  }
  b.set_transitions([&](StateId, const JointAction&) { return static_cast<StateId>(pick(rng, sizes.states)); });
  return b.build();
}

RewardMachine gen_random_rm(std::uint64_t seed, const Game& game, std::size_t max_states, Budget beta) {
  if (max_states == 0) throw ValidationError("reward machine needs at least one state");
  std::mt19937_64 rng(seed);
  const std::size_t Q = 1 + pick(rng, max_states), S = game.num_states(), n = game.num_players();
  std::vector<RmState> next(Q * S);
  std::vector<RewardVector> reward(Q * S, RewardVector(n, 0));
  for (std::size_t c = 0; c < Q * S; ++c) {
    next[c] = pick(rng, Q);
    Budget left = pick(rng, beta + 1);
    while (left > 0) {
      ++reward[c][pick(rng, n)];
      --left;
    }
  }
  return RewardMachine(Q, S, n, 0, std::move(next), std::move(reward));
}

CostDigraph gen_random_tsp(std::uint64_t seed, std::size_t n, std::int64_t lo, std::int64_t hi) {
  if (n < 2 || lo > hi) throw ValidationError("random TSP needs n >= 2 and lo <= hi");
  std::mt19937_64 rng(seed);
  CostDigraph g = CostDigraph::with_vertices(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v) g.add_edge(u, v, pick_in(rng, lo, hi));
  return g;
}

namespace {

// Visits every vertex ordering starting at vertex 0 (cycles) or anywhere (paths).
template <class F>
void for_each_order(std::size_t n, bool fix_first, F&& f) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  do {
    if (fix_first && order[0] != 0) break;
    f(order);
  } while (std::next_permutation(order.begin(), order.end()));
}

std::vector<std::vector<std::optional<std::int64_t>>> matrix(const CostDigraph& g) {
  const std::size_t n = g.vertices.size();
  std::vector<std::vector<std::optional<std::int64_t>>> m(n, std::vector<std::optional<std::int64_t>>(n));
  for (const auto& e : g.edges) m[e.from][e.to] = e.cost.value_or(0);
  return m;
}

}  // namespace

std::optional<std::int64_t> brute_force_tour_cost(const CostDigraph& g) {
  g.validate(true);
  if (g.vertices.size() > 10) throw LimitExceeded("brute-force tours above 10 vertices");
  auto m = matrix(g);
  std::optional<std::int64_t> best;
  const std::size_t n = g.vertices.size();
  for_each_order(n, true, [&](const std::vector<std::size_t>& o) {
    std::int64_t cost = 0;
    for (std::size_t k = 0; k < n; ++k) {
      auto c = m[o[k]][o[(k + 1) % n]];
      if (!c) return;
      cost += *c;
    }
    if (!best || cost < *best) best = cost;
  });
  return best;
}

bool has_hamiltonian_cycle(const CostDigraph& g) {
  CostDigraph h = g;
  for (auto& e : h.edges) e.cost = 0;
  return brute_force_tour_cost(h).has_value();
}

bool has_hamiltonian_path(const CostDigraph& g) {
  g.validate(false);
  if (g.vertices.size() > 10) throw LimitExceeded("brute-force paths above 10 vertices");
  auto m = matrix(g);
  bool found = false;
  for_each_order(g.vertices.size(), false, [&](const std::vector<std::size_t>& o) {
    bool ok = true;
    for (std::size_t k = 0; k + 1 < o.size() && ok; ++k) ok = m[o[k]][o[k + 1]].has_value();
    found = found || ok;
  });
  return found;
}

}  // namespace eqd
