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
#include <vector>

#include "eqdesign/game.hpp"
#include "eqdesign/rational.hpp"
#include "eqdesign/reward_machine.hpp"

namespace eqd {

/// Simple directed graph, optionally with integer edge costs.
struct CostDigraph {
  struct Edge {
    std::size_t from = 0, to = 0;
    std::optional<std::int64_t> cost;
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  /// Vertex names default to "1".."n".
  static CostDigraph with_vertices(std::size_t n);
  void add_edge(std::size_t from, std::size_t to, std::optional<std::int64_t> cost = std::nullopt);
  /// Throws ValidationError on self-loops, parallel edges, bad endpoints or,
  /// with `need_costs`, a missing cost.
  void validate(bool need_costs) const;
};

// Reserved names used by the reductions.
inline constexpr const char* kSinkState = "*sink";
inline constexpr const char* kBoxState = "*box";
inline constexpr const char* kTriangleState = "*tri";
inline constexpr const char* kStarAction = "*";
inline constexpr const char* kCircleAction = "o";
inline constexpr const char* kPennies1 = "pen1";
inline constexpr const char* kPennies2 = "pen2";

struct Example1 {
  Game game;
  /// Pays 1 on m when reached through l.
  RewardMachine m;
  /// Pays 1 on m after two deliveries through l.
  RewardMachine m_prime;
};

/// One-player delivery robot on t, l, m, r. Actions are named after the
/// location they move to.
Example1 gen_example1();

/// Every state (e, v) lets player v pick an outgoing edge or "*"; the others
/// pick "o" or "*". Any "*" moves to the sink for good. With `negate` the
/// global weights are negated (the best-NE variant).
Game gen_tsp_game(const CostDigraph& g, bool negate = false);

/// Reduction game with extra players pen1, pen2 who play matching pennies at
/// the sink. The strong variant gives them weight 0 everywhere.
Game gen_hamiltonian_game(const CostDigraph& g);
/// Weak variant: pen1 is paid at the box, pen2 at the triangle.
Game gen_hamiltonian_complement_game(const CostDigraph& g);

struct ReductionInstance {
  Game game;
  Budget beta = 1;
  Rational epsilon{1};
  Rational delta{1, 2};
};
ReductionInstance hamiltonian_instance(const CostDigraph& g, bool complement);

/// Two players, states t, l, b, r: player 2 may loop at l, player 1 at r.
/// w_1(l) = 1, w_2(r) = 1, w_g = -w_1.
Game gen_infinite_memory_example();

/// Matching pennies from `start` into an absorbing box or triangle. No NE.
Game gen_pennies_gadget();

struct RandomGameSizes {
  std::size_t players = 2;
  std::size_t states = 3;
  std::size_t actions = 2;
  std::int64_t min_weight = -2;
  std::int64_t max_weight = 2;
};
/// Same seed and sizes give the same game on every platform.
Game gen_random_game(std::uint64_t seed, const RandomGameSizes& sizes);

/// Random machine over `game` with at most `max_states` states and per-step
/// reward norm at most `beta`.
RewardMachine gen_random_rm(std::uint64_t seed, const Game& game, std::size_t max_states, Budget beta);

/// Random complete digraph on n vertices with costs in [lo, hi].
CostDigraph gen_random_tsp(std::uint64_t seed, std::size_t n, std::int64_t lo, std::int64_t hi);

/// Minimum cost of a directed Hamiltonian cycle, by brute force.
std::optional<std::int64_t> brute_force_tour_cost(const CostDigraph& g);
bool has_hamiltonian_cycle(const CostDigraph& g);
bool has_hamiltonian_path(const CostDigraph& g);

}  // namespace eqd
