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

#include "properties.hpp"


#include "eqdesign/lasso.hpp"
#include "eqdesign/ne_solver.hpp"

namespace eqd::testing {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

// Joint action and next memories of a complete profile.
JointAction step(const StrategyProfile& p, StateId s, std::vector<MemoryId>& mem) {
  JointAction a(p.size());
  for (PlayerId i = 0; i < p.size(); ++i) {
    a[i] = p.at(i).act(s, mem[i]);
    mem[i] = p.at(i).next(s, mem[i]);
  }
  return a;
}

std::vector<MemoryId> initial_memory(const StrategyProfile& p) {
  std::vector<MemoryId> m(p.size());
  for (PlayerId i = 0; i < p.size(); ++i) m[i] = p.at(i).initial();
  return m;
}

std::string at_step(std::size_t k, const std::string& what) {
  return "step " + std::to_string(k) + ": " + what;
}

// Reward part of the weights of `product` at p against that of `aux` at a,
// for every player and the global weight.
std::string compare_rewards(const Game& game, const Game& product, StateId p, StateId s, const AuxiliaryGame& aux,
                            StateId a, StateId s_next) {
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    std::int64_t lhs = product.weight(i, p) - game.weight(i, s);
    std::int64_t rhs = aux.game.weight(i + 1, a) - game.weight(i, s_next);
    if (lhs != rhs) return "reward of player " + game.player_name(i) + " differs";
  }
  std::int64_t lhs = product.global_weight(p) - game.global_weight(s);
  std::int64_t rhs = aux.game.global_weight(a) - game.global_weight(s_next);
  if (lhs != rhs) return "global charge differs";
  return {};
}

std::string compare_payoffs(const Payoffs& small, const Payoffs& aux) {
  for (std::size_t i = 0; i < small.players.size(); ++i)
    if (small.players[i] != aux.players[i + 1])
      return "player " + std::to_string(i) + ": " + small.players[i].to_string() + " vs " +
             aux.players[i + 1].to_string();
  if (small.global != aux.global) return "global: " + small.global.to_string() + " vs " + aux.global.to_string();
  return {};
}

StrategyProfile lifted(const AuxiliaryGame& aux, const Product& product, const RewardMachine& rm,
                       const StrategyProfile& sigma) {
  StrategyProfile out(sigma.size() + 1);
  out.strategies[0] = rm_to_strategy(aux, rm);
  for (PlayerId i = 0; i < sigma.size(); ++i) out.strategies[i + 1] = lift_strategy(aux, product, rm, i, sigma.at(i));
  return out;
}

}  // namespace

MealyStrategy random_strategy(std::mt19937_64& rng, const Game& game, PlayerId i, std::size_t max_memory) {
  const std::size_t S = game.num_states(), M = 1 + pick(rng, max_memory);
  std::vector<MemoryId> next(S * M);
  std::vector<ActionId> act(S * M);
  for (StateId s = 0; s < S; ++s)
    for (MemoryId t = 0; t < M; ++t) {
      const auto& d = game.protocol(s, i);
      act[s * M + t] = d[pick(rng, d.size())];
      next[s * M + t] = pick(rng, M);
    }
  return MealyStrategy(S, M, 0, std::move(next), std::move(act));
}

StrategyProfile random_profile(std::mt19937_64& rng, const Game& game, std::size_t max_memory) {
  StrategyProfile p(game.num_players());
  for (PlayerId i = 0; i < game.num_players(); ++i) p.strategies[i] = random_strategy(rng, game, i, max_memory);
  return p;
}

std::string check_product_to_auxiliary_steps(const Game& game, const RewardMachine& rm, const AuxiliaryGame& aux,
                                             const StrategyProfile& sigma, std::size_t steps) {
  const Product product = implement(game, rm);
  const MealyStrategy sigma_m = rm_to_strategy(aux, rm);
  std::vector<MemoryId> mem = initial_memory(sigma);
  MemoryId m0 = sigma_m.initial();
  StateId p = product.game.initial();
  std::optional<StateId> a = aux.find(game.initial(), 0);
  if (!a || *a != aux.game.initial()) return "initial states do not correspond";
  for (std::size_t k = 0; k < steps; ++k) {
    auto [s, q] = product.origin[p];
    if (aux.origin[*a].first != s) return at_step(k, "state projections differ");
    const JointAction joint = step(sigma, p, mem);
    const RewardVector& r = rm.reward(q, s);
    const ActionId x = sigma_m.act(*a, m0);
    m0 = sigma_m.next(*a, m0);
    if (aux.vector_of_action(x) != aux.vector_index(r)) return at_step(k, "sigma_M pays another vector");
    JointAction aux_joint{x};
    aux_joint.insert(aux_joint.end(), joint.begin(), joint.end());
    StateId a_next = aux.game.successor(*a, aux_joint);
    StateId p_next = product.game.successor(p, joint);
    StateId s_next = product.origin[p_next].first;
    if (aux.origin[a_next] != std::make_pair(s_next, aux.vector_index(r))) return at_step(k, "not realizable in G'");
    if (auto e = compare_rewards(game, product.game, p, s, aux, a_next, s_next); !e.empty()) return at_step(k, e);
    p = p_next;
    a = a_next;
  }
  return {};
}

std::string check_auxiliary_to_product_steps(const Game& game, const AuxiliaryGame& aux, const MealyStrategy& sigma0,
                                             const StrategyProfile& sigma_hat, std::size_t steps) {
  const RewardMachine rm = strategy_to_rm(aux, sigma0);
  const Product product = implement(game, rm);
  StrategyProfile full = sigma_hat;
  full.strategies[0] = sigma0;
  std::vector<MemoryId> mem = initial_memory(full);
  StateId a = aux.game.initial(), p = product.game.initial();
  for (std::size_t k = 0; k < steps; ++k) {
    auto [s, q] = product.origin[p];
    if (aux.origin[a].first != s) return at_step(k, "state projections differ");
    const JointAction aux_joint = step(full, a, mem);
    const JointAction joint(aux_joint.begin() + 1, aux_joint.end());
    const StateId a_next = aux.game.successor(a, aux_joint);
    const StateId p_next = product.game.successor(p, joint);
    if (aux.vectors[aux.origin[a_next].second] != rm.reward(q, s))
      return at_step(k, "M_sigma0 pays another vector than sigma0");
    const StateId s_next = product.origin[p_next].first;
    if (aux.origin[a_next].first != s_next) return at_step(k, "successor projections differ");
    if (auto e = compare_rewards(game, product.game, p, s, aux, a_next, s_next); !e.empty()) return at_step(k, e);
    a = a_next;
    p = p_next;
  }
  return {};
}

std::string check_lift_payoffs(const Game& game, const RewardMachine& rm, const AuxiliaryGame& aux,
                               const StrategyProfile& sigma) {
  const Product product = implement(game, rm);
  const Payoffs small = payoffs(product.game, run_profile(product.game, sigma));
  const Payoffs big = payoffs(aux.game, run_profile(aux.game, lifted(aux, product, rm, sigma)));
  return compare_payoffs(small, big);
}

std::string check_lower_payoffs(const Game& game, const AuxiliaryGame& aux, const MealyStrategy& sigma0,
                                const StrategyProfile& sigma_hat) {
  const RewardMachine rm = strategy_to_rm(aux, sigma0);
  const Product product = implement(game, rm);
  StrategyProfile full = sigma_hat;
  full.strategies[0] = sigma0;
  StrategyProfile lowered(game.num_players());
  for (PlayerId i = 0; i < game.num_players(); ++i)
    lowered.strategies[i] = lower_strategy(aux, product, rm, i, full.at(i + 1));
  const Payoffs big = payoffs(aux.game, run_profile(aux.game, full));
  const Payoffs small = payoffs(product.game, run_profile(product.game, lowered));
  return compare_payoffs(small, big);
}

std::string check_ne_correspondence(const Game& game, const RewardMachine& rm, const AuxiliaryGame& aux,
                                    const StrategyProfile& sigma, bool* verdict) {
  const Product product = implement(game, rm);
  const bool small = certify_ne(product.game, sigma, std::nullopt);
  const bool big = certify_ne(aux.game, lifted(aux, product, rm, sigma), PlayerId{0});
  if (verdict) *verdict = small;
  if (small != big)
    return std::string("NE of the product: ") + (small ? "yes" : "no") + ", 0-fixed NE of G': " + (big ? "yes" : "no");
  return {};
}

}  // namespace eqd::testing
