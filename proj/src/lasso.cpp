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

#include "eqdesign/lasso.hpp"

#include "eqdesign/errors.hpp"

namespace eqd {

StateId Lasso::state_at(std::size_t k) const {
  if (k < prefix.size()) return prefix[k];
  return cycle[(k - prefix.size()) % cycle.size()];
}

const JointAction& Lasso::action_at(std::size_t k) const {
  if (k < prefix.size()) return prefix_actions[k];
  return cycle_actions[(k - prefix.size()) % cycle.size()];
}

namespace {

void check_shape(const Lasso& lasso) {
  if (lasso.cycle.empty()) throw ValidationError("lasso cycle is empty");
  if (lasso.prefix_actions.size() != lasso.prefix.size() || lasso.cycle_actions.size() != lasso.cycle.size())
    throw ValidationError("lasso needs exactly one joint action per position");
}

}  // namespace

void validate_lasso(const Game& game, const Lasso& lasso) {
  check_shape(lasso);
  for (std::size_t k = 0; k < lasso.length(); ++k) {
    StateId s = lasso.state_at(k);
    if (s >= game.num_states()) throw ValidationError("lasso visits unknown state id " + std::to_string(s));
  }
  for (std::size_t k = 0; k < lasso.length(); ++k) {
    StateId s = lasso.state_at(k);
    StateId next = lasso.state_at(k + 1);
    StateId t = game.successor(s, game.joint_index(s, lasso.action_at(k)));
    if (t != next)
      throw ValidationError("lasso step " + std::to_string(k) + " from " + game.state_name(s) + " reaches " +
                            game.state_name(t) + ", expected " + game.state_name(next));
  }
}

Lasso make_lasso(const Game& game, const std::vector<StateId>& prefix, const std::vector<StateId>& cycle) {
  Lasso l;
  l.prefix = prefix;
  l.cycle = cycle;
  if (cycle.empty()) throw ValidationError("lasso cycle is empty");
  for (std::size_t k = 0; k < l.length(); ++k) {
    StateId s = l.state_at(k), next = l.state_at(k + 1);
    std::size_t a = 0;
    while (a < game.joint_count(s) && game.successor(s, a) != next) ++a;
    if (a == game.joint_count(s))
      throw ValidationError("no joint action leads from " + game.state_name(s) + " to " + game.state_name(next));
    (k < prefix.size() ? l.prefix_actions : l.cycle_actions).push_back(game.joint_action(s, a));
  }
  return l;
}

Lasso make_lasso(const Game& game, const std::vector<std::string>& prefix, const std::vector<std::string>& cycle) {
  auto ids = [&](const std::vector<std::string>& names) {
    std::vector<StateId> out;
    for (const auto& n : names) {
      auto s = game.find_state(n);
      if (!s) throw ValidationError("unknown state '" + n + "'");
      out.push_back(*s);
    }
    return out;
  };
  return make_lasso(game, ids(prefix), ids(cycle));
}

Rational mean_payoff(std::span<const std::int64_t> weights, const Lasso& lasso) {
  check_shape(lasso);
  long long sum = 0;
  for (StateId s : lasso.cycle) {
    if (s >= weights.size()) throw ValidationError("lasso visits a state outside the weight table");
    sum += weights[s];
  }
  return Rational(sum, static_cast<long long>(lasso.cycle.size()));
}

Payoffs payoffs(const Game& game, const Lasso& lasso) {
  validate_lasso(game, lasso);
  Payoffs p;
  for (PlayerId i = 0; i < game.num_players(); ++i) p.players.push_back(mean_payoff(game.weights(i), lasso));
  p.global = mean_payoff(game.global_weights(), lasso);
  return p;
}

std::string format_lasso(const Game& game, const Lasso& lasso) {
  std::string out;
  for (StateId s : lasso.prefix) out += game.state_name(s) + " ";
  out += "(";
  for (std::size_t k = 0; k < lasso.cycle.size(); ++k) {
    if (k) out += " ";
    out += game.state_name(lasso.cycle[k]);
  }
  return out + ")^w";
}

}  // namespace eqd
