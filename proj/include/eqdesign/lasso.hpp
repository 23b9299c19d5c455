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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eqdesign/game.hpp"
#include "eqdesign/rational.hpp"

namespace eqd {

/// Ultimately periodic play prefix . cycle^omega with the joint action taken
/// at every position.
struct Lasso {
  std::vector<StateId> prefix;
  std::vector<StateId> cycle;
  std::vector<JointAction> prefix_actions;
  std::vector<JointAction> cycle_actions;

  std::size_t length() const { return prefix.size() + cycle.size(); }
  /// k-th state of the unrolled play.
  StateId state_at(std::size_t k) const;
  const JointAction& action_at(std::size_t k) const;

  friend bool operator==(const Lasso&, const Lasso&) = default;
};

/// Checks sizes, protocol membership and transition consistency.
void validate_lasso(const Game& game, const Lasso& lasso);

/// Builds a lasso from state sequences, picking the lowest-index joint action
/// that realizes each step. Throws ValidationError when a step is impossible.
Lasso make_lasso(const Game& game, const std::vector<StateId>& prefix, const std::vector<StateId>& cycle);
Lasso make_lasso(const Game& game, const std::vector<std::string>& prefix,
                 const std::vector<std::string>& cycle);

/// Cycle average of `weights`; the prefix does not matter.
Rational mean_payoff(std::span<const std::int64_t> weights, const Lasso& lasso);

struct Payoffs {
  std::vector<Rational> players;
  Rational global;
  friend bool operator==(const Payoffs&, const Payoffs&) = default;
};

Payoffs payoffs(const Game& game, const Lasso& lasso);

/// "s0 s1 (c0 c1 c2)" using state names.
std::string format_lasso(const Game& game, const Lasso& lasso);

}  // namespace eqd
