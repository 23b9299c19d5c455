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
#include <vector>

#include "eqdesign/game.hpp"
#include "eqdesign/rational.hpp"
#include "eqdesign/strategy.hpp"

namespace eqd {

/// Solution of the zero-sum game where all players but `player` commit to a
/// positional coalition choice first and `player` answers. Mean payoff of
/// `player` is maximized by it and minimized by the coalition.
struct PunishmentSolution {
  PlayerId player = 0;
  /// pun_i(s) for every state.
  std::vector<Rational> values;
  /// Per state, a joint-action index whose non-player components form the
  /// optimal coalition choice.
  std::vector<std::size_t> coalition;
  /// Per state, an optimal answer of `player` to coalition[s].
  std::vector<ActionId> response;

  /// The joint action played at s when the coalition punishes and the
  /// punished player answers optimally.
  std::size_t joint_index(const Game& game, StateId s) const;
};

enum class PunishmentBackend {
  /// Value iteration with strategy extraction, certified exactly by two
  /// one-player mean-cycle computations.
  Iteration,
  /// Every positional coalition strategy. Small games only.
  Enumeration,
};

PunishmentSolution solve_punishment(const Game& game, PlayerId i,
                                    PunishmentBackend backend = PunishmentBackend::Iteration);

/// pun_i(s) for every state.
std::vector<Rational> punishment_values(const Game& game, PlayerId i,
                                        PunishmentBackend backend = PunishmentBackend::Iteration);

/// Sup over all responses of player i against the fixed strategies of the
/// others (slot i of `others` is ignored), started in `start`.
Rational best_response_value(const Game& game, const StrategyProfile& others, PlayerId i, StateId start);

}  // namespace eqd
