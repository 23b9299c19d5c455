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

#include <string>
#include <string_view>

#include "eqdesign/game.hpp"
#include "eqdesign/reward_machine.hpp"

namespace eqd {

// Game and reward machine documents are JSON objects.
//
// Game keys: players, actions, states (name lists; list order fixes the
// ids), initial, protocol (state -> player -> action list), transitions
// (state -> "a1,...,an" -> state, one action name per player in player
// order), weights (player -> state -> integer), global_weights (state ->
// integer).
//
// Machine keys: states, initial, transitions (q -> game state -> q),
// rewards (q -> game state -> list of naturals in player order).
//
// Syntax errors carry line and column. Semantic errors name the key path,
// e.g. "global_weights.m: missing".

Game parse_game(std::string_view text);
/// Compact form with sorted keys. serialize_game(parse_game(x)) equals
/// canonicalize(x) when protocol lists follow the order of "actions".
std::string serialize_game(const Game& game);

RewardMachine parse_rm(std::string_view text, const Game& game);
std::string serialize_rm(const RewardMachine& rm, const Game& game);

/// Reparses any JSON text and dumps it compactly with sorted keys.
std::string canonicalize(std::string_view text);

/// Whole file as a string. Throws ParseError when it cannot be read.
std::string read_text_file(const std::string& path);

}  // namespace eqd
