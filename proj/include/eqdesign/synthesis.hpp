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
#include <optional>
#include <vector>

#include "eqdesign/auxiliary.hpp"
#include "eqdesign/game.hpp"
#include "eqdesign/lasso.hpp"
#include "eqdesign/ne_solver.hpp"
#include "eqdesign/rational.hpp"
#include "eqdesign/reward_machine.hpp"

namespace eqd {

enum class Backend { Lp, Oracle };

struct SearchOptions {
  Backend backend = Backend::Lp;
  /// Lasso length bound of the oracle backend.
  std::size_t bound = 12;
};

/// Outcome of the bisection. `value` is a2 for the worst variant and a1 for
/// the best variant; `witness` is the NE found by the last positive query.
struct EpsilonResult {
  Rational value;
  std::size_t iterations = 0;
  bool has_ne = false;
  std::optional<NEWitness> witness;
  /// Interval [a1, a2] after every iteration.
  std::vector<std::pair<Rational, Rational>> trace;
};

/// Bisection on [MinW_g, MaxW_g] with loop guard a2 - a1 >= epsilon. The
/// worst variant queries [a1, a'] and keeps the left half on success; the
/// best variant queries [a', a2] and keeps the right half. Without any NE the
/// result is MinW_g and no iteration runs. With `fixed0`, player 0 is the
/// designer and its deviations are ignored.
EpsilonResult epsilon_search(const Game& game, const Rational& epsilon, bool fixed0, Extreme which,
                             const SearchOptions& options = {});
EpsilonResult epsilon_search(const NeSolver& solver, const Rational& epsilon, Extreme which,
                             const SearchOptions& options = {});

Rational epsilon_worst_ne(const Game& game, const Rational& epsilon, bool fixed0, const SearchOptions& options = {});
Rational epsilon_best_ne(const Game& game, const Rational& epsilon, bool fixed0, const SearchOptions& options = {});

enum class ImprovementMode { Strong, Weak };
enum class ImprovementMethod { Direct, Certify };

struct ImprovementQuery {
  Budget beta = 0;
  Rational delta;
  Rational epsilon;
  ImprovementMode mode = ImprovementMode::Strong;
  ImprovementMethod method = ImprovementMethod::Certify;
  SearchOptions search;
  /// Auxiliary-game witnesses tried in certify mode.
  std::size_t max_candidates = 4;
  /// Reward edits per candidate in certify mode (strong only).
  std::size_t max_refinements = 32;
};

struct ImprovementAnswer {
  bool decision = false;
  Rational baseline_value;
  Rational improved_value;
  std::optional<RewardMachine> witness_rm;
  /// Lasso of the auxiliary game the witness was derived from.
  std::optional<Lasso> witness_lasso;
  std::size_t candidates_tried = 0;
};

/// Baseline is the epsilon-worst (strong) or epsilon-best (weak) value of
/// `game`. Direct method: compares against the designer-fixed value of the
/// auxiliary game. Certify method: derives reward machines from auxiliary
/// witnesses, evaluates each product exactly as above and answers yes only
/// for a machine whose own value beats the baseline by more than delta.
ImprovementAnswer decide_improvement(const Game& game, const ImprovementQuery& q);

/// The machine of a positive answer. Throws ValidationError when there is none.
RewardMachine synthesize_rm(const Game& game, const ImprovementQuery& q);

/// Designer strategy that replays the vector sequence of `lasso` while the
/// play follows it and pays nothing forever once it leaves. Memory: one value
/// per lasso position plus an off-path value.
MealyStrategy replay_strategy(const AuxiliaryGame& aux, const Lasso& lasso);

/// strategy_to_rm of the replay strategy, minimized.
RewardMachine rm_from_lasso(const AuxiliaryGame& aux, const Lasso& lasso);

}  // namespace eqd
