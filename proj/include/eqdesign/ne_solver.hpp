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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "eqdesign/game.hpp"
#include "eqdesign/lasso.hpp"
#include "eqdesign/punishment.hpp"
#include "eqdesign/rational.hpp"
#include "eqdesign/strategy.hpp"

namespace eqd {

/// Bounds on the payoffs of an NE outcome. Empty `lower`/`upper` mean no
/// player bounds; otherwise they hold one entry per player.
struct ThresholdQuery {
  std::vector<ExtendedRational> lower, upper;
  ExtendedRational global_lower = ExtendedRational::neg_inf();
  ExtendedRational global_upper = ExtendedRational::pos_inf();
  std::optional<PlayerId> fixed_player;
};

struct NEWitness {
  Lasso lasso;
  StrategyProfile profile;
  Payoffs payoffs;
};

enum class Extreme { Min, Max };

/// Equilibrium analysis of one game, optionally with a fixed player whose
/// deviations are ignored. Punishment and threat tables are computed once in
/// the constructor.
///
/// Deviation model: a deviation from joint action a at s is only visible
/// through the state it leads to. For a target state s' different from the
/// planned successor, let C be the set of non-fixed players that reach s' by
/// changing their own action. The deviation is deterred when some j in C can
/// be punished at s' such that every i in C gets at most its on-path payoff
/// against the punishment of j (its own punishment value when i = j).
class NeSolver {
 public:
  explicit NeSolver(Game game, std::optional<PlayerId> fixed = std::nullopt);

  const Game& game() const { return game_; }
  std::optional<PlayerId> fixed() const { return fixed_; }
  bool active(PlayerId i) const { return active_[i]; }
  /// Only for non-fixed players.
  const PunishmentSolution& punishment(PlayerId j) const;
  /// Best value of player i at s when everybody follows the punishment of j.
  const Rational& threat(PlayerId j, StateId s, PlayerId i) const { return threat_[j][s][i]; }

  bool is_ne_outcome(const Lasso& lasso) const;
  /// Follow the lasso; on leaving it, punish forever the player chosen by the
  /// deviation model for the observed target. Throws on non-NE lassos.
  StrategyProfile grim_trigger_profile(const Lasso& lasso) const;
  /// Lasso, grim-trigger profile and payoffs. Throws on non-NE lassos.
  NEWitness make_witness(const Lasso& lasso) const;

  /// Frequency-LP backend.
  std::optional<NEWitness> threshold(const ThresholdQuery& q) const;
  /// Exhaustive lassos with prefix + cycle length at most `bound`.
  bool threshold_oracle_exists(const ThresholdQuery& q, std::size_t bound) const;
  std::optional<NEWitness> threshold_oracle(const ThresholdQuery& q, std::size_t bound) const;

  /// Exact infimum / supremum of the global payoff over NE outcomes (LP
  /// backend), or nullopt when there is no NE.
  std::optional<Rational> global_extreme(Extreme which) const;
  /// Min / max over NE lassos up to `bound` (oracle backend).
  std::optional<Rational> global_extreme_oracle(Extreme which, std::size_t bound) const;

  struct Group {
    StateId target;
    std::vector<PlayerId> candidates;
  };
  /// Visible deviations from joint action `a` at s.
  const std::vector<Group>& groups(StateId s, std::size_t a) const { return groups_[s][a]; }

 private:
  struct Signature;
  struct Search;

  std::optional<PlayerId> punisher(const Group& g, const std::vector<ExtendedRational>& z) const;
  bool admissible(StateId s, std::size_t a, const std::vector<ExtendedRational>& z) const;
  std::vector<ExtendedRational> mp_thresholds(const Lasso& lasso) const;
  /// Validates the query; false when its payoff box is empty.
  bool check_query(const ThresholdQuery& q) const;
  const std::vector<Signature>& signatures(std::size_t bound) const;
  std::optional<std::pair<Lasso, Rational>> oracle_search(const ThresholdQuery& q, std::size_t bound,
                                                          std::optional<Extreme> extreme, bool want_lasso) const;

  Game game_;
  std::optional<PlayerId> fixed_;
  std::vector<bool> active_;
  std::vector<std::optional<PunishmentSolution>> pun_;
  std::vector<std::vector<std::vector<Rational>>> threat_;  // [j][s][i]
  std::vector<std::vector<std::vector<Group>>> groups_;     // [s][a]
  std::vector<std::vector<Rational>> candidates_;           // [i] sorted threat values

  mutable std::mutex cache_mutex_;
  mutable std::map<std::size_t, std::shared_ptr<std::vector<Signature>>> signature_cache_;
  mutable std::vector<std::pair<StateId, StateId>> edges_by_id_;
};

bool is_ne_outcome(const Game& game, const Lasso& lasso, std::optional<PlayerId> fixed);
StrategyProfile grim_trigger_profile(const Game& game, const Lasso& lasso, std::optional<PlayerId> fixed);
std::optional<NEWitness> ne_threshold(const Game& game, const ThresholdQuery& query);

/// True when no non-fixed player has a best response above its payoff under
/// `profile`, starting from the initial state.
bool certify_ne(const Game& game, const StrategyProfile& profile, std::optional<PlayerId> fixed);

}  // namespace eqd
