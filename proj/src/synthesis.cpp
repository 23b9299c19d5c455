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

#include "eqdesign/synthesis.hpp"

#include <set>

#include "eqdesign/errors.hpp"

namespace eqd {

namespace {

std::optional<NEWitness> query(const NeSolver& solver, const ThresholdQuery& q, const SearchOptions& options) {
  if (options.backend == Backend::Oracle) return solver.threshold_oracle(q, options.bound);
  return solver.threshold(q);
}

// Bisection restricted to global payoffs in [floor, cap].
EpsilonResult bisect(const NeSolver& solver, const Rational& epsilon, Extreme which, const SearchOptions& options,
                     const ExtendedRational& floor, const ExtendedRational& cap) {
  if (epsilon.sign() <= 0) throw ValidationError("epsilon must be positive, got " + epsilon.to_string());
  const Game& game = solver.game();
  const WeightRange range = min_max_weights(game)[game.num_players()];
  EpsilonResult out;

  ThresholdQuery q;
  q.fixed_player = solver.fixed();
  q.global_lower = floor;
  q.global_upper = cap;
  out.witness = query(solver, q, options);
  if (!out.witness) {
    out.value = Rational(static_cast<long long>(range.min));
    return out;
  }
  out.has_ne = true;

  Rational a1(static_cast<long long>(range.min)), a2(static_cast<long long>(range.max));
  while (a2 - a1 >= epsilon) {
    Rational mid = (a1 + a2) / Rational(2);
    if (which == Extreme::Min) {
      q.global_lower = std::max(floor, ExtendedRational(a1));
      q.global_upper = std::min(cap, ExtendedRational(mid));
    } else {
      q.global_lower = std::max(floor, ExtendedRational(mid));
      q.global_upper = std::min(cap, ExtendedRational(a2));
    }
    std::optional<NEWitness> w;
    if (q.global_lower <= q.global_upper) w = query(solver, q, options);
    bool left = (which == Extreme::Min) == w.has_value();
    if (left) a2 = mid;
    else a1 = mid;
    if (w) out.witness = std::move(w);
    ++out.iterations;
    out.trace.emplace_back(a1, a2);
  }
  out.value = which == Extreme::Min ? a2 : a1;
  return out;
}

}  // namespace

EpsilonResult epsilon_search(const NeSolver& solver, const Rational& epsilon, Extreme which,
                             const SearchOptions& options) {
  return bisect(solver, epsilon, which, options, ExtendedRational::neg_inf(), ExtendedRational::pos_inf());
}

EpsilonResult epsilon_search(const Game& game, const Rational& epsilon, bool fixed0, Extreme which,
                             const SearchOptions& options) {
  if (epsilon.sign() <= 0) throw ValidationError("epsilon must be positive, got " + epsilon.to_string());
  NeSolver solver(game, fixed0 ? std::optional<PlayerId>(0) : std::nullopt);
  return epsilon_search(solver, epsilon, which, options);
}

Rational epsilon_worst_ne(const Game& game, const Rational& epsilon, bool fixed0, const SearchOptions& options) {
  return epsilon_search(game, epsilon, fixed0, Extreme::Min, options).value;
}

Rational epsilon_best_ne(const Game& game, const Rational& epsilon, bool fixed0, const SearchOptions& options) {
  return epsilon_search(game, epsilon, fixed0, Extreme::Max, options).value;
}

MealyStrategy replay_strategy(const AuxiliaryGame& aux, const Lasso& lasso) {
  validate_lasso(aux.game, lasso);
  const std::size_t S = aux.game.num_states(), L = lasso.length(), P = lasso.prefix.size();
  const std::size_t M = L + 1, off = L;
  const ActionId zero = aux.vector_action.front();
  std::vector<MemoryId> next(S * M, off);
  std::vector<ActionId> act(S * M, zero);
  for (StateId s = 0; s < S; ++s)
    for (std::size_t t = 0; t < L; ++t)
      if (lasso.state_at(t) == s) {
        act[s * M + t] = lasso.action_at(t)[0];
        next[s * M + t] = t + 1 < L ? t + 1 : P;
      }
  return MealyStrategy(S, M, 0, std::move(next), std::move(act));
}

RewardMachine rm_from_lasso(const AuxiliaryGame& aux, const Lasso& lasso) {
  return minimize(strategy_to_rm(aux, replay_strategy(aux, lasso)));
}

namespace {

Extreme extreme_of(ImprovementMode mode) { return mode == ImprovementMode::Strong ? Extreme::Min : Extreme::Max; }

struct Evaluation {
  EpsilonResult result;
  Product product;
};

Evaluation evaluate(const Game& game, const RewardMachine& rm, const ImprovementQuery& q) {
  Product product = implement(game, rm);
  NeSolver solver(product.game);
  EpsilonResult r = epsilon_search(solver, q.epsilon, extreme_of(q.mode), q.search);
  return Evaluation{std::move(r), std::move(product)};
}

// One reward edit that breaks `lasso` as an NE of the product: pay a deviator
// at the state its deviation leads to.
std::optional<RewardMachine> refine(const Game& game, const RewardMachine& rm, const Product& product,
                                    const Lasso& lasso, Budget beta) {
  NeSolver solver(product.game);
  std::set<std::tuple<StateId, PlayerId>> tried;
  for (std::size_t k = 0; k < lasso.length(); ++k) {
    StateId s = lasso.state_at(k);
    std::size_t a = product.game.joint_index(s, lasso.action_at(k));
    for (const auto& g : solver.groups(s, a))
      for (PlayerId i : g.candidates) {
        if (!tried.emplace(g.target, i).second) continue;
        auto [gs, rq] = product.origin[g.target];
        RewardVector r = rm.reward(rq, gs);
        if (norm1(r) + 1 > beta) continue;
        ++r[i];
        RewardMachine edited = rm.with_reward(rq, gs, r);
        Product p2 = implement(game, edited);
        if (!is_ne_outcome(p2.game, lasso, std::nullopt)) return edited;
      }
  }
  return std::nullopt;
}

ImprovementAnswer certify(const Game& game, const ImprovementQuery& q, const Rational& baseline) {
  ImprovementAnswer ans;
  ans.baseline_value = baseline;
  ans.improved_value = baseline;
  AuxiliaryGame aux = build_auxiliary(game, q.beta);
  NeSolver aux_solver(aux.game, PlayerId{0});

  ExtendedRational cap = ExtendedRational::pos_inf();
  bool have_improved = false;
  for (std::size_t c = 0; c < q.max_candidates; ++c) {
    EpsilonResult best = bisect(aux_solver, q.epsilon, Extreme::Max, q.search, ExtendedRational::neg_inf(), cap);
    if (!best.has_ne) break;
    const Lasso& lasso = best.witness->lasso;
    ++ans.candidates_tried;
    cap = ExtendedRational(best.witness->payoffs.global - q.epsilon);

    RewardMachine rm = strategy_to_rm(aux, replay_strategy(aux, lasso));
    for (std::size_t step = 0;; ++step) {
      Evaluation ev = evaluate(game, rm, q);
      // keep the best value seen so that "no" answers still report something
      if (!have_improved || ev.result.value > ans.improved_value) {
        ans.improved_value = ev.result.value;
        have_improved = true;
      }
      if (ev.result.value - baseline > q.delta) {
        RewardMachine small = minimize(rm);
        Evaluation check = evaluate(game, small, q);
        ans.decision = true;
        ans.improved_value = check.result.value;
        ans.witness_rm = std::move(small);
        ans.witness_lasso = lasso;
        return ans;
      }
      if (q.mode == ImprovementMode::Weak || !ev.result.has_ne || step >= q.max_refinements) break;
      auto edited = refine(game, rm, ev.product, ev.result.witness->lasso, q.beta);
      if (!edited) break;
      rm = std::move(*edited);
    }
  }
  return ans;
}

}  // namespace

ImprovementAnswer decide_improvement(const Game& game, const ImprovementQuery& q) {
  if (q.epsilon.sign() <= 0) throw ValidationError("epsilon must be positive, got " + q.epsilon.to_string());
  const Extreme which = extreme_of(q.mode);
  Rational baseline = epsilon_search(game, q.epsilon, false, which, q.search).value;
  if (q.method == ImprovementMethod::Certify) return certify(game, q, baseline);

  ImprovementAnswer ans;
  ans.baseline_value = baseline;
  AuxiliaryGame aux = build_auxiliary(game, q.beta);
  EpsilonResult r = epsilon_search(aux.game, q.epsilon, true, which, q.search);
  ans.improved_value = r.value;
  ans.decision = r.value - baseline > q.delta;
  if (ans.decision && r.witness) {
    ans.witness_lasso = r.witness->lasso;
    ans.witness_rm = rm_from_lasso(aux, r.witness->lasso);
  }
  return ans;
}

RewardMachine synthesize_rm(const Game& game, const ImprovementQuery& q) {
  ImprovementAnswer ans = decide_improvement(game, q);
  if (!ans.decision || !ans.witness_rm) throw ValidationError("no improvement witness for this query");
  return *ans.witness_rm;
}

}  // namespace eqd
