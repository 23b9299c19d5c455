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

#include "eqdesign/ne_solver.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

#include "eqdesign/errors.hpp"
#include "eqdesign/lp.hpp"
#include "eqdesign/mean_cycle.hpp"

namespace eqd {

using Thresholds = std::vector<ExtendedRational>;
using Edge = std::pair<StateId, StateId>;

struct NeSolver::Signature {
  StateId root;
  std::size_t length;
  std::vector<std::int64_t> sums;  // players, then global
  std::uint64_t mask;
};

NeSolver::NeSolver(Game game, std::optional<PlayerId> fixed) : game_(std::move(game)), fixed_(fixed) {
  const std::size_t n = game_.num_players(), S = game_.num_states();
  if (fixed_ && *fixed_ >= n) throw ValidationError("fixed player out of range");
  active_.assign(n, true);
  if (fixed_) active_[*fixed_] = false;

  pun_.resize(n);
  threat_.assign(n, {});
  for (PlayerId j = 0; j < n; ++j) {
    if (!active_[j]) continue;
    pun_[j] = solve_punishment(game_, j);
    threat_[j].assign(S, std::vector<Rational>(n));
    for (StateId s = 0; s < S; ++s) threat_[j][s][j] = pun_[j]->values[s];
    for (PlayerId i = 0; i < n; ++i) {
      if (i == j || !active_[i]) continue;
      WeightedDigraph g(S);
      for (StateId s = 0; s < S; ++s) {
        std::size_t a = pun_[j]->joint_index(game_, s);
        for (ActionId ai : game_.protocol(s, i))
          g.add_edge(s, game_.successor(s, game_.replace_action(s, a, i, ai)), game_.weight(i, s));
      }
      auto vals = max_mean_values(g);
      for (StateId s = 0; s < S; ++s) threat_[j][s][i] = vals[s];
    }
  }

  groups_.resize(S);
  std::vector<std::set<Rational>> cand(n);
  for (StateId s = 0; s < S; ++s) {
    groups_[s].resize(game_.joint_count(s));
    for (std::size_t a = 0; a < game_.joint_count(s); ++a) {
      StateId next = game_.successor(s, a);
      std::map<StateId, std::vector<PlayerId>> by_target;
      for (PlayerId i = 0; i < n; ++i) {
        if (!active_[i]) continue;
        for (ActionId ai : game_.protocol(s, i)) {
          StateId t = game_.successor(s, game_.replace_action(s, a, i, ai));
          if (t == next) continue;
          auto& c = by_target[t];
          if (c.empty() || c.back() != i) c.push_back(i);
        }
      }
      for (auto& [t, c] : by_target) {
        for (PlayerId i : c)
          for (PlayerId j : c) cand[i].insert(threat_[j][t][i]);
        groups_[s][a].push_back(Group{t, std::move(c)});
      }
    }
  }
  candidates_.resize(n);
  for (PlayerId i = 0; i < n; ++i) candidates_[i].assign(cand[i].begin(), cand[i].end());
}

const PunishmentSolution& NeSolver::punishment(PlayerId j) const {
  if (j >= pun_.size() || !pun_[j]) throw ValidationError("no punishment for a fixed player");
  return *pun_[j];
}

std::optional<PlayerId> NeSolver::punisher(const Group& g, const Thresholds& z) const {
  for (PlayerId j : g.candidates) {
    bool ok = true;
    for (PlayerId i : g.candidates)
      if (ExtendedRational(threat_[j][g.target][i]) > z[i]) {
        ok = false;
        break;
      }
    if (ok) return j;
  }
  return std::nullopt;
}

bool NeSolver::admissible(StateId s, std::size_t a, const Thresholds& z) const {
  for (const auto& g : groups_[s][a])
    if (!punisher(g, z)) return false;
  return true;
}

Thresholds NeSolver::mp_thresholds(const Lasso& lasso) const {
  Thresholds z(game_.num_players(), ExtendedRational::pos_inf());
  for (PlayerId i = 0; i < game_.num_players(); ++i)
    if (active_[i]) z[i] = mean_payoff(game_.weights(i), lasso);
  return z;
}

bool NeSolver::is_ne_outcome(const Lasso& lasso) const {
  validate_lasso(game_, lasso);
  Thresholds z = mp_thresholds(lasso);
  for (std::size_t k = 0; k < lasso.length(); ++k) {
    StateId s = lasso.state_at(k);
    if (!admissible(s, game_.joint_index(s, lasso.action_at(k)), z)) return false;
  }
  return true;
}

StrategyProfile NeSolver::grim_trigger_profile(const Lasso& lasso) const {
  if (!is_ne_outcome(lasso)) throw ValidationError("grim trigger requested for a lasso that is not an NE outcome");
  const std::size_t n = game_.num_players(), S = game_.num_states();
  const std::size_t P = lasso.prefix.size(), L = lasso.length();
  Thresholds z = mp_thresholds(lasso);
  auto succ_pos = [&](std::size_t k) { return k + 1 < L ? k + 1 : P; };

  // punisher chosen for every position and visible target
  std::vector<std::map<StateId, PlayerId>> chosen(L);
  std::vector<bool> used(n, false);
  for (std::size_t k = 0; k < L; ++k) {
    StateId s = lasso.state_at(k);
    for (const auto& g : groups_[s][game_.joint_index(s, lasso.action_at(k))]) {
      PlayerId j = *punisher(g, z);
      chosen[k][g.target] = j;
      used[j] = true;
    }
  }
  // memory: previous lasso position 0..L-1, a start value when the prefix is
  // nonempty, then one punishment mode per punished player
  const std::size_t start = P > 0 ? L : L - 1;
  std::size_t M = P > 0 ? L + 1 : L;
  std::vector<std::size_t> mode(n, static_cast<std::size_t>(-1));
  for (PlayerId j = 0; j < n; ++j)
    if (used[j]) mode[j] = M++;

  StrategyProfile profile(n);
  for (PlayerId i = 0; i < n; ++i) {
    std::vector<MemoryId> next(S * M);
    std::vector<ActionId> act(S * M);
    for (StateId s = 0; s < S; ++s)
      for (std::size_t t = 0; t < M; ++t) {
        std::size_t cell = s * M + t;
        std::optional<PlayerId> punish;
        if (t < L || (P > 0 && t == L)) {
          std::size_t k = (P > 0 && t == L) ? 0 : succ_pos(t);
          if (s == lasso.state_at(k)) {
            act[cell] = lasso.action_at(k)[i];
            next[cell] = k;
            continue;
          }
          if (!(P > 0 && t == L)) {
            auto it = chosen[t].find(s);
            if (it != chosen[t].end()) punish = it->second;
          }
          if (!punish)  // not a single visible deviation; punish anybody
            for (PlayerId j = 0; j < n && !punish; ++j)
              if (used[j]) punish = j;
        } else {
          for (PlayerId j = 0; j < n; ++j)
            if (mode[j] == t) punish = j;
        }
        if (punish) {
          act[cell] = game_.joint_action(s, pun_[*punish]->joint_index(game_, s))[i];
          next[cell] = mode[*punish];
        } else {
          act[cell] = game_.protocol(s, i).front();
          next[cell] = t;
        }
      }
    profile.strategies[i] = MealyStrategy(S, M, start, std::move(next), std::move(act));
  }
  return profile;
}

NEWitness NeSolver::make_witness(const Lasso& lasso) const {
  NEWitness w;
  w.profile = grim_trigger_profile(lasso);
  w.lasso = lasso;
  w.payoffs = payoffs(game_, lasso);
  return w;
}

bool NeSolver::check_query(const ThresholdQuery& q) const {
  const std::size_t n = game_.num_players();
  if (!q.lower.empty() && q.lower.size() != n) throw ValidationError("lower bounds need one entry per player");
  if (!q.upper.empty() && q.upper.size() != n) throw ValidationError("upper bounds need one entry per player");
  if (q.fixed_player != fixed_) throw ValidationError("query fixes a different player than the solver");
  // an empty box has no NE in it
  auto empty = [](const ExtendedRational& lo, const ExtendedRational& hi) {
    return lo > hi || lo == ExtendedRational::pos_inf() || hi == ExtendedRational::neg_inf();
  };
  for (std::size_t i = 0; i < n; ++i) {
    ExtendedRational lo = q.lower.empty() ? ExtendedRational::neg_inf() : q.lower[i];
    ExtendedRational hi = q.upper.empty() ? ExtendedRational::pos_inf() : q.upper[i];
    if (empty(lo, hi)) return false;
  }
  return !empty(q.global_lower, q.global_upper);
}

namespace {

bool in_bounds(const Rational& v, const ExtendedRational& lo, const ExtendedRational& hi) {
  return lo <= ExtendedRational(v) && ExtendedRational(v) <= hi;
}

bool payoffs_in_bounds(const Payoffs& p, const ThresholdQuery& q) {
  for (std::size_t i = 0; i < p.players.size(); ++i) {
    if (!q.lower.empty() && ExtendedRational(p.players[i]) < q.lower[i]) return false;
    if (!q.upper.empty() && ExtendedRational(p.players[i]) > q.upper[i]) return false;
  }
  return in_bounds(p.global, q.global_lower, q.global_upper);
}

}  // namespace

// ---------------------------------------------------------------------------
// Frequency-LP backend

struct NeSolver::Search {
  const NeSolver& solver;
  const ThresholdQuery& query;

  struct Cell {
    Thresholds z;
    std::vector<std::vector<bool>> adm;  // [s][a]
    std::vector<Edge> edges;             // cell edges
  };

  // Linear forms over edge frequencies, each as (coefficient per edge, bound)
  // meaning sum_e coef_e x_e >= bound.
  struct Form {
    std::vector<Rational> coef;
    Rational bound;
  };

  std::vector<Form> forms(const Thresholds& z, const std::vector<Edge>& edges) const {
    const Game& g = solver.game_;
    const std::size_t n = g.num_players();
    std::vector<Form> out;
    auto add = [&](auto weight, const Rational& b, bool upper) {
      Form f;
      for (const auto& e : edges) {
        Rational w(weight(e.first));
        f.coef.push_back(upper ? -w : w);
      }
      f.bound = upper ? -b : b;
      out.push_back(std::move(f));
    };
    for (PlayerId i = 0; i < n; ++i) {
      auto wi = [&, i](StateId s) { return static_cast<long long>(g.weight(i, s)); };
      if (solver.active_[i] && z[i].is_finite()) add(wi, z[i].value(), false);
      if (!query.lower.empty() && query.lower[i].is_finite()) add(wi, query.lower[i].value(), false);
      if (!query.upper.empty() && query.upper[i].is_finite()) add(wi, query.upper[i].value(), true);
    }
    auto wg = [&](StateId s) { return static_cast<long long>(g.global_weight(s)); };
    if (query.global_lower.is_finite()) add(wg, query.global_lower.value(), false);
    if (query.global_upper.is_finite()) add(wg, query.global_upper.value(), true);
    return out;
  }

  // Normalized polytope: circulation, sum x = 1, all forms.
  LinearProgram polytope(const Thresholds& z, const std::vector<Edge>& edges) const {
    LinearProgram lp(edges.size());
    std::map<StateId, std::vector<LinearProgram::Term>> balance;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      balance[edges[e].first].emplace_back(e, Rational(-1));
      balance[edges[e].second].emplace_back(e, Rational(1));
    }
    for (auto& [v, terms] : balance) {
      // self-loops cancel out
      std::map<std::size_t, Rational> merged;
      for (auto& [e, c] : terms) merged[e] += c;
      std::vector<LinearProgram::Term> t;
      for (auto& [e, c] : merged)
        if (c.sign() != 0) t.emplace_back(e, c);
      if (!t.empty()) lp.add_constraint(std::move(t), LinearProgram::Relation::Equal, Rational(0));
    }
    std::vector<LinearProgram::Term> all;
    for (std::size_t e = 0; e < edges.size(); ++e) all.emplace_back(e, Rational(1));
    lp.add_constraint(all, LinearProgram::Relation::Equal, Rational(1));
    for (auto& f : forms(z, edges)) {
      std::vector<LinearProgram::Term> t;
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (f.coef[e].sign() != 0) t.emplace_back(e, f.coef[e]);
      lp.add_constraint(std::move(t), LinearProgram::Relation::GreaterEqual, f.bound);
    }
    return lp;
  }

  // Largest set of edges used by some feasible point; empty when infeasible.
  std::vector<bool> max_support(const Thresholds& z, const std::vector<Edge>& edges) const {
    std::vector<bool> in(edges.size(), false);
    while (true) {
      LinearProgram lp = polytope(z, edges);
      std::vector<LinearProgram::Term> obj;
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (!in[e]) obj.emplace_back(e, Rational(1));
      if (obj.empty()) return in;
      lp.set_objective(obj);
      auto res = lp.solve();
      if (res.status != LinearProgram::Status::Optimal) return std::vector<bool>(edges.size(), false);
      if (res.objective.sign() == 0) return in;
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (res.values[e].sign() > 0) in[e] = true;
    }
  }

  // Calls visit(z, adm, support_edges, cell_edges) on every cell whose maximal
  // support is strongly connected. Stops when visit returns true.
  using Visit = std::function<bool(const Thresholds&, const std::vector<std::vector<bool>>&,
                                   const std::vector<Edge>&, const std::vector<Edge>&)>;

  bool explore_cell(const Thresholds& z, const std::vector<std::vector<bool>>& adm, std::vector<Edge> edges,
                    const Visit& visit) const {
    auto in = max_support(z, edges);
    std::vector<Edge> support;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (in[e]) support.push_back(edges[e]);
    if (support.empty()) return false;
    auto parts = components(support);
    if (parts.size() == 1 && parts[0].size() == support.size()) return visit(z, adm, support, edges);
    for (auto& part : parts)
      if (explore_cell(z, adm, part, visit)) return true;
    return false;
  }

  // Edge sets of the nontrivial strongly connected components, in order of
  // their smallest node.
  static std::vector<std::vector<Edge>> components(const std::vector<Edge>& edges) {
    std::vector<StateId> nodes;
    for (auto [u, v] : edges) {
      nodes.push_back(u);
      nodes.push_back(v);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    auto local = [&](StateId s) {
      return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), s) - nodes.begin());
    };
    std::vector<std::vector<std::size_t>> adj(nodes.size());
    for (auto [u, v] : edges) adj[local(u)].push_back(local(v));
    auto scc = strongly_connected_components(adj);
    std::vector<std::vector<Edge>> by_comp(scc.count);
    for (auto e : edges)
      if (scc.comp[local(e.first)] == scc.comp[local(e.second)]) by_comp[scc.comp[local(e.first)]].push_back(e);
    std::vector<std::pair<StateId, std::size_t>> order;
    for (std::size_t c = 0; c < scc.count; ++c)
      if (!by_comp[c].empty()) {
        StateId least = by_comp[c].front().first;
        for (auto [u, v] : by_comp[c]) least = std::min(least, u);
        order.emplace_back(least, c);
      }
    std::sort(order.begin(), order.end());
    std::vector<std::vector<Edge>> out;
    for (auto [least, c] : order) {
      std::sort(by_comp[c].begin(), by_comp[c].end());
      out.push_back(std::move(by_comp[c]));
    }
    return out;
  }

  // Enumerates threshold vectors and the reachable admissible cells.
  bool run(const Visit& visit) const {
    const Game& g = solver.game_;
    const std::size_t n = g.num_players(), S = g.num_states();
    std::vector<PlayerId> players;
    for (PlayerId i = 0; i < n; ++i)
      if (solver.active_[i]) players.push_back(i);
    std::vector<std::vector<ExtendedRational>> options(n);
    for (PlayerId i : players) {
      options[i].push_back(ExtendedRational::neg_inf());
      for (const auto& r : solver.candidates_[i]) options[i].push_back(r);
    }
    std::vector<std::size_t> pick(players.size(), 0);
    std::map<std::vector<Edge>, std::vector<Thresholds>> seen;
    while (true) {
      Thresholds z(n, ExtendedRational::pos_inf());
      for (std::size_t k = 0; k < players.size(); ++k) z[players[k]] = options[players[k]][pick[k]];

      std::vector<std::vector<bool>> adm(S);
      std::vector<std::set<StateId>> out(S);
      for (StateId s = 0; s < S; ++s) {
        adm[s].resize(g.joint_count(s));
        for (std::size_t a = 0; a < g.joint_count(s); ++a)
          if ((adm[s][a] = solver.admissible(s, a, z))) out[s].insert(g.successor(s, a));
      }
      std::vector<bool> reach(S, false);
      std::vector<StateId> todo{g.initial()};
      reach[g.initial()] = true;
      while (!todo.empty()) {
        StateId s = todo.back();
        todo.pop_back();
        for (StateId t : out[s])
          if (!reach[t]) {
            reach[t] = true;
            todo.push_back(t);
          }
      }
      std::vector<Edge> edges;
      for (StateId s = 0; s < S; ++s)
        if (reach[s])
          for (StateId t : out[s]) edges.emplace_back(s, t);

      bool dominated = false;
      auto& prior = seen[edges];
      for (const auto& z2 : prior) {
        bool le = true;
        for (PlayerId i : players) le = le && z2[i] <= z[i];
        dominated = dominated || le;
      }
      if (!dominated) {
        prior.push_back(z);
        for (auto& part : components(edges))
          if (explore_cell(z, adm, std::move(part), visit)) return true;
      }

      std::size_t k = 0;
      for (; k < players.size(); ++k) {
        if (++pick[k] < options[players[k]].size()) break;
        pick[k] = 0;
      }
      if (k == players.size()) return false;
    }
  }

  // Shortest simple cycle of the support meeting every form, least node
  // sequence on ties. Gives up after a fixed amount of search.
  std::optional<std::vector<StateId>> short_cycle(const Thresholds& z, const std::vector<Edge>& support) const {
    const auto fs = forms(z, support);
    std::map<StateId, std::vector<std::pair<StateId, std::size_t>>> out;
    for (std::size_t e = 0; e < support.size(); ++e) out[support[e].first].emplace_back(support[e].second, e);
    std::set<StateId> node_set;
    for (auto [u, v] : support) node_set.insert(u), node_set.insert(v);
    std::vector<StateId> nodes(node_set.begin(), node_set.end());

    std::size_t budget = 200'000;
    std::vector<StateId> path;
    std::vector<std::size_t> used;
    std::set<StateId> on_path;
    auto feasible = [&] {
      for (const auto& f : fs) {
        Rational total;
        for (std::size_t e : used) total += f.coef[e] - f.bound;
        if (total.sign() < 0) return false;
      }
      return true;
    };
    std::function<bool(StateId, StateId, std::size_t)> dfs = [&](StateId root, StateId v, std::size_t left) {
      if (budget == 0) return false;
      --budget;
      for (auto [t, e] : out[v]) {
        if (t < root) continue;
        used.push_back(e);
        if (t == root && left == 1 && feasible()) return true;
        if (t != root && left > 1 && !on_path.count(t)) {
          path.push_back(t);
          on_path.insert(t);
          if (dfs(root, t, left - 1)) return true;
          on_path.erase(t);
          path.pop_back();
        }
        used.pop_back();
      }
      return false;
    };
    for (std::size_t len = 1; len <= nodes.size() && budget > 0; ++len)
      for (StateId root : nodes) {
        path = {root};
        used.clear();
        on_path = {root};
        if (dfs(root, root, len)) return path;
      }
    return std::nullopt;
  }

  // Closed walk through the support: a short cycle when one exists, otherwise
  // the cheapest circulation that covers a strongly connected spanning
  // skeleton, so the walk stays connected.
  std::vector<StateId> closed_walk(const Thresholds& z, const std::vector<Edge>& support) const {
    if (auto c = short_cycle(z, support)) return *c;

    const StateId root = support.front().first;
    std::set<std::size_t> skeleton;
    for (bool forward : {true, false}) {
      std::set<StateId> seen{root};
      std::deque<StateId> queue{root};
      while (!queue.empty()) {
        StateId v = queue.front();
        queue.pop_front();
        for (std::size_t e = 0; e < support.size(); ++e) {
          StateId from = forward ? support[e].first : support[e].second;
          StateId to = forward ? support[e].second : support[e].first;
          if (from == v && seen.insert(to).second) {
            skeleton.insert(e);
            queue.push_back(to);
          }
        }
      }
    }
    LinearProgram lp(support.size());
    std::map<StateId, std::map<std::size_t, Rational>> balance;
    for (std::size_t e = 0; e < support.size(); ++e) {
      balance[support[e].first][e] -= Rational(1);
      balance[support[e].second][e] += Rational(1);
    }
    for (auto& [v, m] : balance) {
      std::vector<LinearProgram::Term> t;
      for (auto& [e, c] : m)
        if (c.sign() != 0) t.emplace_back(e, c);
      if (!t.empty()) lp.add_constraint(std::move(t), LinearProgram::Relation::Equal, Rational(0));
    }
    for (auto& f : forms(z, support)) {
      std::vector<LinearProgram::Term> t;
      for (std::size_t e = 0; e < support.size(); ++e) {
        Rational c = f.coef[e] - f.bound;
        if (c.sign() != 0) t.emplace_back(e, c);
      }
      if (!t.empty()) lp.add_constraint(std::move(t), LinearProgram::Relation::GreaterEqual, Rational(0));
    }
    std::vector<LinearProgram::Term> all;
    for (std::size_t e = 0; e < support.size(); ++e) {
      if (skeleton.count(e)) lp.add_constraint({{e, Rational(1)}}, LinearProgram::Relation::GreaterEqual, Rational(1));
      all.emplace_back(e, Rational(1));
    }
    lp.minimize(all);
    auto res = lp.solve();
    if (res.status != LinearProgram::Status::Optimal) throw std::logic_error("support circulation infeasible");
    mpz_class scale = 1;
    for (const auto& x : res.values) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.denominator().get_mpz_t());
    std::map<StateId, std::map<StateId, std::size_t>> mult;
    std::size_t total = 0;
    for (std::size_t e = 0; e < support.size(); ++e) {
      mpz_class m = (res.values[e] * Rational(mpq_class(scale))).numerator();
      if (!m.fits_ulong_p() || m.get_ui() > 1'000'000) throw LimitExceeded("witness cycle too long");
      mult[support[e].first][support[e].second] += m.get_ui();
      total += m.get_ui();
    }
    if (total > 1'000'000) throw LimitExceeded("witness cycle too long");

    // lexicographically least Euler circuit from the root
    std::vector<StateId> stack{root}, circuit;
    while (!stack.empty()) {
      StateId v = stack.back();
      auto& outs = mult[v];
      auto it = outs.begin();
      while (it != outs.end() && it->second == 0) ++it;
      if (it == outs.end()) {
        circuit.push_back(v);
        stack.pop_back();
      } else {
        --it->second;
        stack.push_back(it->first);
      }
    }
    std::reverse(circuit.begin(), circuit.end());
    circuit.pop_back();
    return circuit;
  }

  // Concrete lasso whose cycle stays in the support, reached from the initial
  // state by admissible steps.
  Lasso lasso_for(const Thresholds& z, const std::vector<std::vector<bool>>& adm,
                  const std::vector<Edge>& support) const {
    const Game& g = solver.game_;
    std::vector<StateId> walk = closed_walk(z, support);
    std::set<StateId> mult(walk.begin(), walk.end());

    // shortest admissible path from the initial state into the support
    const std::size_t S = g.num_states();
    std::vector<std::size_t> dist(S, static_cast<std::size_t>(-1));
    std::vector<StateId> parent(S);
    std::deque<StateId> queue{g.initial()};
    dist[g.initial()] = 0;
    StateId entry = g.initial();
    bool found = mult.count(g.initial()) > 0;
    while (!found && !queue.empty()) {
      StateId s = queue.front();
      queue.pop_front();
      std::set<StateId> succ;
      for (std::size_t a = 0; a < g.joint_count(s); ++a)
        if (adm[s][a]) succ.insert(g.successor(s, a));
      for (StateId t : succ)
        if (dist[t] == static_cast<std::size_t>(-1)) {
          dist[t] = dist[s] + 1;
          parent[t] = s;
          if (mult.count(t)) {
            entry = t;
            found = true;
            break;
          }
          queue.push_back(t);
        }
    }
    if (!found) throw std::logic_error("support not reachable");
    std::vector<StateId> prefix;
    for (StateId v = entry; v != g.initial(); v = parent[v]) prefix.push_back(parent[v]);
    std::reverse(prefix.begin(), prefix.end());

    auto first = std::find(walk.begin(), walk.end(), entry);
    std::rotate(walk.begin(), first, walk.end());
    const std::vector<StateId>& circuit = walk;

    Lasso l;
    l.prefix = prefix;
    l.cycle = circuit;
    for (std::size_t k = 0; k < l.length(); ++k) {
      StateId s = l.state_at(k), t = l.state_at(k + 1);
      std::size_t a = 0;
      while (!(adm[s][a] && g.successor(s, a) == t)) ++a;
      (k < prefix.size() ? l.prefix_actions : l.cycle_actions).push_back(g.joint_action(s, a));
    }
    return l;
  }
};

std::optional<NEWitness> NeSolver::threshold(const ThresholdQuery& q) const {
  if (!check_query(q)) return std::nullopt;
  Search search{*this, q};
  std::optional<NEWitness> result;
  search.run([&](const Thresholds& z, const std::vector<std::vector<bool>>& adm, const std::vector<Edge>& support,
                 const std::vector<Edge>&) {
    Lasso l = search.lasso_for(z, adm, support);
    result = make_witness(l);
    if (!payoffs_in_bounds(result->payoffs, q)) throw std::logic_error("witness outside the query bounds");
    return true;
  });
  return result;
}

std::optional<Rational> NeSolver::global_extreme(Extreme which) const {
  ThresholdQuery q;
  q.fixed_player = fixed_;
  Search search{*this, q};
  std::optional<Rational> best;
  search.run([&](const Thresholds& z, const std::vector<std::vector<bool>>&, const std::vector<Edge>&,
                 const std::vector<Edge>& cell) {
    LinearProgram lp = search.polytope(z, cell);
    std::vector<LinearProgram::Term> obj;
    for (std::size_t e = 0; e < cell.size(); ++e)
      obj.emplace_back(e, Rational(static_cast<long long>(game_.global_weight(cell[e].first))));
    if (which == Extreme::Min) lp.minimize(obj);
    else lp.set_objective(obj);
    auto res = lp.solve();
    if (res.status == LinearProgram::Status::Optimal &&
        (!best || (which == Extreme::Min ? res.objective < *best : res.objective > *best)))
      best = res.objective;
    return false;
  });
  return best;
}

// ---------------------------------------------------------------------------
// Oracle backend

const std::vector<NeSolver::Signature>& NeSolver::signatures(std::size_t bound) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = signature_cache_.find(bound);
  if (it != signature_cache_.end()) return *it->second;

  const Game& g = game_;
  const std::size_t n = g.num_players(), S = g.num_states();
  std::map<Edge, std::size_t> edge_id;
  std::vector<std::vector<StateId>> succ(S);
  for (StateId s = 0; s < S; ++s) {
    std::set<StateId> t;
    for (std::size_t a = 0; a < g.joint_count(s); ++a) t.insert(g.successor(s, a));
    succ[s].assign(t.begin(), t.end());
    for (StateId x : t) edge_id.emplace(Edge{s, x}, edge_id.size());
  }
  if (edge_id.size() > 64) throw LimitExceeded("oracle backend supports at most 64 distinct edges");

  auto out = std::make_shared<std::vector<Signature>>();
  std::set<std::tuple<std::size_t, std::vector<std::int64_t>, std::uint64_t>> dedup;
  for (StateId root = 0; root < S; ++root) {
    using Key = std::tuple<StateId, std::uint64_t, std::vector<std::int64_t>>;
    std::set<Key> layer{{root, 0, std::vector<std::int64_t>(n + 1, 0)}};
    for (std::size_t len = 1; len <= bound && !layer.empty(); ++len) {
      std::set<Key> next;
      for (const auto& [v, mask, sums] : layer) {
        std::vector<std::int64_t> s2 = sums;
        for (PlayerId i = 0; i < n; ++i) s2[i] += g.weight(i, v);
        s2[n] += g.global_weight(v);
        for (StateId t : succ[v]) {
          if (t < root) continue;
          std::uint64_t m2 = mask | (std::uint64_t{1} << edge_id.at({v, t}));
          if (t == root && dedup.emplace(len, s2, m2).second) out->push_back(Signature{root, len, s2, m2});
          if (len < bound) next.emplace(t, m2, s2);
        }
      }
      layer.swap(next);
    }
  }
  std::vector<Edge> edges(edge_id.size());
  for (auto& [e, id] : edge_id) edges[id] = e;
  edges_by_id_ = edges;
  auto& ref = *out;
  signature_cache_[bound] = std::move(out);
  return ref;
}

std::optional<std::pair<Lasso, Rational>> NeSolver::oracle_search(const ThresholdQuery& q, std::size_t bound,
                                                                  std::optional<Extreme> extreme,
                                                                  bool want_lasso) const {
  if (!check_query(q)) return std::nullopt;
  const auto& sigs = signatures(bound);
  std::vector<Edge> edges;
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    edges = edges_by_id_;
  }
  const Game& g = game_;
  const std::size_t n = g.num_players(), S = g.num_states();

  struct Graph {
    std::vector<std::vector<bool>> adm;
    std::vector<std::size_t> dist;
    std::vector<StateId> parent;
    std::set<Edge> ok;
  };
  std::map<std::vector<Rational>, Graph> graphs;
  auto graph_for = [&](const Thresholds& z, const std::vector<Rational>& key) -> const Graph& {
    auto it = graphs.find(key);
    if (it != graphs.end()) return it->second;
    Graph gr;
    gr.adm.resize(S);
    std::vector<std::set<StateId>> out(S);
    for (StateId s = 0; s < S; ++s) {
      gr.adm[s].resize(g.joint_count(s));
      for (std::size_t a = 0; a < g.joint_count(s); ++a)
        if ((gr.adm[s][a] = admissible(s, a, z))) {
          out[s].insert(g.successor(s, a));
          gr.ok.emplace(s, g.successor(s, a));
        }
    }
    gr.dist.assign(S, static_cast<std::size_t>(-1));
    gr.parent.assign(S, 0);
    std::deque<StateId> queue{g.initial()};
    gr.dist[g.initial()] = 0;
    while (!queue.empty()) {
      StateId s = queue.front();
      queue.pop_front();
      for (StateId t : out[s])
        if (gr.dist[t] == static_cast<std::size_t>(-1)) {
          gr.dist[t] = gr.dist[s] + 1;
          gr.parent[t] = s;
          queue.push_back(t);
        }
    }
    return graphs.emplace(key, std::move(gr)).first->second;
  };

  const Signature* best = nullptr;
  std::size_t best_total = 0;
  StateId best_entry = 0;
  Rational best_value;
  for (const auto& sig : sigs) {
    const Rational len(static_cast<long long>(sig.length));
    Payoffs p;
    for (PlayerId i = 0; i < n; ++i) p.players.push_back(Rational(sig.sums[i]) / len);
    p.global = Rational(sig.sums[n]) / len;
    if (!payoffs_in_bounds(p, q)) continue;
    Thresholds z(n, ExtendedRational::pos_inf());
    std::vector<Rational> key;
    for (PlayerId i = 0; i < n; ++i)
      if (active_[i]) {
        z[i] = p.players[i];
        key.push_back(p.players[i]);
      }
    const Graph& gr = graph_for(z, key);
    bool ok = true;
    std::optional<std::pair<std::size_t, StateId>> entry;
    for (std::size_t id = 0; id < edges.size() && ok; ++id) {
      if (!(sig.mask >> id & 1)) continue;
      ok = gr.ok.count(edges[id]) > 0;
      StateId u = edges[id].first;
      if (gr.dist[u] != static_cast<std::size_t>(-1) && (!entry || std::make_pair(gr.dist[u], u) < *entry))
        entry = std::make_pair(gr.dist[u], u);
    }
    if (!ok || !entry || entry->first + sig.length > bound) continue;
    std::size_t total = entry->first + sig.length;
    bool better = !best;
    if (!better) {
      if (extreme == Extreme::Min) better = p.global < best_value;
      else if (extreme == Extreme::Max) better = p.global > best_value;
      else better = total < best_total;
    }
    if (better) {
      best = &sig;
      best_total = total;
      best_entry = entry->second;
      best_value = p.global;
      if (!extreme && !want_lasso) break;
    }
  }
  if (!best) return std::nullopt;
  if (!want_lasso) return std::make_pair(Lasso{}, best_value);

  // lexicographically least closed walk with the chosen signature
  const Signature& sig = *best;
  std::vector<std::vector<StateId>> succ(S);
  for (const auto& e : edges) succ[e.first].push_back(e.second);
  std::vector<StateId> walk{sig.root};
  std::vector<std::int64_t> sums(n + 1, 0);
  std::function<bool(std::uint64_t)> dfs = [&](std::uint64_t mask) -> bool {
    StateId v = walk.back();
    if (walk.size() == sig.length + 1) return v == sig.root && mask == sig.mask && sums == sig.sums;
    for (PlayerId i = 0; i < n; ++i) sums[i] += g.weight(i, v);
    sums[n] += g.global_weight(v);
    for (StateId t : succ[v]) {
      if (t < sig.root) continue;
      std::size_t id = static_cast<std::size_t>(std::find(edges.begin(), edges.end(), Edge{v, t}) - edges.begin());
      std::uint64_t bit = std::uint64_t{1} << id;
      if (!(sig.mask & bit)) continue;
      walk.push_back(t);
      if (dfs(mask | bit)) return true;
      walk.pop_back();
    }
    for (PlayerId i = 0; i < n; ++i) sums[i] -= g.weight(i, v);
    sums[n] -= g.global_weight(v);
    return false;
  };
  if (!dfs(0)) throw std::logic_error("signature without a walk");
  walk.pop_back();
  auto pos = std::find(walk.begin(), walk.end(), best_entry);
  std::rotate(walk.begin(), pos, walk.end());

  Thresholds z(n, ExtendedRational::pos_inf());
  std::vector<Rational> key;
  for (PlayerId i = 0; i < n; ++i)
    if (active_[i]) {
      z[i] = Rational(sig.sums[i]) / Rational(static_cast<long long>(sig.length));
      key.push_back(z[i].value());
    }
  const Graph& gr = graph_for(z, key);
  Lasso l;
  for (StateId v = best_entry; v != g.initial(); v = gr.parent[v]) l.prefix.push_back(gr.parent[v]);
  std::reverse(l.prefix.begin(), l.prefix.end());
  l.cycle = walk;
  for (std::size_t k = 0; k < l.length(); ++k) {
    StateId s = l.state_at(k), t = l.state_at(k + 1);
    std::size_t a = 0;
    while (!(gr.adm[s][a] && g.successor(s, a) == t)) ++a;
    (k < l.prefix.size() ? l.prefix_actions : l.cycle_actions).push_back(g.joint_action(s, a));
  }
  return std::make_pair(l, best_value);
}

bool NeSolver::threshold_oracle_exists(const ThresholdQuery& q, std::size_t bound) const {
  return oracle_search(q, bound, std::nullopt, false).has_value();
}

std::optional<NEWitness> NeSolver::threshold_oracle(const ThresholdQuery& q, std::size_t bound) const {
  auto r = oracle_search(q, bound, std::nullopt, true);
  if (!r) return std::nullopt;
  return make_witness(r->first);
}

std::optional<Rational> NeSolver::global_extreme_oracle(Extreme which, std::size_t bound) const {
  ThresholdQuery q;
  q.fixed_player = fixed_;
  auto r = oracle_search(q, bound, which, false);
  if (!r) return std::nullopt;
  return r->second;
}

// ---------------------------------------------------------------------------

bool is_ne_outcome(const Game& game, const Lasso& lasso, std::optional<PlayerId> fixed) {
  return NeSolver(game, fixed).is_ne_outcome(lasso);
}

StrategyProfile grim_trigger_profile(const Game& game, const Lasso& lasso, std::optional<PlayerId> fixed) {
  return NeSolver(game, fixed).grim_trigger_profile(lasso);
}

std::optional<NEWitness> ne_threshold(const Game& game, const ThresholdQuery& query) {
  return NeSolver(game, query.fixed_player).threshold(query);
}

bool certify_ne(const Game& game, const StrategyProfile& profile, std::optional<PlayerId> fixed) {
  Payoffs p = payoffs(game, run_profile(game, profile));
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    if (fixed && *fixed == i) continue;
    if (best_response_value(game, profile, i, game.initial()) > p.players[i]) return false;
  }
  return true;
}

}  // namespace eqd
