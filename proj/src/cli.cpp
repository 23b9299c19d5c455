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

#include "eqdesign/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqdesign/errors.hpp"
#include "eqdesign/generators.hpp"
#include "eqdesign/io.hpp"
#include "eqdesign/synthesis.hpp"

namespace eqd {

using json = nlohmann::json;

namespace {

struct Common {
  std::string backend = "lp";
  std::size_t bound = 12;
  std::string format = "text";

  SearchOptions search() const {
    SearchOptions o;
    o.backend = backend == "oracle" ? Backend::Oracle : Backend::Lp;
    o.bound = bound;
    return o;
  }
};

void add_common(CLI::App* cmd, Common& c, bool with_backend) {
  if (with_backend) {
    cmd->add_option("--backend", c.backend, "NE threshold backend")
        ->check(CLI::IsMember({"lp", "oracle"}))
        ->capture_default_str();
    cmd->add_option("--bound", c.bound, "Lasso length bound of the oracle backend")->capture_default_str();
  }
  cmd->add_option("--format", c.format, "Result document format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

Rational rational_flag(const std::string& name, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw ParseError("--" + name + ": expected an integer or p/q, got '" + text + "'");
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write " + path);
  f << text << '\n';
  if (!f) throw ParseError("cannot write " + path);
}

// "key: value" lines, nested objects flattened with dots.
void render_text(const json& doc, const std::string& prefix, std::ostream& out) {
  for (const auto& [k, v] : doc.items()) {
    std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object()) {
      render_text(v, key, out);
    } else if (v.is_string()) {
      out << key << ": " << v.get<std::string>() << '\n';
    } else {
      out << key << ": " << v.dump() << '\n';
    }
  }
}

void emit(const json& doc, const Common& c, std::ostream& out) {
  if (c.format == "json") out << doc.dump(2) << '\n';
  else render_text(doc, "", out);
}

json payoffs_doc(const Game& g, const Payoffs& p) {
  json d = json::object();
  for (PlayerId i = 0; i < g.num_players(); ++i) d["players"][g.player_name(i)] = p.players[i].to_string();
  d["global"] = p.global.to_string();
  return d;
}

json witness_doc(const Game& g, const std::optional<NEWitness>& w) {
  if (!w) return nullptr;
  json d;
  d["lasso"] = format_lasso(g, w->lasso);
  d["payoffs"] = payoffs_doc(g, w->payoffs);
  return d;
}

Budget rm_budget(const RewardMachine& rm) {
  Budget b = 0;
  for (RmState q = 0; q < rm.num_states(); ++q)
    for (StateId s = 0; s < rm.num_game_states(); ++s) b = std::max(b, norm1(rm.reward(q, s)));
  return b;
}

// "1>2:5,2>3" over vertices "1".."n"; costs optional.
CostDigraph parse_edges(std::size_t n, const std::string& spec) {
  CostDigraph g = CostDigraph::with_vertices(n);
  std::stringstream ss(spec);
  std::string tok;
  auto vertex = [&](const std::string& v) -> std::size_t {
    auto it = std::find(g.vertices.begin(), g.vertices.end(), v);
    if (it == g.vertices.end()) throw ParseError("--edges: unknown vertex '" + v + "'");
    return static_cast<std::size_t>(it - g.vertices.begin());
  };
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    auto gt = tok.find('>');
    if (gt == std::string::npos) throw ParseError("--edges: expected u>v or u>v:cost, got '" + tok + "'");
    auto colon = tok.find(':', gt);
    std::string from = tok.substr(0, gt), to = tok.substr(gt + 1, colon == std::string::npos ? std::string::npos
                                                                                                : colon - gt - 1);
    std::optional<std::int64_t> cost;
    if (colon != std::string::npos) {
      try {
        std::size_t used = 0;
        std::string c = tok.substr(colon + 1);
        cost = std::stoll(c, &used);
        if (used != c.size()) throw std::invalid_argument(c);
      } catch (const std::exception&) {
        throw ParseError("--edges: bad cost in '" + tok + "'");
      }
    }
    g.add_edge(vertex(from), vertex(to), cost);
  }
  return g;
}

struct ImproveFlags {
  std::string game_file, mode = "strong", method = "certify", budget, delta, epsilon, output;
  std::size_t max_candidates = 4, max_refinements = 32;

  ImprovementQuery query(const Common& c) const {
    ImprovementQuery q;
    try {
      std::size_t used = 0;
      long long b = std::stoll(budget, &used);
      if (used != budget.size() || b < 0) throw std::invalid_argument(budget);
      q.beta = static_cast<Budget>(b);
    } catch (const std::exception&) {
      throw ParseError("--budget: expected a natural number, got '" + budget + "'");
    }
    q.delta = rational_flag("delta", delta);
    q.epsilon = rational_flag("epsilon", epsilon);
    q.mode = mode == "weak" ? ImprovementMode::Weak : ImprovementMode::Strong;
    q.method = method == "paper" ? ImprovementMethod::Direct : ImprovementMethod::Certify;
    q.search = c.search();
    q.max_candidates = max_candidates;
    q.max_refinements = max_refinements;
    return q;
  }
};

void add_improve_flags(CLI::App* cmd, ImproveFlags& f) {
  cmd->add_option("--mode", f.mode, "strong or weak improvement")
      ->required()
      ->check(CLI::IsMember({"strong", "weak"}));
  cmd->add_option("--budget", f.budget, "Per-step reward budget beta")->required();
  cmd->add_option("--delta", f.delta, "Required gain")->required();
  cmd->add_option("--epsilon", f.epsilon, "Bisection precision")->required();
  cmd->add_option("--method", f.method, "paper (direct comparison with the auxiliary game) or certify")
      ->check(CLI::IsMember({"paper", "certify"}))
      ->capture_default_str();
  cmd->add_option("--max-candidates", f.max_candidates, "Auxiliary witnesses tried (certify)")->capture_default_str();
  cmd->add_option("--max-refinements", f.max_refinements, "Reward edits per candidate (certify)")
      ->capture_default_str();
  cmd->add_option("game", f.game_file, "Game file")->required();
}

json improve_doc(const char* command, const ImproveFlags& f, const ImprovementQuery& q, const ImprovementAnswer& a) {
  json d;
  d["command"] = command;
  d["mode"] = f.mode;
  d["method"] = f.method;
  d["budget"] = q.beta;
  d["delta"] = q.delta.to_string();
  d["epsilon"] = q.epsilon.to_string();
  d["baseline"] = a.baseline_value.to_string();
  d["improved"] = a.improved_value.to_string();
  d["gain"] = (a.improved_value - a.baseline_value).to_string();
  d["answer"] = a.decision ? "yes" : "no";
  d["candidates"] = a.candidates_tried;
  d["rm_states"] = a.witness_rm ? json(a.witness_rm->num_states()) : json(nullptr);
  return d;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibrium design for mean-payoff concurrent games", "eqdesign"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "eqdesign 1.0.0");

  Common common;
  std::function<int()> action;

  // compute
  auto* compute = app.add_subcommand("compute", "Epsilon-approximate worst or best NE value");
  bool worst = false, best = false, fixed0 = false;
  std::string epsilon, game_file;
  auto* wf = compute->add_flag("--worst", worst, "Worst NE value");
  auto* bf = compute->add_flag("--best", best, "Best NE value");
  wf->excludes(bf);
  compute->add_flag("--fixed0", fixed0, "Player 0 is the designer and never deviates");
  compute->add_option("--epsilon", epsilon, "Bisection precision")->required();
  compute->add_option("game", game_file, "Game file")->required();
  add_common(compute, common, true);
  compute->callback([&] {
    action = [&] {
      if (!worst && !best) throw ParseError("compute: one of --worst or --best is required");
      Rational eps = rational_flag("epsilon", epsilon);
      Game g = parse_game(read_text_file(game_file));
      EpsilonResult r = epsilon_search(g, eps, fixed0, worst ? Extreme::Min : Extreme::Max, common.search());
      json d;
      d["command"] = "compute";
      d["variant"] = worst ? "worst" : "best";
      d["fixed0"] = fixed0;
      d["epsilon"] = eps.to_string();
      d["backend"] = common.backend;
      d["value"] = r.value.to_string();
      d["iterations"] = r.iterations;
      d["has_ne"] = r.has_ne;
      d["witness"] = witness_doc(g, r.witness);
      emit(d, common, out);
      return kExitYes;
    };
  });

  // check and synth
  ImproveFlags improve;
  auto* check = app.add_subcommand("check", "Decide whether some reward machine improves the game");
  add_improve_flags(check, improve);
  add_common(check, common, true);
  check->callback([&] {
    action = [&] {
      ImprovementQuery q = improve.query(common);
      Game g = parse_game(read_text_file(improve.game_file));
      ImprovementAnswer a = decide_improvement(g, q);
      emit(improve_doc("check", improve, q, a), common, out);
      return a.decision ? kExitYes : kExitNo;
    };
  });

  auto* synth = app.add_subcommand("synth", "Like check, and write the witness machine");
  add_improve_flags(synth, improve);
  synth->add_option("-o,--output", improve.output, "Reward machine file to write")->required();
  add_common(synth, common, true);
  synth->callback([&] {
    action = [&] {
      ImprovementQuery q = improve.query(common);
      Game g = parse_game(read_text_file(improve.game_file));
      ImprovementAnswer a = decide_improvement(g, q);
      json d = improve_doc("synth", improve, q, a);
      if (a.decision && a.witness_rm) {
        write_file(improve.output, serialize_rm(*a.witness_rm, g));
        d["output"] = improve.output;
      }
      emit(d, common, out);
      return a.decision ? kExitYes : kExitNo;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Exact NE values of a game, or of its product with a machine");
  std::string rm_file, verify_epsilon;
  verify->add_option("game", game_file, "Game file")->required();
  verify->add_option("rm", rm_file, "Reward machine file; without it the game itself is analysed");
  verify->add_option("--epsilon", verify_epsilon, "Also report the bisection values at this precision");
  add_common(verify, common, true);
  verify->callback([&] {
    action = [&] {
      Game g = parse_game(read_text_file(game_file));
      json d;
      d["command"] = "verify";
      d["backend"] = common.backend;
      if (common.backend == "oracle") d["bound"] = common.bound;
      Game target = g;
      if (!rm_file.empty()) {
        RewardMachine rm = parse_rm(read_text_file(rm_file), g);
        Product p = implement(g, rm);
        d["rm_states"] = rm.num_states();
        d["rm_budget"] = rm_budget(rm);
        target = std::move(p.game);
      }
      d["states"] = target.num_states();
      NeSolver solver(target);
      std::optional<Rational> lo, hi;
      if (common.backend == "oracle") {
        lo = solver.global_extreme_oracle(Extreme::Min, common.bound);
        hi = solver.global_extreme_oracle(Extreme::Max, common.bound);
      } else {
        lo = solver.global_extreme(Extreme::Min);
        hi = solver.global_extreme(Extreme::Max);
      }
      d["has_ne"] = lo.has_value();
      d["worst"] = lo ? json(lo->to_string()) : json(nullptr);
      d["best"] = hi ? json(hi->to_string()) : json(nullptr);
      if (!verify_epsilon.empty()) {
        Rational eps = rational_flag("epsilon", verify_epsilon);
        d["epsilon"] = eps.to_string();
        d["epsilon_worst"] = epsilon_search(solver, eps, Extreme::Min, common.search()).value.to_string();
        d["epsilon_best"] = epsilon_search(solver, eps, Extreme::Max, common.search()).value.to_string();
      }
      emit(d, common, out);
      return kExitYes;
    };
  });

  // gen
  auto* gen = app.add_subcommand("gen", "Write a generated game");
  gen->require_subcommand(1);
  std::string gen_output;
  bool pretty = false;
  auto finish_game = [&](const Game& g, const std::string& kind, json extra) {
    std::string text = serialize_game(g);
    if (pretty) text = json::parse(text).dump(2);
    if (gen_output.empty()) {
      out << text << '\n';
      return kExitYes;
    }
    write_file(gen_output, text);
    json d = std::move(extra);
    d["command"] = "gen";
    d["kind"] = kind;
    d["output"] = gen_output;
    d["states"] = g.num_states();
    d["players"] = g.num_players();
    emit(d, common, out);
    return kExitYes;
  };
  auto gen_sub = [&](const char* name, const char* help) {
    auto* c = gen->add_subcommand(name, help);
    c->add_option("-o,--output", gen_output, "Game file to write (default: stdout)");
    c->add_flag("--pretty", pretty, "Indent the document");
    add_common(c, common, false);
    return c;
  };

  auto* g_ex1 = gen_sub("example1", "Delivery robot on t, l, m, r");
  std::size_t rm_k = 0;
  std::string rm_out;
  g_ex1->add_option("--rm-k", rm_k, "Also write the k-cycle delivery machine");
  g_ex1->add_option("--rm-out", rm_out, "File for the machine of --rm-k");
  g_ex1->callback([&] {
    action = [&] {
      Example1 ex = gen_example1();
      json extra = json::object();
      if (rm_k > 0) {
        if (rm_out.empty()) throw ParseError("--rm-k needs --rm-out");
        write_file(rm_out, serialize_rm(k_cycle_delivery_rm(rm_k, ex.game), ex.game));
        extra["rm_output"] = rm_out;
      }
      return finish_game(ex.game, "example1", std::move(extra));
    };
  });

  std::size_t vertices = 0, cities = 4;
  std::string edges;
  std::uint64_t seed = 0;
  bool seeded = false, negate = false;
  std::int64_t lo = 1, hi = 9;

  auto* g_tsp = gen_sub("tsp", "Worst-NE reduction from a weighted digraph");
  g_tsp->add_option("--vertices", vertices, "Vertices, named 1..n");
  g_tsp->add_option("--edges", edges, "Edges as u>v:cost,...");
  auto* seed_opt = g_tsp->add_option("--seed", seed, "Random complete instance instead of --edges");
  g_tsp->add_option("--cities", cities, "Vertices of the random instance")->capture_default_str();
  g_tsp->add_option("--lo", lo, "Least random cost")->capture_default_str();
  g_tsp->add_option("--hi", hi, "Largest random cost")->capture_default_str();
  g_tsp->add_flag("--negate", negate, "Negated global weights (best-NE variant)");
  g_tsp->callback([&] {
    seeded = seed_opt->count() > 0;
    action = [&] {
      CostDigraph graph = seeded ? gen_random_tsp(seed, cities, lo, hi) : parse_edges(vertices, edges);
      json extra = json::object();
      if (auto c = brute_force_tour_cost(graph)) extra["optimal_tour"] = *c;
      else extra["optimal_tour"] = nullptr;
      return finish_game(gen_tsp_game(graph, negate), "tsp", std::move(extra));
    };
  });

  auto ham_sub = [&](const char* name, const char* help, bool complement) {
    auto* c = gen_sub(name, help);
    c->add_option("--vertices", vertices, "Vertices, named 1..n")->required();
    c->add_option("--edges", edges, "Edges as u>v,...")->required();
    c->callback([&, complement, name] {
      action = [&, complement, name] {
        CostDigraph graph = parse_edges(vertices, edges);
        json extra = json::object();
        extra["hamiltonian_path"] = has_hamiltonian_path(graph);
        extra["hamiltonian_cycle"] = has_hamiltonian_cycle(graph);
        Game g = complement ? gen_hamiltonian_complement_game(graph) : gen_hamiltonian_game(graph);
        return finish_game(g, name, std::move(extra));
      };
    });
  };
  ham_sub("ham", "Strong-improvement reduction from a digraph", false);
  ham_sub("ham-co", "Weak-improvement (complement) reduction from a digraph", true);

  auto* g_a1 = gen_sub("a1", "Two-player game whose worst NE needs infinite memory");
  g_a1->callback([&] { action = [&] { return finish_game(gen_infinite_memory_example(), "a1", json::object()); }; });

  RandomGameSizes sizes;
  auto* g_rand = gen_sub("random", "Seeded random game");
  g_rand->add_option("--seed", seed, "Seed")->required();
  g_rand->add_option("--players", sizes.players, "Players")->capture_default_str();
  g_rand->add_option("--states", sizes.states, "States")->capture_default_str();
  g_rand->add_option("--actions", sizes.actions, "Actions per player")->capture_default_str();
  g_rand->add_option("--min-weight", sizes.min_weight, "Least weight")->capture_default_str();
  g_rand->add_option("--max-weight", sizes.max_weight, "Largest weight")->capture_default_str();
  g_rand->callback([&] {
    action = [&] { return finish_game(gen_random_game(seed, sizes), "random", json::object()); };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitYes : kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const ParseError& e) {
    err << "eqdesign: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "eqdesign: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LimitExceeded& e) {
    err << "eqdesign: limit exceeded: " << e.what() << '\n';
    return kExitLimit;
  } catch (const std::bad_alloc&) {
    err << "eqdesign: limit exceeded: out of memory\n";
    return kExitLimit;
  } catch (const std::exception& e) {
    err << "eqdesign: internal error: " << e.what() << '\n';
    return kExitLimit;
  }
}

}  // namespace eqd
