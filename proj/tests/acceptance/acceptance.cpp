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

// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance [--criterion N]...

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../support/properties.hpp"
#include "eqdesign/cli.hpp"
#include "eqdesign/generators.hpp"
#include "eqdesign/lasso.hpp"
#include "eqdesign/synthesis.hpp"

using namespace eqd;
using json = nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string fixture(const std::string& name) { return std::string(EQD_FIXTURES) + "/" + name; }

json cli_json(std::vector<std::string> args, int* code) {
  args.push_back("--format");
  args.push_back("json");
  std::ostringstream out, err;
  *code = cli_main(args, out, err);
  if (out.str().empty()) return json::object({{"error", err.str()}});
  return json::parse(out.str());
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("eqdesign_acceptance_" + name)).string();
}

// 1. the delivery example triple via verify with the oracle backend.
void criterion1(Outcome& o) {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"", "0"}, {"example1_m.rm", "2/3"}, {"example1_m_prime.rm", "5/6"}};
  for (const auto& [rm, want] : cases) {
    std::vector<std::string> args{"verify", "--backend", "oracle", fixture("example1.game")};
    if (!rm.empty()) args.push_back(fixture(rm));
    auto t0 = Clock::now();
    int code = 0;
    json d = cli_json(args, &code);
    double dt = seconds_since(t0);
    std::string got = d.value("worst", std::string("none"));
    o.detail << (rm.empty() ? "G" : rm) << "=" << got << " ";
    o.require(code == kExitYes && got == want, (rm.empty() ? std::string("G") : rm) + " expected " + want);
    o.require(dt < 1.0, "over 1 s");
  }
}

// 2. Certified strong improvement on the delivery example and re-verification.
void criterion2(Outcome& o) {
  const std::string out = temp_path("c2.rm");
  int code = 0;
  json d = cli_json({"synth", "--mode", "strong", "--budget", "1", "--delta", "1/2", "--epsilon", "1/10", "--method",
                     "certify", "-o", out, fixture("example1.game")},
                    &code);
  o.require(code == kExitYes && d.value("answer", "") == "yes", "answer yes");
  if (code != kExitYes) return;
  int vcode = 0;
  json v = cli_json({"verify", fixture("example1.game"), out}, &vcode);
  const Rational worst = Rational::parse(v.value("worst", std::string("-1000")));
  o.detail << "improved=" << d["improved"].get<std::string>() << " reverified worst=" << worst
           << " rm_states=" << v["rm_states"] << " budget=" << v["rm_budget"];
  o.require(vcode == kExitYes && worst >= Rational(2, 3) - Rational(1, 10), "re-verified worst >= 17/30");
  o.require(v["rm_budget"].get<long>() <= 1, "beta-RM");
  std::filesystem::remove(out);
}

// 3. k-cycle family.
void criterion3(Outcome& o) {
  Example1 ex = gen_example1();
  Rational last(-1000);
  for (std::size_t k = 1; k <= 4; ++k) {
    Product p = implement(ex.game, k_cycle_delivery_rm(k, ex.game));
    auto v = NeSolver(p.game).global_extreme(Extreme::Min);
    const Rational want(static_cast<long long>(3 * k - 1), static_cast<long long>(3 * k));
    o.detail << "k=" << k << ":" << (v ? v->to_string() : "none") << " ";
    o.require(v && *v == want, "k=" + std::to_string(k));
    o.require(v && *v > last, "strictly increasing");
    if (v) last = *v;
  }
}

// 4. TSP reduction against brute force.
void criterion4(Outcome& o) {
  for (std::uint64_t seed : {1, 2, 3}) {
    auto t0 = Clock::now();
    CostDigraph g = gen_random_tsp(seed, 4, 1, 9);
    const auto opt = brute_force_tour_cost(g);
    const Rational v = epsilon_worst_ne(gen_tsp_game(g), Rational(1), false);
    double dt = seconds_since(t0);
    o.detail << "seed " << seed << ": floor(" << v << ")=" << v.floor() << " opt=" << (opt ? *opt : -1) << " ";
    o.require(opt && v.floor() == Rational(static_cast<long long>(*opt)), "seed " + std::to_string(seed));
    o.require(dt < 60.0, "over 60 s");
  }
}

// 5. Hamiltonian reductions, strong and complement.
void criterion5(Outcome& o) {
  CostDigraph yes = CostDigraph::with_vertices(3);
  yes.add_edge(0, 1);
  yes.add_edge(1, 2);
  yes.add_edge(2, 0);
  CostDigraph no = CostDigraph::with_vertices(3);
  no.add_edge(0, 1);
  no.add_edge(0, 2);
  for (bool complement : {false, true}) {
    for (const CostDigraph* g : {&yes, &no}) {
      auto t0 = Clock::now();
      ReductionInstance inst = hamiltonian_instance(*g, complement);
      ImprovementQuery q;
      q.beta = inst.beta;
      q.delta = inst.delta;
      q.epsilon = inst.epsilon;
      q.mode = complement ? ImprovementMode::Weak : ImprovementMode::Strong;
      q.method = ImprovementMethod::Certify;
      bool answer = decide_improvement(inst.game, q).decision;
      bool want = has_hamiltonian_path(*g) != complement;
      o.detail << (complement ? "weak/" : "strong/") << (g == &yes ? "path" : "none") << "=" << (answer ? "yes" : "no")
               << " ";
      o.require(answer == want, std::string(complement ? "complement " : "strong ") + (g == &yes ? "path" : "none"));
      o.require(seconds_since(t0) < 60.0, "over 60 s");
    }
  }
}

// 6. Backend agreement on seeded random threshold queries.
void criterion6(Outcome& o) {
  std::mt19937_64 rng(20240601);
  // each bound is absent half of the time; finite ones are multiples of 1/3
  auto lower = [&]() -> ExtendedRational {
    if (rng() % 2) return ExtendedRational::neg_inf();
    return ExtendedRational(Rational(static_cast<long long>(rng() % 10) - 6, 3));
  };
  auto upper = [&]() -> ExtendedRational {
    if (rng() % 2) return ExtendedRational::pos_inf();
    return ExtendedRational(Rational(static_cast<long long>(rng() % 10) - 3, 3));
  };
  std::size_t agree = 0, positive = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    RandomGameSizes sz;
    sz.players = 2;
    sz.actions = 2;
    sz.states = 1 + seed % 4;
    Game g = gen_random_game(seed, sz);
    NeSolver solver(g);
    ThresholdQuery q;
    q.lower = {lower(), lower()};
    q.upper = {upper(), upper()};
    q.global_lower = lower();
    q.global_upper = upper();
    bool lp = solver.threshold(q).has_value();
    bool oracle = solver.threshold_oracle_exists(q, 12);
    positive += lp;
    if (lp == oracle) ++agree;
    else o.detail << "seed " << seed << " lp=" << lp << " oracle=" << oracle << "; ";
  }
  o.detail << agree << "/200 agree, " << positive << " feasible";
  o.require(agree == 200, "100% agreement");
}

// 7. Correspondence properties between G†M and G'.
void criterion7(Outcome& o) {
  std::mt19937_64 rng(77);
  std::size_t checked = 0, ne_true = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    RandomGameSizes sz;
    sz.players = 1 + seed % 2;
    sz.states = 1 + seed % 3;
    sz.actions = 2;
    Game g = gen_random_game(seed, sz);
    const Budget beta = 1 + seed % 2;
    RewardMachine rm = gen_random_rm(seed, g, 2, beta);
    AuxiliaryGame aux = build_auxiliary(g, beta);
    Product product = implement(g, rm);
    StrategyProfile sigma = testing::random_profile(rng, product.game, 2);
    MealyStrategy sigma0 = testing::random_strategy(rng, aux.game, 0, 2);
    StrategyProfile hat = testing::random_profile(rng, aux.game, 2);

    std::vector<std::pair<std::string, std::string>> results{
        {"product to auxiliary, per step", testing::check_product_to_auxiliary_steps(g, rm, aux, sigma, 24)},
        {"auxiliary to product, per step", testing::check_auxiliary_to_product_steps(g, aux, sigma0, hat, 24)},
        {"lifted profile payoffs", testing::check_lift_payoffs(g, rm, aux, sigma)},
        {"lowered profile payoffs", testing::check_lower_payoffs(g, aux, sigma0, hat)},
    };
    bool verdict = false;
    results.emplace_back("NE correspondence (random profile)", testing::check_ne_correspondence(g, rm, aux, sigma, &verdict));
    ne_true += verdict;
    // an equilibrium profile of the product, so both directions are exercised
    if (auto w = NeSolver(product.game).threshold(ThresholdQuery{})) {
      results.emplace_back("NE correspondence (equilibrium)", testing::check_ne_correspondence(g, rm, aux, w->profile, &verdict));
      ne_true += verdict;
    }
    for (const auto& [name, err] : results) {
      ++checked;
      if (!err.empty()) {
        o.require(false, "seed " + std::to_string(seed) + " " + name + ": " + err);
        return;
      }
    }
  }
  o.detail << checked << " checks on 100 triples, " << ne_true << " certified NE";
}

// 8. Bisection contract.
void criterion8(Outcome& o) {
  const Rational eps(1, 10);
  std::size_t used = 0, skipped = 0;
  for (std::uint64_t seed = 1; used < 20 && seed < 500; ++seed) {
    RandomGameSizes sz;
    sz.players = 2;
    sz.states = 1 + seed % 4;
    Game g = gen_random_game(seed, sz);
    const WeightRange r = min_max_weights(g)[g.num_players()];
    NeSolver solver(g);
    auto exact_lo = solver.global_extreme_oracle(Extreme::Min, 12);
    if (r.max == r.min || !exact_lo) {
      ++skipped;
      continue;
    }
    ++used;
    auto exact_hi = solver.global_extreme_oracle(Extreme::Max, 12);
    const double ratio = static_cast<double>(r.max - r.min) / 0.1;
    const std::size_t want = static_cast<std::size_t>(std::ceil(std::log2(ratio) - 1e-12));
    EpsilonResult lo = epsilon_search(solver, eps, Extreme::Min);
    EpsilonResult hi = epsilon_search(solver, eps, Extreme::Max);
    const std::string tag = "seed " + std::to_string(seed);
    o.require(lo.iterations == want && hi.iterations == want, tag + " iterations");
    o.require((lo.value - *exact_lo).abs() <= eps, tag + " worst " + lo.value.to_string() + " vs " +
                                                       exact_lo->to_string());
    o.require((hi.value - *exact_hi).abs() <= eps, tag + " best " + hi.value.to_string() + " vs " +
                                                       exact_hi->to_string());
  }
  o.require(used == 20, "20 games with an NE");
  o.detail << used << " games (" << skipped << " skipped: no NE or flat weights); ";

  Game a1 = gen_infinite_memory_example();
  for (auto [cycle, want] : {std::pair<std::vector<std::string>, Rational>{{"t", "l", "b", "r"}, Rational(-1, 4)},
                             {{"t", "l", "l", "b", "r", "r"}, Rational(-1, 3)}}) {
    Lasso l = make_lasso(a1, std::vector<std::string>{}, cycle);
    const Rational got = payoffs(a1, l).global;
    const bool ne = certify_ne(a1, grim_trigger_profile(a1, l, std::nullopt), std::nullopt);
    o.detail << "infinite-memory lasso " << got << (ne ? " NE " : " not-NE ");
    o.require(got == want && ne, "infinite-memory lasso value " + want.to_string());
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int k = 1; k < argc; ++k) {
    std::string a = argv[k];
    if (a == "--criterion" && k + 1 < argc) {
      selected.push_back(std::stoi(argv[++k]));
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 2;
    }
  }
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8};

  const std::vector<std::pair<std::function<void(Outcome&)>, double>> table{
      {criterion1, 3.0},  {criterion2, 5.0},   {criterion3, 10.0}, {criterion4, 180.0},
      {criterion5, 60.0}, {criterion6, 300.0}, {criterion7, 300.0}, {criterion8, 300.0}};
  bool all = true;
  for (int c : selected) {
    if (c < 1 || c > 8) {
      std::cerr << "no criterion " << c << "\n";
      return 2;
    }
    Outcome o;
    auto t0 = Clock::now();
    try {
      table[c - 1].first(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double dt = seconds_since(t0);
    o.require(dt < table[c - 1].second, "time limit");
    std::cout << "criterion " << c << ": " << (o.pass ? "PASS" : "FAIL") << " (" << std::fixed;
    std::cout.precision(2);
    std::cout << dt << " s) " << o.detail.str() << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
