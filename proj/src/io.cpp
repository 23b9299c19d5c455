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

#include "eqdesign/io.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "eqdesign/errors.hpp"

namespace eqd {

using json = nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points at the offending character
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    auto colon = what.find("syntax error");
    if (colon != std::string::npos) what = what.substr(colon);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what, line,
                     column);
  }
}

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ParseError(path + ": " + msg); }

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void expect_keys(const json& obj, const std::string& path, const std::set<std::string>& keys) {
  if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& k : keys)
    if (!obj.contains(k)) fail(join(path, k), "missing");
  for (const auto& [k, v] : obj.items())
    if (!keys.count(k)) fail(join(path, k), "unknown key");
}

std::string text_of(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

std::int64_t integer_of(const json& v, const std::string& path) {
  if (v.is_number_integer() && !v.is_number_unsigned()) return v.get<std::int64_t>();
  if (v.is_number_unsigned()) {
    auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT64_MAX)) fail(path, "integer out of range");
    return static_cast<std::int64_t>(u);
  }
  fail(path, "expected an integer");
}

std::vector<std::string> names_of(const json& v, const std::string& path, bool allow_comma = true) {
  if (!v.is_array()) fail(path, "expected a list of names");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t k = 0; k < v.size(); ++k) {
    std::string p = path + "[" + std::to_string(k) + "]";
    std::string name = text_of(v[k], p);
    if (name.empty()) fail(p, "empty name");
    if (!allow_comma && name.find(',') != std::string::npos) fail(p, "names may not contain ','");
    if (!seen.insert(name).second) fail(p, "duplicate name '" + name + "'");
    out.push_back(std::move(name));
  }
  return out;
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

std::string joint_key(const Game& g, const JointAction& a) {
  std::string key;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) key += ',';
    key += g.action_name(a[i]);
  }
  return key;
}

}  // namespace

std::string canonicalize(std::string_view text) { return parse_json(text).dump(); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Game parse_game(std::string_view text) {
  const json doc = parse_json(text);
  expect_keys(doc, "",
              {"players", "actions", "states", "initial", "protocol", "transitions", "weights", "global_weights"});
  const auto players = names_of(doc["players"], "players");
  const auto actions = names_of(doc["actions"], "actions", false);
  const auto states = names_of(doc["states"], "states");
  if (players.empty()) fail("players", "at least one player is required");
  if (states.empty()) fail("states", "at least one state is required");

  GameBuilder b;
  for (const auto& p : players) b.add_player(p);
  for (const auto& a : actions) b.add_action(a);
  for (const auto& s : states) b.add_state(s);
  std::map<std::string, std::size_t> pid, aid, sid;
  for (std::size_t k = 0; k < players.size(); ++k) pid[players[k]] = k;
  for (std::size_t k = 0; k < actions.size(); ++k) aid[actions[k]] = k;
  for (std::size_t k = 0; k < states.size(); ++k) sid[states[k]] = k;

  const std::string init = text_of(doc["initial"], "initial");
  if (!sid.count(init)) fail("initial", "unknown state '" + init + "'");
  b.set_initial(sid[init]);

  const json& protocol = doc["protocol"];
  expect_keys(protocol, "protocol", as_set(states));
  std::vector<std::vector<std::vector<ActionId>>> proto(states.size(), std::vector<std::vector<ActionId>>(players.size()));
  for (const auto& s : states) {
    const std::string ps = join("protocol", s);
    expect_keys(protocol[s], ps, as_set(players));
    for (const auto& p : players) {
      const std::string pp = join(ps, p);
      const json& list = protocol[s][p];
      if (!list.is_array()) fail(pp, "expected a list of actions");
      if (list.empty()) fail(pp, "empty protocol");
      std::set<ActionId> seen;
      for (std::size_t k = 0; k < list.size(); ++k) {
        std::string ap = pp + "[" + std::to_string(k) + "]";
        std::string a = text_of(list[k], ap);
        if (!aid.count(a)) fail(ap, "unknown action '" + a + "'");
        if (!seen.insert(aid[a]).second) fail(ap, "duplicate action '" + a + "'");
      }
      proto[sid[s]][pid[p]].assign(seen.begin(), seen.end());
      b.set_protocol(sid[s], pid[p], proto[sid[s]][pid[p]]);
    }
  }

  const json& transitions = doc["transitions"];
  expect_keys(transitions, "transitions", as_set(states));
  for (const auto& s : states) {
    const std::string ts = join("transitions", s);
    const json& row = transitions[s];
    if (!row.is_object()) fail(ts, "expected an object");
    // enumerate the allowed joint actions and match them with the keys
    std::map<std::string, JointAction> allowed;
    JointAction a(players.size());
    std::function<void(std::size_t, std::string)> rec = [&](std::size_t i, std::string key) {
      if (i == players.size()) {
        allowed.emplace(key, a);
        return;
      }
      for (ActionId x : proto[sid[s]][i]) {
        a[i] = x;
        rec(i + 1, i ? key + "," + actions[x] : actions[x]);
      }
    };
    rec(0, "");
    for (const auto& [key, value] : row.items())
      if (!allowed.count(key)) fail(join(ts, key), "not a protocol-allowed joint action");
    for (const auto& [key, joint] : allowed) {
      const std::string tp = join(ts, key);
      auto it = row.find(key);
      if (it == row.end()) fail(tp, "missing transition");
      std::string target = text_of(*it, tp);
      if (!sid.count(target)) fail(tp, "unknown state '" + target + "'");
      b.set_transition(sid[s], joint, sid[target]);
    }
  }

  const json& weights = doc["weights"];
  expect_keys(weights, "weights", as_set(players));
  for (const auto& p : players) {
    const std::string wp = join("weights", p);
    expect_keys(weights[p], wp, as_set(states));
    for (const auto& s : states) b.set_weight(pid[p], sid[s], integer_of(weights[p][s], join(wp, s)));
  }
  const json& global = doc["global_weights"];
  expect_keys(global, "global_weights", as_set(states));
  for (const auto& s : states) b.set_global_weight(sid[s], integer_of(global[s], join("global_weights", s)));

  try {
    return b.build();
  } catch (const ValidationError& e) {
    fail("<root>", e.what());
  }
}

std::string serialize_game(const Game& g) {
  json doc;
  doc["players"] = g.player_names();
  doc["actions"] = g.action_names();
  doc["states"] = g.state_names();
  doc["initial"] = g.state_name(g.initial());
  json protocol = json::object(), transitions = json::object(), weights = json::object(), global = json::object();
  for (StateId s = 0; s < g.num_states(); ++s) {
    const std::string& sn = g.state_name(s);
    json per = json::object();
    for (PlayerId i = 0; i < g.num_players(); ++i) {
      json list = json::array();
      for (ActionId a : g.protocol(s, i)) list.push_back(g.action_name(a));
      per[g.player_name(i)] = std::move(list);
    }
    protocol[sn] = std::move(per);
    json row = json::object();
    for (std::size_t k = 0; k < g.joint_count(s); ++k)
      row[joint_key(g, g.joint_action(s, k))] = g.state_name(g.successor(s, k));
    transitions[sn] = std::move(row);
    global[sn] = g.global_weight(s);
  }
  for (PlayerId i = 0; i < g.num_players(); ++i) {
    json per = json::object();
    for (StateId s = 0; s < g.num_states(); ++s) per[g.state_name(s)] = g.weight(i, s);
    weights[g.player_name(i)] = std::move(per);
  }
  doc["protocol"] = std::move(protocol);
  doc["transitions"] = std::move(transitions);
  doc["weights"] = std::move(weights);
  doc["global_weights"] = std::move(global);
  return doc.dump();
}

RewardMachine parse_rm(std::string_view text, const Game& game) {
  const json doc = parse_json(text);
  expect_keys(doc, "", {"states", "initial", "transitions", "rewards"});
  const auto states = names_of(doc["states"], "states");
  if (states.empty()) fail("states", "at least one state is required");
  std::map<std::string, RmState> qid;
  for (std::size_t k = 0; k < states.size(); ++k) qid[states[k]] = k;
  const std::string init = text_of(doc["initial"], "initial");
  if (!qid.count(init)) fail("initial", "unknown machine state '" + init + "'");

  const std::size_t S = game.num_states(), n = game.num_players();
  const auto game_states = as_set(game.state_names());
  std::vector<RmState> next(states.size() * S);
  std::vector<RewardVector> reward(states.size() * S);
  const json& transitions = doc["transitions"];
  const json& rewards = doc["rewards"];
  expect_keys(transitions, "transitions", as_set(states));
  expect_keys(rewards, "rewards", as_set(states));
  for (RmState q = 0; q < states.size(); ++q) {
    const std::string tq = join("transitions", states[q]), rq = join("rewards", states[q]);
    expect_keys(transitions[states[q]], tq, game_states);
    expect_keys(rewards[states[q]], rq, game_states);
    for (StateId s = 0; s < S; ++s) {
      const std::string& sn = game.state_name(s);
      const std::string tp = join(tq, sn), rp = join(rq, sn);
      std::string target = text_of(transitions[states[q]][sn], tp);
      if (!qid.count(target)) fail(tp, "unknown machine state '" + target + "'");
      next[q * S + s] = qid[target];
      const json& vec = rewards[states[q]][sn];
      if (!vec.is_array() || vec.size() != n) fail(rp, "expected a list of " + std::to_string(n) + " naturals");
      RewardVector r(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::int64_t x = integer_of(vec[i], rp + "[" + std::to_string(i) + "]");
        if (x < 0) fail(rp + "[" + std::to_string(i) + "]", "rewards must be natural numbers");
        r[i] = static_cast<std::uint64_t>(x);
      }
      reward[q * S + s] = std::move(r);
    }
  }
  try {
    return RewardMachine(states.size(), S, n, qid[init], std::move(next), std::move(reward), states);
  } catch (const ValidationError& e) {
    fail("<root>", e.what());
  }
}

std::string serialize_rm(const RewardMachine& rm, const Game& game) {
  if (rm.num_game_states() != game.num_states() || rm.num_players() != game.num_players())
    throw ValidationError("reward machine does not match the game");
  json doc;
  doc["states"] = rm.state_names();
  doc["initial"] = rm.state_name(rm.initial());
  json transitions = json::object(), rewards = json::object();
  for (RmState q = 0; q < rm.num_states(); ++q) {
    json t = json::object(), r = json::object();
    for (StateId s = 0; s < game.num_states(); ++s) {
      t[game.state_name(s)] = rm.state_name(rm.next(q, s));
      r[game.state_name(s)] = rm.reward(q, s);
    }
    transitions[rm.state_name(q)] = std::move(t);
    rewards[rm.state_name(q)] = std::move(r);
  }
  doc["transitions"] = std::move(transitions);
  doc["rewards"] = std::move(rewards);
  return doc.dump();
}

}  // namespace eqd
