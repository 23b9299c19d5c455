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

#include <string>

#include <doctest.h>

#include "eqdesign/errors.hpp"
#include "eqdesign/generators.hpp"
#include "eqdesign/io.hpp"

using namespace eqd;

namespace {

std::string fixture(const std::string& name) { return read_text_file(std::string(EQD_FIXTURES) + "/" + name); }

std::string parse_error_of(const std::string& name) {
  try {
    parse_game(fixture(name));
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("delivery example fixture") {
  Game g = parse_game(fixture("example1.game"));
  CHECK(g.num_states() == 4);
  CHECK(g.num_players() == 1);
  CHECK(serialize_game(g) == serialize_game(gen_example1().game));
}

TEST_CASE("fixtures round trip to their canonical form") {
  for (const char* name : {"example1.game", "a1.game", "ham_cycle3.game", "ham_none3.game"}) {
    CAPTURE(name);
    std::string text = fixture(name);
    CHECK(serialize_game(parse_game(text)) == canonicalize(text));
  }
  Game g = parse_game(fixture("example1.game"));
  for (const char* name : {"example1_m.rm", "example1_m_prime.rm"}) {
    CAPTURE(name);
    std::string text = fixture(name);
    CHECK(serialize_rm(parse_rm(text, g), g) == canonicalize(text));
  }
}

TEST_CASE("semantic errors name the key path") {
  CHECK(parse_error_of("bad_missing_global.game") == "global_weights.m: missing");
  CHECK(parse_error_of("bad_empty_protocol.game") == "protocol.m.robot: empty protocol");
  CHECK(parse_error_of("bad_unknown_state.game") == "transitions.l.m: unknown state 'x'");
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_game(fixture("bad_syntax.game"));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("joint-action keys and reward vectors are checked") {
  Example1 ex = gen_example1();
  std::string ok = serialize_rm(ex.m, ex.game);
  std::string bad = ok;
  bad.replace(bad.find("[1]"), 3, "[-1]");
  CHECK_THROWS_WITH_AS(parse_rm(bad, ex.game), doctest::Contains("natural"), ParseError);
  std::string short_vec = ok;
  short_vec.replace(short_vec.find("[1]"), 3, "[]");
  CHECK_THROWS_AS(parse_rm(short_vec, ex.game), ParseError);

  std::string game = serialize_game(gen_infinite_memory_example());
  auto pos = game.find("\"L,L\"");
  REQUIRE(pos != std::string::npos);
  game.replace(pos, 5, "\"L,Z\"");
  CHECK_THROWS_WITH_AS(parse_game(game), doctest::Contains("not a protocol-allowed joint action"), ParseError);
}
