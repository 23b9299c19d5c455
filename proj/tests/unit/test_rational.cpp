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

#include <doctest.h>

#include "eqdesign/errors.hpp"
#include "eqdesign/rational.hpp"

using eqd::ExtendedRational;
using eqd::Rational;

TEST_CASE("rational parse and print") {
  CHECK(Rational::parse("3/6") == Rational(1, 2));
  CHECK(Rational::parse("-4").to_string() == "-4");
  CHECK(Rational::parse("+2/4").to_string() == "1/2");
  CHECK(Rational::parse("-10/4").to_string() == "-5/2");
  CHECK(Rational(7, -14).to_string() == "-1/2");
  CHECK_THROWS_AS(Rational::parse("1/0"), eqd::ParseError);
  CHECK_THROWS_AS(Rational::parse("abc"), eqd::ParseError);
  CHECK_THROWS_AS(Rational::parse(""), eqd::ParseError);
  CHECK_THROWS_AS(Rational::parse("1.5"), eqd::ParseError);
}

TEST_CASE("rational arithmetic is exact") {
  Rational third(1, 3);
  CHECK(third + third + third == Rational(1));
  CHECK((Rational(2, 3) - Rational(5, 6)).to_string() == "-1/6");
  CHECK(Rational(-7, 2).floor() == Rational(-4));
  CHECK(Rational(-7, 2).ceil() == Rational(-3));
  CHECK(Rational(9, 3).to_int64() == 3);
  CHECK_THROWS(Rational(1, 2).to_int64());
  CHECK_THROWS(Rational(1) / Rational(0));
  // far beyond 64 bits
  Rational big = Rational::parse("123456789012345678901234567890/7");
  CHECK((big * Rational(7)).to_string() == "123456789012345678901234567890");
}

TEST_CASE("extended rationals order infinities around finite values") {
  CHECK(ExtendedRational::neg_inf() < ExtendedRational(Rational(-1000)));
  CHECK(ExtendedRational(Rational(1000)) < ExtendedRational::pos_inf());
  CHECK(ExtendedRational::parse("-inf") == ExtendedRational::neg_inf());
  CHECK(ExtendedRational::parse("inf") == ExtendedRational::pos_inf());
  CHECK(ExtendedRational::parse("3/9") == ExtendedRational(Rational(1, 3)));
  CHECK(std::max(ExtendedRational::neg_inf(), ExtendedRational(Rational(2))) == ExtendedRational(Rational(2)));
}
