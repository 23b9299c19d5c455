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

#include "eqdesign/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

#include "eqdesign/errors.hpp"

namespace eqd {

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  q_ = mpq_class(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d)));
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!is_digits(num) || !is_digits(den))
    throw ParseError("not a rational: '" + std::string(text) + "'");
  mpz_class n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  if (neg) n = -n;
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(q);
}

std::string Rational::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::floor() const {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return Rational(mpq_class(f));
}

Rational Rational::ceil() const {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return Rational(mpq_class(c));
}

std::int64_t Rational::to_int64() const {
  if (!is_integer() || !q_.get_num().fits_slong_p())
    throw std::overflow_error("rational " + to_string() + " is not a machine integer");
  return q_.get_num().get_si();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.q_ == 0) throw std::domain_error("division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

ExtendedRational ExtendedRational::parse(std::string_view text) {
  if (text == "inf" || text == "+inf") return pos_inf();
  if (text == "-inf") return neg_inf();
  return ExtendedRational(Rational::parse(text));
}

std::string ExtendedRational::to_string() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "+inf";
    default: return value_.to_string();
  }
}

std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
  using K = ExtendedRational::Kind;
  auto rank = [](K k) { return k == K::NegInf ? 0 : (k == K::Finite ? 1 : 2); };
  if (a.kind_ != b.kind_ || a.kind_ != K::Finite) return rank(a.kind_) <=> rank(b.kind_);
  return a.value_ <=> b.value_;
}

std::ostream& operator<<(std::ostream& os, const ExtendedRational& r) { return os << r.to_string(); }

}  // namespace eqd
