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

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace eqd {

/// Exact rational number, always in canonical form.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : q_(static_cast<long>(n)) {}  // NOLINT: implicit on purpose
  Rational(long long n, long long d);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Accepts "p/q", "p" and an optional leading sign.
  static Rational parse(std::string_view text);

  std::string to_string() const;
  const mpq_class& value() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  Rational floor() const;
  Rational ceil() const;
  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  /// Throws std::overflow_error unless the value is an integer that fits.
  std::int64_t to_int64() const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Rational extended with -inf and +inf; only used for bounds.
class ExtendedRational {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtendedRational() : kind_(Kind::Finite) {}
  ExtendedRational(const Rational& r) : kind_(Kind::Finite), value_(r) {}  // NOLINT
  ExtendedRational(long long n) : kind_(Kind::Finite), value_(n) {}         // NOLINT

  static ExtendedRational neg_inf() { return ExtendedRational(Kind::NegInf); }
  static ExtendedRational pos_inf() { return ExtendedRational(Kind::PosInf); }
  /// Accepts everything Rational::parse does plus "inf", "+inf", "-inf".
  static ExtendedRational parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  /// Only meaningful when finite.
  const Rational& value() const { return value_; }
  std::string to_string() const;

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b);

 private:
  explicit ExtendedRational(Kind k) : kind_(k) {}
  Kind kind_;
  Rational value_;
};

std::ostream& operator<<(std::ostream& os, const ExtendedRational& r);

}  // namespace eqd
