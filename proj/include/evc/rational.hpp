// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "evc/bigint.hpp"

namespace evc {

/// Exact rational number, always normalized: positive denominator,
/// gcd(|num|, den) == 1, zero represented as 0/1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t num, std::int64_t den);
  Rational(BigInt num, BigInt den);

  /// Accepts "p/q", plain integers, and decimal strings ("0.25", "-3.", ".5").
  static Rational parse(const std::string& text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }

  Rational operator-() const;
  Rational abs() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  static const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
  static const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

  /// Lowest-terms "p/q" form, e.g. "3/10", "0/1", "-1/2".
  std::string to_string() const;
  double to_double() const;

 private:
  void normalize();

  BigInt num_;
  BigInt den_;
};

}  // namespace evc
