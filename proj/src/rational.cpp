// SPDX-License-Identifier: Apache-2.0
#include "evc/rational.hpp"

#include <cctype>
#include <cmath>

#include "evc/error.hpp"

namespace evc {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt pow10(std::size_t k) {
  BigInt out(1);
  BigInt ten(10);
  for (std::size_t i = 0; i < k; ++i) out = out * ten;
  return out;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void Rational::normalize() {
  if (den_.is_zero()) fail(Errc::parse_error, "zero denominator");
  if (den_.is_negative()) {
    den_ = -den_;
    num_ = -num_;
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  BigInt g = BigInt::gcd(num_, den_);
  if (!(g == BigInt(1))) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
}

Rational Rational::parse(const std::string& text) {
  std::size_t begin = text.find_first_not_of(" \t");
  std::size_t end = text.find_last_not_of(" \t");
  if (begin == std::string::npos) fail(Errc::parse_error, "empty rational string");
  std::string s = text.substr(begin, end - begin + 1);

  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty()) fail(Errc::parse_error, "sign without digits in '" + text + "'");

  std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    std::string p = s.substr(0, slash);
    std::string q = s.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) {
      fail(Errc::parse_error, "bad rational literal '" + text + "'");
    }
    BigInt den = BigInt::from_decimal(q);
    if (den.is_zero()) fail(Errc::parse_error, "zero denominator in '" + text + "'");
    BigInt num = BigInt::from_decimal(p);
    if (negative) num = -num;
    return Rational(std::move(num), std::move(den));
  }

  std::size_t dot = s.find('.');
  std::string int_part = dot == std::string::npos ? s : s.substr(0, dot);
  std::string frac_part = dot == std::string::npos ? std::string{} : s.substr(dot + 1);
  if (frac_part.find('.') != std::string::npos) {
    fail(Errc::parse_error, "bad decimal literal '" + text + "'");
  }
  if (int_part.empty() && frac_part.empty()) {
    fail(Errc::parse_error, "bad decimal literal '" + text + "'");
  }
  if ((!int_part.empty() && !all_digits(int_part)) ||
      (!frac_part.empty() && !all_digits(frac_part))) {
    fail(Errc::parse_error, "bad decimal literal '" + text + "'");
  }
  BigInt num = int_part.empty() ? BigInt(0) : BigInt::from_decimal(int_part);
  BigInt den(1);
  if (!frac_part.empty()) {
    den = pow10(frac_part.size());
    num = num * den + BigInt::from_decimal(frac_part);
  }
  if (negative) num = -num;
  return Rational(std::move(num), std::move(den));
}

Rational Rational::operator-() const {
  Rational out = *this;
  out.num_ = -out.num_;
  return out;
}

Rational Rational::abs() const {
  Rational out = *this;
  out.num_ = out.num_.abs();
  return out;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) fail(Errc::internal_inconsistency, "rational division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const Rational& a, const Rational& b) {
  return a.num_ == b.num_ && a.den_ == b.den_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return (a.num_ * b.den_) <=> (b.num_ * a.den_);
}

std::string Rational::to_string() const { return num_.to_string() + "/" + den_.to_string(); }

double Rational::to_double() const {
  if (num_.is_zero()) return 0.0;
  double mn, md;
  std::int64_t en, ed;
  num_.frexp_view(mn, en);
  den_.frexp_view(md, ed);
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

}  // namespace evc
