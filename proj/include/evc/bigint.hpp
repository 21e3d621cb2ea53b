// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace evc {

/// Arbitrary-precision signed integer, sign-magnitude over 32-bit limbs.
/// Only what exact rational arithmetic needs: ring ops, truncated divmod,
/// gcd, decimal conversion, and a lossy double view.
class BigInt {
 public:
  BigInt() = default;
  BigInt(std::int64_t value);  // NOLINT: implicit by design
  static BigInt from_decimal(const std::string& digits);

  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return negative_; }
  int sign() const { return limbs_.empty() ? 0 : (negative_ ? -1 : 1); }

  BigInt operator-() const;
  BigInt abs() const;

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);

  /// Truncated division (quotient rounds toward zero); b must be nonzero.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& quot, BigInt& rem);
  BigInt operator/(const BigInt& b) const;
  BigInt operator%(const BigInt& b) const;

  static BigInt gcd(const BigInt& a, const BigInt& b);

  friend bool operator==(const BigInt& a, const BigInt& b);
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b);

  std::string to_string() const;
  std::uint64_t bit_length() const;
  double to_double() const;
  /// value ~= mantissa * 2^exp2 with mantissa the top <=64 bits as a double.
  void frexp_view(double& mantissa, std::int64_t& exp2) const;

 private:
  void trim();

  std::vector<std::uint32_t> limbs_;  // little-endian, no high zero limbs
  bool negative_ = false;             // never set when limbs_ is empty
};

}  // namespace evc
