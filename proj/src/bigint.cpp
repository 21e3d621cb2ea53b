// SPDX-License-Identifier: Apache-2.0
#include "evc/bigint.hpp"

#include <bit>
#include <cmath>
#include <cstdio>

#include "evc/error.hpp"

namespace evc {

namespace {

using Limbs = std::vector<std::uint32_t>;

void trim_limbs(Limbs& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

int cmp_mag(const Limbs& a, const Limbs& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

Limbs add_mag(const Limbs& a, const Limbs& b) {
  const Limbs& hi = a.size() >= b.size() ? a : b;
  const Limbs& lo = a.size() >= b.size() ? b : a;
  Limbs out(hi.size() + 1, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < hi.size(); ++i) {
    std::uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
    out[i] = static_cast<std::uint32_t>(s);
    carry = s >> 32;
  }
  out[hi.size()] = static_cast<std::uint32_t>(carry);
  trim_limbs(out);
  return out;
}

// requires |a| >= |b|
void sub_mag_inplace(Limbs& a, const Limbs& b) {
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow -
                     (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
    if (d < 0) {
      d += (std::int64_t{1} << 32);
      borrow = 1;
    } else {
      borrow = 0;
    }
    a[i] = static_cast<std::uint32_t>(d);
    if (borrow == 0 && i + 1 >= b.size()) break;
  }
  trim_limbs(a);
}

Limbs mul_mag(const Limbs& a, const Limbs& b) {
  if (a.empty() || b.empty()) return {};
  Limbs out(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t cur = out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j] + carry;
      out[i + j] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    out[i + b.size()] = static_cast<std::uint32_t>(carry);  // slot is still zero here
  }
  trim_limbs(out);
  return out;
}

bool get_bit(const Limbs& a, std::uint64_t i) {
  std::size_t limb = static_cast<std::size_t>(i / 32);
  if (limb >= a.size()) return false;
  return (a[limb] >> (i % 32)) & 1u;
}

void set_bit(Limbs& a, std::uint64_t i) {
  std::size_t limb = static_cast<std::size_t>(i / 32);
  if (limb >= a.size()) a.resize(limb + 1, 0);
  a[limb] |= (1u << (i % 32));
}

// r = (r << 1) | low_bit
void shl1_or(Limbs& r, bool low_bit) {
  std::uint32_t carry = low_bit ? 1u : 0u;
  for (auto& limb : r) {
    std::uint32_t next = limb >> 31;
    limb = (limb << 1) | carry;
    carry = next;
  }
  if (carry) r.push_back(1u);
}

// binary long division on magnitudes; b nonzero
void divmod_mag(const Limbs& a, const Limbs& b, Limbs& q, Limbs& r) {
  q.clear();
  r.clear();
  if (cmp_mag(a, b) < 0) {
    r = a;
    return;
  }
  std::uint64_t bits = (a.size() - 1) * 32ull + (32u - std::countl_zero(a.back()));
  for (std::uint64_t i = bits; i-- > 0;) {
    shl1_or(r, get_bit(a, i));
    if (cmp_mag(r, b) >= 0) {
      sub_mag_inplace(r, b);
      set_bit(q, i);
    }
  }
  trim_limbs(q);
  trim_limbs(r);
}

std::uint32_t divmod_small_inplace(Limbs& a, std::uint32_t d) {
  std::uint64_t rem = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    std::uint64_t cur = (rem << 32) | a[i];
    a[i] = static_cast<std::uint32_t>(cur / d);
    rem = cur % d;
  }
  trim_limbs(a);
  return static_cast<std::uint32_t>(rem);
}

void mul_small_inplace(Limbs& a, std::uint32_t m) {
  std::uint64_t carry = 0;
  for (auto& limb : a) {
    std::uint64_t cur = static_cast<std::uint64_t>(limb) * m + carry;
    limb = static_cast<std::uint32_t>(cur);
    carry = cur >> 32;
  }
  if (carry) a.push_back(static_cast<std::uint32_t>(carry));
  trim_limbs(a);
}

void add_small_inplace(Limbs& a, std::uint32_t v) {
  std::uint64_t carry = v;
  for (std::size_t i = 0; carry && i < a.size(); ++i) {
    std::uint64_t cur = a[i] + carry;
    a[i] = static_cast<std::uint32_t>(cur);
    carry = cur >> 32;
  }
  if (carry) a.push_back(static_cast<std::uint32_t>(carry));
}

}  // namespace

BigInt::BigInt(std::int64_t value) {
  negative_ = value < 0;
  std::uint64_t mag = negative_ ? ~static_cast<std::uint64_t>(value) + 1 : static_cast<std::uint64_t>(value);
  while (mag) {
    limbs_.push_back(static_cast<std::uint32_t>(mag));
    mag >>= 32;
  }
  if (limbs_.empty()) negative_ = false;
}

BigInt BigInt::from_decimal(const std::string& digits) {
  if (digits.empty()) fail(Errc::parse_error, "empty digit string");
  BigInt out;
  for (char c : digits) {
    if (c < '0' || c > '9') fail(Errc::parse_error, std::string("bad digit '") + c + "'");
    mul_small_inplace(out.limbs_, 10);
    add_small_inplace(out.limbs_, static_cast<std::uint32_t>(c - '0'));
  }
  out.trim();
  return out;
}

void BigInt::trim() {
  trim_limbs(limbs_);
  if (limbs_.empty()) negative_ = false;
}

BigInt BigInt::operator-() const {
  BigInt out = *this;
  if (!out.limbs_.empty()) out.negative_ = !out.negative_;
  return out;
}

BigInt BigInt::abs() const {
  BigInt out = *this;
  out.negative_ = false;
  return out;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  BigInt out;
  if (a.negative_ == b.negative_) {
    out.limbs_ = add_mag(a.limbs_, b.limbs_);
    out.negative_ = a.negative_;
  } else {
    int c = cmp_mag(a.limbs_, b.limbs_);
    if (c == 0) return BigInt{};
    const BigInt& big = c > 0 ? a : b;
    const BigInt& small = c > 0 ? b : a;
    out.limbs_ = big.limbs_;
    sub_mag_inplace(out.limbs_, small.limbs_);
    out.negative_ = big.negative_;
  }
  out.trim();
  return out;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
  BigInt out;
  out.limbs_ = mul_mag(a.limbs_, b.limbs_);
  out.negative_ = !out.limbs_.empty() && (a.negative_ != b.negative_);
  return out;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& quot, BigInt& rem) {
  if (b.is_zero()) fail(Errc::internal_inconsistency, "integer division by zero");
  Limbs q, r;
  divmod_mag(a.limbs_, b.limbs_, q, r);
  quot.limbs_ = std::move(q);
  rem.limbs_ = std::move(r);
  quot.negative_ = !quot.limbs_.empty() && (a.negative_ != b.negative_);
  rem.negative_ = !rem.limbs_.empty() && a.negative_;  // remainder carries dividend sign
  quot.trim();
  rem.trim();
}

BigInt BigInt::operator/(const BigInt& b) const {
  BigInt q, r;
  divmod(*this, b, q, r);
  return q;
}

BigInt BigInt::operator%(const BigInt& b) const {
  BigInt q, r;
  divmod(*this, b, q, r);
  return r;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
  BigInt x = a.abs();
  BigInt y = b.abs();
  while (!y.is_zero()) {
    BigInt q, r;
    divmod(x, y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

bool operator==(const BigInt& a, const BigInt& b) {
  return a.negative_ == b.negative_ && a.limbs_ == b.limbs_;
}

std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
  if (a.negative_ != b.negative_) {
    return a.negative_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  int c = cmp_mag(a.limbs_, b.limbs_);
  if (a.negative_) c = -c;
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string BigInt::to_string() const {
  if (limbs_.empty()) return "0";
  Limbs work = limbs_;
  std::vector<std::uint32_t> chunks;  // base 1e9, little-endian
  while (!work.empty()) chunks.push_back(divmod_small_inplace(work, 1000000000u));
  std::string out = negative_ ? "-" : "";
  char buf[16];
  std::snprintf(buf, sizeof buf, "%u", chunks.back());
  out += buf;
  for (std::size_t i = chunks.size() - 1; i-- > 0;) {
    std::snprintf(buf, sizeof buf, "%09u", chunks[i]);
    out += buf;
  }
  return out;
}

std::uint64_t BigInt::bit_length() const {
  if (limbs_.empty()) return 0;
  return (limbs_.size() - 1) * 32ull + (32u - std::countl_zero(limbs_.back()));
}

void BigInt::frexp_view(double& mantissa, std::int64_t& exp2) const {
  std::uint64_t bl = bit_length();
  if (bl == 0) {
    mantissa = 0.0;
    exp2 = 0;
    return;
  }
  std::uint64_t top = 0;
  std::uint64_t take = bl < 64 ? bl : 64;
  for (std::uint64_t k = 0; k < take; ++k) {
    std::uint64_t bitpos = bl - 1 - k;
    top = (top << 1) | (get_bit(limbs_, bitpos) ? 1u : 0u);
  }
  mantissa = negative_ ? -static_cast<double>(top) : static_cast<double>(top);
  exp2 = static_cast<std::int64_t>(bl) - static_cast<std::int64_t>(take);
}

double BigInt::to_double() const {
  double m;
  std::int64_t e;
  frexp_view(m, e);
  return std::ldexp(m, static_cast<int>(e));
}

}  // namespace evc
