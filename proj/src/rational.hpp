/*
 *   Copyright 2026 The wlpr Authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
 */

#ifndef WLPR_RATIONAL_HPP
#define WLPR_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "error.hpp"

namespace wlpr {

/// Exact rational on 128-bit integers, always kept reduced with den > 0.
/// Wide enough for the certification sweeps this library performs (mask
/// coefficients are O(n^5) over denominators O(n^6) with n <= a few hundred);
/// arithmetic throws on overflow rather than wrapping.
class Rat {
 public:
  using Int = __int128;

  Rat() : num_(0), den_(1) {}
  Rat(long long n) : num_(n), den_(1) {}
  Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }
  static Rat raw(Int n, Int d) {
    Rat r;
    r.num_ = n;
    r.den_ = d;
    r.normalize();
    return r;
  }

  /// Parses a plain decimal like "3.7", "-0.25" or "15" exactly.
  static Rat from_decimal(std::string_view s) {
    if (s.empty()) fail(ErrorCode::InvalidArgument, "empty decimal");
    bool neg = false;
    size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
      neg = s[0] == '-';
      ++i;
    }
    Int num = 0, den = 1;
    bool seen_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
      char c = s[i];
      if (c == '.') {
        if (seen_dot) fail(ErrorCode::InvalidArgument, "bad decimal");
        seen_dot = true;
      } else if (c >= '0' && c <= '9') {
        num = checked_mul(num, 10);
        num += c - '0';
        if (seen_dot) den = checked_mul(den, 10);
        seen_digit = true;
      } else {
        fail(ErrorCode::InvalidArgument, "bad decimal: " + std::string(s));
      }
    }
    if (!seen_digit) fail(ErrorCode::InvalidArgument, "bad decimal");
    return raw(neg ? -num : num, den);
  }

  Int num() const { return num_; }
  Int den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  Rat operator-() const { return raw(-num_, den_); }
  Rat abs() const { return num_ < 0 ? -*this : *this; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    Int g = gcd(a.den_, b.den_);
    Int lhs = checked_mul(a.num_, b.den_ / g);
    Int rhs = checked_mul(b.num_, a.den_ / g);
    return raw(checked_add(lhs, rhs), checked_mul(a.den_, b.den_ / g));
  }
  friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
  friend Rat operator*(const Rat& a, const Rat& b) {
    Int g1 = gcd(abs_int(a.num_), b.den_);
    Int g2 = gcd(abs_int(b.num_), a.den_);
    return raw(checked_mul(a.num_ / g1, b.num_ / g2),
               checked_mul(a.den_ / g2, b.den_ / g1));
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) fail(ErrorCode::InvalidArgument, "rational division by zero");
    return a * raw(b.den_, b.num_);
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return (a - b).num_ < 0; }
  friend bool operator<=(const Rat& a, const Rat& b) { return (a - b).num_ <= 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

  std::string to_string() const {
    std::string s = int_to_string(num_);
    if (den_ != 1) s += "/" + int_to_string(den_);
    return s;
  }
  std::string num_string() const { return int_to_string(num_); }
  std::string den_string() const { return int_to_string(den_); }

  static std::string int_to_string(Int v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
    std::string s;
    while (u) {
      s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
      u /= 10;
    }
    if (neg) s.push_back('-');
    return std::string(s.rbegin(), s.rend());
  }

  static Rat from_strings(const std::string& num, const std::string& den) {
    return raw(parse_int(num), parse_int(den));
  }

 private:
  static Int abs_int(Int v) { return v < 0 ? -v : v; }
  static Int gcd(Int a, Int b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b) {
      Int t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }
  static Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r))
      fail(ErrorCode::InvalidArgument, "rational overflow in +");
    return r;
  }
  static Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r))
      fail(ErrorCode::InvalidArgument, "rational overflow in *");
    return r;
  }
  static Int parse_int(const std::string& s) {
    Int v = 0;
    bool neg = false;
    size_t i = 0;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) fail(ErrorCode::InvalidArgument, "bad integer");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9')
        fail(ErrorCode::InvalidArgument, "bad integer: " + s);
      v = checked_mul(v, 10);
      v += s[i] - '0';
    }
    return neg ? -v : v;
  }

  void normalize() {
    if (den_ == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    Int g = gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  Int num_, den_;
};

inline Rat pow(Rat base, int e) {
  Rat r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace wlpr

#endif  // WLPR_RATIONAL_HPP
