/*
 * Copyright 2026 The lmpsym Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LMPSYM_RATIONAL_HPP
#define LMPSYM_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "lmpsym/errors.hpp"

namespace lmpsym {

using Int = boost::multiprecision::cpp_int;

/**
 * \brief Exact rational number.
 *
 * Invariant: den > 0 and gcd(|num|, den) == 1; zero is 0/1.
 * All arithmetic is exact; there is no floating point anywhere in the library.
 */
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rat(Int n) : num_(std::move(n)), den_(1) {}

  Rat(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) {
    ensure(den_ != 0, "range", "rational with zero denominator");
    normalize();
  }

  const Int& num() const noexcept { return num_; }
  const Int& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    ensure(b.num_ != 0, "range", "division by zero rational");
    return Rat(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rat operator-() const { Rat r = *this; r.num_ = -r.num_; return r; }

  Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
  Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
  Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }
  Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  /** \brief Canonical encoding: "p/q" in lowest terms, "p" when q == 1. */
  std::string str() const {
    std::string s = num_.str();
    if (den_ != 1) { s += "/"; s += den_.str(); }
    return s;
  }

  /** \brief Wire encoding used in JSON: always "p/q", lowest terms. */
  std::string wire() const { return num_.str() + "/" + den_.str(); }

  /**
   * \brief Parse "p", "p/q" or "-p/q". Throws Error("parse") on malformed input.
   */
  static Rat parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      return s;
    };
    auto integer = [&](std::string_view s) {
      s = trim(s);
      std::string_view digits = s;
      if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
      bool ok = !digits.empty();
      for (char c : digits) ok = ok && c >= '0' && c <= '9';
      ensure(ok, "parse", "malformed rational '" + std::string(text) + "'");
      return Int(std::string(s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rat(integer(text), Int(1));
    Int n = integer(text.substr(0, slash));
    Int d = integer(text.substr(slash + 1));
    ensure(d != 0, "parse", "zero denominator in '" + std::string(text) + "'");
    return Rat(n, d);
  }

 private:
  void normalize() {
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    if (num_ == 0) { den_ = 1; return; }
    Int g = boost::multiprecision::gcd(num_ < 0 ? Int(-num_) : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  Int num_;
  Int den_;
};

inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace lmpsym

#endif  // LMPSYM_RATIONAL_HPP
