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

#ifndef LMPSYM_ENUMERATION_HPP
#define LMPSYM_ENUMERATION_HPP

#include <cstdint>
#include <vector>

#include "lmpsym/errors.hpp"
#include "lmpsym/intervals.hpp"
#include "lmpsym/rational.hpp"

namespace lmpsym {

/**
 * Fixed enumeration of the open rational-endpoint subintervals of the unit
 * interval, id "farey-pair-v1".
 *
 * Endpoints are the rationals of [0,1] ranked as
 *   rank 0: 0, rank 1: 1, then interior rationals by denominator
 *   d = 2, 3, ... and, within a denominator, by ascending numerator
 *   coprime to d:  1/2, 1/3, 2/3, 1/4, 3/4, 1/5, 2/5, ...
 *
 * Interval index k decodes to the 2-element rank set {i < j} with
 * k = j(j-1)/2 + i (the combinatorial number system), and the interval is
 * the open one between the two ranked endpoints. This is a bijection from
 * the naturals onto all open intervals with distinct rational endpoints in
 * [0,1], i.e. onto all open rational-endpoint subintervals of the unit
 * interval.
 */
inline constexpr const char* kEnumerationId = "farey-pair-v1";

namespace enum_detail {

// Denominators are sieved lazily. The cap keeps the sieve's memory bounded;
// endpoints finer than this are outside the supported desk scale.
inline constexpr std::uint64_t kMaxDenominator = 1u << 22;

struct Sieve {
  std::vector<std::uint32_t> spf;     // smallest prime factor, index = value
  std::vector<std::uint64_t> phisum;  // phisum[d] = sum of phi(2..d), phisum[0..1] = 0

  void grow(std::uint64_t need) {
    if (need < 2) need = 2;
    ensure(need <= kMaxDenominator, "range",
           "enumeration endpoint denominator beyond supported bound");
    if (need + 1 <= spf.size()) return;
    std::uint64_t cap = spf.size() < 16 ? 16 : spf.size();
    while (cap < need + 1) cap *= 2;
    if (cap > kMaxDenominator + 1) cap = kMaxDenominator + 1;
    // Rebuilt from scratch: a tail-only pass would miss multiples of the
    // already-known primes. Capacity doubles, so rebuilds stay amortized.
    spf.assign(cap, 0);
    if (cap > 1) spf[1] = 1;
    for (std::uint64_t i = 2; i < cap; ++i) {
      if (spf[i] == 0) {
        for (std::uint64_t j = i; j < cap; j += i) {
          if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
        }
      }
    }
    phisum.assign(cap, 0);
    for (std::uint64_t d = 2; d < cap; ++d) {
      phisum[d] = phisum[d - 1] + phi(d);
    }
  }

  std::uint64_t phi(std::uint64_t n) const {
    std::uint64_t result = n, m = n;
    while (m > 1) {
      std::uint64_t p = spf[m];
      result = result / p * (p - 1);
      while (m % p == 0) m /= p;
    }
    return result;
  }

  std::vector<std::uint64_t> distinct_primes(std::uint64_t n) const {
    std::vector<std::uint64_t> ps;
    while (n > 1) {
      std::uint64_t p = spf[n];
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
    return ps;
  }

  // Count of m in [1, n] with gcd(m, d) == 1, by inclusion-exclusion.
  std::uint64_t coprimes_upto(std::uint64_t d, std::uint64_t n) const {
    auto ps = distinct_primes(d);
    std::uint64_t total = 0;
    std::uint64_t subsets = 1ull << ps.size();
    for (std::uint64_t s = 0; s < subsets; ++s) {
      std::uint64_t prod = 1;
      int bits = 0;
      for (std::size_t b = 0; b < ps.size(); ++b) {
        if (s & (1ull << b)) { prod *= ps[b]; ++bits; }
      }
      std::uint64_t term = n / prod;
      total += (bits % 2 == 0) ? term : -term;
    }
    return total;
  }
};

inline Sieve& sieve() {
  static Sieve s;
  return s;
}

}  // namespace enum_detail

/** \brief Rank of an endpoint rational in [0,1]; inverse of endpoint_by_rank. */
inline Int rank_of_endpoint(const Rat& r) {
  ensure(r >= Rat(0) && r <= Rat(1), "range", "enumeration endpoint outside [0,1]");
  if (r == Rat(0)) return 0;
  if (r == Rat(1)) return 1;
  std::uint64_t den = r.den().convert_to<std::uint64_t>();
  std::uint64_t num = r.num().convert_to<std::uint64_t>();
  auto& sv = enum_detail::sieve();
  sv.grow(den);
  std::uint64_t before = sv.phisum[den - 1];
  std::uint64_t within = sv.coprimes_upto(den, num) - 1;
  return Int(2) + Int(before) + Int(within);
}

/** \brief Endpoint rational with the given rank. */
inline Rat endpoint_by_rank(const Int& rank) {
  ensure(rank >= 0, "range", "negative enumeration rank");
  if (rank == 0) return Rat(0);
  if (rank == 1) return Rat(1);
  Int rest = rank - 2;
  auto& sv = enum_detail::sieve();
  std::uint64_t m = rest.convert_to<std::uint64_t>();
  // Find the denominator by binary search over the cumulative totients.
  std::uint64_t d = 2;
  sv.grow(d);
  while (sv.phisum[sv.phisum.size() - 1] <= m) {
    sv.grow(sv.phisum.size() * 2);
  }
  std::uint64_t lo = 2, hi = sv.phisum.size() - 1;
  while (lo < hi) {  // smallest d with phisum[d] > m
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (sv.phisum[mid] > m) hi = mid; else lo = mid + 1;
  }
  d = lo;
  std::uint64_t within = m - sv.phisum[d - 1];  // 0-based among coprimes of d
  // Smallest n with coprimes_upto(d, n) == within+1 and gcd(n, d) == 1.
  std::uint64_t nlo = 1, nhi = d - 1;
  while (nlo < nhi) {
    std::uint64_t mid = nlo + (nhi - nlo) / 2;
    if (sv.coprimes_upto(d, mid) >= within + 1) nhi = mid; else nlo = mid + 1;
  }
  return Rat(Int(nlo), Int(d));
}

/** \brief The k-th interval of the family; a bijection from naturals. */
inline Interval interval_by_index(const Int& k) {
  ensure(k >= 0, "range", "negative enumeration index");
  // j = largest rank with j(j-1)/2 <= k, then i = k - j(j-1)/2 < j.
  Int j = (Int(1) + boost::multiprecision::sqrt(Int(8) * k + 1)) / 2;
  while (j * (j - 1) / 2 > k) --j;
  while ((j + 1) * j / 2 <= k) ++j;
  Int i = k - j * (j - 1) / 2;
  Rat a = endpoint_by_rank(i);
  Rat b = endpoint_by_rank(j);
  if (b < a) std::swap(a, b);
  return Interval::open(a, b);
}

/** \brief Index of the open interval (lo, hi); inverse of interval_by_index. */
inline Int index_of_interval(const Rat& lo, const Rat& hi) {
  ensure(lo < hi, "range", "interval endpoints out of order");
  Int i = rank_of_endpoint(lo);
  Int j = rank_of_endpoint(hi);
  if (j < i) std::swap(i, j);
  return j * (j - 1) / 2 + i;
}

/**
 * \brief Index of a family interval containing p but not q.
 *
 * The witness is constructed, not searched for: for p < q it is
 * (p/2, (p+q)/2), mirrored when p > q. Both points must lie strictly
 * inside the unit interval and differ.
 */
inline Int separation_witness(const Rat& p, const Rat& q) {
  ensure(p > Rat(0) && p < Rat(1) && q > Rat(0) && q < Rat(1), "range",
         "separation points must lie inside the open unit interval");
  ensure(p != q, "no-witness", "equal points cannot be separated");
  Rat half(Int(1), Int(2));
  if (p < q) {
    return index_of_interval(p * half, (p + q) * half);
  }
  return index_of_interval((p + q) * half, (p + Rat(1)) * half);
}

}  // namespace lmpsym

#endif  // LMPSYM_ENUMERATION_HPP
