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

#ifndef LMPSYM_INTERVALS_HPP
#define LMPSYM_INTERVALS_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "lmpsym/errors.hpp"
#include "lmpsym/rational.hpp"

namespace lmpsym {

/**
 * \brief One interval with rational endpoints and open/closed ends.
 *
 * Invariant: lo < hi, or lo == hi with both ends closed (a singleton).
 */
struct Interval {
  Rat lo, hi;
  bool lo_open = true;
  bool hi_open = true;

  Interval() = default;
  Interval(Rat l, Rat h, bool lo_o, bool hi_o)
      : lo(std::move(l)), hi(std::move(h)), lo_open(lo_o), hi_open(hi_o) {
    ensure(lo < hi || (lo == hi && !lo_open && !hi_open), "range",
           "empty or inverted interval");
  }

  static Interval open(Rat l, Rat h) { return Interval(std::move(l), std::move(h), true, true); }
  static Interval closed(Rat l, Rat h) { return Interval(std::move(l), std::move(h), false, false); }
  static Interval singleton(Rat p) { Rat q = p; return Interval(std::move(p), std::move(q), false, false); }

  bool is_singleton() const { return lo == hi; }

  bool contains(const Rat& p) const {
    if (p < lo || hi < p) return false;
    if (p == lo && lo_open) return false;
    if (p == hi && hi_open) return false;
    return true;
  }

  Rat length() const { return hi - lo; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi && a.lo_open == b.lo_open && a.hi_open == b.hi_open;
  }

  std::string str() const {
    if (is_singleton()) return "[" + lo.str() + "]";
    std::string s;
    s += lo_open ? '(' : '[';
    s += lo.str(); s += ','; s += hi.str();
    s += hi_open ? ')' : ']';
    return s;
  }
};

namespace detail {

// Order on lower ends: smaller value first; at equal value a closed end
// starts earlier than an open one.
inline bool lo_before(const Interval& a, const Interval& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  return !a.lo_open && b.lo_open;
}

// True when b starts inside or flush against a, so [a, b] merge into one piece.
inline bool touches(const Interval& a, const Interval& b) {
  if (b.lo < a.hi) return true;
  if (b.lo == a.hi) return !b.lo_open || !a.hi_open;
  return false;
}

// The later of two upper ends; at equal value closed beats open.
inline void extend_hi(Interval& a, const Interval& b) {
  if (a.hi < b.hi || (a.hi == b.hi && a.hi_open && !b.hi_open)) {
    a.hi = b.hi;
    a.hi_open = b.hi_open;
  }
}

}  // namespace detail

/**
 * \brief Finite union of intervals, kept normalized: sorted, pairwise
 *        disjoint, and never mergeable into fewer pieces.
 *
 * Normalized form is canonical, so operator== decides set equality.
 */
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(const Interval& one) : pieces_{one} {}
  explicit IntervalSet(std::vector<Interval> raw) : pieces_(std::move(raw)) { normalize(); }

  static IntervalSet empty() { return IntervalSet(); }

  const std::vector<Interval>& pieces() const noexcept { return pieces_; }
  bool is_empty() const noexcept { return pieces_.empty(); }

  bool contains(const Rat& p) const {
    for (const auto& iv : pieces_)
      if (iv.contains(p)) return true;
    return false;
  }

  Rat length() const {
    Rat total;
    for (const auto& iv : pieces_) total += iv.length();
    return total;
  }

  IntervalSet unite(const IntervalSet& other) const {
    std::vector<Interval> all = pieces_;
    all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
    return IntervalSet(std::move(all));
  }

  IntervalSet intersect(const IntervalSet& other) const {
    std::vector<Interval> out;
    for (const auto& a : pieces_) {
      for (const auto& b : other.pieces_) {
        if (b.hi < a.lo || a.hi < b.lo) continue;
        Rat lo = a.lo, hi = b.hi;
        bool lo_open = a.lo_open, hi_open = b.hi_open;
        if (b.lo > a.lo || (b.lo == a.lo && b.lo_open)) { lo = b.lo; lo_open = b.lo_open; }
        if (a.hi < b.hi || (a.hi == b.hi && a.hi_open)) { hi = a.hi; hi_open = a.hi_open; }
        if (lo < hi || (lo == hi && !lo_open && !hi_open))
          out.emplace_back(lo, hi, lo_open, hi_open);
      }
    }
    return IntervalSet(std::move(out));
  }

  /** \brief Set difference this minus other. */
  IntervalSet subtract(const IntervalSet& other) const {
    std::vector<Interval> result;
    for (const auto& a : pieces_) {
      std::vector<Interval> work{a};
      for (const auto& b : other.pieces_) {
        std::vector<Interval> next;
        for (const auto& w : work) {
          if (b.hi < w.lo || w.hi < b.lo) { next.push_back(w); continue; }
          // Left remainder of w before b starts.
          if (w.lo < b.lo || (w.lo == b.lo && !w.lo_open && b.lo_open)) {
            Rat hi = min(w.hi, b.lo);
            bool hi_open = !b.lo_open;
            if (b.lo > w.hi || (b.lo == w.hi && (b.lo_open || w.hi_open))) {
              // b starts past the end of w.
              next.push_back(w);
              continue;
            }
            if (w.lo < hi || (w.lo == hi && !w.lo_open && !hi_open))
              next.emplace_back(w.lo, hi, w.lo_open, hi_open);
          }
          // Right remainder of w after b ends.
          if (b.hi < w.hi || (b.hi == w.hi && b.hi_open && !w.hi_open)) {
            Rat lo = max(w.lo, b.hi);
            bool lo_open = !b.hi_open;
            if (b.hi < w.lo || (b.hi == w.lo && (b.hi_open || w.lo_open))) {
              lo = w.lo;
              lo_open = w.lo_open;
            }
            if (lo < w.hi || (lo == w.hi && !lo_open && !w.hi_open))
              next.emplace_back(lo, w.hi, lo_open, w.hi_open);
          }
        }
        work = std::move(next);
      }
      result.insert(result.end(), work.begin(), work.end());
    }
    return IntervalSet(std::move(result));
  }

  bool intersects(const IntervalSet& other) const { return !intersect(other).is_empty(); }

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
    return a.pieces_ == b.pieces_;
  }
  friend bool operator!=(const IntervalSet& a, const IntervalSet& b) { return !(a == b); }
  friend bool operator<(const IntervalSet& a, const IntervalSet& b) { return a.str() < b.str(); }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (i) s += "+";
      s += pieces_[i].str();
    }
    return s;
  }

 private:
  void normalize() {
    if (pieces_.empty()) return;
    std::sort(pieces_.begin(), pieces_.end(), detail::lo_before);
    std::vector<Interval> merged;
    merged.push_back(pieces_.front());
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
      Interval& cur = merged.back();
      const Interval& nxt = pieces_[i];
      if (detail::touches(cur, nxt)) {
        detail::extend_hi(cur, nxt);
      } else {
        merged.push_back(nxt);
      }
    }
    pieces_ = std::move(merged);
  }

  std::vector<Interval> pieces_;
};

/** \brief The open unit interval, the ambient space for all interval atoms. */
inline IntervalSet unit_interval() {
  return IntervalSet(Interval::open(Rat(0), Rat(1)));
}

}  // namespace lmpsym

#endif  // LMPSYM_INTERVALS_HPP
