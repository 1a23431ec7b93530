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

#ifndef LMPSYM_MEASURE_HPP
#define LMPSYM_MEASURE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lmpsym/errors.hpp"
#include "lmpsym/rational.hpp"
#include "lmpsym/sigma.hpp"

namespace lmpsym {

/**
 * Measures on a space whose algebra contains an abstract set V. A base
 * measure assigns mass to each cell of the pre-split partition; a mass
 * profile brackets how much of each split cell's mass can sit inside V.
 * Within those brackets every extension of the base measure to the
 * extended algebra is admissible; the lower and upper extensions are the
 * two extremes, and they differ on V whenever some bracket is slack.
 */

/**
 * \brief Cells of the pre-split partition. A split cell owns its two
 *        halves, listed inside-V first; an unsplit cell owns one atom.
 */
struct BaseCells {
  std::vector<std::string> ids;           // base ids, first-occurrence order
  std::vector<std::vector<int>> members;  // {in_v, out_v} or {atom}
  std::vector<int> cell_of;               // atom index -> cell index
  std::vector<bool> split;

  int size() const { return static_cast<int>(ids.size()); }

  int index_of(const std::string& id) const {
    for (int i = 0; i < size(); ++i)
      if (ids[i] == id) return i;
    return -1;
  }
};

inline BaseCells base_cells(const AtomPartition& space) {
  BaseCells cells;
  cells.cell_of.assign(space.atoms.size(), -1);
  std::map<std::string, int> by_base;
  for (int i = 0; i < space.size(); ++i) {
    const Atom& a = space.atoms[i];
    auto it = by_base.find(a.base_id);
    if (it == by_base.end()) {
      int c = cells.size();
      by_base.emplace(a.base_id, c);
      cells.ids.push_back(a.base_id);
      cells.members.push_back({i});
      cells.split.push_back(a.is_split());
      cells.cell_of[i] = c;
    } else {
      int c = it->second;
      ensure(cells.split[c] && a.is_split() && cells.members[c].size() == 1, "shape",
             "base cell '" + a.base_id + "' groups more than a split pair");
      cells.members[c].push_back(i);
      cells.cell_of[i] = c;
    }
  }
  for (int c = 0; c < cells.size(); ++c) {
    if (!cells.split[c]) continue;
    ensure(cells.members[c].size() == 2, "shape",
           "abstract half '" + cells.ids[c] + "' has no partner");
    int first = cells.members[c][0], second = cells.members[c][1];
    if (space.atoms[first].side == VSide::out_v) std::swap(first, second);
    ensure(space.atoms[first].side == VSide::in_v && space.atoms[second].side == VSide::out_v,
           "shape", "cell '" + cells.ids[c] + "' lacks a matched in/out pair");
    cells.members[c] = {first, second};
  }
  return cells;
}

/** \brief Nonnegative mass per base cell. */
struct BaseMeasure {
  std::vector<Rat> cell_mass;

  Rat total() const {
    Rat t;
    for (const auto& m : cell_mass) t += m;
    return t;
  }

  void validate(const BaseCells& cells) const {
    ensure(static_cast<int>(cell_mass.size()) == cells.size(), "shape",
           "base measure size mismatch");
    for (const auto& m : cell_mass)
      ensure(m >= Rat(0), "shape", "negative cell mass");
  }
};

/** \brief Bracket for the V-portion of one split cell's mass. */
struct VBounds {
  Rat inner;
  Rat outer;

  friend bool operator==(const VBounds&, const VBounds&) = default;
};

/**
 * \brief Admissible mass profile: a bracket for every split cell and
 *        nothing else, with 0 <= inner <= outer <= cell mass.
 */
struct VMassProfile {
  std::map<int, VBounds> bounds;  // keyed by cell index

  void validate(const BaseCells& cells, const BaseMeasure& base) const {
    base.validate(cells);
    for (int c = 0; c < cells.size(); ++c) {
      if (cells.split[c]) {
        auto it = bounds.find(c);
        ensure(it != bounds.end(), "profile-violation",
               "split cell '" + cells.ids[c] + "' has no mass bracket");
        const VBounds& b = it->second;
        ensure(Rat(0) <= b.inner && b.inner <= b.outer && b.outer <= base.cell_mass[c],
               "profile-violation",
               "bracket for cell '" + cells.ids[c] + "' is not 0 <= inner <= outer <= mass");
      } else {
        ensure(!bounds.count(c), "profile-violation",
               "unsplit cell '" + cells.ids[c] + "' carries a mass bracket");
      }
    }
  }

  Rat inner_total() const {
    Rat t;
    for (const auto& [c, b] : bounds) t += b.inner;
    return t;
  }
  Rat outer_total() const {
    Rat t;
    for (const auto& [c, b] : bounds) t += b.outer;
    return t;
  }
};

/** \brief A measure presented by its mass on every atom. */
struct MeasureValue {
  std::vector<Rat> atom_mass;

  Rat total() const {
    Rat t;
    for (const auto& m : atom_mass) t += m;
    return t;
  }

  Rat of(const RegionMask& event) const {
    ensure(event.size() == atom_mass.size(), "shape", "event size mismatch");
    Rat t;
    for (std::size_t i = 0; i < atom_mass.size(); ++i)
      if (event[i]) t += atom_mass[i];
    return t;
  }

  friend bool operator==(const MeasureValue&, const MeasureValue&) = default;
};

namespace measure_detail {

enum class CellHit { both, in_only, out_only, none };

inline CellHit hit(const BaseCells& cells, int c, const RegionMask& event) {
  int iv = cells.members[c][0], ov = cells.members[c][1];
  if (event[iv] && event[ov]) return CellHit::both;
  if (event[iv]) return CellHit::in_only;
  if (event[ov]) return CellHit::out_only;
  return CellHit::none;
}

}  // namespace measure_detail

/**
 * \brief Largest mass certainly inside the event: a lone V-half
 *        contributes its bracket's inner bound, a lone complement half
 *        the mass certainly outside V.
 */
inline Rat inner_measure(const BaseCells& cells, const BaseMeasure& base,
                         const VMassProfile& profile, const RegionMask& event) {
  ensure(event.size() == cells.cell_of.size(), "shape", "event size mismatch");
  Rat t;
  for (int c = 0; c < cells.size(); ++c) {
    if (!cells.split[c]) {
      if (event[cells.members[c][0]]) t += base.cell_mass[c];
      continue;
    }
    const VBounds& b = profile.bounds.at(c);
    switch (measure_detail::hit(cells, c, event)) {
      case measure_detail::CellHit::both: t += base.cell_mass[c]; break;
      case measure_detail::CellHit::in_only: t += b.inner; break;
      case measure_detail::CellHit::out_only: t += base.cell_mass[c] - b.outer; break;
      case measure_detail::CellHit::none: break;
    }
  }
  return t;
}

/** \brief Smallest mass that can cover the event; dual to inner_measure. */
inline Rat outer_measure(const BaseCells& cells, const BaseMeasure& base,
                         const VMassProfile& profile, const RegionMask& event) {
  ensure(event.size() == cells.cell_of.size(), "shape", "event size mismatch");
  Rat t;
  for (int c = 0; c < cells.size(); ++c) {
    if (!cells.split[c]) {
      if (event[cells.members[c][0]]) t += base.cell_mass[c];
      continue;
    }
    const VBounds& b = profile.bounds.at(c);
    switch (measure_detail::hit(cells, c, event)) {
      case measure_detail::CellHit::both: t += base.cell_mass[c]; break;
      case measure_detail::CellHit::in_only: t += b.outer; break;
      case measure_detail::CellHit::out_only: t += base.cell_mass[c] - b.inner; break;
      case measure_detail::CellHit::none: break;
    }
  }
  return t;
}

/**
 * \brief Extension of the base measure that gives V as little mass as the
 *        profile allows: each V-half gets its inner bound, the partner
 *        half the remainder of the cell.
 */
inline MeasureValue lower_extension(const BaseCells& cells, const BaseMeasure& base,
                                    const VMassProfile& profile) {
  profile.validate(cells, base);
  MeasureValue m;
  m.atom_mass.assign(cells.cell_of.size(), Rat(0));
  for (int c = 0; c < cells.size(); ++c) {
    if (!cells.split[c]) {
      m.atom_mass[cells.members[c][0]] = base.cell_mass[c];
    } else {
      const VBounds& b = profile.bounds.at(c);
      m.atom_mass[cells.members[c][0]] = b.inner;
      m.atom_mass[cells.members[c][1]] = base.cell_mass[c] - b.inner;
    }
  }
  return m;
}

/** \brief Extension giving V as much mass as the profile allows. */
inline MeasureValue upper_extension(const BaseCells& cells, const BaseMeasure& base,
                                    const VMassProfile& profile) {
  profile.validate(cells, base);
  MeasureValue m;
  m.atom_mass.assign(cells.cell_of.size(), Rat(0));
  for (int c = 0; c < cells.size(); ++c) {
    if (!cells.split[c]) {
      m.atom_mass[cells.members[c][0]] = base.cell_mass[c];
    } else {
      const VBounds& b = profile.bounds.at(c);
      m.atom_mass[cells.members[c][0]] = b.outer;
      m.atom_mass[cells.members[c][1]] = base.cell_mass[c] - b.outer;
    }
  }
  return m;
}

/**
 * \brief Both extreme extensions, required to actually differ on V.
 *        If every bracket is tight the extension is unique and V is
 *        effectively measurable; that case is refused.
 */
inline std::pair<MeasureValue, MeasureValue> disagreeing_extensions(
    const BaseCells& cells, const BaseMeasure& base, const VMassProfile& profile) {
  profile.validate(cells, base);
  bool slack = false;
  for (const auto& [c, b] : profile.bounds)
    if (b.inner < b.outer) slack = true;
  ensure(slack, "measurable-V",
         "every bracket is tight: the extension is unique");
  return {lower_extension(cells, base, profile), upper_extension(cells, base, profile)};
}

/**
 * \brief Profile that spreads the requested totals over the split cells
 *        in proportion to their base mass.
 */
inline VMassProfile proportional_profile(const BaseCells& cells, const BaseMeasure& base,
                                         const Rat& inner_total, const Rat& outer_total) {
  base.validate(cells);
  Rat split_total;
  for (int c = 0; c < cells.size(); ++c)
    if (cells.split[c]) split_total += base.cell_mass[c];
  ensure(Rat(0) <= inner_total && inner_total <= outer_total && outer_total <= split_total,
         "profile-violation", "totals are not 0 <= inner <= outer <= split mass");
  VMassProfile profile;
  for (int c = 0; c < cells.size(); ++c) {
    if (!cells.split[c]) continue;
    if (split_total == Rat(0)) {
      profile.bounds[c] = {Rat(0), Rat(0)};
    } else {
      Rat share = base.cell_mass[c] / split_total;
      profile.bounds[c] = {inner_total * share, outer_total * share};
    }
  }
  return profile;
}

/** \brief Pointwise mix (1-t)*a + t*b of two measures on the same space. */
inline MeasureValue convex_combination(const MeasureValue& a, const MeasureValue& b,
                                       const Rat& t) {
  ensure(a.atom_mass.size() == b.atom_mass.size(), "shape", "measure size mismatch");
  ensure(Rat(0) <= t && t <= Rat(1), "range", "mixing weight outside [0,1]");
  MeasureValue m;
  m.atom_mass.reserve(a.atom_mass.size());
  for (std::size_t i = 0; i < a.atom_mass.size(); ++i)
    m.atom_mass.push_back(a.atom_mass[i] * (Rat(1) - t) + b.atom_mass[i] * t);
  return m;
}

}  // namespace lmpsym

#endif  // LMPSYM_MEASURE_HPP
