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

#ifndef LMPSYM_LMP_HPP
#define LMPSYM_LMP_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "lmpsym/errors.hpp"
#include "lmpsym/measure.hpp"
#include "lmpsym/rational.hpp"
#include "lmpsym/sigma.hpp"

namespace lmpsym {

/**
 * Labelled Markov processes in symbolic form. States are the points of
 * the space; the transition kernel for each label is constant on every
 * atom, so one subprobability measure per (atom, label) describes the
 * whole process. Measurability of the kernel is structural: every value
 * it takes on an event is a finite sum of atom masses.
 */
struct SymbolicLmp {
  AtomPartition space;
  std::vector<std::string> labels;
  std::vector<std::vector<MeasureValue>> kernel;  // [region][label]

  int num_regions() const { return space.size(); }

  int find_label(const std::string& name) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == name) return static_cast<int>(i);
    return -1;
  }

  int label_index(const std::string& name) const {
    int i = find_label(name);
    ensure(i >= 0, "label-mismatch", "unknown label '" + name + "'");
    return i;
  }

  const MeasureValue& tau(int region, int label) const {
    ensure(region >= 0 && region < num_regions(), "shape", "region index out of range");
    ensure(label >= 0 && label < static_cast<int>(labels.size()), "shape",
           "label index out of range");
    return kernel[region][label];
  }

  /** \brief Kernel mass tau_label(region, event). */
  Rat kernel_mass(int region, int label, const RegionMask& event) const {
    return tau(region, label).of(event);
  }
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> problems;
  std::vector<Rat> achieved_values;  // distinct kernel masses and row totals

  void add(const std::string& p) {
    ok = false;
    problems.push_back(p);
  }
};

/**
 * \brief Structural checks: dimensions, nonnegative masses, subprobability
 *        rows; optionally that every row has mass exactly one. Reports
 *        instead of throwing so callers can show all problems at once.
 */
inline ValidationReport validate_lmp(const SymbolicLmp& m, bool require_probability_rows = false) {
  ValidationReport report;
  const int n = m.space.size();
  if (n == 0) report.add("space has no atoms");
  {
    std::vector<std::string> sorted = m.labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      report.add("duplicate label name");
  }
  if (static_cast<int>(m.kernel.size()) != n) {
    report.add("kernel has " + std::to_string(m.kernel.size()) + " rows for " +
               std::to_string(n) + " regions");
    return report;
  }
  for (int r = 0; r < n; ++r) {
    if (m.kernel[r].size() != m.labels.size()) {
      report.add("region '" + m.space.atoms[r].id + "' has a kernel entry per " +
                 std::to_string(m.kernel[r].size()) + " labels, expected " +
                 std::to_string(m.labels.size()));
      continue;
    }
    for (std::size_t l = 0; l < m.labels.size(); ++l) {
      const MeasureValue& mv = m.kernel[r][l];
      if (static_cast<int>(mv.atom_mass.size()) != n) {
        report.add("kernel entry (" + m.space.atoms[r].id + ", " + m.labels[l] +
                   ") has wrong measure size");
        continue;
      }
      bool negative = false;
      for (const auto& mass : mv.atom_mass) {
        if (mass < Rat(0)) negative = true;
        report.achieved_values.push_back(mass);
      }
      if (negative)
        report.add("kernel entry (" + m.space.atoms[r].id + ", " + m.labels[l] +
                   ") has negative mass");
      Rat total = mv.total();
      report.achieved_values.push_back(total);
      if (total > Rat(1))
        report.add("kernel row (" + m.space.atoms[r].id + ", " + m.labels[l] +
                   ") has mass " + total.str() + " > 1");
      else if (require_probability_rows && total != Rat(1))
        report.add("kernel row (" + m.space.atoms[r].id + ", " + m.labels[l] +
                   ") has mass " + total.str() + " != 1");
    }
  }
  std::sort(report.achieved_values.begin(), report.achieved_values.end());
  report.achieved_values.erase(
      std::unique(report.achieved_values.begin(), report.achieved_values.end()),
      report.achieved_values.end());
  return report;
}

inline void require_well_formed(const SymbolicLmp& m, bool require_probability_rows = false) {
  ValidationReport report = validate_lmp(m, require_probability_rows);
  ensure(report.ok, "shape", report.problems.empty() ? "malformed process" : report.problems[0]);
}

/**
 * \brief Direct sum of two processes over the same label sequence: the
 *        space is the sum, and no mass crosses between the summands.
 */
inline SymbolicLmp lmp_sum(const SymbolicLmp& a, const SymbolicLmp& b) {
  ensure(a.labels == b.labels, "label-mismatch", "summands have different label sequences");
  SymbolicLmp out;
  out.space = sum_spaces(a.space, b.space);
  out.labels = a.labels;
  const int an = a.space.size(), bn = b.space.size();
  out.kernel.resize(out.space.size());
  for (int r = 0; r < an; ++r) {
    for (std::size_t l = 0; l < out.labels.size(); ++l) {
      MeasureValue mv = a.kernel[r][l];
      mv.atom_mass.resize(an + bn, Rat(0));
      out.kernel[r].push_back(std::move(mv));
    }
  }
  for (int r = 0; r < bn; ++r) {
    for (std::size_t l = 0; l < out.labels.size(); ++l) {
      MeasureValue mv;
      mv.atom_mass.assign(an + bn, Rat(0));
      for (int i = 0; i < bn; ++i) mv.atom_mass[an + i] = b.kernel[r][l].atom_mass[i];
      out.kernel[an + r].push_back(std::move(mv));
    }
  }
  return out;
}

/** \brief Tagged sum of processes; labels stay untagged and must agree. */
inline SymbolicLmp lmp_sum_tagged(const std::vector<std::pair<std::string, SymbolicLmp>>& parts) {
  ensure(!parts.empty(), "shape", "empty tagged sum");
  std::optional<SymbolicLmp> acc;
  for (const auto& [tag, m] : parts) {
    SymbolicLmp tagged;
    tagged.space = retag(m.space, tag);
    tagged.labels = m.labels;
    tagged.kernel = m.kernel;
    acc = acc ? lmp_sum(*acc, tagged) : std::move(tagged);
  }
  AtomPartition joined_space;
  {
    std::vector<std::pair<std::string, AtomPartition>> spaces;
    for (const auto& [tag, m] : parts) spaces.emplace_back(tag, m.space);
    joined_space = sum_spaces_tagged(spaces);  // rebuilt for its recipe
  }
  acc->space = std::move(joined_space);
  return std::move(*acc);
}

/** \brief Map of regions: src atom index -> dst atom index. */
struct RegionMap {
  std::vector<int> to;

  int size() const { return static_cast<int>(to.size()); }
};

/** \brief Composite map applying f first, then g. */
inline RegionMap compose(const RegionMap& f, const RegionMap& g) {
  RegionMap h;
  h.to.reserve(f.to.size());
  for (int i : f.to) {
    ensure(i >= 0 && i < g.size(), "shape", "map composition size mismatch");
    h.to.push_back(g.to[i]);
  }
  return h;
}

/** \brief Preimage event f^{-1}(Q). */
inline RegionMask preimage(const RegionMap& f, const RegionMask& q) {
  RegionMask m(f.to.size(), false);
  for (std::size_t i = 0; i < f.to.size(); ++i) {
    ensure(f.to[i] >= 0 && f.to[i] < static_cast<int>(q.size()), "shape",
           "map target out of range");
    m[i] = q[f.to[i]];
  }
  return m;
}

struct ZigzagReport {
  struct Violation {
    int src_region = -1;
    std::string label;
    int dst_atom = -1;
    Rat lhs;  // tau_src(region, preimage of the atom)
    Rat rhs;  // tau_dst(image region, atom)
  };

  bool ok = true;
  std::vector<std::string> notes;
  std::optional<Violation> violation;
};

/**
 * \brief Checks that f carries src onto dst as a process morphism:
 *        surjective on regions, and for every region r, label a and
 *        destination event Q, tau_src(r, f^{-1}(Q)) = tau_dst(f(r), Q).
 *        Both sides are additive in Q, so per-atom agreement suffices and
 *        is what gets checked. Preimages of events are unions of atoms by
 *        construction, which settles measurability of f.
 */
inline ZigzagReport check_zigzag(const RegionMap& f, const SymbolicLmp& src,
                                 const SymbolicLmp& dst) {
  ensure(f.size() == src.space.size(), "shape", "map domain size mismatch");
  for (int i : f.to)
    ensure(i >= 0 && i < dst.space.size(), "shape", "map target out of range");
  ensure(src.labels == dst.labels, "label-mismatch",
         "morphism endpoints have different label sequences");

  ZigzagReport report;
  report.notes.push_back("preimages of events are unions of atoms: map is measurable");

  std::vector<bool> hit(dst.space.size(), false);
  for (int i : f.to) hit[i] = true;
  for (int d = 0; d < dst.space.size(); ++d) {
    if (!hit[d]) {
      report.ok = false;
      report.notes.push_back("not surjective: atom '" + dst.space.atoms[d].id +
                             "' has no preimage");
      return report;
    }
  }

  std::vector<RegionMask> pre(dst.space.size());
  for (int d = 0; d < dst.space.size(); ++d) {
    RegionMask q(dst.space.size(), false);
    q[d] = true;
    pre[d] = preimage(f, q);
  }

  for (int r = 0; r < src.space.size(); ++r) {
    for (std::size_t l = 0; l < src.labels.size(); ++l) {
      for (int d = 0; d < dst.space.size(); ++d) {
        Rat lhs = src.kernel_mass(r, static_cast<int>(l), pre[d]);
        RegionMask q(dst.space.size(), false);
        q[d] = true;
        Rat rhs = dst.kernel_mass(f.to[r], static_cast<int>(l), q);
        if (lhs != rhs) {
          report.ok = false;
          report.violation = {r, src.labels[l], d, lhs, rhs};
          report.notes.push_back(
              "kernel equation fails at region '" + src.space.atoms[r].id + "', label '" +
              src.labels[l] + "', event '" + dst.space.atoms[d].id + "': " + lhs.str() +
              " != " + rhs.str());
          return report;
        }
      }
    }
  }
  return report;
}

}  // namespace lmpsym

#endif  // LMPSYM_LMP_HPP
