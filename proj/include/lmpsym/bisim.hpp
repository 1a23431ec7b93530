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

#ifndef LMPSYM_BISIM_HPP
#define LMPSYM_BISIM_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lmpsym/errors.hpp"
#include "lmpsym/lmp.hpp"
#include "lmpsym/partition.hpp"
#include "lmpsym/rational.hpp"
#include "lmpsym/sigma.hpp"

namespace lmpsym {

/**
 * Two notions of behavioural equivalence live here. Event equivalence
 * asks for a sub-algebra of events stable under the kernels; state
 * equivalence asks for an equivalence relation whose closed events the
 * kernels cannot tell apart. On the finite symbolic presentation both
 * are computed by refinement; the certificate module handles the full
 * model where the two notions come apart.
 */

struct StabilityReport {
  struct Witness {
    int left = -1;   // two regions in one block that the event separates
    int right = -1;
    std::string label;
    RegionMask event;  // union of blocks whose kernel mass differs
    Rat threshold;     // min of the two masses: the level set cuts the block
  };

  bool stable = true;
  std::optional<Witness> witness;
};

/**
 * \brief Whether the sub-algebra is stable under every kernel: each mass
 *        function tau_a(., A) with A a union of blocks must be constant
 *        on every block. Masses are additive in A, so agreement on every
 *        single block is equivalent and is what gets checked.
 */
inline StabilityReport is_stable(const SymbolicLmp& m, const SigmaSubalgebra& sub) {
  ensure(sub.blocks.size() == m.space.size(), "shape", "subalgebra size mismatch");
  StabilityReport report;
  const auto classes = sub.blocks.classes();
  for (const auto& block : classes) {
    if (block.size() < 2) continue;
    for (std::size_t l = 0; l < m.labels.size(); ++l) {
      for (const auto& target : classes) {
        RegionMask event = mask_of(m.space.size(), target);
        Rat first = m.kernel_mass(block[0], static_cast<int>(l), event);
        for (std::size_t i = 1; i < block.size(); ++i) {
          Rat other = m.kernel_mass(block[i], static_cast<int>(l), event);
          if (other != first) {
            report.stable = false;
            report.witness = {block[0], block[i], m.labels[l], event,
                              first < other ? first : other};
            return report;
          }
        }
      }
    }
  }
  return report;
}

/**
 * \brief Coarsest stable sub-algebra, by partition refinement: starting
 *        from the whole space as one block, split blocks by the tuple of
 *        kernel masses toward the current blocks until nothing changes.
 *        Deterministic: blocks are kept in canonical order throughout.
 */
inline SigmaSubalgebra smallest_stable_algebra(const SymbolicLmp& m) {
  const int n = m.space.size();
  PartitionRelation rel = PartitionRelation::total(n);
  while (true) {
    const auto classes = rel.classes();
    std::vector<RegionMask> events;
    events.reserve(classes.size());
    for (const auto& c : classes) events.push_back(mask_of(n, c));

    std::vector<int> next_ids(n, -1);
    int next_count = 0;
    std::map<std::pair<int, std::vector<Rat>>, int> groups;
    for (int r = 0; r < n; ++r) {
      std::vector<Rat> signature;
      signature.reserve(m.labels.size() * events.size());
      for (std::size_t l = 0; l < m.labels.size(); ++l)
        for (const auto& event : events)
          signature.push_back(m.kernel_mass(r, static_cast<int>(l), event));
      auto key = std::make_pair(rel.class_of(r), std::move(signature));
      auto it = groups.find(key);
      if (it == groups.end()) it = groups.emplace(std::move(key), next_count++).first;
      next_ids[r] = it->second;
    }
    PartitionRelation next = PartitionRelation::from_class_ids(next_ids);
    if (next == rel) return SigmaSubalgebra{rel};
    rel = std::move(next);
  }
}

/** \brief Regions that no stable event separates. */
inline PartitionRelation event_bisimilarity(const SymbolicLmp& m) {
  return smallest_stable_algebra(m).blocks;
}

struct StateBisimReport {
  struct Witness {
    int left = -1;
    int right = -1;
    std::string label;
    RegionMask event;  // relation-closed event on which the two differ
  };

  bool ok = true;
  std::optional<Witness> witness;
};

/**
 * \brief Whether the relation is a bisimulation: related regions must
 *        give equal mass to every relation-closed event under every
 *        label. Closed events are unions of classes and masses are
 *        additive, so per-class agreement is checked.
 */
inline StateBisimReport check_state_bisimulation(const SymbolicLmp& m,
                                                 const PartitionRelation& rel) {
  ensure(rel.size() == m.space.size(), "shape", "relation size mismatch");
  StateBisimReport report;
  const auto classes = rel.classes();
  for (const auto& block : classes) {
    if (block.size() < 2) continue;
    for (std::size_t l = 0; l < m.labels.size(); ++l) {
      for (const auto& target : classes) {
        RegionMask event = mask_of(m.space.size(), target);
        Rat first = m.kernel_mass(block[0], static_cast<int>(l), event);
        for (std::size_t i = 1; i < block.size(); ++i) {
          if (m.kernel_mass(block[i], static_cast<int>(l), event) != first) {
            report.ok = false;
            report.witness = {block[0], block[i], m.labels[l], event};
            return report;
          }
        }
      }
    }
  }
  return report;
}

/**
 * \brief Largest bisimulation on the regions, found by repeated witness
 *        splitting: start from everything related and, while the check
 *        fails, split the offending block by the offending mass. Coded
 *        against check_state_bisimulation on purpose: it terminates in
 *        at most one split per region and every intermediate step is
 *        justified by a concrete witness.
 */
inline PartitionRelation largest_state_bisimulation(const SymbolicLmp& m) {
  const int n = m.space.size();
  PartitionRelation rel = PartitionRelation::total(n);
  while (true) {
    StateBisimReport report = check_state_bisimulation(m, rel);
    if (report.ok) return rel;
    const auto& w = *report.witness;
    int l = m.label_index(w.label);
    std::vector<int> ids(n);
    for (int r = 0; r < n; ++r) ids[r] = rel.class_of(r);
    int guilty = rel.class_of(w.left);
    std::map<Rat, int> by_mass;
    int fresh = rel.num_classes();
    for (int r = 0; r < n; ++r) {
      if (ids[r] != guilty) continue;
      Rat mass = m.kernel_mass(r, l, w.event);
      auto it = by_mass.find(mass);
      if (it == by_mass.end()) it = by_mass.emplace(mass, by_mass.empty() ? guilty : fresh++).first;
      ids[r] = it->second;
    }
    rel = PartitionRelation::from_class_ids(ids);
  }
}

/**
 * \brief Exhaustive reference: tries every partition of the regions,
 *        keeps those that pass the bisimulation check, and returns their
 *        join. Guarded to very small spaces; meant to cross-check the
 *        refinement route, not to be fast.
 */
inline PartitionRelation brute_force_largest_bisimulation(const SymbolicLmp& m) {
  const int n = m.space.size();
  ensure(n >= 1 && n <= 6, "too-many-regions",
         "exhaustive search only runs on at most 6 regions");
  PartitionRelation best = PartitionRelation::identity(n);
  // Restricted growth strings enumerate set partitions exactly once.
  std::vector<int> rgs(n, 0);
  while (true) {
    PartitionRelation candidate = PartitionRelation::from_class_ids(rgs);
    if (check_state_bisimulation(m, candidate).ok) best = best.join(candidate);
    int i = n - 1;
    for (; i > 0; --i) {
      int cap = 0;
      for (int j = 0; j < i; ++j) cap = std::max(cap, rgs[j]);
      if (rgs[i] <= cap) {
        ++rgs[i];
        for (int j = i + 1; j < n; ++j) rgs[j] = 0;
        break;
      }
    }
    if (i == 0) break;
  }
  ensure(check_state_bisimulation(m, best).ok, "shape",
         "join of bisimulations failed the bisimulation check");
  return best;
}

/** \brief Quotient process together with the projection map. */
struct QuotientResult {
  SymbolicLmp lmp;
  RegionMap projection;
};

/**
 * \brief Quotient of the process by a stable sub-algebra: one region per
 *        block, kernels evaluated at any representative (stability makes
 *        the choice immaterial). A block holding both halves of a split
 *        cell collapses to the concrete hull; a block of halves from one
 *        side keeps that side; a block mixing an unpaired half with
 *        anything else has no symbolic presentation and is refused.
 *        The quotient space is presented directly by its atoms and
 *        carries no generator list.
 */
inline QuotientResult quotient_by_subalgebra(const SymbolicLmp& m, const SigmaSubalgebra& sub) {
  {
    StabilityReport report = is_stable(m, sub);
    if (!report.stable) {
      const auto& w = *report.witness;
      fail("not-stable", "sub-algebra is not stable: regions '" + m.space.atoms[w.left].id +
                             "' and '" + m.space.atoms[w.right].id +
                             "' differ under label '" + w.label + "'");
    }
  }
  const auto classes = sub.blocks.classes();

  QuotientResult out;
  out.lmp.space.carrier = m.space.carrier;
  out.lmp.labels = m.labels;
  out.projection.to.assign(m.space.size(), -1);

  for (std::size_t b = 0; b < classes.size(); ++b) {
    const auto& block = classes[b];
    for (int r : block) out.projection.to[r] = static_cast<int>(b);

    std::map<std::string, std::vector<int>> split_by_base;  // side halves in the block
    std::vector<int> plains;
    for (int r : block) {
      const Atom& a = m.space.atoms[r];
      if (a.is_split()) split_by_base[a.base_id].push_back(r);
      else plains.push_back(r);
    }

    struct Contribution { std::string id; RegionBody body; };
    std::vector<Contribution> contributions;
    std::vector<int> lone_halves;
    for (int r : block) {
      const Atom& a = m.space.atoms[r];
      if (!a.is_split()) {
        contributions.push_back({a.id, a.body});
        continue;
      }
      const auto& mates = split_by_base[a.base_id];
      if (mates.size() == 2) {
        if (r == mates[0]) contributions.push_back({a.base_id, a.body});  // hull once
      } else {
        lone_halves.push_back(r);
        contributions.push_back({a.id, a.body});
      }
    }

    VSide side = VSide::none;
    if (!lone_halves.empty()) {
      ensure(lone_halves.size() == block.size(), "shape",
             "quotient block mixes an unpaired abstract half with other atoms");
      side = m.space.atoms[lone_halves[0]].side;
      for (int r : lone_halves)
        ensure(m.space.atoms[r].side == side, "shape", "quotient block mixes abstract sides");
    }

    Atom atom;
    RegionBody body;
    std::string id;
    for (const auto& c : contributions) {
      if (!id.empty()) id += "+";
      id += c.id;
      body = body.unite(c.body);
    }
    atom.id = id;
    atom.base_id = id;
    atom.body = std::move(body);
    atom.side = side;
    out.lmp.space.atoms.push_back(std::move(atom));
  }

  const int q = static_cast<int>(classes.size());
  out.lmp.kernel.resize(q);
  for (std::size_t b = 0; b < classes.size(); ++b) {
    int representative = classes[b][0];
    for (std::size_t l = 0; l < m.labels.size(); ++l) {
      MeasureValue mv;
      mv.atom_mass.reserve(q);
      for (const auto& target : classes)
        mv.atom_mass.push_back(
            m.kernel_mass(representative, static_cast<int>(l), mask_of(m.space.size(), target)));
      out.lmp.kernel[b].push_back(std::move(mv));
    }
  }
  return out;
}

/** \brief Disagreement blocking a common refinement of the two legs. */
struct Obstruction {
  int region = -1;          // paired region (same index in both processes)
  std::string label;
  RegionMask witness_event;  // event of the shared space the kernels disagree on
  Rat left_value;
  Rat right_value;
  std::string note;
};

/** \brief A cospan of processes: two legs onto a common target. */
struct CospanBundle {
  SymbolicLmp left;
  SymbolicLmp right;
  SymbolicLmp target;
  RegionMap left_leg;
  RegionMap right_leg;
};

/**
 * \brief Decides whether the cospan admits a common refinement: a process
 *        mapping onto both legs compatibly with the target. Only
 *        identity-carried cospans are handled: the two side processes
 *        must share one space, and each leg must send every atom to the
 *        target atom it concretely is (its hull). For these, a common
 *        refinement exists exactly when the paired kernels agree, so any
 *        disagreement event is an obstruction; the abstract event V is
 *        preferred as the reported witness, then a single atom.
 */
inline std::optional<Obstruction> semipullback_obstruction(const CospanBundle& cospan) {
  ensure(cospan.left.space.atoms.size() == cospan.right.space.atoms.size(), "unsupported-cospan",
         "side processes have different region counts");
  for (int i = 0; i < cospan.left.space.size(); ++i)
    ensure(cospan.left.space.atoms[i].id == cospan.right.space.atoms[i].id, "unsupported-cospan",
           "side processes are not over one shared space");
  ensure(cospan.left_leg.to == cospan.right_leg.to, "unsupported-cospan",
         "legs do not pair regions identically");
  for (int i = 0; i < cospan.left.space.size(); ++i) {
    int t = cospan.left_leg.to[i];
    ensure(t >= 0 && t < cospan.target.space.size(), "unsupported-cospan",
           "leg target out of range");
    ensure(cospan.target.space.atoms[t].id == cospan.left.space.atoms[i].base_id,
           "unsupported-cospan",
           "leg does not carry atom '" + cospan.left.space.atoms[i].id + "' to its hull");
  }
  {
    ZigzagReport l = check_zigzag(cospan.left_leg, cospan.left, cospan.target);
    ensure(l.ok, "unsupported-cospan",
           "left leg is not a morphism: " + (l.notes.empty() ? "" : l.notes.back()));
    ZigzagReport r = check_zigzag(cospan.right_leg, cospan.right, cospan.target);
    ensure(r.ok, "unsupported-cospan",
           "right leg is not a morphism: " + (r.notes.empty() ? "" : r.notes.back()));
  }

  const int n = cospan.left.space.size();
  RegionMask v = cospan.left.space.v_mask();
  for (int r = 0; r < n; ++r) {
    for (std::size_t l = 0; l < cospan.left.labels.size(); ++l) {
      const MeasureValue& a = cospan.left.kernel[r][l];
      const MeasureValue& b = cospan.right.kernel[r][l];
      if (a == b) continue;
      Obstruction obstruction;
      obstruction.region = r;
      obstruction.label = cospan.left.labels[l];
      Rat va = a.of(v), vb = b.of(v);
      if (va != vb) {
        obstruction.witness_event = v;
        obstruction.left_value = va;
        obstruction.right_value = vb;
        obstruction.note = "kernels from region '" + cospan.left.space.atoms[r].id +
                           "' disagree on the abstract event";
      } else {
        for (int i = 0; i < n; ++i) {
          if (a.atom_mass[i] == b.atom_mass[i]) continue;
          RegionMask e(n, false);
          e[i] = true;
          obstruction.witness_event = e;
          obstruction.left_value = a.atom_mass[i];
          obstruction.right_value = b.atom_mass[i];
          obstruction.note = "kernels from region '" + cospan.left.space.atoms[r].id +
                             "' disagree on atom '" + cospan.left.space.atoms[i].id + "'";
          break;
        }
      }
      return obstruction;
    }
  }
  return std::nullopt;
}

}  // namespace lmpsym

#endif  // LMPSYM_BISIM_HPP
