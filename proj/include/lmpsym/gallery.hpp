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

#ifndef LMPSYM_GALLERY_HPP
#define LMPSYM_GALLERY_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lmpsym/bisim.hpp"
#include "lmpsym/certificate.hpp"
#include "lmpsym/enumeration.hpp"
#include "lmpsym/errors.hpp"
#include "lmpsym/lmp.hpp"
#include "lmpsym/measure.hpp"
#include "lmpsym/sigma.hpp"

namespace lmpsym {

/**
 * Ready-made processes. The central one is a family of truncations of
 * the separating example: an interval of anonymous states that all jump
 * to a sink x, watched through finitely many interval generators, plus
 * two probes s and t that move onto the interval part by the two extreme
 * extensions of length measure. The extensions agree on every concrete
 * event and differ only on the abstract event V, which no finite
 * truncation can see; the certificate module handles the full model.
 */
struct GalleryConfig {
  int n_generators = 2;
  bool dyadic = false;  // dyadic ladder instead of the enumeration order
  Rat inner_total = Rat(0);
  Rat outer_total = Rat(1);
  // Per-hull V-mass brackets; defaults to totals spread proportionally.
  std::optional<std::map<std::string, VBounds>> profile_by_cell;
  bool validate = true;
};

namespace gallery_detail {

inline std::vector<Generator> interval_generators(const GalleryConfig& config) {
  ensure(config.n_generators >= 1, "range", "at least one generator is required");
  std::vector<Generator> gens;
  if (!config.dyadic) {
    for (int i = 0; i < config.n_generators; ++i)
      gens.push_back(Generator{"B" + std::to_string(i), IntervalSet(interval_by_index(Int(i)))});
    return gens;
  }
  int level = 1;
  while (static_cast<int>(gens.size()) < config.n_generators) {
    Int den = Int(1) << level;
    for (Int j = 0; j < den && static_cast<int>(gens.size()) < config.n_generators; ++j) {
      Interval piece = Interval::open(Rat(j, den), Rat(j + 1, den));
      gens.push_back(Generator{"B" + std::to_string(gens.size()), IntervalSet{{piece}}});
    }
    ++level;
  }
  return gens;
}

/** \brief V-split interval space the truncations share. */
inline AtomPartition split_interval_space(const GalleryConfig& config) {
  AtomPartition base = sigma_closure(Carrier::interval(), interval_generators(config));
  return extend_by_abstract_set(base, "V");
}

inline MeasureValue zero_measure(int n) {
  MeasureValue m;
  m.atom_mass.assign(n, Rat(0));
  return m;
}

inline MeasureValue dirac(int n, int atom) {
  MeasureValue m = zero_measure(n);
  m.atom_mass[atom] = Rat(1);
  return m;
}

/** \brief Length of every hull, zero on discrete cells. */
inline BaseMeasure length_measure(const AtomPartition& space, const BaseCells& cells) {
  BaseMeasure base;
  for (int c = 0; c < cells.size(); ++c) {
    const Atom& a = space.atoms[cells.members[c][0]];
    base.cell_mass.push_back(a.body.interval_length());
  }
  return base;
}

inline VMassProfile resolve_profile(const GalleryConfig& config, const BaseCells& cells,
                                    const BaseMeasure& base) {
  if (!config.profile_by_cell)
    return proportional_profile(cells, base, config.inner_total, config.outer_total);
  VMassProfile profile;
  for (const auto& [id, bounds] : *config.profile_by_cell) {
    int c = cells.index_of(id);
    ensure(c >= 0, "profile-violation", "profile names unknown cell '" + id + "'");
    profile.bounds[c] = bounds;
  }
  profile.validate(cells, base);
  return profile;
}

inline std::vector<std::string> truncation_labels(const GalleryConfig& config) {
  std::vector<std::string> labels;
  for (int i = 0; i < config.n_generators; ++i) labels.push_back(std::to_string(i));
  labels.push_back("inf");
  return labels;
}

/** \brief Generator-membership kernels: label i jumps to x inside B_i. */
inline void fill_interval_kernels(SymbolicLmp& m, int n_generators, const std::string& sink) {
  const int n = m.space.size();
  const int x = m.space.atom_of_point(sink);
  for (int r = 0; r < n; ++r) {
    m.kernel[r].assign(m.labels.size(), zero_measure(n));
    const auto& sig = m.space.atoms[r].signature;
    for (int i = 0; i < n_generators; ++i)
      if (i < static_cast<int>(sig.size()) && sig[i]) m.kernel[r][i] = dirac(n, x);
  }
}

inline void validate_truncation(const SymbolicLmp& m, const GalleryConfig& config,
                                const std::vector<std::string>& probes) {
  if (!config.validate) return;
  require_well_formed(m);
  int inf = m.label_index("inf");
  for (const auto& probe : probes) {
    int r = m.space.atom_of_point(probe);
    ensure(m.kernel[r][inf].total() == Rat(1), "shape",
           "probe '" + probe + "' does not move with mass 1 under 'inf'");
  }
}

}  // namespace gallery_detail

/**
 * \brief The truncated separating example: split interval part plus the
 *        probes s, t and the sink x. Labels "0".."n-1" test generator
 *        membership; "inf" moves s by the lower and t by the upper
 *        extension of length measure.
 */
inline SymbolicLmp build_s3(const GalleryConfig& config = {}) {
  SymbolicLmp m;
  m.space = sum_spaces(gallery_detail::split_interval_space(config),
                       discrete_space({"s", "t", "x"}));
  m.labels = gallery_detail::truncation_labels(config);
  m.kernel.resize(m.space.size());
  gallery_detail::fill_interval_kernels(m, config.n_generators, "x");

  BaseCells cells = base_cells(m.space);
  BaseMeasure base = gallery_detail::length_measure(m.space, cells);
  VMassProfile profile = gallery_detail::resolve_profile(config, cells, base);
  profile.validate(cells, base);
  int inf = m.label_index("inf");
  m.kernel[m.space.atom_of_point("s")][inf] = lower_extension(cells, base, profile);
  m.kernel[m.space.atom_of_point("t")][inf] = upper_extension(cells, base, profile);

  gallery_detail::validate_truncation(m, config, {"s", "t"});
  return m;
}

/**
 * \brief The truncation with one probe removed; built from its own
 *        definition so it serializes like any other space. Only the
 *        probes can be dropped.
 */
inline SymbolicLmp build_s3_minus(const GalleryConfig& config, const std::string& dropped) {
  ensure(dropped == "s" || dropped == "t", "unsupported",
         "only a probe can be dropped; '" + dropped + "' is not one");
  const std::string kept = dropped == "s" ? "t" : "s";
  SymbolicLmp m;
  m.space = sum_spaces(gallery_detail::split_interval_space(config),
                       discrete_space({kept, "x"}));
  m.labels = gallery_detail::truncation_labels(config);
  m.kernel.resize(m.space.size());
  gallery_detail::fill_interval_kernels(m, config.n_generators, "x");

  BaseCells cells = base_cells(m.space);
  BaseMeasure base = gallery_detail::length_measure(m.space, cells);
  VMassProfile profile = gallery_detail::resolve_profile(config, cells, base);
  int inf = m.label_index("inf");
  m.kernel[m.space.atom_of_point(kept)][inf] =
      kept == "s" ? lower_extension(cells, base, profile)
                  : upper_extension(cells, base, profile);

  gallery_detail::validate_truncation(m, config, {kept});
  return m;
}

/**
 * \brief The unsplit companion: no abstract event, one probe t moving by
 *        plain length measure. Same labels as the truncations, so the
 *        hull map from a truncation into it can be a morphism.
 */
inline SymbolicLmp build_T(const GalleryConfig& config = {}) {
  SymbolicLmp m;
  m.space = sum_spaces(
      sigma_closure(Carrier::interval(), gallery_detail::interval_generators(config)),
      discrete_space({"t", "x"}));
  m.labels = gallery_detail::truncation_labels(config);
  m.kernel.resize(m.space.size());
  gallery_detail::fill_interval_kernels(m, config.n_generators, "x");

  MeasureValue lengths;
  for (const auto& atom : m.space.atoms)
    lengths.atom_mass.push_back(atom.body.interval_length());
  m.kernel[m.space.atom_of_point("t")][m.label_index("inf")] = std::move(lengths);

  gallery_detail::validate_truncation(m, config, {"t"});
  return m;
}

/** \brief The unsplit companion with its probe renamed to tp. */
inline SymbolicLmp build_Tprime(const GalleryConfig& config = {}) {
  SymbolicLmp m;
  m.space = sum_spaces(
      sigma_closure(Carrier::interval(), gallery_detail::interval_generators(config)),
      discrete_space({"tp", "x"}));
  m.labels = gallery_detail::truncation_labels(config);
  m.kernel.resize(m.space.size());
  gallery_detail::fill_interval_kernels(m, config.n_generators, "x");

  MeasureValue lengths;
  for (const auto& atom : m.space.atoms)
    lengths.atom_mass.push_back(atom.body.interval_length());
  m.kernel[m.space.atom_of_point("tp")][m.label_index("inf")] = std::move(lengths);

  gallery_detail::validate_truncation(m, config, {"tp"});
  return m;
}

/**
 * \brief Map sending every atom to its concrete hull in the destination:
 *        split halves to their base cell, everything else to the atom
 *        with the same id, after applying the explicit renames.
 */
inline RegionMap hull_map(const SymbolicLmp& src, const SymbolicLmp& dst,
                          const std::map<std::string, std::string>& renames = {}) {
  RegionMap f;
  for (const auto& atom : src.space.atoms) {
    std::string want = atom.is_split() ? atom.base_id : atom.id;
    auto it = renames.find(want);
    if (it != renames.end()) want = it->second;
    int d = dst.space.index_of(want);
    ensure(d >= 0, "shape", "destination has no atom '" + want + "'");
    f.to.push_back(d);
  }
  return f;
}

/** \brief The three-way sum with the mediating copy, plus its relation. */
struct SumExample {
  SymbolicLmp lmp;
  PartitionRelation relation;
};

/**
 * \brief Sum of both one-probe truncations and the renamed unsplit
 *        companion, with the relation that pools, for every hull, both
 *        halves in both truncations with the hull in the companion, and
 *        pools the probes and the sinks. The relation is a bisimulation
 *        on the sum: the probes agree on every pooled event because the
 *        extensions agree on every concrete event.
 */
inline SumExample build_sum_example(const GalleryConfig& config = {}) {
  SymbolicLmp minus_t = build_s3_minus(config, "t");
  SymbolicLmp minus_s = build_s3_minus(config, "s");
  SymbolicLmp companion = build_Tprime(config);

  SumExample out;
  out.lmp = lmp_sum_tagged({{"0", minus_t}, {"1", minus_s}, {"2", companion}});

  const AtomPartition& space = out.lmp.space;
  std::map<std::string, std::vector<std::string>> pools;  // pool key -> atom ids
  for (const auto& atom : space.atoms) {
    auto colon = atom.id.find(':');
    ensure(colon != std::string::npos, "shape", "sum atom id lacks a component tag");
    std::string tag = atom.id.substr(0, colon);
    std::string rest = atom.base_id.substr(colon + 1);  // hull id inside the component
    std::string key;
    if (atom.body.points.empty()) {
      key = "cell " + rest;  // hull ids agree across the three components
    } else if (rest == "{x}") {
      key = "sink";
    } else {
      key = "probe";
    }
    pools[key].push_back(atom.id);
  }
  std::vector<std::vector<std::string>> classes;
  for (const auto& [key, ids] : pools) classes.push_back(ids);

  std::vector<std::vector<int>> index_classes;
  for (const auto& ids : classes) {
    std::vector<int> members;
    for (const auto& id : ids) members.push_back(space.index_of(id));
    index_classes.push_back(std::move(members));
  }
  out.relation = PartitionRelation::from_classes(space.size(), index_classes);
  return out;
}

/**
 * \brief Independent shape test for events of the three-way sum: the
 *        event must take the same set of hulls in all three components,
 *        whole (both halves) wherever the component is split, and must
 *        take the probes all-or-none and the sinks all-or-none.
 */
inline bool sum_example_shape(const SymbolicLmp& sum, const RegionMask& event) {
  ensure(event.size() == sum.space.atoms.size(), "shape", "event size mismatch");
  std::map<std::string, std::map<std::string, std::vector<bool>>> hull_hits;  // tag -> hull -> bits
  bool probe_in = false, probe_out = false;
  bool sink_in = false, sink_out = false;
  for (int i = 0; i < sum.space.size(); ++i) {
    const Atom& atom = sum.space.atoms[i];
    auto colon = atom.id.find(':');
    if (colon == std::string::npos) return false;
    std::string tag = atom.id.substr(0, colon);
    std::string rest = atom.base_id.substr(colon + 1);
    if (atom.body.points.empty()) {
      hull_hits[tag][rest].push_back(event[i]);
    } else if (rest == "{x}") {
      (event[i] ? sink_in : sink_out) = true;
    } else {
      (event[i] ? probe_in : probe_out) = true;
    }
  }
  if (probe_in && probe_out) return false;
  if (sink_in && sink_out) return false;
  if (hull_hits.size() != 3) return false;
  std::map<std::string, std::vector<std::string>> chosen;  // tag -> hulls fully inside
  for (const auto& [tag, hulls] : hull_hits) {
    chosen[tag];
    for (const auto& [hull, bits] : hulls) {
      bool all = true, any = false;
      for (bool b : bits) {
        all = all && b;
        any = any || b;
      }
      if (any && !all) return false;  // a half without its partner
      if (all) chosen[tag].push_back(hull);
    }
  }
  const auto& first = chosen.begin()->second;
  for (const auto& [tag, hulls] : chosen)
    if (hulls != first) return false;
  return true;
}

/**
 * \brief The cospan whose common refinement the disagreement on V rules
 *        out: one shared split space carrying the two extreme extensions
 *        from the state {0}, over the unsplit target carrying plain
 *        length measure. Every other state jumps to {0}.
 */
inline CospanBundle build_obstruction_cospan(const GalleryConfig& config = {}) {
  std::vector<Generator> gens;
  gens.push_back(Generator{"origin", std::vector<std::string>{"0"}});
  for (const auto& g : gallery_detail::interval_generators(config)) gens.push_back(g);

  Carrier carrier = Carrier::interval_with_points({"0", "1"});
  AtomPartition target_space = sigma_closure(carrier, gens);
  AtomPartition side_space =
      extend_by_abstract_set(target_space, "V", target_space.interval_atom_indices());

  auto make_side = [&side_space](const MeasureValue& from_origin) {
    SymbolicLmp m;
    m.space = side_space;
    m.labels = {"a"};
    const int n = m.space.size();
    const int origin = m.space.atom_of_point("0");
    m.kernel.resize(n);
    for (int r = 0; r < n; ++r)
      m.kernel[r].push_back(r == origin ? from_origin : gallery_detail::dirac(n, origin));
    return m;
  };

  BaseCells cells = base_cells(side_space);
  BaseMeasure base = gallery_detail::length_measure(side_space, cells);
  VMassProfile profile = gallery_detail::resolve_profile(config, cells, base);
  profile.validate(cells, base);

  CospanBundle cospan;
  cospan.left = make_side(lower_extension(cells, base, profile));
  cospan.right = make_side(upper_extension(cells, base, profile));

  {
    SymbolicLmp m;
    m.space = target_space;
    m.labels = {"a"};
    const int n = m.space.size();
    const int origin = m.space.atom_of_point("0");
    MeasureValue lengths;
    for (const auto& atom : m.space.atoms)
      lengths.atom_mass.push_back(atom.body.interval_length());
    m.kernel.resize(n);
    for (int r = 0; r < n; ++r)
      m.kernel[r].push_back(r == origin ? lengths : gallery_detail::dirac(n, origin));
    cospan.target = std::move(m);
  }

  cospan.left_leg = hull_map(cospan.left, cospan.target);
  cospan.right_leg = hull_map(cospan.right, cospan.target);
  if (config.validate) {
    require_well_formed(cospan.left);
    require_well_formed(cospan.right);
    require_well_formed(cospan.target);
  }
  return cospan;
}

/** \brief Descriptor of the untruncated model behind build_s3. */
inline FullModelDescriptor full_s3_descriptor(const GalleryConfig& config = {}) {
  FullModelDescriptor model;
  model.kind = ModelKind::s3;
  model.inner_total = config.inner_total;
  model.outer_total = config.outer_total;
  model.enumeration_id = kEnumerationId;
  return model;
}

/** \brief Descriptor of the untruncated pair sum of one-probe models. */
inline FullModelDescriptor full_pair_sum_descriptor(const GalleryConfig& config = {}) {
  FullModelDescriptor model;
  model.kind = ModelKind::pair_sum;
  model.inner_total = config.inner_total;
  model.outer_total = config.outer_total;
  model.enumeration_id = kEnumerationId;
  return model;
}

}  // namespace lmpsym

#endif  // LMPSYM_GALLERY_HPP
