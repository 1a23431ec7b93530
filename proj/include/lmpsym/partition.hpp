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

#ifndef LMPSYM_PARTITION_HPP
#define LMPSYM_PARTITION_HPP

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "lmpsym/errors.hpp"

namespace lmpsym {

/** \brief Subset of regions, indexed like the owning partition's atoms. */
using RegionMask = std::vector<bool>;

inline RegionMask mask_none(std::size_t n) { return RegionMask(n, false); }
inline RegionMask mask_all(std::size_t n) { return RegionMask(n, true); }

inline RegionMask mask_of(std::size_t n, const std::vector<int>& indices) {
  RegionMask m(n, false);
  for (int i : indices) {
    ensure(i >= 0 && static_cast<std::size_t>(i) < n, "shape", "region index out of range");
    m[i] = true;
  }
  return m;
}

inline RegionMask mask_and(const RegionMask& a, const RegionMask& b) {
  RegionMask r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] && b[i];
  return r;
}

inline RegionMask mask_or(const RegionMask& a, const RegionMask& b) {
  RegionMask r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] || b[i];
  return r;
}

inline RegionMask mask_not(const RegionMask& a) {
  RegionMask r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = !a[i];
  return r;
}

inline bool mask_subset(const RegionMask& a, const RegionMask& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

inline std::size_t mask_count(const RegionMask& a) {
  std::size_t c = 0;
  for (bool b : a) c += b;
  return c;
}

inline std::vector<int> mask_indices(const RegionMask& a) {
  std::vector<int> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) out.push_back(static_cast<int>(i));
  return out;
}

/**
 * \brief Equivalence relation on regions, stored as its partition into
 *        classes. Canonical form: classes sorted ascending, ordered by
 *        their smallest member, so operator== decides relation equality.
 */
class PartitionRelation {
 public:
  PartitionRelation() = default;

  static PartitionRelation identity(int n) {
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    return from_class_ids(ids);
  }

  static PartitionRelation total(int n) {
    return from_class_ids(std::vector<int>(n, 0));
  }

  /** \brief Build from one class id per region. */
  static PartitionRelation from_class_ids(const std::vector<int>& ids) {
    PartitionRelation p;
    p.class_of_.assign(ids.size(), -1);
    std::vector<int> remap(ids.size(), -1);
    int next = 0;
    for (std::size_t r = 0; r < ids.size(); ++r) {
      int raw = ids[r];
      ensure(raw >= 0 && static_cast<std::size_t>(raw) < ids.size(), "shape",
             "class id out of range");
      if (remap[raw] < 0) {
        remap[raw] = next++;
        p.classes_.emplace_back();
      }
      p.class_of_[r] = remap[raw];
      p.classes_[remap[raw]].push_back(static_cast<int>(r));
    }
    return p;
  }

  /** \brief Build from explicit classes; they must partition 0..n-1. */
  static PartitionRelation from_classes(int n, const std::vector<std::vector<int>>& classes) {
    std::vector<int> ids(n, -1);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      ensure(!classes[c].empty(), "shape", "empty class in partition");
      for (int r : classes[c]) {
        ensure(r >= 0 && r < n, "shape", "region index out of range in partition");
        ensure(ids[r] < 0, "shape", "region appears in two classes");
        ids[r] = static_cast<int>(c);
      }
    }
    for (int r = 0; r < n; ++r)
      ensure(ids[r] >= 0, "shape", "region missing from partition");
    return from_class_ids(ids);
  }

  /**
   * \brief Symmetric pair list to a partition: reflexive-transitive closure.
   */
  static PartitionRelation from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
      return x;
    };
    for (auto [a, b] : pairs) {
      ensure(a >= 0 && a < n && b >= 0 && b < n, "shape", "pair index out of range");
      int ra = find(a), rb = find(b);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::vector<int> ids(n);
    for (int r = 0; r < n; ++r) ids[r] = find(r);
    return from_class_ids(ids);
  }

  int size() const { return static_cast<int>(class_of_.size()); }
  int num_classes() const { return static_cast<int>(classes_.size()); }
  const std::vector<std::vector<int>>& classes() const { return classes_; }
  int class_of(int r) const { return class_of_.at(r); }
  bool same(int a, int b) const { return class_of_.at(a) == class_of_.at(b); }

  RegionMask class_mask(int c) const {
    RegionMask m(class_of_.size(), false);
    for (int r : classes_.at(c)) m[r] = true;
    return m;
  }

  /** \brief True when every class of this relation sits inside a class of other. */
  bool refines(const PartitionRelation& other) const {
    ensure(size() == other.size(), "shape", "partition size mismatch");
    for (const auto& cls : classes_) {
      int target = other.class_of(cls.front());
      for (int r : cls)
        if (other.class_of(r) != target) return false;
    }
    return true;
  }

  /** \brief Finest partition coarser than both (transitive closure of the union). */
  PartitionRelation join(const PartitionRelation& other) const {
    ensure(size() == other.size(), "shape", "partition size mismatch");
    std::vector<std::pair<int, int>> pairs;
    auto add = [&pairs](const std::vector<std::vector<int>>& cs) {
      for (const auto& cls : cs)
        for (std::size_t i = 1; i < cls.size(); ++i)
          pairs.emplace_back(cls[0], cls[i]);
    };
    add(classes_);
    add(other.classes_);
    return from_pairs(size(), pairs);
  }

  /** \brief Coarsest partition finer than both (classwise intersection). */
  PartitionRelation meet(const PartitionRelation& other) const {
    ensure(size() == other.size(), "shape", "partition size mismatch");
    std::vector<std::pair<int, int>> key(size());
    for (int r = 0; r < size(); ++r) key[r] = {class_of_[r], other.class_of(r)};
    std::vector<int> ids(size());
    std::vector<std::pair<int, int>> seen;
    for (int r = 0; r < size(); ++r) {
      auto it = std::find(seen.begin(), seen.end(), key[r]);
      if (it == seen.end()) { seen.push_back(key[r]); it = std::prev(seen.end()); }
      ids[r] = static_cast<int>(it - seen.begin());
    }
    return from_class_ids(ids);
  }

  friend bool operator==(const PartitionRelation& a, const PartitionRelation& b) {
    return a.classes_ == b.classes_;
  }
  friend bool operator!=(const PartitionRelation& a, const PartitionRelation& b) {
    return !(a == b);
  }

 private:
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
};

/**
 * \brief Sub-sigma-algebra of a finite atom algebra: the family of all
 *        unions of its blocks.
 */
struct SigmaSubalgebra {
  PartitionRelation blocks;

  /** \brief True when event is a union of blocks. */
  bool contains(const RegionMask& event) const {
    ensure(static_cast<int>(event.size()) == blocks.size(), "shape",
           "event mask size mismatch");
    for (const auto& cls : blocks.classes()) {
      bool first = event[cls.front()];
      for (int r : cls)
        if (event[r] != first) return false;
    }
    return true;
  }
};

}  // namespace lmpsym

#endif  // LMPSYM_PARTITION_HPP
