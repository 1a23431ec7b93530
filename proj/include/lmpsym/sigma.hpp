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

#ifndef LMPSYM_SIGMA_HPP
#define LMPSYM_SIGMA_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "lmpsym/errors.hpp"
#include "lmpsym/intervals.hpp"
#include "lmpsym/partition.hpp"
#include "lmpsym/rational.hpp"

namespace lmpsym {

/**
 * Finitely generated measurable spaces, represented by their atom
 * partitions. A space's ground set is a carrier (interval copies plus
 * named discrete points); its algebra is generated by finitely many
 * concrete generator sets and at most one abstract set per extension,
 * and is presented as the finite partition into minterm atoms. Every
 * event of the algebra is a union of atoms.
 */

inline std::string qualify(const std::string& tag, const std::string& name) {
  return tag.empty() ? name : tag + ":" + name;
}

struct CarrierPart {
  std::string tag;  // "" for the unsummed base copy
  bool has_interval = false;
  std::vector<std::string> points;  // bare names, unique within the part

  friend bool operator==(const CarrierPart&, const CarrierPart&) = default;
};

struct Carrier {
  std::vector<CarrierPart> parts;

  static Carrier interval() {
    Carrier c;
    c.parts.push_back({"", true, {}});
    return c;
  }
  static Carrier discrete(std::vector<std::string> points) {
    Carrier c;
    c.parts.push_back({"", false, std::move(points)});
    return c;
  }
  static Carrier interval_with_points(std::vector<std::string> points) {
    Carrier c;
    c.parts.push_back({"", true, std::move(points)});
    return c;
  }

  bool empty() const {
    for (const auto& p : parts)
      if (p.has_interval || !p.points.empty()) return false;
    return true;
  }

  void validate() const {
    ensure(!empty(), "shape", "carrier has no nonempty part");
    std::set<std::string> tags, names;
    for (const auto& p : parts) {
      ensure(tags.insert(p.tag).second, "name-collision", "duplicate carrier tag '" + p.tag + "'");
      for (const auto& n : p.points) {
        ensure(!n.empty(), "shape", "empty point name");
        ensure(n.find(':') == std::string::npos, "shape",
               "point name '" + n + "' may not contain ':'");
        ensure(names.insert(qualify(p.tag, n)).second, "name-collision",
               "duplicate point name '" + qualify(p.tag, n) + "'");
      }
    }
  }

  friend bool operator==(const Carrier&, const Carrier&) = default;
};

/**
 * \brief Concrete extent of a region: interval pieces per carrier copy
 *        plus a set of qualified discrete points.
 */
struct RegionBody {
  std::map<std::string, IntervalSet> intervals;  // tag -> set; no empty entries kept
  std::set<std::string> points;                  // qualified names

  bool empty() const { return intervals.empty() && points.empty(); }

  Rat interval_length() const {
    Rat total;
    for (const auto& [tag, set] : intervals) total += set.length();
    return total;
  }

  RegionBody intersect(const RegionBody& o) const {
    RegionBody r;
    for (const auto& [tag, set] : intervals) {
      auto it = o.intervals.find(tag);
      if (it == o.intervals.end()) continue;
      IntervalSet s = set.intersect(it->second);
      if (!s.is_empty()) r.intervals.emplace(tag, std::move(s));
    }
    for (const auto& p : points)
      if (o.points.count(p)) r.points.insert(p);
    return r;
  }

  RegionBody unite(const RegionBody& o) const {
    RegionBody r = *this;
    for (const auto& [tag, set] : o.intervals) {
      auto it = r.intervals.find(tag);
      if (it == r.intervals.end()) r.intervals.emplace(tag, set);
      else it->second = it->second.unite(set);
    }
    r.points.insert(o.points.begin(), o.points.end());
    return r;
  }

  RegionBody subtract(const RegionBody& o) const {
    RegionBody r;
    for (const auto& [tag, set] : intervals) {
      auto it = o.intervals.find(tag);
      IntervalSet s = it == o.intervals.end() ? set : set.subtract(it->second);
      if (!s.is_empty()) r.intervals.emplace(tag, std::move(s));
    }
    for (const auto& p : points)
      if (!o.points.count(p)) r.points.insert(p);
    return r;
  }

  std::string str() const {
    std::string s;
    auto append = [&s](const std::string& chunk) {
      if (!s.empty()) s += "+";
      s += chunk;
    };
    for (const auto& [tag, set] : intervals) {
      append(tag.empty() ? set.str() : tag + ":" + set.str());
    }
    if (!points.empty()) {
      std::string chunk = "{";
      bool first = true;
      for (const auto& p : points) {
        if (!first) chunk += ",";
        chunk += p;
        first = false;
      }
      chunk += "}";
      append(chunk);
    }
    return s;
  }

  friend bool operator==(const RegionBody&, const RegionBody&) = default;
};

/** \brief Which half of the abstract split an atom is, if any. */
enum class VSide { none, in_v, out_v };

/**
 * \brief One minterm atom. For split atoms the body records the concrete
 *        hull (the parent cell); the side flag tells which half this is.
 */
struct Atom {
  std::string id;
  std::string base_id;  // hull id; equals id for unsplit atoms
  std::vector<bool> signature;
  RegionBody body;
  VSide side = VSide::none;

  bool is_split() const { return side != VSide::none; }
  bool is_discrete() const { return body.intervals.empty(); }

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct AbstractMark {
  friend bool operator==(const AbstractMark&, const AbstractMark&) = default;
};

/** \brief Generator body: interval union, point set, or abstract marker. */
using GeneratorBody = std::variant<IntervalSet, std::vector<std::string>, AbstractMark>;

struct Generator {
  std::string name;
  GeneratorBody body;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/**
 * \brief Serializable construction recipe for a space: either a leaf
 *        (carrier + generators + optional abstract extension) or a sum
 *        of tagged children. Builders attach it so spaces round-trip
 *        through files byte for byte.
 */
struct SpaceRecipe {
  // Leaf form.
  std::optional<Carrier> carrier;
  std::vector<Generator> generators;
  std::optional<std::string> abstract_symbol;
  std::optional<std::vector<std::string>> split_scope;  // hull ids; nullopt = all interval atoms

  // Node form.
  struct Child {
    std::string tag;  // "" for a plain (untagged) summand
    std::shared_ptr<const SpaceRecipe> space;
  };
  std::vector<Child> children;

  bool is_leaf() const { return children.empty(); }
};

struct AtomPartition {
  Carrier carrier;
  std::vector<Generator> generators;
  std::vector<Atom> atoms;
  std::vector<std::string> abstract_symbols;
  std::shared_ptr<const SpaceRecipe> recipe;  // may be null for synthetic spaces

  int size() const { return static_cast<int>(atoms.size()); }

  int index_of(const std::string& id) const {
    for (int i = 0; i < size(); ++i)
      if (atoms[i].id == id) return i;
    return -1;
  }

  /**
   * \brief Atom holding a discrete point. Accepts a qualified name or a
   *        bare name that is unique across all carrier parts.
   */
  int atom_of_point(const std::string& name) const {
    int hit = -1;
    for (int i = 0; i < size(); ++i) {
      if (atoms[i].body.points.count(name)) return i;  // qualified match
    }
    for (int i = 0; i < size(); ++i) {
      for (const auto& p : atoms[i].body.points) {
        auto colon = p.rfind(':');
        if (colon != std::string::npos && p.substr(colon + 1) == name) {
          ensure(hit < 0 || hit == i, "name-collision",
                 "point name '" + name + "' is ambiguous across components");
          hit = i;
        }
      }
    }
    ensure(hit >= 0, "shape", "no atom holds point '" + name + "'");
    return hit;
  }

  RegionMask full_mask() const { return mask_all(atoms.size()); }

  RegionMask mask_of_ids(const std::vector<std::string>& ids) const {
    RegionMask m(atoms.size(), false);
    for (const auto& id : ids) {
      int i = index_of(id);
      ensure(i >= 0, "not-measurable",
             "event names unknown atom '" + id + "'");
      m[i] = true;
    }
    return m;
  }

  /** \brief Atoms eligible as abstract split scope: plain, purely interval. */
  std::vector<int> interval_atom_indices() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
      const Atom& a = atoms[i];
      if (a.side == VSide::none && a.body.points.empty() && !a.body.intervals.empty())
        out.push_back(i);
    }
    return out;
  }

  /** \brief Mask of the abstract set: union of all in_v halves. */
  RegionMask v_mask() const {
    RegionMask m(atoms.size(), false);
    for (int i = 0; i < size(); ++i)
      if (atoms[i].side == VSide::in_v) m[i] = true;
    return m;
  }

  friend bool operator==(const AtomPartition& a, const AtomPartition& b) {
    return a.carrier == b.carrier && a.generators == b.generators &&
           a.atoms == b.atoms && a.abstract_symbols == b.abstract_symbols;
  }
};

namespace sigma_detail {

inline RegionBody whole_carrier_body(const Carrier& carrier) {
  RegionBody body;
  for (const auto& part : carrier.parts) {
    if (part.has_interval) body.intervals.emplace(part.tag, unit_interval());
    for (const auto& p : part.points) body.points.insert(qualify(part.tag, p));
  }
  return body;
}

inline void check_interval_generator_inside_unit(const IntervalSet& set, const std::string& name) {
  for (const auto& piece : set.pieces()) {
    bool ok = piece.lo >= Rat(0) && piece.hi <= Rat(1) &&
              (piece.lo > Rat(0) || piece.lo_open) &&
              (piece.hi < Rat(1) || piece.hi_open);
    ensure(ok, "invalid-generator",
           "generator '" + name + "' leaves the open unit interval");
  }
}

inline RegionBody generator_body(const Carrier& carrier, const Generator& gen) {
  RegionBody body;
  if (const auto* set = std::get_if<IntervalSet>(&gen.body)) {
    bool has = false;
    for (const auto& part : carrier.parts)
      if (part.tag.empty() && part.has_interval) has = true;
    ensure(has, "invalid-generator",
           "interval generator '" + gen.name + "' on a carrier without an interval part");
    check_interval_generator_inside_unit(*set, gen.name);
    if (!set->is_empty()) body.intervals.emplace("", *set);
  } else if (const auto* pts = std::get_if<std::vector<std::string>>(&gen.body)) {
    std::set<std::string> carrier_points;
    for (const auto& part : carrier.parts)
      for (const auto& p : part.points) carrier_points.insert(qualify(part.tag, p));
    for (const auto& p : *pts) {
      ensure(carrier_points.count(p), "invalid-generator",
             "generator '" + gen.name + "' names unknown point '" + p + "'");
      body.points.insert(p);
    }
  } else {
    fail("invalid-generator",
         "abstract-set generator '" + gen.name +
             "' is not admissible in a closure; use the extension operation");
  }
  return body;
}

}  // namespace sigma_detail

/**
 * \brief Minterm atoms of the algebra generated by concrete generators
 *        over the carrier. Empty minterms are dropped; each atom's
 *        signature records which generators contain it.
 */
inline AtomPartition sigma_closure(const Carrier& carrier, const std::vector<Generator>& gens) {
  carrier.validate();
  {
    std::set<std::string> names;
    for (const auto& g : gens)
      ensure(names.insert(g.name).second, "name-collision",
             "duplicate generator name '" + g.name + "'");
  }

  struct Work { RegionBody body; std::vector<bool> sig; };
  std::vector<Work> regions{{sigma_detail::whole_carrier_body(carrier), {}}};

  for (const auto& gen : gens) {
    RegionBody g = sigma_detail::generator_body(carrier, gen);
    std::vector<Work> next;
    next.reserve(regions.size() * 2);
    for (auto& region : regions) {
      RegionBody inside = region.body.intersect(g);
      RegionBody outside = region.body.subtract(g);
      if (!inside.empty()) {
        Work w{std::move(inside), region.sig};
        w.sig.push_back(true);
        next.push_back(std::move(w));
      }
      if (!outside.empty()) {
        Work w{std::move(outside), std::move(region.sig)};
        w.sig.push_back(false);
        next.push_back(std::move(w));
      }
    }
    regions = std::move(next);
  }

  AtomPartition part;
  part.carrier = carrier;
  part.generators = gens;
  std::set<std::string> ids;
  for (auto& w : regions) {
    Atom a;
    a.id = w.body.str();
    a.base_id = a.id;
    a.signature = std::move(w.sig);
    a.body = std::move(w.body);
    ensure(ids.insert(a.id).second, "name-collision", "atom id collision '" + a.id + "'");
    part.atoms.push_back(std::move(a));
  }

  auto recipe = std::make_shared<SpaceRecipe>();
  recipe->carrier = carrier;
  recipe->generators = gens;
  part.recipe = recipe;
  return part;
}

/**
 * \brief Adjoin an abstract (pointless) set to the algebra: every scoped
 *        atom C becomes the pair C-in-V, C-out-of-V. The symbol also joins
 *        the generator list, extending every signature by one bit.
 *
 * The scope must consist of plain, purely-interval atoms; the abstract
 * set is disjoint from every atom outside the scope.
 */
inline AtomPartition extend_by_abstract_set(const AtomPartition& space,
                                            const std::string& symbol,
                                            const std::vector<int>& scope) {
  ensure(!symbol.empty(), "shape", "empty abstract symbol");
  ensure(!scope.empty(), "shape", "empty abstract split scope");
  for (const auto& g : space.generators)
    ensure(g.name != symbol, "name-collision",
           "abstract symbol '" + symbol + "' collides with a generator");

  std::set<int> scope_set;
  for (int i : scope) {
    ensure(i >= 0 && i < space.size(), "shape", "split scope index out of range");
    const Atom& a = space.atoms[i];
    ensure(a.side == VSide::none, "unsupported-nesting",
           "atom '" + a.id + "' is already an abstract half");
    ensure(a.body.points.empty() && !a.body.intervals.empty(), "shape",
           "split scope atom '" + a.id + "' is not purely interval");
    scope_set.insert(i);
  }

  AtomPartition out;
  out.carrier = space.carrier;
  out.generators = space.generators;
  out.generators.push_back(Generator{symbol, AbstractMark{}});
  out.abstract_symbols = space.abstract_symbols;
  out.abstract_symbols.push_back(symbol);

  for (int i = 0; i < space.size(); ++i) {
    const Atom& a = space.atoms[i];
    if (scope_set.count(i)) {
      Atom inside = a;
      inside.id = a.id + "&" + symbol;
      inside.base_id = a.id;
      inside.signature.push_back(true);
      inside.side = VSide::in_v;
      out.atoms.push_back(std::move(inside));
      Atom outside = a;
      outside.id = a.id + "&~" + symbol;
      outside.base_id = a.id;
      outside.signature.push_back(false);
      outside.side = VSide::out_v;
      out.atoms.push_back(std::move(outside));
    } else {
      Atom plain = a;
      plain.signature.push_back(false);
      out.atoms.push_back(std::move(plain));
    }
  }

  if (space.recipe && space.recipe->is_leaf()) {
    auto recipe = std::make_shared<SpaceRecipe>(*space.recipe);
    recipe->abstract_symbol = symbol;
    std::vector<std::string> hull_ids;
    for (int i : scope) hull_ids.push_back(space.atoms[i].id);
    recipe->split_scope = hull_ids;
    out.recipe = recipe;
  }
  return out;
}

/** \brief Extension with the default scope: every plain interval atom. */
inline AtomPartition extend_by_abstract_set(const AtomPartition& space, const std::string& symbol) {
  AtomPartition out = extend_by_abstract_set(space, symbol, space.interval_atom_indices());
  if (out.recipe) {
    auto recipe = std::make_shared<SpaceRecipe>(*out.recipe);
    recipe->split_scope = std::nullopt;  // canonical "all interval atoms" form
    out.recipe = recipe;
  }
  return out;
}

/**
 * \brief Direct sum of two spaces. Carriers must be disjoint: point names
 *        may not repeat and at most one part per tag may hold an interval
 *        copy. Use sum_spaces_tagged for sums of copies of one space.
 */
inline AtomPartition sum_spaces(const AtomPartition& a, const AtomPartition& b) {
  if (b.carrier.empty() && b.atoms.empty()) return a;
  if (a.carrier.empty() && a.atoms.empty()) return b;

  AtomPartition out;
  out.carrier = a.carrier;
  for (const auto& part : b.carrier.parts) {
    bool merged = false;
    for (auto& mine : out.carrier.parts) {
      if (mine.tag != part.tag) continue;
      ensure(!(mine.has_interval && part.has_interval), "name-collision",
             "two interval copies share tag '" + part.tag + "'");
      mine.has_interval = mine.has_interval || part.has_interval;
      mine.points.insert(mine.points.end(), part.points.begin(), part.points.end());
      merged = true;
      break;
    }
    if (!merged) out.carrier.parts.push_back(part);
  }
  out.carrier.validate();

  out.generators = a.generators;
  for (const auto& g : b.generators) {
    for (const auto& mine : out.generators)
      ensure(mine.name != g.name, "name-collision",
             "generator name '" + g.name + "' appears in both summands");
    out.generators.push_back(g);
  }
  out.abstract_symbols = a.abstract_symbols;
  out.abstract_symbols.insert(out.abstract_symbols.end(), b.abstract_symbols.begin(),
                              b.abstract_symbols.end());

  std::size_t a_gens = a.generators.size(), b_gens = b.generators.size();
  std::set<std::string> ids;
  for (const auto& atom : a.atoms) {
    Atom copy = atom;
    copy.signature.resize(a_gens + b_gens, false);
    ensure(ids.insert(copy.id).second, "name-collision", "atom id collision '" + copy.id + "'");
    out.atoms.push_back(std::move(copy));
  }
  for (const auto& atom : b.atoms) {
    Atom copy = atom;
    std::vector<bool> sig(a_gens, false);
    sig.insert(sig.end(), atom.signature.begin(), atom.signature.end());
    copy.signature = std::move(sig);
    ensure(ids.insert(copy.id).second, "name-collision", "atom id collision '" + copy.id + "'");
    out.atoms.push_back(std::move(copy));
  }

  if (a.recipe && b.recipe) {
    auto recipe = std::make_shared<SpaceRecipe>();
    recipe->children.push_back({"", a.recipe});
    recipe->children.push_back({"", b.recipe});
    out.recipe = recipe;
  }
  return out;
}

/** \brief Prefix every name in the space with a component tag. */
inline AtomPartition retag(const AtomPartition& space, const std::string& tag) {
  ensure(!tag.empty(), "shape", "empty component tag");
  auto rewrap = [&tag](const std::string& old) {
    return old.empty() ? tag : tag + ":" + old;
  };
  AtomPartition out;
  out.carrier = space.carrier;
  for (auto& part : out.carrier.parts) part.tag = rewrap(part.tag);
  out.generators = space.generators;
  for (auto& g : out.generators) g.name = tag + ":" + g.name;
  out.abstract_symbols = space.abstract_symbols;
  for (auto& s : out.abstract_symbols) s = tag + ":" + s;
  for (const auto& atom : space.atoms) {
    Atom copy = atom;
    copy.id = tag + ":" + atom.id;
    copy.base_id = tag + ":" + atom.base_id;
    RegionBody body;
    for (const auto& [t, set] : atom.body.intervals) body.intervals.emplace(rewrap(t), set);
    for (const auto& p : atom.body.points) body.points.insert(tag + ":" + p);
    copy.body = std::move(body);
    out.atoms.push_back(std::move(copy));
  }
  if (space.recipe) {
    auto recipe = std::make_shared<SpaceRecipe>();
    recipe->children.push_back({tag, space.recipe});
    out.recipe = recipe;
  }
  return out;
}

/** \brief Tagged direct sum of copies; tags must be distinct and nonempty. */
inline AtomPartition sum_spaces_tagged(
    const std::vector<std::pair<std::string, AtomPartition>>& parts) {
  ensure(!parts.empty(), "shape", "empty tagged sum");
  AtomPartition acc;
  std::vector<SpaceRecipe::Child> children;
  bool all_recipes = true;
  for (const auto& [tag, space] : parts) {
    AtomPartition tagged = retag(space, tag);
    if (space.recipe) children.push_back({tag, space.recipe});
    else all_recipes = false;
    acc = acc.atoms.empty() && acc.carrier.empty() ? std::move(tagged)
                                                   : sum_spaces(acc, tagged);
  }
  if (all_recipes) {
    auto recipe = std::make_shared<SpaceRecipe>();
    recipe->children = std::move(children);
    acc.recipe = recipe;
  } else {
    acc.recipe = nullptr;
  }
  return acc;
}

/**
 * \brief Subspace keeping exactly the masked atoms. The carrier shrinks to
 *        what the kept atoms cover. Signatures and ids are preserved.
 */
inline AtomPartition restrict_to_atoms(const AtomPartition& space, const RegionMask& keep) {
  ensure(keep.size() == space.atoms.size(), "shape", "restriction mask size mismatch");
  AtomPartition out;
  out.generators = space.generators;
  out.abstract_symbols = space.abstract_symbols;
  std::map<std::string, CarrierPart> parts;
  for (const auto& part : space.carrier.parts) parts[part.tag] = {part.tag, false, {}};
  for (int i = 0; i < space.size(); ++i) {
    if (!keep[i]) continue;
    out.atoms.push_back(space.atoms[i]);
    const Atom& a = space.atoms[i];
    for (const auto& [tag, set] : a.body.intervals) parts[tag].has_interval = true;
    for (const auto& p : a.body.points) {
      auto colon = p.rfind(':');
      std::string tag = colon == std::string::npos ? "" : p.substr(0, colon);
      std::string bare = colon == std::string::npos ? p : p.substr(colon + 1);
      if (!parts.count(tag)) { tag = ""; bare = p; }
      parts[tag].points.push_back(bare);
    }
  }
  for (const auto& part : space.carrier.parts) {
    const CarrierPart& p = parts[part.tag];
    if (p.has_interval || !p.points.empty()) out.carrier.parts.push_back(p);
  }
  out.recipe = nullptr;  // restrictions carry no standalone recipe
  return out;
}

/**
 * \brief Restriction to one side of the abstract split: the in_v side is
 *        the family of V-halves; the out_v side keeps the complement
 *        halves together with every unsplit atom.
 */
inline AtomPartition restrict_to_side(const AtomPartition& space, VSide side) {
  ensure(side != VSide::none, "shape", "restriction side must name a half");
  RegionMask keep(space.atoms.size(), false);
  for (int i = 0; i < space.size(); ++i) {
    VSide s = space.atoms[i].side;
    keep[i] = (side == VSide::in_v) ? (s == VSide::in_v)
                                    : (s == VSide::out_v || s == VSide::none);
  }
  return restrict_to_atoms(space, keep);
}

/**
 * \brief Replays a construction recipe into the space it describes.
 *        Spaces built by the constructive operations round-trip: a space
 *        with a recipe satisfies build_space(*recipe) == space.
 */
inline AtomPartition build_space(const SpaceRecipe& recipe) {
  if (recipe.is_leaf()) {
    ensure(recipe.carrier.has_value(), "shape", "leaf recipe lacks a carrier");
    AtomPartition space = sigma_closure(*recipe.carrier, recipe.generators);
    if (recipe.abstract_symbol) {
      if (recipe.split_scope) {
        std::vector<int> scope;
        for (const auto& id : *recipe.split_scope) {
          int i = space.index_of(id);
          ensure(i >= 0, "shape", "split scope names unknown atom '" + id + "'");
          scope.push_back(i);
        }
        space = extend_by_abstract_set(space, *recipe.abstract_symbol, scope);
      } else {
        space = extend_by_abstract_set(space, *recipe.abstract_symbol);
      }
    }
    return space;
  }
  ensure(!recipe.children.empty(), "shape", "sum recipe has no components");
  bool all_tagged = true, none_tagged = true;
  for (const auto& child : recipe.children) {
    ensure(child.space != nullptr, "shape", "sum recipe has a null component");
    (child.tag.empty() ? all_tagged : none_tagged) = false;
  }
  ensure(all_tagged || none_tagged, "shape", "sum recipe mixes tagged and untagged components");
  if (all_tagged) {
    std::vector<std::pair<std::string, AtomPartition>> parts;
    for (const auto& child : recipe.children)
      parts.emplace_back(child.tag, build_space(*child.space));
    return sum_spaces_tagged(parts);
  }
  AtomPartition acc = build_space(*recipe.children[0].space);
  for (std::size_t i = 1; i < recipe.children.size(); ++i)
    acc = sum_spaces(acc, build_space(*recipe.children[i].space));
  return acc;
}

/**
 * \brief Discrete space on named points, one singleton generator per
 *        point, so every subset is an event and atoms are singletons.
 */
inline AtomPartition discrete_space(const std::vector<std::string>& points) {
  std::vector<Generator> gens;
  for (const auto& p : points)
    gens.push_back(Generator{"pt_" + p, std::vector<std::string>{p}});
  return sigma_closure(Carrier::discrete(points), gens);
}

/** \brief The equivalence on atoms whose classes are the blocks. */
inline PartitionRelation relation_of_family(const AtomPartition& space,
                                            const SigmaSubalgebra& sub) {
  ensure(sub.blocks.size() == space.size(), "shape", "subalgebra size mismatch");
  return sub.blocks;
}

/** \brief The algebra of relation-closed events: unions of classes. */
inline SigmaSubalgebra r_closed_sets(const AtomPartition& space, const PartitionRelation& rel) {
  ensure(rel.size() == space.size(), "shape", "relation size mismatch");
  return SigmaSubalgebra{rel};
}

}  // namespace lmpsym

#endif  // LMPSYM_SIGMA_HPP
