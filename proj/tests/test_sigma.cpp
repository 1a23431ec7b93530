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

#include <catch_amalgamated.hpp>

#include <vector>

#include "lmpsym/errors.hpp"
#include "lmpsym/sigma.hpp"

using namespace lmpsym;

namespace {

// Index of the unique plain atom whose untagged interval part contains x.
int atom_containing(const AtomPartition& space, const Rat& x, const std::string& tag = "") {
  int found = -1;
  for (int i = 0; i < space.size(); ++i) {
    auto it = space.atoms[i].body.intervals.find(tag);
    if (it == space.atoms[i].body.intervals.end()) continue;
    if (!it->second.contains(x)) continue;
    REQUIRE(found == -1);
    found = i;
  }
  REQUIRE(found != -1);
  return found;
}

}  // namespace

TEST_CASE("closure of two overlapping interval generators", "[sigma]") {
  std::vector<Generator> gens = {
      {"A", IntervalSet{Interval::open(Rat(0), Rat(1, 2))}},
      {"B", IntervalSet{Interval::open(Rat(1, 3), Rat(1))}},
  };
  AtomPartition space = sigma_closure(Carrier::interval(), gens);

  // Minterms: (0,1/3], (1/3,1/2), [1/2,1). The all-outside cell is empty.
  REQUIRE(space.size() == 3);
  Rat total(0);
  for (const Atom& a : space.atoms) {
    CHECK(a.side == VSide::none);
    CHECK(a.base_id == a.id);
    CHECK(a.signature.size() == 2);
    total += a.body.interval_length();
  }
  CHECK(total == Rat(1));

  int left = atom_containing(space, Rat(1, 4));
  int mid = atom_containing(space, Rat(5, 12));
  int right = atom_containing(space, Rat(3, 4));
  CHECK(space.atoms[left].signature == std::vector<bool>{true, false});
  CHECK(space.atoms[mid].signature == std::vector<bool>{true, true});
  CHECK(space.atoms[right].signature == std::vector<bool>{false, true});

  // Boundary points land with the closed side.
  CHECK(atom_containing(space, Rat(1, 3)) == left);
  CHECK(atom_containing(space, Rat(1, 2)) == right);
}

TEST_CASE("interval generators must avoid the carrier endpoints", "[sigma]") {
  std::vector<Generator> closed_at_zero = {
      {"A", IntervalSet{Interval{Rat(0), Rat(1, 2), false, true}}}};
  CHECK_THROWS_AS(sigma_closure(Carrier::interval(), closed_at_zero), Error);

  std::vector<Generator> closed_at_one = {
      {"A", IntervalSet{Interval{Rat(1, 2), Rat(1), true, false}}}};
  CHECK_THROWS_AS(sigma_closure(Carrier::interval(), closed_at_one), Error);

  std::vector<Generator> abstract = {{"V", AbstractMark{}}};
  CHECK_THROWS_AS(sigma_closure(Carrier::interval(), abstract), Error);
}

TEST_CASE("closure over named points groups by generator membership", "[sigma]") {
  std::vector<Generator> gens = {{"G", std::vector<std::string>{"p", "q"}}};
  AtomPartition space = sigma_closure(Carrier::discrete({"p", "q", "r"}), gens);
  REQUIRE(space.size() == 2);
  CHECK(space.atom_of_point("p") == space.atom_of_point("q"));
  CHECK(space.atom_of_point("p") != space.atom_of_point("r"));
  CHECK_THROWS_AS(space.atom_of_point("nope"), Error);
}

TEST_CASE("discrete space has one singleton atom per point", "[sigma]") {
  AtomPartition space = discrete_space({"s", "t", "x"});
  REQUIRE(space.size() == 3);
  CHECK(space.atom_of_point("s") != space.atom_of_point("t"));
  CHECK(space.atom_of_point("t") != space.atom_of_point("x"));
  for (const Atom& a : space.atoms) {
    CHECK(a.is_discrete());
    CHECK(a.body.points.size() == 1);
  }
}

TEST_CASE("abstract extension splits interval atoms in two", "[sigma]") {
  AtomPartition base = sigma_closure(Carrier::interval(), {});
  REQUIRE(base.size() == 1);

  AtomPartition split = extend_by_abstract_set(base, "V");
  REQUIRE(split.size() == 2);
  CHECK(split.abstract_symbols == std::vector<std::string>{"V"});
  CHECK(mask_count(split.v_mask()) == 1);

  int in_v = mask_indices(split.v_mask())[0];
  int out_v = 1 - in_v;
  CHECK(split.atoms[in_v].side == VSide::in_v);
  CHECK(split.atoms[out_v].side == VSide::out_v);
  // Both halves keep the hull cell as concrete body and share a base id.
  CHECK(split.atoms[in_v].base_id == base.atoms[0].id);
  CHECK(split.atoms[out_v].base_id == base.atoms[0].id);
  CHECK(split.atoms[in_v].body == base.atoms[0].body);
  // The extension appends one signature bit.
  CHECK(split.atoms[in_v].signature.size() == 1);
  CHECK(split.atoms[in_v].signature[0]);
  CHECK_FALSE(split.atoms[out_v].signature[0]);
}

TEST_CASE("abstract extension with a partial scope", "[sigma]") {
  std::vector<Generator> gens = {{"A", IntervalSet{Interval::open(Rat(0), Rat(1, 2))}}};
  AtomPartition base = sigma_closure(Carrier::interval(), gens);
  REQUIRE(base.size() == 2);
  int left = atom_containing(base, Rat(1, 4));
  int right = atom_containing(base, Rat(3, 4));

  AtomPartition split = extend_by_abstract_set(base, "V", {left});
  REQUIRE(split.size() == 3);
  CHECK(mask_count(split.v_mask()) == 1);
  // The unscoped atom survives unsplit.
  int survivors = 0;
  for (const Atom& a : split.atoms)
    if (a.side == VSide::none) ++survivors;
  CHECK(survivors == 1);
  (void)right;
}

TEST_CASE("abstract extension rejects non-interval scope", "[sigma]") {
  AtomPartition pts = discrete_space({"s"});
  CHECK_THROWS_AS(extend_by_abstract_set(pts, "V", {0}), Error);
}

TEST_CASE("tagged sums keep parts and points apart", "[sigma]") {
  AtomPartition interval = sigma_closure(Carrier::interval(), {});
  AtomPartition points = discrete_space({"s", "t"});

  AtomPartition sum = sum_spaces(interval, points);
  REQUIRE(sum.size() == 3);
  // Signatures are padded to the joint generator list.
  for (const Atom& a : sum.atoms) CHECK(a.signature.size() == sum.generators.size());

  // Two untagged interval parts collide; tagging resolves it.
  CHECK_THROWS_AS(sum_spaces(interval, interval), Error);
  AtomPartition tagged = sum_spaces_tagged({{"L", interval}, {"R", interval}});
  REQUIRE(tagged.size() == 2);
  CHECK(tagged.atoms[0].body.intervals.count("L") == 1);
  CHECK(tagged.atoms[1].body.intervals.count("R") == 1);
}

TEST_CASE("point lookup across tagged copies", "[sigma]") {
  AtomPartition points = discrete_space({"s"});
  AtomPartition sum = sum_spaces_tagged({{"0", points}, {"1", points}});
  REQUIRE(sum.size() == 2);
  CHECK(sum.atom_of_point("0:s") != sum.atom_of_point("1:s"));
  // The bare name is ambiguous between the two copies.
  CHECK_THROWS_AS(sum.atom_of_point("s"), Error);
}

TEST_CASE("restriction keeps the selected atoms", "[sigma]") {
  AtomPartition base = extend_by_abstract_set(sigma_closure(Carrier::interval(), {}), "V");
  AtomPartition inside = restrict_to_side(base, VSide::in_v);
  REQUIRE(inside.size() == 1);
  CHECK(inside.atoms[0].side == VSide::in_v);

  AtomPartition sub = restrict_to_atoms(base, base.v_mask());
  CHECK(sub.size() == 1);
}

TEST_CASE("recipes rebuild equal spaces", "[sigma]") {
  std::vector<Generator> gens = {
      {"A", IntervalSet{Interval::open(Rat(0), Rat(1, 2))}},
      {"B", IntervalSet{Interval::open(Rat(1, 3), Rat(1))}},
  };
  AtomPartition leaf = sigma_closure(Carrier::interval(), gens);
  REQUIRE(leaf.recipe != nullptr);
  CHECK(build_space(*leaf.recipe) == leaf);

  AtomPartition split = extend_by_abstract_set(leaf, "V");
  REQUIRE(split.recipe != nullptr);
  CHECK(build_space(*split.recipe) == split);

  AtomPartition sum = sum_spaces_tagged({{"0", split}, {"1", discrete_space({"s", "t"})}});
  REQUIRE(sum.recipe != nullptr);
  CHECK(build_space(*sum.recipe) == sum);
}

TEST_CASE("relation closed events form the expected algebra", "[sigma]") {
  AtomPartition space = discrete_space({"a", "b", "c"});
  PartitionRelation rel = PartitionRelation::from_class_ids({0, 0, 1});
  SigmaSubalgebra alg = r_closed_sets(space, rel);
  CHECK(alg.contains(mask_of(3, {0, 1})));
  CHECK(alg.contains(mask_of(3, {2})));
  CHECK_FALSE(alg.contains(mask_of(3, {0})));
  CHECK(relation_of_family(space, alg) == rel);
}
