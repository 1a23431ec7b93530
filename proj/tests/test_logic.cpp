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

#include <algorithm>
#include <random>
#include <set>

#include "lmpsym/errors.hpp"
#include "lmpsym/logic.hpp"
#include "test_support.hpp"

using namespace lmpsym;

TEST_CASE("formula construction canonicalizes conjunctions", "[logic]") {
  Formula t = Formula::top();
  CHECK(t.render() == "T");
  CHECK(t.modal_depth() == 0);

  Formula d = Formula::diamond("a", Rat(1, 2), t);
  CHECK(d.render() == "<a>_{1/2} T");
  CHECK(d.modal_depth() == 1);

  // Empty conjunction collapses to top, singleton unwraps, duplicates drop.
  CHECK(Formula::conj({}) == t);
  CHECK(Formula::conj({d}) == d);
  CHECK(Formula::conj({d, d}) == d);

  // Nested conjunctions flatten and sort by rendering.
  Formula e = Formula::diamond("b", Rat(1, 3), t);
  Formula c1 = Formula::conj({d, e});
  Formula c2 = Formula::conj({e, Formula::conj({d})});
  CHECK(c1 == c2);
  CHECK(c1.render() == "(<a>_{1/2} T & <b>_{1/3} T)");

  CHECK_THROWS_AS(Formula::diamond("a", Rat(3, 2), t), Error);
  CHECK_THROWS_AS(Formula::diamond("a", Rat(-1, 2), t), Error);
}

TEST_CASE("parser round trips renders", "[logic]") {
  const char* samples[] = {
      "T",
      "<a>_{1/2} T",
      "<a>_{0/1} T",
      "(<a>_{1/2} T & <b>_{1/3} T)",
      "<a>_{1/4} (<a>_{1/2} T & <b>_{1/3} <a>_{1} T)",
  };
  for (const char* s : samples) {
    Formula f = parse_formula(s);
    CHECK(parse_formula(f.render()) == f);
  }
  // Whitespace is free; conjunction reorders to canonical form.
  CHECK(parse_formula("  ( <b>_{1/3}T & <a>_{1/2} T )  ") ==
        parse_formula("(<a>_{1/2} T & <b>_{1/3} T)"));

  CHECK_THROWS_AS(parse_formula(""), Error);
  CHECK_THROWS_AS(parse_formula("X"), Error);
  CHECK_THROWS_AS(parse_formula("<a>_{2} T"), Error);
  CHECK_THROWS_AS(parse_formula("<a>_{1/2}"), Error);
  CHECK_THROWS_AS(parse_formula("(T &"), Error);
  CHECK_THROWS_AS(parse_formula("T extra"), Error);
}

TEST_CASE("evaluation thresholds against kernel mass", "[logic]") {
  // r0 -a-> r1 with mass 1; r1 -a-> r1 with mass 1/2.
  SymbolicLmp m;
  m.space = test::plain_space(2);
  m.labels = {"a"};
  m.kernel = {
      {MeasureValue{{Rat(0), Rat(1)}}},
      {MeasureValue{{Rat(0), Rat(1, 2)}}},
  };

  CHECK(eval_formula(m, parse_formula("T")) == mask_all(2));
  // <a>_{1} T holds only at r0; <a>_{1/2} T holds at both.
  CHECK(eval_formula(m, parse_formula("<a>_{1} T")) == mask_of(2, {0}));
  CHECK(eval_formula(m, parse_formula("<a>_{1/2} T")) == mask_all(2));
  // One step deeper: mass into the <a>_{1} T region.
  CHECK(eval_formula(m, parse_formula("<a>_{1} <a>_{1} T")) == mask_none(2));
  CHECK(eval_formula(m, parse_formula("<a>_{1/2} <a>_{1/2} T")) == mask_all(2));
  // Threshold zero holds everywhere.
  CHECK(eval_formula(m, parse_formula("<a>_{0/1} T")) == mask_all(2));

  CHECK_THROWS_AS(eval_formula(m, parse_formula("<b>_{1/2} T")), Error);
}

TEST_CASE("enumeration is canonical and complete at small sizes", "[logic]") {
  // One label, one threshold, depth 2: T, dT, ddT, dT & ddT.
  std::vector<Formula> fs = enumerate_formulas({"a"}, {Rat(1, 2)}, 2);
  REQUIRE(fs.size() == 4);
  std::set<std::string> renders;
  for (const auto& f : fs) {
    CHECK(f.modal_depth() <= 2);
    CHECK(renders.insert(f.render()).second);
  }
  CHECK(renders.count("T") == 1);
  CHECK(renders.count("<a>_{1/2} T") == 1);
  CHECK(renders.count("<a>_{1/2} <a>_{1/2} T") == 1);
  CHECK(renders.count("(<a>_{1/2} <a>_{1/2} T & <a>_{1/2} T)") == 1);

  // Depth 0 is just T; depth 1 adds every conjunction of new diamonds.
  CHECK(enumerate_formulas({"a", "b"}, {Rat(1, 2)}, 0).size() == 1);
  CHECK(enumerate_formulas({"a", "b"}, {Rat(1, 2)}, 1).size() == 4);

  // The cap is enforced.
  CHECK_THROWS_AS(enumerate_formulas({"a", "b"}, {Rat(1, 4), Rat(1, 2), Rat(3, 4)}, 3, 100),
                  Error);
}

TEST_CASE("logical equivalence distinguishes exactly the separable regions", "[logic]") {
  // r0 and r1 both reach the sink with the same mass; r2 differs.
  SymbolicLmp m;
  m.space = test::plain_space(4);
  m.labels = {"a"};
  m.kernel = {
      {MeasureValue{{Rat(0), Rat(0), Rat(0), Rat(1, 2)}}},
      {MeasureValue{{Rat(0), Rat(0), Rat(0), Rat(1, 2)}}},
      {MeasureValue{{Rat(0), Rat(0), Rat(0), Rat(1, 3)}}},
      {MeasureValue{{Rat(0), Rat(0), Rat(0), Rat(0)}}},
  };
  LogicalEquivalence eq = logical_equivalence(m);
  CHECK(eq.stabilized);
  CHECK(eq.relation == PartitionRelation::from_class_ids({0, 0, 1, 2}));
}

TEST_CASE("restricting thresholds coarsens the relation", "[logic]") {
  // Masses 1/2 vs 1/3 are indistinguishable if only q=1/4 may be used.
  SymbolicLmp m;
  m.space = test::plain_space(3);
  m.labels = {"a"};
  m.kernel = {
      {MeasureValue{{Rat(0), Rat(0), Rat(1, 2)}}},
      {MeasureValue{{Rat(0), Rat(0), Rat(1, 3)}}},
      {MeasureValue{{Rat(0), Rat(0), Rat(0)}}},
  };
  std::vector<Rat> coarse = {Rat(1, 4)};
  LogicalEquivalence eq = logical_equivalence(m, -1, &coarse);
  CHECK(eq.relation == PartitionRelation::from_class_ids({0, 0, 1}));

  LogicalEquivalence full = logical_equivalence(m);
  CHECK(full.relation == PartitionRelation::identity(3));
  CHECK(full.relation.refines(eq.relation));
}

TEST_CASE("equivalence agrees with pointwise formula checks", "[logic]") {
  std::mt19937_64 rng(0x5eed0601ULL);
  for (int trial = 0; trial < 20; ++trial) {
    SymbolicLmp m = test::random_lmp(rng, 4, 1, 6);
    LogicalEquivalence eq = logical_equivalence(m);
    // Regions the relation equates satisfy the same formulas; spot-check
    // with a couple of achieved thresholds (the enumeration is doubly
    // exponential in the threshold count, so keep it small).
    std::vector<Rat> achieved = validate_lmp(m).achieved_values;
    std::vector<Rat> qs(achieved.begin(),
                        achieved.begin() + std::min<std::size_t>(2, achieved.size()));
    std::vector<Formula> fs = enumerate_formulas(m.labels, qs, 2, 1 << 20);
    for (const Formula& f : fs) {
      RegionMask sat = eval_formula(m, f);
      for (int r = 0; r < m.num_regions(); ++r)
        for (int s = r + 1; s < m.num_regions(); ++s)
          if (eq.relation.same(r, s)) CHECK(sat[r] == sat[s]);
    }
  }
}
