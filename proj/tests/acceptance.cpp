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

// Acceptance gate: one line per criterion, every numeric comparison is an
// exact rational equality, and each criterion carries a wall-clock budget.
// Random instances use fixed seeds so the gate is reproducible.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "lmpsym/lmpsym.hpp"
#include "test_support.hpp"

namespace {

using namespace lmpsym;

using Problems = std::vector<std::string>;

void expect(Problems& bad, bool ok, const std::string& what) {
  if (!ok) bad.push_back(what);
}

RegionMask mask_from_bits(int n, std::uint64_t bits) {
  RegionMask e(n, false);
  for (int i = 0; i < n; ++i) e[i] = (bits >> i) & 1;
  return e;
}

// ---------------------------------------------------------------------
// 1. Extension suite: on random split spaces with random base measures
//    and brackets, both extensions restrict to the base measure off the
//    abstract set, their values on the abstract set are the recorded
//    totals, and inner and outer measure satisfy the complement identity.

struct RandomMeasureInstance {
  AtomPartition space;
  BaseCells cells;
  BaseMeasure base;
  VMassProfile profile;
};

RandomMeasureInstance random_measure_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 7);
  GalleryConfig config;
  switch (pick(rng)) {
    case 0: config.n_generators = 1; break;
    case 1: config.n_generators = 2; break;
    case 2: config.n_generators = 3; break;
    case 3: config.n_generators = 4; break;
    case 4: config.n_generators = 6; break;
    case 5: config.n_generators = 1; config.dyadic = true; break;
    case 6: config.n_generators = 2; config.dyadic = true; break;
    default: config.n_generators = 3; config.dyadic = true; break;
  }
  AtomPartition base_space =
      sigma_closure(Carrier::interval(), gallery_detail::interval_generators(config));

  // Split the whole interval part or a random nonempty piece of it.
  std::vector<int> scope = base_space.interval_atom_indices();
  if (rng() % 2 == 0 && scope.size() > 1) {
    std::vector<int> chosen;
    for (int i : scope)
      if (rng() % 2 == 0) chosen.push_back(i);
    if (!chosen.empty()) scope = chosen;
  }
  AtomPartition space = extend_by_abstract_set(base_space, "V", scope);

  // Sometimes adjoin discrete points that carry mass of their own.
  if (rng() % 3 == 0) space = sum_spaces(space, discrete_space({"p", "q"}));

  RandomMeasureInstance inst;
  inst.cells = base_cells(space);
  for (int c = 0; c < inst.cells.size(); ++c)
    inst.base.cell_mass.push_back(test::random_rat_unit(rng, 12));
  for (int c = 0; c < inst.cells.size(); ++c) {
    if (!inst.cells.split[c]) continue;
    Rat mass = inst.base.cell_mass[c];
    Rat inner = mass * test::random_rat_unit(rng, 8);
    Rat outer = inner + (mass - inner) * test::random_rat_unit(rng, 8);
    inst.profile.bounds[c] = VBounds{inner, outer};
  }
  inst.space = std::move(space);
  return inst;
}

void criterion_extensions(Problems& bad) {
  std::mt19937_64 rng(0xacc1ULL);
  for (int trial = 0; trial < 200; ++trial) {
    RandomMeasureInstance inst = random_measure_instance(rng);
    const int n = inst.space.size();
    const int c = inst.cells.size();
    expect(bad, n <= 16, "instance exceeds the 16-atom bound");
    inst.profile.validate(inst.cells, inst.base);

    MeasureValue lo = lower_extension(inst.cells, inst.base, inst.profile);
    MeasureValue hi = upper_extension(inst.cells, inst.base, inst.profile);

    // Concrete events are the unions of whole cells; both extensions must
    // give them their base mass. Enumerate when feasible, sample densely
    // otherwise.
    std::uint64_t cell_masks = 1ull << c;
    bool cells_exhaustive = cell_masks <= 1024;
    for (std::uint64_t step = 0; step < (cells_exhaustive ? cell_masks : 1024); ++step) {
      std::uint64_t bits = cells_exhaustive ? step : rng() & (cell_masks - 1);
      RegionMask e = mask_none(n);
      Rat want;
      for (int cell = 0; cell < c; ++cell) {
        if (!((bits >> cell) & 1)) continue;
        for (int a : inst.cells.members[cell]) e[a] = true;
        want += inst.base.cell_mass[cell];
      }
      if (lo.of(e) != want || hi.of(e) != want) {
        bad.push_back("an extension moves mass on a concrete event");
        return;
      }
    }

    // On the abstract set the extensions hit the recorded totals, and so
    // do the inner and outer measures.
    RegionMask v = inst.space.v_mask();
    expect(bad, lo.of(v) == inst.profile.inner_total(),
           "lower extension misses the recorded inner total");
    expect(bad, hi.of(v) == inst.profile.outer_total(),
           "upper extension misses the recorded outer total");
    expect(bad, inner_measure(inst.cells, inst.base, inst.profile, v) == inst.profile.inner_total(),
           "inner measure of the abstract set is off");
    expect(bad, outer_measure(inst.cells, inst.base, inst.profile, v) == inst.profile.outer_total(),
           "outer measure of the abstract set is off");

    // Complement identity on every event (sampled when the space is big).
    Rat total = inst.base.total();
    std::uint64_t all_masks = 1ull << n;
    bool exhaustive = all_masks <= 1024;
    for (std::uint64_t step = 0; step < (exhaustive ? all_masks : 1024); ++step) {
      std::uint64_t bits = exhaustive ? step : rng() & (all_masks - 1);
      RegionMask e = mask_from_bits(n, bits);
      Rat in = inner_measure(inst.cells, inst.base, inst.profile, e);
      Rat out = outer_measure(inst.cells, inst.base, inst.profile, mask_not(e));
      if (in + out != total) {
        bad.push_back("complement identity fails on an event");
        return;
      }
    }
    if (!bad.empty()) return;
  }
}

// ---------------------------------------------------------------------
// 2. Canonical bracket: inner total 0 and outer total 1 produce the two
//    disagreeing extensions with masses 0 and 1 on the abstract set.

void criterion_canonical_bracket(Problems& bad) {
  AtomPartition plain = sigma_closure(Carrier::interval(), {});
  AtomPartition space = extend_by_abstract_set(plain, "V");
  BaseCells cells = base_cells(space);
  BaseMeasure length = gallery_detail::length_measure(space, cells);
  VMassProfile profile = proportional_profile(cells, length, Rat(0), Rat(1));
  auto [m0, m1] = disagreeing_extensions(cells, length, profile);
  RegionMask v = space.v_mask();
  expect(bad, m0.of(v) == Rat(0), "first extension does not give the abstract set mass 0");
  expect(bad, m1.of(v) == Rat(1), "second extension does not give the abstract set mass 1");
  expect(bad, m0.total() == Rat(1) && m1.total() == Rat(1),
         "extensions do not preserve the total mass");
  expect(bad, m0.atom_mass != m1.atom_mass, "extensions coincide");
}

// ---------------------------------------------------------------------
// 3. Cospan obstruction: both legs satisfy the kernel equation; a strict
//    bracket always leaves the completion obstructed, a tight bracket
//    never does.

void criterion_cospan(Problems& bad) {
  std::mt19937_64 rng(0xacc3ULL);
  for (int n : {1, 2, 4, 8}) {
    std::vector<std::pair<Rat, Rat>> strict = {{Rat(0), Rat(1)},
                                               {Rat(1, 4), Rat(3, 4)},
                                               {Rat(1, 3), Rat(7, 8)}};
    for (int i = 0; i < 5; ++i) {
      Rat a = test::random_rat_unit(rng, 16), b = test::random_rat_unit(rng, 16);
      if (a == b) b = a < Rat(1) ? a + (Rat(1) - a) * Rat(1, 2) : Rat(1, 2);
      strict.push_back(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
    }
    std::vector<Rat> tight = {Rat(0), Rat(1, 2), Rat(1)};
    for (int i = 0; i < 2; ++i) tight.push_back(test::random_rat_unit(rng, 16));

    for (const auto& [inner, outer] : strict) {
      GalleryConfig config;
      config.n_generators = n;
      config.inner_total = inner;
      config.outer_total = outer;
      CospanBundle bundle = build_obstruction_cospan(config);
      expect(bad, check_zigzag(bundle.left_leg, bundle.left, bundle.target).ok,
             "left leg fails the kernel equation");
      expect(bad, check_zigzag(bundle.right_leg, bundle.right, bundle.target).ok,
             "right leg fails the kernel equation");
      auto obstruction = semipullback_obstruction(bundle);
      expect(bad, obstruction.has_value(), "strict bracket left no obstruction");
      if (obstruction)
        expect(bad, obstruction->left_value != obstruction->right_value,
               "obstruction carries equal masses");
      if (!bad.empty()) return;
    }
    for (const Rat& both : tight) {
      GalleryConfig config;
      config.n_generators = n;
      config.inner_total = both;
      config.outer_total = both;
      CospanBundle bundle = build_obstruction_cospan(config);
      expect(bad, !semipullback_obstruction(bundle).has_value(),
             "tight bracket produced an obstruction");
      if (!bad.empty()) return;
    }
  }
}

// ---------------------------------------------------------------------
// 4. Probe pooling: every truncation with a random admissible bracket is
//    well formed, and the stable-algebra classes merge the two probes
//    while keeping the sink alone.

void criterion_probe_pooling(Problems& bad) {
  std::mt19937_64 rng(0xacc4ULL);
  for (int n : {1, 2, 4, 8}) {
    for (int trial = 0; trial < 20; ++trial) {
      GalleryConfig config;
      config.n_generators = n;
      if (trial % 2 == 0) {
        Rat inner = test::random_rat_unit(rng, 12);
        config.inner_total = inner;
        config.outer_total = inner + (Rat(1) - inner) * test::random_rat_unit(rng, 12);
      } else {
        // Independent per-cell brackets instead of proportional totals.
        AtomPartition space = gallery_detail::split_interval_space(config);
        BaseCells cells = base_cells(space);
        BaseMeasure length = gallery_detail::length_measure(space, cells);
        std::map<std::string, VBounds> by_cell;
        for (int c = 0; c < cells.size(); ++c) {
          if (!cells.split[c]) continue;
          Rat mass = length.cell_mass[c];
          Rat inner = mass * test::random_rat_unit(rng, 8);
          Rat outer = inner + (mass - inner) * test::random_rat_unit(rng, 8);
          by_cell[cells.ids[c]] = VBounds{inner, outer};
        }
        config.profile_by_cell = std::move(by_cell);
      }

      SymbolicLmp m = build_s3(config);
      ValidationReport report = validate_lmp(m);
      expect(bad, report.ok, "a truncation fails validation");
      PartitionRelation rel = event_bisimilarity(m);
      int s = m.space.atom_of_point("s");
      int t = m.space.atom_of_point("t");
      int x = m.space.atom_of_point("x");
      expect(bad, rel.same(s, t), "the probes are not pooled");
      expect(bad, rel.classes()[rel.class_of(x)].size() == 1, "the sink is not alone");
      if (!bad.empty()) return;
    }
  }
}

// ---------------------------------------------------------------------
// 5. Logic route: on random finite processes the logical classes at
//    stabilization equal the stable-algebra classes exactly.

void criterion_logic_route(Problems& bad) {
  std::mt19937_64 rng(0xacc5ULL);
  std::uniform_int_distribution<int> regions(2, 6), labels(1, 3);
  for (int trial = 0; trial < 100; ++trial) {
    SymbolicLmp m = test::random_lmp(rng, regions(rng), labels(rng));
    LogicalEquivalence eq = logical_equivalence(m);
    expect(bad, eq.stabilized, "formula family did not stabilize");
    if (!(eq.relation == event_bisimilarity(m))) {
      bad.push_back("logical classes differ from the stable-algebra classes");
      return;
    }
  }
}

// ---------------------------------------------------------------------
// 6. Oracle equivalence: the witness-splitting route matches the
//    partition-enumeration oracle, and both answers check out.

void criterion_oracle(Problems& bad) {
  std::mt19937_64 rng(0xacc6ULL);
  std::uniform_int_distribution<int> regions(2, 4), labels(1, 3);
  for (int trial = 0; trial < 100; ++trial) {
    SymbolicLmp m = test::random_lmp(rng, regions(rng), labels(rng));
    PartitionRelation fast = largest_state_bisimulation(m);
    PartitionRelation slow = brute_force_largest_bisimulation(m);
    if (!(fast == slow)) {
      bad.push_back("fast route disagrees with the brute-force oracle");
      return;
    }
    expect(bad, check_state_bisimulation(m, fast).ok, "fast answer fails the check");
    expect(bad, check_state_bisimulation(m, slow).ok, "oracle answer fails the check");
    if (!bad.empty()) return;
  }
}

// ---------------------------------------------------------------------
// 7. Full-model certificate: the refutation replays against ten thousand
//    sampled separation pairs, any change to a recorded gap digit is
//    caught, and the truncations keep collapsing the pair (which is why
//    the certificate exists at all).

void criterion_certificate(Problems& bad) {
  FullModelDescriptor model = full_s3_descriptor();
  auto pair = designated_pair(model.kind);
  Certificate cert = prove_not_state_bisimilar(model, pair.first, pair.second);

  VerifyOptions options;
  options.samples = 10000;
  options.seed = 0xacc7ULL;
  options.max_denominator = 512;
  VerifyReport report = verify_certificate(cert, options);
  expect(bad, report.ok, "certificate replay failed: " + report.message);
  expect(bad, report.pairs_checked >= 10000, "fewer than ten thousand pairs were sampled");

  // Every edit of the gap step must be rejected, and rejected there.
  VerifyOptions quick;
  quick.samples = 50;
  auto tampered = [&](const std::string& note, auto edit) {
    Certificate copy = cert;
    edit(copy.gap);
    VerifyReport r = verify_certificate(copy, quick);
    expect(bad, !r.ok && r.failed_step == 3, "tampering survived: " + note);
  };
  tampered("left digit up", [](GapStep& g) { g.left_value = Rat(1, 10); });
  tampered("left digit to one", [](GapStep& g) { g.left_value = Rat(1); });
  tampered("right digit down", [](GapStep& g) { g.right_value = Rat(9, 10); });
  tampered("right digit to zero", [](GapStep& g) { g.right_value = Rat(0); });
  tampered("values swapped", [](GapStep& g) { std::swap(g.left_value, g.right_value); });
  tampered("label changed", [](GapStep& g) { g.label = "0"; });
  tampered("event renamed", [](GapStep& g) { g.event_name = "W"; });
  tampered("left state changed", [](GapStep& g) { g.left_state = "x"; });
  tampered("right state changed", [](GapStep& g) { g.right_state = "s"; });

  // Regression: every finite truncation identifies the designated pair,
  // so no finite model can refute it and the certificate route is the
  // only refutation. The full model keeps the recorded 0 vs 1 gap.
  for (int n : {1, 2, 4, 8}) {
    GalleryConfig config;
    config.n_generators = n;
    SymbolicLmp m = build_s3(config);
    PartitionRelation rel = largest_state_bisimulation(m);
    expect(bad, rel.same(m.space.atom_of_point("s"), m.space.atom_of_point("t")),
           "a truncation separates the pair");
  }
  expect(bad, cert.gap.left_value == Rat(0) && cert.gap.right_value == Rat(1),
         "canonical gap is not 0 versus 1");
}

// ---------------------------------------------------------------------
// 8. Non-local example: the pooled relation on the triple sum is a
//    bisimulation, the two-copy sum is refuted by certificate, and the
//    relation-closed events are exactly the shape-predicate events.

void criterion_nonlocal(Problems& bad) {
  SumExample ex = build_sum_example();
  expect(bad, check_state_bisimulation(ex.lmp, ex.relation).ok,
         "pooled relation is not a bisimulation");

  FullModelDescriptor model = full_pair_sum_descriptor();
  auto pair = designated_pair(model.kind);
  Certificate cert = prove_not_state_bisimilar(model, pair.first, pair.second);
  VerifyOptions options;
  options.samples = 2000;
  options.seed = 0xacc8ULL;
  VerifyReport report = verify_certificate(cert, options);
  expect(bad, report.ok, "two-copy refutation failed: " + report.message);

  for (int n : {1, 2}) {
    GalleryConfig config;
    config.n_generators = n;
    SumExample sum = build_sum_example(config);
    const int size = sum.lmp.space.size();
    if (size > 20) {
      bad.push_back("sum model too large to enumerate");
      return;
    }
    SigmaSubalgebra closed{sum.relation};
    std::uint64_t in_algebra = 0, shaped = 0;
    for (std::uint64_t bits = 0; bits < (1ull << size); ++bits) {
      RegionMask e = mask_from_bits(size, bits);
      bool a = closed.contains(e);
      bool b = sum_example_shape(sum.lmp, e);
      if (a != b) {
        bad.push_back("a closed event disagrees with the shape predicate");
        return;
      }
      if (a) ++in_algebra;
      if (b) ++shaped;
    }
    std::uint64_t want = 1ull << sum.relation.num_classes();
    expect(bad, in_algebra == want && shaped == want,
           "closed-event count is not one per pool subset");
  }
}

// ---------------------------------------------------------------------
// 9. Morphism suite: identity and hull-collapse maps satisfy the kernel
//    equation, composable projections compose, and quotients reproduce
//    the sub-algebra they came from.

void criterion_morphisms(Problems& bad) {
  for (int n : {1, 2, 4}) {
    GalleryConfig config;
    config.n_generators = n;
    SymbolicLmp m = build_s3(config);
    RegionMap id;
    for (int i = 0; i < m.space.size(); ++i) id.to.push_back(i);
    expect(bad, check_zigzag(id, m, m).ok, "identity map fails the kernel equation");

    SymbolicLmp minus_t = build_s3_minus(config, "t");
    SymbolicLmp companion = build_T(config);
    RegionMap f = hull_map(minus_t, companion, {{"{s}", "{t}"}});
    expect(bad, check_zigzag(f, minus_t, companion).ok,
           "hull collapse fails the kernel equation");
    if (!bad.empty()) return;
  }

  std::mt19937_64 rng(0xacc9ULL);
  std::uniform_int_distribution<int> regions(4, 6), labels(1, 2);
  for (int trial = 0; trial < 50; ++trial) {
    SymbolicLmp m = test::random_lmp(rng, regions(rng), labels(rng));
    QuotientResult q1 = quotient_by_subalgebra(m, test::random_stable_subalgebra(rng, m));
    QuotientResult q2 =
        quotient_by_subalgebra(q1.lmp, test::random_stable_subalgebra(rng, q1.lmp));
    expect(bad, check_zigzag(q1.projection, m, q1.lmp).ok, "first projection fails");
    expect(bad, check_zigzag(q2.projection, q1.lmp, q2.lmp).ok, "second projection fails");
    RegionMap composite = compose(q1.projection, q2.projection);
    expect(bad, check_zigzag(composite, m, q2.lmp).ok, "composite projection fails");
    if (!bad.empty()) return;
  }

  for (int trial = 0; trial < 50; ++trial) {
    SymbolicLmp m = test::random_lmp(rng, regions(rng), labels(rng));
    SigmaSubalgebra sub = test::random_stable_subalgebra(rng, m);
    QuotientResult q = quotient_by_subalgebra(m, sub);
    expect(bad, check_zigzag(q.projection, m, q.lmp).ok, "projection fails");
    PartitionRelation pulled_back =
        PartitionRelation::from_class_ids(q.projection.to);
    if (!(pulled_back == sub.blocks)) {
      bad.push_back("projection fibres differ from the sub-algebra blocks");
      return;
    }
  }
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<void(Problems&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"extension suite: base preserved, totals hit, complements add up", 5.0,
       criterion_extensions},
      {"canonical bracket: disagreeing extensions give 0 and 1", 1.0,
       criterion_canonical_bracket},
      {"cospan obstruction tracks the bracket gap", 5.0, criterion_cospan},
      {"probe pooling across truncations and brackets", 10.0, criterion_probe_pooling},
      {"logical classes equal the stable-algebra classes", 30.0, criterion_logic_route},
      {"witness splitting matches the brute-force oracle", 60.0, criterion_oracle},
      {"full-model certificate replays and rejects tampering", 10.0, criterion_certificate},
      {"pooled sum, two-copy refutation, closed-event shape", 10.0, criterion_nonlocal},
      {"identity, hull and quotient maps satisfy the kernel equation", 15.0,
       criterion_morphisms},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    Problems bad;
    auto start = std::chrono::steady_clock::now();
    try {
      c.body(bad);
    } catch (const std::exception& e) {
      bad.push_back(std::string("exception: ") + e.what());
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds)
      bad.push_back("over the time budget");

    char timing[64];
    std::snprintf(timing, sizeof timing, "(%.2fs, budget %.0fs)", seconds, c.budget_seconds);
    std::cout << "[" << (i + 1) << "/" << criteria.size() << "] "
              << (bad.empty() ? "PASS" : "FAIL") << " " << c.name << " " << timing << "\n";
    for (std::size_t k = 0; k < bad.size() && k < 4; ++k)
      std::cout << "      - " << bad[k] << "\n";
    if (!bad.empty()) ++failures;
  }

  if (failures == 0) {
    std::cout << "acceptance: all " << criteria.size() << " criteria hold\n";
    return 0;
  }
  std::cout << "acceptance: " << failures << " criterion(s) failed\n";
  return 1;
}
