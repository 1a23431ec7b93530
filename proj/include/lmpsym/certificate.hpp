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

#ifndef LMPSYM_CERTIFICATE_HPP
#define LMPSYM_CERTIFICATE_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lmpsym/enumeration.hpp"
#include "lmpsym/errors.hpp"
#include "lmpsym/measure.hpp"
#include "lmpsym/rational.hpp"
#include "lmpsym/sigma.hpp"

namespace lmpsym {

/**
 * Machine-checkable refutations of state bisimilarity on the full model:
 * the process whose states are all points of the open unit interval plus
 * the named states, with one label per enumerated interval and the label
 * "inf". Interval points jump to x under every label whose interval
 * contains them; s and t move under "inf" by the two extreme extensions
 * of length measure, which agree everywhere except on the abstract
 * event V. The finite truncations built by the gallery collapse s and t;
 * these certificates work on the untruncated model, where the argument
 * goes through and the designated states are separated.
 */

enum class ModelKind { s3, pair_sum };

/** \brief Everything the full model depends on. */
struct FullModelDescriptor {
  ModelKind kind = ModelKind::s3;
  Rat inner_total;  // mass "inf" from the left state puts on V
  Rat outer_total;  // mass "inf" from the right state puts on V
  std::string enumeration_id = kEnumerationId;
};

/** \brief A state of the full model: a named state or an interval point. */
struct FullState {
  bool is_point = false;
  std::string name;   // named states; "s","t","x" or tagged "0:s","1:t","0:x","1:x"
  int component = 0;  // which summand an interval point lives in
  Rat point;          // in (0,1) when is_point

  static FullState named(std::string n) {
    FullState s;
    s.name = std::move(n);
    return s;
  }
  static FullState at(const Rat& y, int component = 0) {
    ensure(Rat(0) < y && y < Rat(1), "range", "interval points live strictly inside (0,1)");
    FullState s;
    s.is_point = true;
    s.component = component;
    s.point = y;
    return s;
  }
};

/** \brief A label of the full model: "inf" or an enumerated interval. */
struct FullLabel {
  bool inf = false;
  Int interval_index;

  static FullLabel infinity() {
    FullLabel l;
    l.inf = true;
    return l;
  }
  static FullLabel interval(Int index) {
    FullLabel l;
    l.interval_index = std::move(index);
    return l;
  }
};

/** \brief Kernel mass on the three events every certificate check uses. */
struct FullKernelValue {
  Rat total;   // whole space
  Rat v_mass;  // the abstract event (V, or the union of both copies' V)
  Rat x_mass;  // union of the x states
};

namespace certificate_detail {

inline void check_descriptor(const FullModelDescriptor& model) {
  ensure(model.enumeration_id == kEnumerationId, "shape",
         "unknown enumeration scheme '" + model.enumeration_id + "'");
  ensure(Rat(0) <= model.inner_total && model.inner_total <= model.outer_total &&
             model.outer_total <= Rat(1),
         "shape", "V-mass totals are not 0 <= inner <= outer <= 1");
}

inline bool known_named_state(const FullModelDescriptor& model, const std::string& name) {
  if (model.kind == ModelKind::s3) return name == "s" || name == "t" || name == "x";
  return name == "0:s" || name == "1:t" || name == "0:x" || name == "1:x";
}

}  // namespace certificate_detail

/**
 * \brief Pointwise kernel evaluation on the full model. Interval labels
 *        move a point to its copy's x exactly when the decoded interval
 *        contains the point; "inf" moves the left designated state by the
 *        lower extension and the right one by the upper extension.
 */
inline FullKernelValue full_kernel_eval(const FullModelDescriptor& model, const FullState& state,
                                        const FullLabel& label) {
  certificate_detail::check_descriptor(model);
  FullKernelValue value;  // all zero
  if (state.is_point) {
    ensure(state.component == 0 || (model.kind == ModelKind::pair_sum && state.component == 1),
           "shape", "interval point names a component the model does not have");
    if (!label.inf) {
      Interval window = interval_by_index(label.interval_index);
      if (window.contains(state.point)) {
        value.total = Rat(1);
        value.x_mass = Rat(1);  // Dirac at the copy's x, which is outside V
      }
    }
    return value;
  }
  ensure(certificate_detail::known_named_state(model, state.name), "shape",
         "unknown named state '" + state.name + "'");
  if (!label.inf) return value;  // named states are null under interval labels
  const bool is_left = state.name == (model.kind == ModelKind::s3 ? "s" : "0:s");
  const bool is_right = state.name == (model.kind == ModelKind::s3 ? "t" : "1:t");
  if (is_left) {
    value.total = Rat(1);
    value.v_mass = model.inner_total;
  } else if (is_right) {
    value.total = Rat(1);
    value.v_mass = model.outer_total;
  }
  return value;
}

struct NullStateStep {
  std::vector<std::string> null_states;  // named states null under every interval label
  std::vector<std::pair<std::string, std::string>> named_witnesses;  // (state, label) with mass 1
  std::string point_schema;  // how a non-null label is found for any interval point
};

struct SeparationStep {
  struct Example {
    Rat p;
    Rat q;
    Int index;  // enumerated interval containing p but not q
  };

  std::string schema;
  bool universal = false;  // claim covers every pair of distinct rational points
  std::vector<Example> examples;
};

struct VClosednessStep {
  std::vector<int> derived_from;  // indices of the steps this one consumes
  std::string rule;
  std::string event_name;  // "V" for the plain model, "V+V" for the pair sum
};

struct GapStep {
  std::string label;
  std::string event_name;
  std::string left_state;
  std::string right_state;
  Rat left_value;
  Rat right_value;
};

inline constexpr const char* kPointSchema = "containing-interval-v1";
inline constexpr const char* kSeparationSchema = "midpoint-interval-witness-v1";
inline constexpr const char* kVClosednessRule = "identity-on-interval-classes-v1";

/**
 * \brief A four-step refutation of state bisimilarity for the designated
 *        pair: the named states are null under interval labels while
 *        points are not, distinct points are separated by an interval
 *        label, hence V is closed under any candidate relation, and the
 *        "inf" kernels give V different mass.
 */
struct Certificate {
  FullModelDescriptor model;
  std::string claim_left;
  std::string claim_right;
  NullStateStep null_step;
  SeparationStep separation;
  VClosednessStep v_closed;
  GapStep gap;
};

inline std::vector<std::string> designated_null_states(ModelKind kind) {
  if (kind == ModelKind::s3) return {"s", "t", "x"};
  return {"0:s", "0:x", "1:t", "1:x"};
}

inline std::pair<std::string, std::string> designated_pair(ModelKind kind) {
  if (kind == ModelKind::s3) return {"s", "t"};
  return {"0:s", "1:t"};
}

inline std::string designated_event_name(ModelKind kind) {
  return kind == ModelKind::s3 ? "V" : "V+V";
}

/**
 * \brief Builds the refutation certificate. Only the designated pair is
 *        covered; a model whose V-mass totals coincide admits no gap and
 *        is refused.
 */
inline Certificate prove_not_state_bisimilar(const FullModelDescriptor& model,
                                             const std::string& left,
                                             const std::string& right) {
  certificate_detail::check_descriptor(model);
  auto pair = designated_pair(model.kind);
  ensure(left == pair.first && right == pair.second, "shape",
         "certificates cover the designated pair ('" + pair.first + "', '" + pair.second +
             "') only");
  ensure(model.inner_total != model.outer_total, "no-gap",
         "V-mass totals agree: the designated states get no separating event");

  Certificate cert;
  cert.model = model;
  cert.claim_left = left;
  cert.claim_right = right;

  cert.null_step.null_states = designated_null_states(model.kind);
  cert.null_step.named_witnesses = {{pair.first, "inf"}, {pair.second, "inf"}};
  cert.null_step.point_schema = kPointSchema;

  cert.separation.schema = kSeparationSchema;
  cert.separation.universal = true;
  const std::pair<Rat, Rat> sample_pairs[] = {
      {Rat::parse("1/4"), Rat::parse("3/4")},
      {Rat::parse("3/4"), Rat::parse("1/4")},
      {Rat::parse("1/3"), Rat::parse("2/3")},
      {Rat::parse("1/2"), Rat::parse("1/8")},
  };
  for (const auto& [p, q] : sample_pairs)
    cert.separation.examples.push_back({p, q, separation_witness(p, q)});

  cert.v_closed.derived_from = {0, 1};
  cert.v_closed.rule = kVClosednessRule;
  cert.v_closed.event_name = designated_event_name(model.kind);

  cert.gap.label = "inf";
  cert.gap.event_name = cert.v_closed.event_name;
  cert.gap.left_state = left;
  cert.gap.right_state = right;
  cert.gap.left_value = model.inner_total;
  cert.gap.right_value = model.outer_total;
  return cert;
}

struct VerifyOptions {
  std::uint64_t samples = 1000;
  std::uint64_t seed = 20260816ULL;
  int max_denominator = 64;  // for sampled points and pairs
};

struct VerifyReport {
  bool ok = true;
  int failed_step = -1;  // 0..3, or -1 for model-level failures
  std::string step_type;
  std::string message;
  std::uint64_t pairs_checked = 0;
};

namespace certificate_detail {

inline Rat random_point(std::mt19937_64& rng, int max_denominator) {
  std::uniform_int_distribution<int> den_dist(2, max_denominator);
  int den = den_dist(rng);
  std::uniform_int_distribution<int> num_dist(1, den - 1);
  return Rat(num_dist(rng), den);
}

/** \brief Exact recomputation of the gap through the measure module. */
inline std::pair<Rat, Rat> recompute_gap(const FullModelDescriptor& model) {
  AtomPartition base = sigma_closure(Carrier::interval(), {});
  AtomPartition split = extend_by_abstract_set(base, "V");
  BaseCells cells = base_cells(split);
  BaseMeasure length{{Rat(1)}};
  VMassProfile profile;
  profile.bounds[0] = {model.inner_total, model.outer_total};
  MeasureValue lo = lower_extension(cells, length, profile);
  MeasureValue hi = upper_extension(cells, length, profile);
  RegionMask v = split.v_mask();
  return {lo.of(v), hi.of(v)};
}

}  // namespace certificate_detail

/**
 * \brief Replays the certificate against the model: re-evaluates the
 *        kernels behind every claim, re-derives separation witnesses for
 *        the recorded examples and for freshly sampled pairs (checked by
 *        independent decode and membership, not by trusting the witness
 *        construction), and recomputes the gap exactly through the
 *        measure module. Any mismatch pins the failing step.
 */
inline VerifyReport verify_certificate(const Certificate& cert, const VerifyOptions& options = {}) {
  VerifyReport report;
  auto failed = [&report](int step, const std::string& type, const std::string& message) {
    report.ok = false;
    report.failed_step = step;
    report.step_type = type;
    report.message = message;
    return report;
  };

  try {
    certificate_detail::check_descriptor(cert.model);
    auto pair = designated_pair(cert.model.kind);
    if (cert.claim_left != pair.first || cert.claim_right != pair.second)
      return failed(-1, "model", "claim does not name the designated pair");
  } catch (const Error& e) {
    return failed(-1, "model", e.what());
  }

  std::mt19937_64 rng(options.seed);

  // Step 0: named states are null under interval labels, the designated
  // pair is live under "inf", and every sampled point is live under a
  // label derived from the recorded schema.
  try {
    const auto expected_null = designated_null_states(cert.model.kind);
    if (cert.null_step.null_states != expected_null)
      return failed(0, "null-state", "null state list does not match the model kind");
    if (cert.null_step.point_schema != kPointSchema)
      return failed(0, "null-state",
                    "unknown point schema '" + cert.null_step.point_schema + "'");
    auto pair = designated_pair(cert.model.kind);
    std::vector<std::pair<std::string, std::string>> expected_witnesses = {
        {pair.first, "inf"}, {pair.second, "inf"}};
    if (cert.null_step.named_witnesses != expected_witnesses)
      return failed(0, "null-state", "named witnesses do not match the designated pair");
    for (const auto& [state, label] : cert.null_step.named_witnesses) {
      if (label != "inf")
        return failed(0, "null-state", "unknown label '" + label + "' in a named witness");
      FullKernelValue value =
          full_kernel_eval(cert.model, FullState::named(state), FullLabel::infinity());
      if (value.total != Rat(1))
        return failed(0, "null-state",
                      "state '" + state + "' does not move with mass 1 under 'inf'");
    }
    std::vector<Int> label_samples = {Int(0), Int(1), Int(2), Int(7)};
    std::uniform_int_distribution<int> small(0, 100);
    for (int i = 0; i < 12; ++i) label_samples.push_back(Int(small(rng)));
    for (const auto& name : cert.null_step.null_states) {
      for (const auto& k : label_samples) {
        FullKernelValue value =
            full_kernel_eval(cert.model, FullState::named(name), FullLabel::interval(k));
        if (value.total != Rat(0))
          return failed(0, "null-state",
                        "state '" + name + "' is not null under interval label " + k.str());
      }
    }
    const int components = cert.model.kind == ModelKind::pair_sum ? 2 : 1;
    for (std::uint64_t i = 0; i < options.samples; ++i) {
      Rat y = certificate_detail::random_point(rng, options.max_denominator);
      int component = static_cast<int>(i % components);
      Int k = index_of_interval(y / Rat(2), (y + Rat(1)) / Rat(2));
      if (!interval_by_index(k).contains(y))
        return failed(0, "null-state",
                      "schema label for point " + y.str() + " does not contain it");
      FullKernelValue value =
          full_kernel_eval(cert.model, FullState::at(y, component), FullLabel::interval(k));
      if (value.total != Rat(1) || value.x_mass != Rat(1))
        return failed(0, "null-state",
                      "point " + y.str() + " is not carried to x under its schema label");
    }
  } catch (const Error& e) {
    return failed(0, "null-state", e.what());
  }

  // Step 1: separation of distinct points by enumerated intervals. The
  // recorded examples and fresh random pairs are both checked by decoding
  // the claimed interval and testing membership directly.
  try {
    if (cert.separation.schema != kSeparationSchema)
      return failed(1, "separation", "unknown separation schema '" + cert.separation.schema + "'");
    if (!cert.separation.universal)
      return failed(1, "separation", "separation step must claim every pair");
    if (cert.separation.examples.empty())
      return failed(1, "separation", "separation step records no examples");
    for (const auto& example : cert.separation.examples) {
      Interval window = interval_by_index(example.index);
      if (!window.contains(example.p) || window.contains(example.q))
        return failed(1, "separation",
                      "recorded witness " + example.index.str() + " does not separate " +
                          example.p.str() + " from " + example.q.str());
    }
    while (report.pairs_checked < options.samples) {
      Rat p = certificate_detail::random_point(rng, options.max_denominator);
      Rat q = certificate_detail::random_point(rng, options.max_denominator);
      if (p == q) continue;
      Int w = separation_witness(p, q);
      Interval window = interval_by_index(w);
      if (!window.contains(p) || window.contains(q))
        return failed(1, "separation",
                      "constructed witness " + w.str() + " does not separate " + p.str() +
                          " from " + q.str());
      ++report.pairs_checked;
    }
  } catch (const Error& e) {
    return failed(1, "separation", e.what());
  }

  // Step 2: the closedness derivation is structural.
  try {
    if (cert.v_closed.derived_from != std::vector<int>{0, 1})
      return failed(2, "v-closedness", "closedness step must consume steps 0 and 1");
    if (cert.v_closed.rule != kVClosednessRule)
      return failed(2, "v-closedness", "unknown rule '" + cert.v_closed.rule + "'");
    if (cert.v_closed.event_name != designated_event_name(cert.model.kind))
      return failed(2, "v-closedness",
                    "event name '" + cert.v_closed.event_name + "' does not match the model");
  } catch (const Error& e) {
    return failed(2, "v-closedness", e.what());
  }

  // Step 3: the gap, recomputed twice: once by pointwise kernel
  // evaluation and once exactly through the measure module.
  try {
    if (cert.gap.label != "inf")
      return failed(3, "gap", "gap step must use the label 'inf'");
    if (cert.gap.event_name != cert.v_closed.event_name)
      return failed(3, "gap", "gap event does not match the closedness step");
    if (cert.gap.left_state != cert.claim_left || cert.gap.right_state != cert.claim_right)
      return failed(3, "gap", "gap step does not name the claimed pair");
    FullKernelValue left = full_kernel_eval(cert.model, FullState::named(cert.gap.left_state),
                                            FullLabel::infinity());
    FullKernelValue right = full_kernel_eval(cert.model, FullState::named(cert.gap.right_state),
                                             FullLabel::infinity());
    if (left.v_mass != cert.gap.left_value || right.v_mass != cert.gap.right_value)
      return failed(3, "gap", "recorded V-masses do not match the kernels");
    auto [lo, hi] = certificate_detail::recompute_gap(cert.model);
    if (lo != cert.gap.left_value || hi != cert.gap.right_value)
      return failed(3, "gap", "measure-module recomputation does not match the recorded masses");
    if (cert.gap.left_value == cert.gap.right_value)
      return failed(3, "gap", "recorded masses agree: no separating event");
  } catch (const Error& e) {
    return failed(3, "gap", e.what());
  }

  return report;
}

}  // namespace lmpsym

#endif  // LMPSYM_CERTIFICATE_HPP
