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

#ifndef LMPSYM_JSON_IO_HPP
#define LMPSYM_JSON_IO_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lmpsym/bisim.hpp"
#include "lmpsym/certificate.hpp"
#include "lmpsym/errors.hpp"
#include "lmpsym/lmp.hpp"
#include "lmpsym/measure.hpp"
#include "lmpsym/partition.hpp"
#include "lmpsym/rational.hpp"
#include "lmpsym/sigma.hpp"

namespace lmpsym {

/**
 * File formats. Everything is JSON with string-encoded rationals in
 * lowest terms ("p/q"), emitted with sorted keys and two-space indent so
 * identical objects serialize byte for byte. Spaces serialize as their
 * construction recipe, not their atom list: loading replays the recipe,
 * which reproduces the atoms exactly.
 */

using Json = nlohmann::json;

namespace json_detail {

inline Rat rat(const Json& j, const std::string& where) {
  ensure(j.is_string(), "parse", where + ": expected a rational string");
  return Rat::parse(j.get<std::string>());
}

inline Json rat(const Rat& r) { return r.wire(); }

inline Json interval_to_json(const Interval& piece) {
  Json j;
  j["lo"] = rat(piece.lo);
  j["hi"] = rat(piece.hi);
  j["lo_open"] = piece.lo_open;
  j["hi_open"] = piece.hi_open;
  return j;
}

inline Interval interval_from_json(const Json& j) {
  ensure(j.is_object() && j.contains("lo") && j.contains("hi"), "parse",
         "interval piece needs lo and hi");
  Interval piece;
  piece.lo = rat(j.at("lo"), "interval lo");
  piece.hi = rat(j.at("hi"), "interval hi");
  piece.lo_open = j.value("lo_open", true);
  piece.hi_open = j.value("hi_open", true);
  ensure(piece.lo < piece.hi || (piece.lo == piece.hi && !piece.lo_open && !piece.hi_open),
         "parse", "interval piece is empty");
  return piece;
}

inline Json interval_set_to_json(const IntervalSet& set) {
  Json j = Json::array();
  for (const auto& piece : set.pieces()) j.push_back(interval_to_json(piece));
  return j;
}

inline IntervalSet interval_set_from_json(const Json& j) {
  ensure(j.is_array(), "parse", "interval set must be an array of pieces");
  std::vector<Interval> pieces;
  for (const auto& piece : j) pieces.push_back(interval_from_json(piece));
  return IntervalSet(std::move(pieces));
}

inline Json generator_to_json(const Generator& gen) {
  Json j;
  j["name"] = gen.name;
  if (const auto* set = std::get_if<IntervalSet>(&gen.body)) {
    j["intervals"] = interval_set_to_json(*set);
  } else if (const auto* points = std::get_if<std::vector<std::string>>(&gen.body)) {
    j["points"] = *points;
  } else {
    fail("shape", "abstract generators are recorded as the extension, not as generators");
  }
  return j;
}

inline Generator generator_from_json(const Json& j) {
  ensure(j.is_object() && j.contains("name"), "parse", "generator needs a name");
  Generator gen;
  gen.name = j.at("name").get<std::string>();
  if (j.contains("intervals")) {
    gen.body = interval_set_from_json(j.at("intervals"));
  } else if (j.contains("points")) {
    gen.body = j.at("points").get<std::vector<std::string>>();
  } else {
    fail("parse", "generator '" + gen.name + "' has neither intervals nor points");
  }
  return gen;
}

inline Json recipe_to_json(const SpaceRecipe& recipe) {
  Json j;
  if (recipe.is_leaf()) {
    ensure(recipe.carrier.has_value(), "shape", "leaf recipe lacks a carrier");
    Json carrier;
    ensure(recipe.carrier->parts.size() == 1 && recipe.carrier->parts[0].tag.empty(), "shape",
           "only single-part carriers serialize as leaves");
    carrier["interval"] = recipe.carrier->parts[0].has_interval;
    carrier["points"] = recipe.carrier->parts[0].points;
    j["carrier"] = carrier;
    Json gens = Json::array();
    for (const auto& gen : recipe.generators) gens.push_back(generator_to_json(gen));
    j["generators"] = gens;
    if (recipe.abstract_symbol) {
      j["abstract_symbol"] = *recipe.abstract_symbol;
      if (recipe.split_scope) j["split_scope"] = *recipe.split_scope;
    }
    return j;
  }
  Json components = Json::array();
  for (const auto& child : recipe.children) {
    Json c;
    if (!child.tag.empty()) c["tag"] = child.tag;
    c["space"] = recipe_to_json(*child.space);
    components.push_back(std::move(c));
  }
  j["components"] = components;
  return j;
}

inline std::shared_ptr<const SpaceRecipe> recipe_from_json(const Json& j) {
  ensure(j.is_object(), "parse", "space must be an object");
  auto recipe = std::make_shared<SpaceRecipe>();
  if (j.contains("components")) {
    const Json& components = j.at("components");
    ensure(components.is_array() && !components.empty(), "parse",
           "components must be a nonempty array");
    for (const auto& c : components) {
      SpaceRecipe::Child child;
      child.tag = c.value("tag", std::string());
      ensure(c.contains("space"), "parse", "component lacks a space");
      child.space = recipe_from_json(c.at("space"));
      recipe->children.push_back(std::move(child));
    }
    return recipe;
  }
  ensure(j.contains("carrier"), "parse", "space needs a carrier or components");
  const Json& carrier = j.at("carrier");
  CarrierPart part;
  part.has_interval = carrier.value("interval", false);
  if (carrier.contains("points"))
    part.points = carrier.at("points").get<std::vector<std::string>>();
  recipe->carrier = Carrier{{part}};
  if (j.contains("generators"))
    for (const auto& gen : j.at("generators"))
      recipe->generators.push_back(generator_from_json(gen));
  if (j.contains("abstract_symbol")) {
    recipe->abstract_symbol = j.at("abstract_symbol").get<std::string>();
    if (j.contains("split_scope"))
      recipe->split_scope = j.at("split_scope").get<std::vector<std::string>>();
  }
  return recipe;
}

}  // namespace json_detail

inline Json space_to_json(const AtomPartition& space) {
  ensure(space.recipe != nullptr, "shape",
         "space has no construction recipe and cannot serialize");
  return json_detail::recipe_to_json(*space.recipe);
}

inline AtomPartition space_from_json(const Json& j) {
  return build_space(*json_detail::recipe_from_json(j));
}

/** \brief Model file: space recipe, labels, and the nonzero kernel masses. */
inline Json lmp_to_json(const SymbolicLmp& m) {
  Json j;
  j["space"] = space_to_json(m.space);
  j["labels"] = m.labels;
  Json kernel = Json::object();
  for (int r = 0; r < m.space.size(); ++r) {
    Json row = Json::object();
    for (std::size_t l = 0; l < m.labels.size(); ++l) {
      Json masses = Json::object();
      for (int i = 0; i < m.space.size(); ++i) {
        const Rat& mass = m.kernel[r][l].atom_mass[i];
        if (mass != Rat(0)) masses[m.space.atoms[i].id] = json_detail::rat(mass);
      }
      if (!masses.empty()) row[m.labels[l]] = std::move(masses);
    }
    if (!row.empty()) kernel[m.space.atoms[r].id] = std::move(row);
  }
  j["kernel"] = kernel;
  return j;
}

inline SymbolicLmp lmp_from_json(const Json& j) {
  ensure(j.is_object() && j.contains("space") && j.contains("labels"), "parse",
         "model needs a space and labels");
  SymbolicLmp m;
  m.space = space_from_json(j.at("space"));
  m.labels = j.at("labels").get<std::vector<std::string>>();
  const int n = m.space.size();
  m.kernel.assign(n, std::vector<MeasureValue>(m.labels.size(),
                                               MeasureValue{std::vector<Rat>(n, Rat(0))}));
  if (!j.contains("kernel")) return m;
  for (const auto& [region_id, row] : j.at("kernel").items()) {
    int r = m.space.index_of(region_id);
    ensure(r >= 0, "parse", "kernel names unknown region '" + region_id + "'");
    for (const auto& [label, masses] : row.items()) {
      int l = m.find_label(label);
      ensure(l >= 0, "parse", "kernel names unknown label '" + label + "'");
      for (const auto& [atom_id, mass] : masses.items()) {
        int i = m.space.index_of(atom_id);
        ensure(i >= 0, "parse", "kernel names unknown atom '" + atom_id + "'");
        m.kernel[r][l].atom_mass[i] = json_detail::rat(mass, "kernel mass");
      }
    }
  }
  return m;
}

/** \brief Measure file: base mass per cell and the V-mass brackets. */
inline Json measure_to_json(const BaseCells& cells, const BaseMeasure& base,
                            const VMassProfile& profile) {
  Json j;
  Json base_json = Json::object();
  for (int c = 0; c < cells.size(); ++c)
    base_json[cells.ids[c]] = json_detail::rat(base.cell_mass[c]);
  j["base"] = base_json;
  Json profile_json = Json::object();
  for (const auto& [c, bounds] : profile.bounds) {
    Json b;
    b["inner"] = json_detail::rat(bounds.inner);
    b["outer"] = json_detail::rat(bounds.outer);
    profile_json[cells.ids[c]] = std::move(b);
  }
  j["profile"] = profile_json;
  return j;
}

inline std::pair<BaseMeasure, VMassProfile> measure_from_json(const Json& j,
                                                              const BaseCells& cells) {
  ensure(j.is_object() && j.contains("base"), "parse", "measure needs a base object");
  BaseMeasure base;
  base.cell_mass.assign(cells.size(), Rat(0));
  for (const auto& [id, mass] : j.at("base").items()) {
    int c = cells.index_of(id);
    ensure(c >= 0, "parse", "measure names unknown cell '" + id + "'");
    base.cell_mass[c] = json_detail::rat(mass, "base mass");
  }
  VMassProfile profile;
  if (j.contains("profile")) {
    for (const auto& [id, bounds] : j.at("profile").items()) {
      int c = cells.index_of(id);
      ensure(c >= 0, "parse", "profile names unknown cell '" + id + "'");
      ensure(bounds.contains("inner") && bounds.contains("outer"), "parse",
             "bracket for '" + id + "' needs inner and outer");
      profile.bounds[c] = {json_detail::rat(bounds.at("inner"), "inner"),
                           json_detail::rat(bounds.at("outer"), "outer")};
    }
  }
  return {std::move(base), std::move(profile)};
}

/** \brief Relation file: classes of atom ids (singletons may be omitted). */
inline Json relation_to_json(const AtomPartition& space, const PartitionRelation& rel) {
  ensure(rel.size() == space.size(), "shape", "relation size mismatch");
  Json classes = Json::array();
  for (const auto& members : rel.classes()) {
    Json ids = Json::array();
    for (int i : members) ids.push_back(space.atoms[i].id);
    classes.push_back(std::move(ids));
  }
  Json j;
  j["classes"] = classes;
  return j;
}

/**
 * \brief Reads {"classes": [[ids]]} or {"pairs": [[id,id]]}. Pair lists
 *        are closed into a partition (reflexive, symmetric, transitive);
 *        atoms not mentioned form singleton classes.
 */
inline PartitionRelation relation_from_json(const Json& j, const AtomPartition& space) {
  const int n = space.size();
  if (j.contains("classes")) {
    std::vector<std::vector<int>> classes;
    for (const auto& ids : j.at("classes")) {
      std::vector<int> members;
      for (const auto& id : ids) {
        int i = space.index_of(id.get<std::string>());
        ensure(i >= 0, "parse", "relation names unknown atom '" + id.get<std::string>() + "'");
        members.push_back(i);
      }
      classes.push_back(std::move(members));
    }
    return PartitionRelation::from_classes(n, classes);
  }
  if (j.contains("pairs")) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& pair : j.at("pairs")) {
      ensure(pair.is_array() && pair.size() == 2, "parse", "relation pair must have two atoms");
      int a = space.index_of(pair[0].get<std::string>());
      int b = space.index_of(pair[1].get<std::string>());
      ensure(a >= 0 && b >= 0, "parse", "relation pair names an unknown atom");
      pairs.emplace_back(a, b);
    }
    return PartitionRelation::from_pairs(n, pairs);
  }
  fail("parse", "relation needs classes or pairs");
}

/** \brief Map file: {"map": {src_atom_id: dst_atom_id}}. */
inline Json map_to_json(const AtomPartition& src, const AtomPartition& dst, const RegionMap& f) {
  ensure(f.size() == src.size(), "shape", "map size mismatch");
  Json entries = Json::object();
  for (int i = 0; i < src.size(); ++i) entries[src.atoms[i].id] = dst.atoms[f.to[i]].id;
  Json j;
  j["map"] = entries;
  return j;
}

inline RegionMap map_from_json(const Json& j, const AtomPartition& src,
                               const AtomPartition& dst) {
  ensure(j.is_object() && j.contains("map"), "parse", "map file needs a map object");
  RegionMap f;
  f.to.assign(src.size(), -1);
  for (const auto& [from, to] : j.at("map").items()) {
    int i = src.index_of(from);
    ensure(i >= 0, "parse", "map names unknown source atom '" + from + "'");
    int d = dst.index_of(to.get<std::string>());
    ensure(d >= 0, "parse", "map names unknown destination atom '" + to.get<std::string>() + "'");
    f.to[i] = d;
  }
  for (int i = 0; i < src.size(); ++i)
    ensure(f.to[i] >= 0, "parse", "map misses source atom '" + src.atoms[i].id + "'");
  return f;
}

inline constexpr const char* kCertificateFormat = "lmpsym-certificate-v1";

inline Json certificate_to_json(const Certificate& cert) {
  Json j;
  j["format"] = kCertificateFormat;
  Json model;
  model["kind"] = cert.model.kind == ModelKind::s3 ? "s3" : "pair-sum";
  model["inner_total"] = json_detail::rat(cert.model.inner_total);
  model["outer_total"] = json_detail::rat(cert.model.outer_total);
  model["enumeration"] = cert.model.enumeration_id;
  j["model"] = model;
  Json claim;
  claim["type"] = "not-state-bisimilar";
  claim["left"] = cert.claim_left;
  claim["right"] = cert.claim_right;
  j["claim"] = claim;

  Json steps = Json::array();
  {
    Json s;
    s["type"] = "null-state";
    s["null_states"] = cert.null_step.null_states;
    Json witnesses = Json::array();
    for (const auto& [state, label] : cert.null_step.named_witnesses) {
      Json w;
      w["state"] = state;
      w["label"] = label;
      witnesses.push_back(std::move(w));
    }
    s["named_witnesses"] = witnesses;
    s["point_schema"] = cert.null_step.point_schema;
    steps.push_back(std::move(s));
  }
  {
    Json s;
    s["type"] = "separation";
    s["schema"] = cert.separation.schema;
    s["universal"] = cert.separation.universal;
    Json examples = Json::array();
    for (const auto& example : cert.separation.examples) {
      Json e;
      e["p"] = json_detail::rat(example.p);
      e["q"] = json_detail::rat(example.q);
      e["index"] = example.index.str();
      examples.push_back(std::move(e));
    }
    s["examples"] = examples;
    steps.push_back(std::move(s));
  }
  {
    Json s;
    s["type"] = "v-closedness";
    s["derived_from"] = cert.v_closed.derived_from;
    s["rule"] = cert.v_closed.rule;
    s["event"] = cert.v_closed.event_name;
    steps.push_back(std::move(s));
  }
  {
    Json s;
    s["type"] = "gap";
    s["label"] = cert.gap.label;
    s["event"] = cert.gap.event_name;
    s["left_state"] = cert.gap.left_state;
    s["right_state"] = cert.gap.right_state;
    s["left_value"] = json_detail::rat(cert.gap.left_value);
    s["right_value"] = json_detail::rat(cert.gap.right_value);
    steps.push_back(std::move(s));
  }
  j["steps"] = steps;
  return j;
}

inline Certificate certificate_from_json(const Json& j) {
  ensure(j.is_object(), "parse", "certificate must be an object");
  ensure(j.value("format", std::string()) == kCertificateFormat, "parse",
         "unknown certificate format");
  Certificate cert;
  const Json& model = j.at("model");
  std::string kind = model.value("kind", std::string());
  if (kind == "s3") cert.model.kind = ModelKind::s3;
  else if (kind == "pair-sum") cert.model.kind = ModelKind::pair_sum;
  else fail("parse", "unknown model kind '" + kind + "'");
  cert.model.inner_total = json_detail::rat(model.at("inner_total"), "inner_total");
  cert.model.outer_total = json_detail::rat(model.at("outer_total"), "outer_total");
  cert.model.enumeration_id = model.value("enumeration", std::string());

  const Json& claim = j.at("claim");
  ensure(claim.value("type", std::string()) == "not-state-bisimilar", "parse",
         "unknown claim type");
  cert.claim_left = claim.at("left").get<std::string>();
  cert.claim_right = claim.at("right").get<std::string>();

  const Json& steps = j.at("steps");
  ensure(steps.is_array() && steps.size() == 4, "parse", "certificate needs exactly 4 steps");
  {
    const Json& s = steps[0];
    ensure(s.value("type", std::string()) == "null-state", "parse",
           "step 0 must have type null-state");
    cert.null_step.null_states = s.at("null_states").get<std::vector<std::string>>();
    for (const auto& w : s.at("named_witnesses"))
      cert.null_step.named_witnesses.emplace_back(w.at("state").get<std::string>(),
                                                  w.at("label").get<std::string>());
    cert.null_step.point_schema = s.at("point_schema").get<std::string>();
  }
  {
    const Json& s = steps[1];
    ensure(s.value("type", std::string()) == "separation", "parse",
           "step 1 must have type separation");
    cert.separation.schema = s.at("schema").get<std::string>();
    cert.separation.universal = s.at("universal").get<bool>();
    for (const auto& e : s.at("examples")) {
      SeparationStep::Example example;
      example.p = json_detail::rat(e.at("p"), "example p");
      example.q = json_detail::rat(e.at("q"), "example q");
      example.index = Int(e.at("index").get<std::string>());
      cert.separation.examples.push_back(std::move(example));
    }
  }
  {
    const Json& s = steps[2];
    ensure(s.value("type", std::string()) == "v-closedness", "parse",
           "step 2 must have type v-closedness");
    cert.v_closed.derived_from = s.at("derived_from").get<std::vector<int>>();
    cert.v_closed.rule = s.at("rule").get<std::string>();
    cert.v_closed.event_name = s.at("event").get<std::string>();
  }
  {
    const Json& s = steps[3];
    ensure(s.value("type", std::string()) == "gap", "parse", "step 3 must have type gap");
    cert.gap.label = s.at("label").get<std::string>();
    cert.gap.event_name = s.at("event").get<std::string>();
    cert.gap.left_state = s.at("left_state").get<std::string>();
    cert.gap.right_state = s.at("right_state").get<std::string>();
    cert.gap.left_value = json_detail::rat(s.at("left_value"), "left_value");
    cert.gap.right_value = json_detail::rat(s.at("right_value"), "right_value");
  }
  return cert;
}

/** \brief Canonical text for any of the JSON documents above. */
inline std::string to_text(const Json& j) { return j.dump(2) + "\n"; }

namespace json_detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace json_detail

/**
 * \brief GraphViz export: atoms as nodes (clustered by relation classes
 *        when a relation is given), one edge per nonzero kernel mass.
 */
inline std::string export_dot(const SymbolicLmp& m, const PartitionRelation* rel = nullptr) {
  std::string out = "digraph lmp {\n  rankdir=LR;\n  node [shape=box];\n";
  auto node_line = [&m](int i) {
    return "    \"" + json_detail::dot_escape(m.space.atoms[i].id) + "\";\n";
  };
  if (rel != nullptr) {
    ensure(rel->size() == m.space.size(), "shape", "relation size mismatch");
    const auto classes = rel->classes();
    for (std::size_t c = 0; c < classes.size(); ++c) {
      out += "  subgraph cluster_" + std::to_string(c) + " {\n";
      out += "    label=\"class " + std::to_string(c) + "\";\n";
      for (int i : classes[c]) out += node_line(i);
      out += "  }\n";
    }
  } else {
    for (int i = 0; i < m.space.size(); ++i) out += node_line(i);
  }
  for (int r = 0; r < m.space.size(); ++r) {
    for (std::size_t l = 0; l < m.labels.size(); ++l) {
      for (int i = 0; i < m.space.size(); ++i) {
        const Rat& mass = m.kernel[r][l].atom_mass[i];
        if (mass == Rat(0)) continue;
        out += "  \"" + json_detail::dot_escape(m.space.atoms[r].id) + "\" -> \"" +
               json_detail::dot_escape(m.space.atoms[i].id) + "\" [label=\"" +
               json_detail::dot_escape(m.labels[l] + ":" + mass.str()) + "\"];\n";
      }
    }
  }
  out += "}\n";
  return out;
}

}  // namespace lmpsym

#endif  // LMPSYM_JSON_IO_HPP
