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

// Batch driver for the symbolic process workbench. Subcommands read and
// write the JSON formats defined in the library headers. Exit codes:
//   0  command ran and every checked property held
//   2  command ran and a checked property failed (witness printed)
//   1  usage or input errors
// All randomized checks take their seed from --seed (default: the
// LMPSYM_SEED environment variable, then a fixed constant), so identical
// inputs and flags give byte-identical outputs.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lmpsym/lmpsym.hpp"

namespace {

using lmpsym::Json;
using lmpsym::Rat;

constexpr std::uint64_t kDefaultSeed = 20260816ULL;

std::uint64_t default_seed() {
  const char* env = std::getenv("LMPSYM_SEED");
  if (env == nullptr) return kDefaultSeed;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    lmpsym::fail("parse", std::string("LMPSYM_SEED is not a number: '") + env + "'");
  }
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  lmpsym::ensure(in.good(), "parse", "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    lmpsym::fail("parse", "malformed JSON in '" + path + "': " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  lmpsym::ensure(out.good(), "parse", "cannot write '" + path + "'");
  out << text;
  lmpsym::ensure(out.good(), "parse", "write to '" + path + "' failed");
}

// An input file is either a process (has "space") or a bare space recipe.
lmpsym::AtomPartition load_space(const std::string& path) {
  Json j = read_json(path);
  if (j.contains("space")) return lmpsym::space_from_json(j.at("space"));
  return lmpsym::space_from_json(j);
}

lmpsym::SymbolicLmp load_lmp(const std::string& path) {
  return lmpsym::lmp_from_json(read_json(path));
}

// "--profile 1/4,3/4" -> the two totals.
std::pair<Rat, Rat> parse_profile(const std::string& text) {
  auto comma = text.find(',');
  lmpsym::ensure(comma != std::string::npos, "parse",
                 "profile must be 'inner,outer', got '" + text + "'");
  return {Rat::parse(text.substr(0, comma)), Rat::parse(text.substr(comma + 1))};
}

std::string side_name(lmpsym::VSide side) {
  switch (side) {
    case lmpsym::VSide::in_v: return "in";
    case lmpsym::VSide::out_v: return "out";
    default: return "none";
  }
}

std::string event_to_string(const lmpsym::AtomPartition& space, const lmpsym::RegionMask& e) {
  std::string s = "{";
  bool first = true;
  for (int i : lmpsym::mask_indices(e)) {
    if (!first) s += ", ";
    s += space.atoms[i].id;
    first = false;
  }
  return s + "}";
}

Json relation_report(const lmpsym::AtomPartition& space, const lmpsym::PartitionRelation& rel) {
  Json j = lmpsym::relation_to_json(space, rel);
  j["num_classes"] = rel.num_classes();
  return j;
}

void print_classes(const lmpsym::AtomPartition& space, const lmpsym::PartitionRelation& rel) {
  std::cout << "classes (" << rel.num_classes() << "):\n";
  for (const auto& members : rel.classes()) {
    std::cout << "  {";
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) std::cout << ", ";
      std::cout << space.atoms[members[i]].id;
    }
    std::cout << "}\n";
  }
}

struct PairQuery {
  std::vector<std::string> names;  // empty or exactly two region names

  bool active() const { return !names.empty(); }

  std::pair<int, int> resolve(const lmpsym::AtomPartition& space) const {
    return {space.atom_of_point(names[0]), space.atom_of_point(names[1])};
  }
};

// Shared by `bisim event` and `bisim state`: print or query a relation.
int report_relation(const lmpsym::SymbolicLmp& m, const lmpsym::PartitionRelation& rel,
                    const PairQuery& pair, const std::string& flavour, bool json,
                    const std::string& dot_path) {
  if (!dot_path.empty()) write_text(dot_path, lmpsym::export_dot(m, &rel));
  if (pair.active()) {
    auto [a, b] = pair.resolve(m.space);
    bool same = rel.same(a, b);
    if (json) {
      Json j;
      j["query"] = {{"left", pair.names[0]}, {"right", pair.names[1]}};
      j[flavour + "-bisimilar"] = same;
      std::cout << lmpsym::to_text(j);
    } else {
      std::cout << flavour << "-bisimilar: " << (same ? "yes" : "no") << "\n";
    }
    return same ? 0 : 2;
  }
  if (json) {
    std::cout << lmpsym::to_text(relation_report(m.space, rel));
  } else {
    print_classes(m.space, rel);
  }
  return 0;
}

int cmd_gallery_build(const std::string& model, int n, bool dyadic,
                      const std::optional<std::string>& profile,
                      const std::map<std::string, std::string>& cell_profile,
                      const std::string& out_dir, bool json) {
  lmpsym::GalleryConfig config;
  config.n_generators = n;
  config.dyadic = dyadic;
  if (profile) {
    auto [inner, outer] = parse_profile(*profile);
    config.inner_total = inner;
    config.outer_total = outer;
  }
  if (!cell_profile.empty()) {
    std::map<std::string, lmpsym::VBounds> by_cell;
    for (const auto& [cell, bounds] : cell_profile) {
      auto [inner, outer] = parse_profile(bounds);
      by_cell[cell] = lmpsym::VBounds{inner, outer};
    }
    config.profile_by_cell = std::move(by_cell);
  }

  std::filesystem::create_directories(out_dir);
  auto path = [&](const std::string& name) {
    return (std::filesystem::path(out_dir) / name).string();
  };

  Json manifest;
  manifest["model"] = model;
  manifest["n"] = n;
  manifest["dyadic"] = dyadic;
  manifest["profile"] = {{"inner", config.inner_total.wire()},
                         {"outer", config.outer_total.wire()}};
  std::vector<std::string> files;

  auto emit = [&](const std::string& name, const Json& j) {
    write_text(path(name), lmpsym::to_text(j));
    files.push_back(name);
  };

  if (model == "s3") {
    emit("model.json", lmpsym::lmp_to_json(lmpsym::build_s3(config)));
  } else if (model == "s3-minus-s" || model == "s3-minus-t") {
    emit("model.json",
         lmpsym::lmp_to_json(lmpsym::build_s3_minus(config, model.substr(9))));
  } else if (model == "T") {
    emit("model.json", lmpsym::lmp_to_json(lmpsym::build_T(config)));
  } else if (model == "Tprime") {
    emit("model.json", lmpsym::lmp_to_json(lmpsym::build_Tprime(config)));
  } else if (model == "sum-example") {
    lmpsym::SumExample ex = lmpsym::build_sum_example(config);
    emit("model.json", lmpsym::lmp_to_json(ex.lmp));
    emit("relation.json", lmpsym::relation_to_json(ex.lmp.space, ex.relation));
  } else if (model == "cospan") {
    lmpsym::CospanBundle bundle = lmpsym::build_obstruction_cospan(config);
    emit("left.json", lmpsym::lmp_to_json(bundle.left));
    emit("right.json", lmpsym::lmp_to_json(bundle.right));
    emit("target.json", lmpsym::lmp_to_json(bundle.target));
    emit("left_map.json",
         lmpsym::map_to_json(bundle.left.space, bundle.target.space, bundle.left_leg));
    emit("right_map.json",
         lmpsym::map_to_json(bundle.right.space, bundle.target.space, bundle.right_leg));
  } else {
    lmpsym::fail("parse", "unknown model '" + model + "'");
  }

  manifest["files"] = files;
  write_text(path("manifest.json"), lmpsym::to_text(manifest));

  if (json) {
    std::cout << lmpsym::to_text(manifest);
  } else {
    for (const auto& f : files) std::cout << "wrote " << path(f) << "\n";
    std::cout << "wrote " << path("manifest.json") << "\n";
  }
  return 0;
}

int cmd_lmp_validate(const std::string& file, bool probability, bool json,
                     const std::string& dot_path) {
  lmpsym::SymbolicLmp m = load_lmp(file);
  lmpsym::ValidationReport rep = lmpsym::validate_lmp(m, probability);
  if (!dot_path.empty()) write_text(dot_path, lmpsym::export_dot(m));
  if (json) {
    Json j;
    j["valid"] = rep.ok;
    j["problems"] = rep.problems;
    Json values = Json::array();
    for (const auto& v : rep.achieved_values) values.push_back(v.wire());
    j["achieved_values"] = values;
    std::cout << lmpsym::to_text(j);
  } else {
    std::cout << "valid: " << (rep.ok ? "yes" : "no") << "\n";
    for (const auto& p : rep.problems) std::cout << "  problem: " << p << "\n";
  }
  return rep.ok ? 0 : 2;
}

int cmd_logic_eval(const std::string& file, const std::string& formula_text, bool json) {
  lmpsym::SymbolicLmp m = load_lmp(file);
  lmpsym::Formula f = lmpsym::parse_formula(formula_text);
  lmpsym::RegionMask sat = lmpsym::eval_formula(m, f);
  if (json) {
    Json j;
    j["formula"] = f.render();
    Json ids = Json::array();
    for (int i : lmpsym::mask_indices(sat)) ids.push_back(m.space.atoms[i].id);
    j["satisfied"] = ids;
    std::cout << lmpsym::to_text(j);
  } else {
    std::cout << "formula: " << f.render() << "\n";
    std::cout << "satisfied " << event_to_string(m.space, sat) << "\n";
  }
  return 0;
}

int cmd_logic_equiv(const std::string& file, int max_depth, bool json) {
  lmpsym::SymbolicLmp m = load_lmp(file);
  lmpsym::LogicalEquivalence eq = lmpsym::logical_equivalence(m, max_depth);
  if (json) {
    Json j = relation_report(m.space, eq.relation);
    j["depth"] = eq.depth;
    j["family_size"] = eq.family_size;
    j["stabilized"] = eq.stabilized;
    std::cout << lmpsym::to_text(j);
  } else {
    std::cout << "stabilized: " << (eq.stabilized ? "yes" : "no") << " after depth "
              << eq.depth << " with " << eq.family_size << " events\n";
    print_classes(m.space, eq.relation);
  }
  return 0;
}

int cmd_bisim_check(const std::string& lmp_file, const std::string& rel_file, bool json) {
  lmpsym::SymbolicLmp m = load_lmp(lmp_file);
  lmpsym::PartitionRelation rel = lmpsym::relation_from_json(read_json(rel_file), m.space);
  lmpsym::StateBisimReport rep = lmpsym::check_state_bisimulation(m, rel);
  if (json) {
    Json j;
    j["bisimulation"] = rep.ok;
    if (rep.witness) {
      j["witness"] = {{"left", m.space.atoms[rep.witness->left].id},
                      {"right", m.space.atoms[rep.witness->right].id},
                      {"label", rep.witness->label},
                      {"event", lmpsym::Json::array()}};
      for (int i : lmpsym::mask_indices(rep.witness->event))
        j["witness"]["event"].push_back(m.space.atoms[i].id);
    }
    std::cout << lmpsym::to_text(j);
  } else {
    std::cout << "bisimulation: " << (rep.ok ? "yes" : "no") << "\n";
    if (rep.witness) {
      std::cout << "  witness: " << m.space.atoms[rep.witness->left].id << " vs "
                << m.space.atoms[rep.witness->right].id << " under '" << rep.witness->label
                << "' on " << event_to_string(m.space, rep.witness->event) << "\n";
    }
  }
  return rep.ok ? 0 : 2;
}

int cmd_bisim_refute(bool full_s3, const std::optional<std::string>& profile,
                     const std::vector<std::string>& pair, const std::string& out,
                     bool json) {
  lmpsym::GalleryConfig config;
  if (profile) {
    auto [inner, outer] = parse_profile(*profile);
    config.inner_total = inner;
    config.outer_total = outer;
  }
  lmpsym::FullModelDescriptor model =
      full_s3 ? lmpsym::full_s3_descriptor(config) : lmpsym::full_pair_sum_descriptor(config);
  auto designated = lmpsym::designated_pair(model.kind);
  std::string left = pair.empty() ? designated.first : pair[0];
  std::string right = pair.empty() ? designated.second : pair[1];

  lmpsym::Certificate cert;
  try {
    cert = lmpsym::prove_not_state_bisimilar(model, left, right);
  } catch (const lmpsym::Error& e) {
    if (e.code() != "no-gap") throw;
    // The claim itself is false for this profile, so report it as a failed
    // check rather than a usage error.
    if (json) {
      Json j;
      j["refuted"] = false;
      j["reason"] = e.what();
      std::cout << lmpsym::to_text(j);
    } else {
      std::cout << "refutation failed: " << e.what() << "\n";
    }
    return 2;
  }
  Json j = lmpsym::certificate_to_json(cert);
  if (!out.empty()) {
    write_text(out, lmpsym::to_text(j));
    if (json) {
      Json note;
      note["written"] = out;
      note["gap"] = {{"left", cert.gap.left_value.wire()},
                     {"right", cert.gap.right_value.wire()}};
      std::cout << lmpsym::to_text(note);
    } else {
      std::cout << "certificate written to " << out << "\n";
      std::cout << "gap: " << cert.gap.left_state << " gives " << cert.gap.left_value.str()
                << ", " << cert.gap.right_state << " gives " << cert.gap.right_value.str()
                << " on " << cert.gap.event_name << "\n";
    }
  } else {
    std::cout << lmpsym::to_text(j);
  }
  return 0;
}

int cmd_bisim_verify(const std::string& cert_file, std::uint64_t samples, std::uint64_t seed,
                     int max_denominator, bool json) {
  lmpsym::Certificate cert = lmpsym::certificate_from_json(read_json(cert_file));
  lmpsym::VerifyOptions options;
  options.samples = samples;
  options.seed = seed;
  options.max_denominator = max_denominator;
  lmpsym::VerifyReport rep = lmpsym::verify_certificate(cert, options);
  if (json) {
    Json j;
    j["ok"] = rep.ok;
    j["failed_step"] = rep.failed_step;
    j["step_type"] = rep.step_type;
    j["message"] = rep.message;
    j["pairs_checked"] = rep.pairs_checked;
    std::cout << lmpsym::to_text(j);
  } else if (rep.ok) {
    std::cout << "certificate: pass (" << rep.pairs_checked << " separation pairs checked)\n";
  } else {
    std::cout << "certificate: fail at step " << rep.failed_step << " (" << rep.step_type
              << "): " << rep.message << "\n";
  }
  return rep.ok ? 0 : 2;
}

int cmd_zigzag_check(const std::string& map_file, const std::string& src_file,
                     const std::string& dst_file, bool json) {
  lmpsym::SymbolicLmp src = load_lmp(src_file);
  lmpsym::SymbolicLmp dst = load_lmp(dst_file);
  lmpsym::RegionMap f = lmpsym::map_from_json(read_json(map_file), src.space, dst.space);
  lmpsym::ZigzagReport rep = lmpsym::check_zigzag(f, src, dst);
  if (json) {
    Json j;
    j["zigzag"] = rep.ok;
    j["notes"] = rep.notes;
    if (rep.violation) {
      j["violation"] = {{"src_region", src.space.atoms[rep.violation->src_region].id},
                        {"label", rep.violation->label},
                        {"dst_atom", dst.space.atoms[rep.violation->dst_atom].id},
                        {"lhs", rep.violation->lhs.wire()},
                        {"rhs", rep.violation->rhs.wire()}};
    }
    std::cout << lmpsym::to_text(j);
  } else {
    std::cout << "zig-zag: " << (rep.ok ? "yes" : "no") << "\n";
    for (const auto& n : rep.notes) std::cout << "  note: " << n << "\n";
    if (rep.violation) {
      std::cout << "  violation: region " << src.space.atoms[rep.violation->src_region].id
                << " label '" << rep.violation->label << "' sends "
                << rep.violation->lhs.str() << " to the preimage of "
                << dst.space.atoms[rep.violation->dst_atom].id << " but the image region sends "
                << rep.violation->rhs.str() << "\n";
    }
  }
  return rep.ok ? 0 : 2;
}

int cmd_semipullback_demo(int n, bool dyadic, const std::optional<std::string>& profile,
                          bool json) {
  lmpsym::GalleryConfig config;
  config.n_generators = n;
  config.dyadic = dyadic;
  if (profile) {
    auto [inner, outer] = parse_profile(*profile);
    config.inner_total = inner;
    config.outer_total = outer;
  }
  lmpsym::CospanBundle bundle = lmpsym::build_obstruction_cospan(config);
  auto obstruction = lmpsym::semipullback_obstruction(bundle);
  if (json) {
    Json j;
    j["profile"] = {{"inner", config.inner_total.wire()},
                    {"outer", config.outer_total.wire()}};
    j["obstruction"] = obstruction.has_value();
    if (obstruction) {
      j["witness"] = {{"region", bundle.left.space.atoms[obstruction->region].id},
                      {"label", obstruction->label},
                      {"event", event_to_string(bundle.left.space, obstruction->witness_event)},
                      {"left_value", obstruction->left_value.wire()},
                      {"right_value", obstruction->right_value.wire()},
                      {"note", obstruction->note}};
    }
    std::cout << lmpsym::to_text(j);
  } else if (obstruction) {
    std::cout << "obstruction: region " << bundle.left.space.atoms[obstruction->region].id
              << " under '" << obstruction->label << "' gives the event "
              << event_to_string(bundle.left.space, obstruction->witness_event) << " mass "
              << obstruction->left_value.str() << " on one side and "
              << obstruction->right_value.str() << " on the other\n";
    std::cout << "no common refinement can match both legs\n";
  } else {
    std::cout << "no obstruction: the paired kernels agree, the cospan completes\n";
  }
  return 0;
}

int cmd_measure_extend(const std::string& space_file,
                       const std::optional<std::string>& measure_file,
                       const std::optional<std::string>& profile, bool json) {
  lmpsym::AtomPartition space = load_space(space_file);
  lmpsym::BaseCells cells = lmpsym::base_cells(space);

  lmpsym::BaseMeasure base;
  lmpsym::VMassProfile bounds;
  if (measure_file) {
    auto loaded = lmpsym::measure_from_json(read_json(*measure_file), cells);
    base = std::move(loaded.first);
    bounds = std::move(loaded.second);
  } else {
    for (int c = 0; c < cells.size(); ++c)
      base.cell_mass.push_back(space.atoms[cells.members[c][0]].body.interval_length());
    Rat inner(0), outer(1);
    if (profile) {
      auto parsed = parse_profile(*profile);
      inner = parsed.first;
      outer = parsed.second;
    }
    bounds = lmpsym::proportional_profile(cells, base, inner, outer);
  }
  bounds.validate(cells, base);

  lmpsym::MeasureValue lo = lmpsym::lower_extension(cells, base, bounds);
  lmpsym::MeasureValue hi = lmpsym::upper_extension(cells, base, bounds);
  lmpsym::RegionMask v = space.v_mask();

  if (json) {
    Json j;
    j["total"] = base.total().wire();
    j["v_lower"] = lo.of(v).wire();
    j["v_upper"] = hi.of(v).wire();
    Json atoms = Json::object();
    for (int i = 0; i < space.size(); ++i) {
      atoms[space.atoms[i].id] = {{"side", side_name(space.atoms[i].side)},
                                  {"lower", lo.atom_mass[i].wire()},
                                  {"upper", hi.atom_mass[i].wire()}};
    }
    j["atoms"] = atoms;
    j["agree"] = lo.atom_mass == hi.atom_mass;
    std::cout << lmpsym::to_text(j);
  } else {
    std::cout << "total mass: " << base.total().str() << "\n";
    std::cout << "abstract set: lower " << lo.of(v).str() << ", upper " << hi.of(v).str()
              << "\n";
    if (lo.atom_mass == hi.atom_mass) {
      std::cout << "the two extensions coincide\n";
    } else {
      std::cout << "the two extensions disagree; per-atom masses:\n";
      for (int i = 0; i < space.size(); ++i) {
        std::cout << "  " << space.atoms[i].id << ": " << lo.atom_mass[i].str() << " vs "
                  << hi.atom_mass[i].str() << "\n";
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic workbench for labelled Markov processes"};
  app.require_subcommand(1);
  app.fallthrough();  // lets the global --json trail the subcommand arguments
  bool json = false;
  app.add_flag("--json", json, "machine-readable JSON reports");

  // gallery build
  auto* gallery = app.add_subcommand("gallery", "built-in model family");
  gallery->require_subcommand(1);
  auto* gbuild = gallery->add_subcommand("build", "write a model and its manifest");
  std::string model = "s3";
  int n = 2;
  bool dyadic = false;
  std::optional<std::string> profile;
  std::vector<std::string> cell_profiles;
  std::string out_dir;
  gbuild->add_option("--model", model,
                     "s3, s3-minus-s, s3-minus-t, T, Tprime, sum-example, cospan")
      ->capture_default_str();
  gbuild->add_option("--n", n, "number of interval generators")->capture_default_str();
  gbuild->add_flag("--dyadic", dyadic, "use the dyadic generator ladder");
  gbuild->add_option("--profile", profile, "abstract-set totals 'inner,outer'");
  gbuild->add_option("--cell-profile", cell_profiles,
                     "per-cell bracket 'hull=inner,outer' (repeatable)");
  gbuild->add_option("--out", out_dir, "output directory")->required();

  // lmp validate
  auto* lmp = app.add_subcommand("lmp", "process files");
  lmp->require_subcommand(1);
  auto* lvalidate = lmp->add_subcommand("validate", "check a process file");
  std::string lmp_file;
  bool probability = false;
  std::string dot_path;
  lvalidate->add_option("file", lmp_file, "process JSON")->required();
  lvalidate->add_flag("--probability", probability, "require rows to sum to one");
  lvalidate->add_option("--dot", dot_path, "also write a DOT drawing");

  // logic eval / equiv
  auto* logic = app.add_subcommand("logic", "modal formulas");
  logic->require_subcommand(1);
  auto* leval = logic->add_subcommand("eval", "evaluate a formula");
  std::string eval_file, formula_text;
  leval->add_option("file", eval_file, "process JSON")->required();
  leval->add_option("formula", formula_text, "formula, e.g. '<a>_{1/2} T'")->required();
  auto* lequiv = logic->add_subcommand("equiv", "logical indistinguishability classes");
  std::string equiv_file;
  int max_depth = -1;
  lequiv->add_option("file", equiv_file, "process JSON")->required();
  lequiv->add_option("--max-depth", max_depth, "stop the family growth early");

  // bisim event / state / check / refute / verify-cert
  auto* bisim = app.add_subcommand("bisim", "bisimulations and certificates");
  bisim->require_subcommand(1);

  auto* bevent = bisim->add_subcommand("event", "stable-algebra classes");
  std::string bevent_file;
  PairQuery bevent_pair;
  std::string bevent_dot;
  bevent->add_option("file", bevent_file, "process JSON")->required();
  bevent->add_option("--pair", bevent_pair.names, "two region names to compare")
      ->expected(2);
  bevent->add_option("--dot", bevent_dot, "also write a clustered DOT drawing");

  auto* bstate = bisim->add_subcommand("state", "largest bisimulation classes");
  std::string bstate_file;
  PairQuery bstate_pair;
  std::string bstate_dot;
  bstate->add_option("file", bstate_file, "process JSON")->required();
  bstate->add_option("--pair", bstate_pair.names, "two region names to compare")
      ->expected(2);
  bstate->add_option("--dot", bstate_dot, "also write a clustered DOT drawing");

  auto* bcheck = bisim->add_subcommand("check", "is the relation a bisimulation");
  std::string bcheck_lmp, bcheck_rel;
  bcheck->add_option("file", bcheck_lmp, "process JSON")->required();
  bcheck->add_option("relation", bcheck_rel, "relation JSON")->required();

  auto* brefute = bisim->add_subcommand("refute", "emit a non-bisimilarity certificate");
  bool full_s3 = false, full_pair_sum = false;
  std::optional<std::string> refute_profile;
  std::vector<std::string> refute_pair;
  std::string refute_out;
  brefute->add_flag("--full-s3", full_s3, "the full split-interval model");
  brefute->add_flag("--full-pair-sum", full_pair_sum, "the two-copy sum model");
  brefute->add_option("--profile", refute_profile, "abstract-set totals 'inner,outer'");
  brefute->add_option("--pair", refute_pair, "two state names (default: designated pair)")
      ->expected(2);
  brefute->add_option("--out", refute_out, "certificate file (stdout if omitted)");

  auto* bverify = bisim->add_subcommand("verify-cert", "replay a certificate");
  std::string cert_file;
  std::uint64_t samples = 1000;
  std::uint64_t seed = default_seed();
  int max_denominator = 64;
  bverify->add_option("file", cert_file, "certificate JSON")->required();
  bverify->add_option("--samples", samples, "separation pairs to sample")
      ->capture_default_str();
  bverify->add_option("--seed", seed, "seed for the sampled checks");
  bverify->add_option("--max-denominator", max_denominator, "densest sampled points")
      ->capture_default_str();

  // zigzag check
  auto* zigzag = app.add_subcommand("zigzag", "morphism checks");
  zigzag->require_subcommand(1);
  auto* zcheck = zigzag->add_subcommand("check", "kernel equation for a region map");
  std::string map_file, src_file, dst_file;
  zcheck->add_option("map", map_file, "map JSON")->required();
  zcheck->add_option("source", src_file, "source process JSON")->required();
  zcheck->add_option("target", dst_file, "target process JSON")->required();

  // semipullback demo
  auto* semi = app.add_subcommand("semipullback", "cospan completion");
  semi->require_subcommand(1);
  auto* sdemo = semi->add_subcommand("demo", "exhibit the completion obstruction");
  int demo_n = 1;
  bool demo_dyadic = false;
  std::optional<std::string> demo_profile;
  sdemo->add_option("--n", demo_n, "number of interval generators")->capture_default_str();
  sdemo->add_flag("--dyadic", demo_dyadic, "use the dyadic generator ladder");
  sdemo->add_option("--profile", demo_profile, "abstract-set totals 'inner,outer'");

  // measure extend
  auto* measure = app.add_subcommand("measure", "measure extension");
  measure->require_subcommand(1);
  auto* mextend = measure->add_subcommand("extend", "lower and upper extensions of a space");
  std::string space_file;
  std::optional<std::string> measure_file, extend_profile;
  mextend->add_option("space", space_file, "space or process JSON")->required();
  mextend->add_option("--measure", measure_file, "base measure and profile JSON");
  mextend->add_option("--profile", extend_profile, "proportional totals 'inner,outer'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // flatten CLI11's exit-code family to the 0/1 contract
  }

  try {
    if (gbuild->parsed()) {
      std::map<std::string, std::string> by_cell;
      for (const auto& entry : cell_profiles) {
        auto eq = entry.find('=');
        lmpsym::ensure(eq != std::string::npos, "parse",
                       "cell profile must be 'hull=inner,outer', got '" + entry + "'");
        by_cell[entry.substr(0, eq)] = entry.substr(eq + 1);
      }
      return cmd_gallery_build(model, n, dyadic, profile, by_cell, out_dir, json);
    }
    if (lvalidate->parsed()) return cmd_lmp_validate(lmp_file, probability, json, dot_path);
    if (leval->parsed()) return cmd_logic_eval(eval_file, formula_text, json);
    if (lequiv->parsed()) return cmd_logic_equiv(equiv_file, max_depth, json);
    if (bevent->parsed()) {
      lmpsym::SymbolicLmp m = load_lmp(bevent_file);
      return report_relation(m, lmpsym::event_bisimilarity(m), bevent_pair, "event", json,
                             bevent_dot);
    }
    if (bstate->parsed()) {
      lmpsym::SymbolicLmp m = load_lmp(bstate_file);
      return report_relation(m, lmpsym::largest_state_bisimulation(m), bstate_pair, "state",
                             json, bstate_dot);
    }
    if (bcheck->parsed()) return cmd_bisim_check(bcheck_lmp, bcheck_rel, json);
    if (brefute->parsed()) {
      lmpsym::ensure(full_s3 != full_pair_sum, "parse",
                     "choose exactly one of --full-s3 and --full-pair-sum");
      return cmd_bisim_refute(full_s3, refute_profile, refute_pair, refute_out, json);
    }
    if (bverify->parsed())
      return cmd_bisim_verify(cert_file, samples, seed, max_denominator, json);
    if (zcheck->parsed()) return cmd_zigzag_check(map_file, src_file, dst_file, json);
    if (sdemo->parsed()) return cmd_semipullback_demo(demo_n, demo_dyadic, demo_profile, json);
    if (mextend->parsed())
      return cmd_measure_extend(space_file, measure_file, extend_profile, json);
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const lmpsym::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
