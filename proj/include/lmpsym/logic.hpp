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

#ifndef LMPSYM_LOGIC_HPP
#define LMPSYM_LOGIC_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lmpsym/errors.hpp"
#include "lmpsym/lmp.hpp"
#include "lmpsym/partition.hpp"
#include "lmpsym/rational.hpp"

namespace lmpsym {

/**
 * The modal logic with truth, finite conjunction, and a threshold
 * modality <a>_{q}: the states that reach a set satisfying the body
 * with probability at least q under label a. No negation.
 *
 * Formulas are canonical: conjunctions are flattened, sorted, and
 * deduplicated, so syntactically distinct spellings of the same formula
 * compare equal by render string.
 */
class Formula {
 public:
  enum class Kind { top, conj, diamond };

  static Formula top() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::top;
    n->render = "T";
    Formula f;
    f.node_ = std::move(n);
    return f;
  }

  static Formula conj(std::vector<Formula> children) {
    std::vector<Formula> flat;
    for (auto& c : children) {
      if (c.kind() == Kind::top) continue;
      if (c.kind() == Kind::conj) {
        for (const auto& g : c.node_->children) flat.push_back(g);
      } else {
        flat.push_back(std::move(c));
      }
    }
    std::sort(flat.begin(), flat.end(),
              [](const Formula& a, const Formula& b) { return a.render() < b.render(); });
    flat.erase(std::unique(flat.begin(), flat.end(),
                           [](const Formula& a, const Formula& b) {
                             return a.render() == b.render();
                           }),
               flat.end());
    if (flat.empty()) return top();
    if (flat.size() == 1) return flat[0];
    auto n = std::make_shared<Node>();
    n->kind = Kind::conj;
    std::string r = "(";
    for (std::size_t i = 0; i < flat.size(); ++i) {
      if (i) r += " & ";
      r += flat[i].render();
    }
    r += ")";
    n->children = std::move(flat);
    n->render = std::move(r);
    Formula f;
    f.node_ = std::move(n);
    return f;
  }

  static Formula diamond(const std::string& label, const Rat& q, Formula body) {
    ensure(!label.empty(), "shape", "empty modality label");
    ensure(Rat(0) <= q && q <= Rat(1), "range",
           "modality threshold " + q.str() + " outside [0,1]");
    auto n = std::make_shared<Node>();
    n->kind = Kind::diamond;
    n->label = label;
    n->q = q;
    n->render = "<" + label + ">_{" + q.str() + "} " + body.render();
    n->children.push_back(std::move(body));
    Formula f;
    f.node_ = std::move(n);
    return f;
  }

  Kind kind() const { return node_->kind; }
  const std::string& render() const { return node_->render; }
  const std::vector<Formula>& children() const { return node_->children; }
  const std::string& label() const { return node_->label; }
  const Rat& threshold() const { return node_->q; }

  int modal_depth() const {
    int d = 0;
    for (const auto& c : node_->children) d = std::max(d, c.modal_depth());
    return d + (kind() == Kind::diamond ? 1 : 0);
  }

  friend bool operator==(const Formula& a, const Formula& b) { return a.render() == b.render(); }
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  friend bool operator<(const Formula& a, const Formula& b) { return a.render() < b.render(); }

 private:
  struct Node {
    Kind kind = Kind::top;
    std::string label;  // diamond only
    Rat q;              // diamond only
    std::vector<Formula> children;
    std::string render;
  };

  std::shared_ptr<const Node> node_;
};

namespace logic_detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = formula();
    skip_space();
    ensure(pos_ == text_.size(), "parse",
           "trailing input at position " + std::to_string(pos_));
    return f;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    ensure(pos_ < text_.size(), "parse", "unexpected end of formula");
    return text_[pos_];
  }

  void expect(char c) {
    ensure(peek() == c, "parse",
           std::string("expected '") + c + "' at position " + std::to_string(pos_));
    ++pos_;
  }

  Formula formula() {
    char c = peek();
    if (c == 'T') {
      ++pos_;
      return Formula::top();
    }
    if (c == '(') {
      ++pos_;
      std::vector<Formula> children{formula()};
      while (peek() == '&') {
        ++pos_;
        children.push_back(formula());
      }
      expect(')');
      return Formula::conj(std::move(children));
    }
    if (c == '<') {
      ++pos_;
      std::string label = name();
      expect('>');
      expect('_');
      expect('{');
      Rat q = rational();
      expect('}');
      return Formula::diamond(label, q, formula());
    }
    fail("parse", std::string("unexpected character '") + c + "' at position " +
                      std::to_string(pos_));
  }

  std::string name() {
    skip_space();
    std::string out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
        out += c;
        ++pos_;
      } else {
        break;
      }
    }
    ensure(!out.empty(), "parse", "expected a label at position " + std::to_string(pos_));
    return out;
  }

  Rat rational() {
    skip_space();
    std::string out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-') {
        out += c;
        ++pos_;
      } else {
        break;
      }
    }
    ensure(!out.empty(), "parse", "expected a rational at position " + std::to_string(pos_));
    return Rat::parse(out);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace logic_detail

/**
 * \brief Parses the grammar
 *          phi := 'T' | '(' phi ('&' phi)* ')' | '<' label '>_{' q '}' phi
 *        with q a rational in [0,1]. Whitespace is insignificant.
 */
inline Formula parse_formula(std::string_view text) {
  return logic_detail::Parser(text).parse();
}

/** \brief Satisfying event of the formula, as a union of atoms. */
inline RegionMask eval_formula(const SymbolicLmp& m, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::top:
      return m.space.full_mask();
    case Formula::Kind::conj: {
      RegionMask acc = m.space.full_mask();
      for (const auto& c : f.children()) acc = mask_and(acc, eval_formula(m, c));
      return acc;
    }
    case Formula::Kind::diamond: {
      int l = m.label_index(f.label());
      RegionMask body = eval_formula(m, f.children()[0]);
      RegionMask out(m.space.size(), false);
      for (int r = 0; r < m.space.size(); ++r)
        out[r] = m.kernel_mass(r, l, body) >= f.threshold();
      return out;
    }
  }
  fail("shape", "unreachable formula kind");
}

/**
 * \brief Every canonical formula over the given labels and thresholds up
 *        to the given modal depth, in deterministic order: level by
 *        level, conjunction subsets by size then lexicographic choice.
 *        Throws "range" if more than max_count formulas would result.
 */
inline std::vector<Formula> enumerate_formulas(const std::vector<std::string>& labels,
                                               const std::vector<Rat>& thresholds, int depth,
                                               std::size_t max_count = std::size_t{1} << 20) {
  ensure(depth >= 0, "range", "negative modal depth");
  std::vector<Formula> out{Formula::top()};
  std::set<std::string> seen{out[0].render()};
  std::vector<Formula> level = out;

  for (int d = 1; d <= depth; ++d) {
    // Diamonds over everything of smaller depth.
    std::vector<Formula> diamonds;
    std::set<std::string> diamond_seen;
    for (const auto& a : labels) {
      for (const auto& q : thresholds) {
        for (const auto& body : level) {
          Formula f = Formula::diamond(a, q, body);
          if (diamond_seen.insert(f.render()).second) diamonds.push_back(std::move(f));
        }
      }
    }
    const std::size_t m = diamonds.size();
    ensure(m < 63, "range", "too many distinct modalities to enumerate");
    ensure((std::size_t{1} << m) <= max_count, "range",
           "formula enumeration exceeds the cap");

    std::vector<Formula> next_level;
    for (std::size_t size = 0; size <= m; ++size) {
      std::vector<std::size_t> pick(size);
      for (std::size_t i = 0; i < size; ++i) pick[i] = i;
      while (true) {
        std::vector<Formula> children;
        for (std::size_t i : pick) children.push_back(diamonds[i]);
        Formula f = Formula::conj(std::move(children));
        next_level.push_back(f);
        if (seen.insert(f.render()).second) {
          out.push_back(f);
          ensure(out.size() <= max_count, "range", "formula enumeration exceeds the cap");
        }
        // Advance the combination in lexicographic order.
        std::size_t i = size;
        while (i > 0) {
          --i;
          if (pick[i] + (size - i) < m) {
            ++pick[i];
            for (std::size_t j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
            break;
          }
          if (i == 0) { i = size + 1; break; }
        }
        if (size == 0 || i == size + 1) break;
      }
    }
    level = std::move(next_level);
  }
  return out;
}

struct LogicalEquivalence {
  PartitionRelation relation;
  int depth = 0;               // rounds until the family stopped growing
  std::size_t family_size = 0;
  bool stabilized = false;
};

/**
 * \brief Regions indistinguishable by any formula, computed semantically:
 *        grow the family of satisfying events from the whole space,
 *        closing under the modality and intersection, then group regions
 *        by their membership profile. For each event and label only the
 *        kernel masses actually achieved matter as thresholds, so the
 *        default dynamic choice covers every rational q exactly; passing
 *        a threshold list instead restricts the logic to those q, and a
 *        nonnegative max_depth cuts the growth off early. Runs one route
 *        only; the refinement computed by the bisimulation module is the
 *        independent counterpart.
 */
inline LogicalEquivalence logical_equivalence(const SymbolicLmp& m, int max_depth = -1,
                                              const std::vector<Rat>* thresholds = nullptr) {
  const int n = m.space.size();
  std::set<RegionMask> family;
  family.insert(m.space.full_mask());

  LogicalEquivalence result;
  while (max_depth < 0 || result.depth < max_depth) {
    std::set<RegionMask> fresh;
    for (const auto& event : family) {
      for (std::size_t l = 0; l < m.labels.size(); ++l) {
        std::vector<Rat> qs;
        if (thresholds) {
          qs = *thresholds;
        } else {
          for (int r = 0; r < n; ++r) qs.push_back(m.kernel_mass(r, static_cast<int>(l), event));
          std::sort(qs.begin(), qs.end());
          qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
        }
        for (const auto& q : qs) {
          RegionMask s(n, false);
          bool any = false;
          for (int r = 0; r < n; ++r) {
            s[r] = m.kernel_mass(r, static_cast<int>(l), event) >= q;
            any = any || s[r];
          }
          if (any && !family.count(s)) fresh.insert(std::move(s));
        }
      }
    }
    if (fresh.empty()) {
      result.stabilized = true;
      break;
    }
    for (const auto& s : fresh) family.insert(s);
    // Close under intersection.
    std::vector<RegionMask> worklist(fresh.begin(), fresh.end());
    while (!worklist.empty()) {
      RegionMask s = std::move(worklist.back());
      worklist.pop_back();
      std::vector<RegionMask> snapshot(family.begin(), family.end());
      for (const auto& t : snapshot) {
        RegionMask meet = mask_and(s, t);
        if (mask_count(meet) == 0) continue;
        if (family.insert(meet).second) worklist.push_back(std::move(meet));
      }
    }
    ++result.depth;
  }

  std::vector<int> class_ids(n, 0);
  {
    std::map<std::vector<bool>, int> by_profile;
    for (int r = 0; r < n; ++r) {
      std::vector<bool> profile;
      profile.reserve(family.size());
      for (const auto& event : family) profile.push_back(event[r]);
      auto it = by_profile.find(profile);
      if (it == by_profile.end())
        it = by_profile.emplace(std::move(profile), static_cast<int>(by_profile.size())).first;
      class_ids[r] = it->second;
    }
  }
  result.relation = PartitionRelation::from_class_ids(class_ids);
  result.family_size = family.size();
  return result;
}

}  // namespace lmpsym

#endif  // LMPSYM_LOGIC_HPP
