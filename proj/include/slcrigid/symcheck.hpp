#pragma once

#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "slcrigid/error.hpp"
#include "slcrigid/sparsity.hpp"
#include "slcrigid/symgraph.hpp"

namespace slc {

/// coeff * 2cos(2*pi*num/den), kept symbolic so that comparisons with the
/// integer edge/loop characters are exact.
struct CharacterValue {
  long long coeff = 0;
  int num = 0;
  int den = 1;

  static CharacterValue integer(long long v) { return {v, 0, 1}; }

  /// 2cos(2*pi*num/den) when it is an integer (Niven: den in {1,2,3,4,6}).
  std::optional<long long> twice_cos() const {
    switch (den / std::gcd(num, den)) {
      case 1: return 2;
      case 2: return -2;
      case 3: return -1;
      case 4: return 0;
      case 6: return 1;
      default: return std::nullopt;
    }
  }

  double value() const {
    return static_cast<double>(coeff) * 2.0 * std::cos(2.0 * std::numbers::pi * num / den);
  }

  bool equals(long long other) const {
    if (auto c = twice_cos()) return coeff * *c == other;
    return coeff == 0 && other == 0;
  }
};

struct CharacterReport {
  std::vector<Element> elements;
  std::vector<long long> rows;          // chi(P_{E,L})
  std::vector<CharacterValue> cols;     // chi(tau (x) P_V)
  std::vector<char> equal_at;
  std::vector<double> delta;            // rows - cols, numerically
  bool equal = true;
};

/// Characters of the edge/loop and the vertex-displacement representations,
/// one entry per group element.
inline CharacterReport character_vectors(const SymmetricGraph& g) {
  const GroupSpec& G = g.group();
  const FixedCounts fc = fixed_counts(g);
  CharacterReport r;
  for (const Element e : G.elements()) {
    const ElementCounts& c = fc.at(e, G);
    long long row = c.edges;
    const Permutation lp = g.loop_permutation(e);
    for (int j = 0; j < g.num_loops(); ++j) {
      if (lp[j] != j) continue;
      const int s = loop_sign(g, j, e);
      if (s == 0)
        throw InputError(ErrorCode::invalid_action,
                         "loop " + std::to_string(j) + " fixed by " + element_name(e) +
                             (e.refl ? " has no sigma label" : " (order > 2)"));
      row += s;
    }
    CharacterValue col;
    if (!e.refl) col = {c.vertices, e.rot, G.rotations()};
    r.elements.push_back(e);
    r.rows.push_back(row);
    r.cols.push_back(col);
    const bool eq = col.equals(row);
    r.equal_at.push_back(eq);
    r.delta.push_back(static_cast<double>(row) - col.value());
    r.equal = r.equal && eq;
  }
  return r;
}

struct Table2Condition {
  Element element;
  std::string requirement;
  bool pass = true;
  std::string branch;  // satisfied alternative, if any
  std::string failed;  // first violated equation, if any
};

struct Table2Report {
  std::string group;
  bool pass = true;
  std::vector<Table2Condition> conditions;

  /// First failing condition's equation, or empty.
  std::string failed() const {
    for (const auto& c : conditions)
      if (!c.pass) return c.failed;
    return {};
  }
};

/// Fixed-count conditions, evaluated for every non-identity element: each
/// half-turn, each rotation of order 4, each other rotation, each mirror.
inline Table2Report table2_check(const SymmetricGraph& g) {
  const GroupSpec& G = g.group();
  const FixedCounts fc = fixed_counts(g);
  Table2Report report;
  report.group = G.name();
  for (const Element e : G.elements()) {
    if (e.is_identity()) continue;
    const ElementCounts& c = fc.at(e, G);
    Table2Condition cond;
    cond.element = e;
    const int order = G.element_order(e);
    if (e.refl) {
      cond.requirement = "e_s + l_s+ = l_s-";
      cond.pass = c.edges + c.loops_plus == c.loops_minus;
      if (!cond.pass) cond.failed = "e_s + l_s+ = l_s-";
    } else if (order == 2) {
      cond.requirement = "v_2 = e_2 = l_2 = 0 or v_2 = 1, e_2 = 0, l_2 = 2";
      if (c.vertices == 0 && c.edges == 0 && c.loops == 0) {
        cond.branch = "v_2 = e_2 = l_2 = 0";
      } else if (c.vertices == 1 && c.edges == 0 && c.loops == 2) {
        cond.branch = "v_2 = 1, e_2 = 0, l_2 = 2";
      } else {
        cond.pass = false;
        if (c.edges != 0)
          cond.failed = "e_2 = 0";
        else if (c.vertices > 1)
          cond.failed = "v_2 <= 1";
        else
          cond.failed = c.vertices == 0 ? "l_2 = 0" : "l_2 = 2";
      }
    } else if (order == 4) {
      cond.requirement = "v_4 in {0, 1}, e_4 = l_4 = 0";
      cond.pass = c.vertices <= 1 && c.edges == 0 && c.loops == 0;
      if (!cond.pass)
        cond.failed = c.vertices > 1 ? "v_4 <= 1" : (c.edges != 0 ? "e_4 = 0" : "l_4 = 0");
    } else {
      cond.requirement = "v_n = e_n = l_n = 0";
      cond.pass = c.vertices == 0 && c.edges == 0 && c.loops == 0;
      if (!cond.pass)
        cond.failed = c.vertices != 0 ? "v_n = 0" : (c.edges != 0 ? "e_n = 0" : "l_n = 0");
    }
    report.pass = report.pass && cond.pass;
    report.conditions.push_back(std::move(cond));
  }
  return report;
}

struct GammaTightReport {
  ValidationReport validation;
  SparsityReport sparsity;
  Table2Report table2;
  std::optional<CharacterReport> characters;
  bool gamma_tight = false;
};

/// Tight, validly symmetric, and meeting the fixed-count conditions.
inline GammaTightReport is_gamma_tight(const SymmetricGraph& g, bool with_characters = true) {
  GammaTightReport r;
  r.validation = validate_action(g);
  r.sparsity = pebble_check(g.underlying());
  if (!r.validation.ok()) return r;
  r.table2 = table2_check(g);
  if (with_characters) {
    try {
      r.characters = character_vectors(g);
    } catch (const InputError&) {
    }
  }
  r.gamma_tight = r.sparsity.tight() && r.table2.pass;
  return r;
}

}  // namespace slc
