#pragma once

#include <cmath>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "slcrigid/error.hpp"
#include "slcrigid/henneberg.hpp"
#include "slcrigid/realize.hpp"
#include "slcrigid/sparsity.hpp"
#include "slcrigid/symcheck.hpp"
#include "slcrigid/symgraph.hpp"

namespace slc {

using json = nlohmann::json;

inline constexpr int kDocumentVersion = 1;

/// Integral doubles are written as integers so that documents stay
/// byte-stable across parse/serialize.
inline json number(double x) {
  if (std::isfinite(x) && x == std::nearbyint(x) && std::abs(x) < 9.0e15)
    return static_cast<long long>(x);
  if (!std::isfinite(x)) return nullptr;
  return x;
}

inline json group_json(const GroupSpec& G) {
  return {{"kind", std::string(to_string(G.kind))}, {"order", G.order}};
}

// ---------------------------------------------------------------------------
// GraphDocument

inline json to_json(const SymmetricGraph& g, const Framework* fw = nullptr) {
  json doc;
  doc["version"] = kDocumentVersion;
  doc["group"] = group_json(g.group());
  doc["num_vertices"] = g.num_vertices();
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  json loops = json::array();
  for (const Loop& l : g.loops()) {
    json lj = {{"id", l.id}, {"vertex", l.vertex}};
    if (l.sigma != 0) lj["sigma_label"] = l.sigma > 0 ? "+" : "-";
    loops.push_back(std::move(lj));
  }
  doc["loops"] = std::move(loops);
  json action = json::object();
  if (g.group().rotations() > 1) {
    action["rotation_vertex_perm"] = g.rotation().vertex;
    action["rotation_loop_perm"] = g.rotation().loop;
  }
  if (g.group().has_reflection()) {
    action["reflection_vertex_perm"] = g.reflection().vertex;
    action["reflection_loop_perm"] = g.reflection().loop;
  }
  doc["action"] = std::move(action);
  if (fw) {
    json p = json::array();
    for (const Vec2& x : fw->p) p.push_back({number(x[0]), number(x[1])});
    json q = json::object();
    for (std::size_t j = 0; j < fw->q.size(); ++j)
      q[std::to_string(j)] = {number(fw->q[j][0]), number(fw->q[j][1])};
    doc["placement"] = {{"p", std::move(p)}, {"q", std::move(q)}};
  }
  return doc;
}

inline std::string serialize_document(const SymmetricGraph& g, const Framework* fw = nullptr) {
  return to_json(g, fw).dump(2) + "\n";
}

struct Document {
  SymmetricGraph graph;
  std::optional<Framework> framework;
};

namespace detail {

inline InputError schema_error(const std::string& field, const std::string& msg) {
  return InputError(ErrorCode::schema, "field '" + field + "': " + msg);
}

inline const json& require_field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw schema_error(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

inline int as_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw schema_error(field, "expected an integer");
  const long long v = j.get<long long>();
  if (v < -2147483647LL || v > 2147483647LL) throw schema_error(field, "integer out of range");
  return static_cast<int>(v);
}

inline double as_double(const json& j, const std::string& field) {
  if (!j.is_number()) throw schema_error(field, "expected a number");
  return j.get<double>();
}

inline Permutation as_perm(const json& j, const std::string& field) {
  if (!j.is_array()) throw schema_error(field, "expected an array of integers");
  Permutation p;
  for (std::size_t i = 0; i < j.size(); ++i)
    p.push_back(as_int(j[i], field + "[" + std::to_string(i) + "]"));
  return p;
}

inline Vec2 as_vec2(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) throw schema_error(field, "expected [x, y]");
  return {as_double(j[0], field + "[0]"), as_double(j[1], field + "[1]")};
}

inline GroupSpec parse_group(const json& j) {
  if (!j.is_object()) throw schema_error("group", "expected an object");
  const json& kind = require_field(j, "kind", "group");
  if (!kind.is_string()) throw schema_error("group.kind", "expected a string");
  const auto k = parse_group_kind(kind.get<std::string>());
  if (!k) throw schema_error("group.kind", "unknown group kind '" + kind.get<std::string>() + "'");
  const int order = as_int(require_field(j, "order", "group"), "group.order");
  if (order > 1024) throw schema_error("group.order", "order above 1024 is not supported");
  try {
    return GroupSpec::check({*k, order});
  } catch (const InputError& e) {
    throw schema_error("group", e.what());
  }
}

}  // namespace detail

/// Parses and validates a GraphDocument. Syntax errors report line/column;
/// field errors name the offending field.
inline Document parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(ErrorCode::schema, std::string("malformed JSON: ") + e.what());
  }
  using detail::as_int;
  using detail::require_field;
  using detail::schema_error;
  if (!doc.is_object()) throw schema_error("<root>", "expected an object");
  if (auto it = doc.find("version"); it != doc.end() && as_int(*it, "version") != kDocumentVersion)
    throw schema_error("version", "unsupported version");
  const GroupSpec G = detail::parse_group(require_field(doc, "group", ""));
  const int n = as_int(require_field(doc, "num_vertices", ""), "num_vertices");
  if (n > 1000000) throw schema_error("num_vertices", "too many vertices");

  std::vector<Edge> edges;
  const json& ej = require_field(doc, "edges", "");
  if (!ej.is_array()) throw schema_error("edges", "expected an array");
  for (std::size_t i = 0; i < ej.size(); ++i) {
    const std::string f = "edges[" + std::to_string(i) + "]";
    if (!ej[i].is_array() || ej[i].size() != 2) throw schema_error(f, "expected [i, j]");
    edges.push_back({as_int(ej[i][0], f + "[0]"), as_int(ej[i][1], f + "[1]")});
  }

  std::vector<Loop> loops;
  const json lj = doc.contains("loops") ? doc["loops"] : json::array();
  if (!lj.is_array()) throw schema_error("loops", "expected an array");
  for (std::size_t i = 0; i < lj.size(); ++i) {
    const std::string f = "loops[" + std::to_string(i) + "]";
    if (!lj[i].is_object()) throw schema_error(f, "expected an object");
    Loop l;
    l.id = as_int(require_field(lj[i], "id", f), f + ".id");
    l.vertex = as_int(require_field(lj[i], "vertex", f), f + ".vertex");
    if (auto s = lj[i].find("sigma_label"); s != lj[i].end() && !s->is_null()) {
      if (*s == "+")
        l.sigma = 1;
      else if (*s == "-")
        l.sigma = -1;
      else
        throw schema_error(f + ".sigma_label", "expected \"+\" or \"-\"");
    }
    loops.push_back(l);
  }

  GeneratorAction rot, refl;
  if (auto a = doc.find("action"); a != doc.end()) {
    if (!a->is_object()) throw schema_error("action", "expected an object");
    for (const auto& [key, value] : a->items()) {
      const std::string f = "action." + key;
      if (key == "rotation_vertex_perm")
        rot.vertex = detail::as_perm(value, f);
      else if (key == "rotation_loop_perm")
        rot.loop = detail::as_perm(value, f);
      else if (key == "reflection_vertex_perm")
        refl.vertex = detail::as_perm(value, f);
      else if (key == "reflection_loop_perm")
        refl.loop = detail::as_perm(value, f);
      else
        throw schema_error(f, "unknown generator");
    }
  }
  if (G.kind == GroupKind::reflection && (!rot.vertex.empty() || !rot.loop.empty()))
    throw schema_error("action", "the reflection group has no rotation generator");

  Document out{SymmetricGraph(G, n, std::move(edges), std::move(loops), std::move(rot), std::move(refl)), {}};
  require_valid(out.graph);

  if (auto pl = doc.find("placement"); pl != doc.end() && !pl->is_null()) {
    if (!pl->is_object()) throw schema_error("placement", "expected an object");
    Framework fw{out.graph, {}, std::vector<Vec2>(out.graph.num_loops(), Vec2{0, 0})};
    const json& pj = require_field(*pl, "p", "placement");
    if (!pj.is_array() || static_cast<int>(pj.size()) != n)
      throw schema_error("placement.p", "expected one point per vertex");
    for (std::size_t i = 0; i < pj.size(); ++i)
      fw.p.push_back(detail::as_vec2(pj[i], "placement.p[" + std::to_string(i) + "]"));
    const json qj = pl->contains("q") ? (*pl)["q"] : json::object();
    if (!qj.is_object()) throw schema_error("placement.q", "expected an object keyed by loop id");
    std::vector<char> seen(out.graph.num_loops(), 0);
    for (const auto& [key, value] : qj.items()) {
      int id = -1;
      const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), id);
      if (ec != std::errc{} || ptr != key.data() + key.size() || id < 0 ||
          id >= out.graph.num_loops())
        throw InputError(ErrorCode::index_out_of_range, "field 'placement.q." + key + "': no such loop");
      fw.q[id] = detail::as_vec2(value, "placement.q." + key);
      seen[id] = 1;
    }
    for (int id = 0; id < out.graph.num_loops(); ++id)
      if (!seen[id]) throw schema_error("placement.q", "missing normal for loop " + std::to_string(id));
    double extent = 1.0;
    for (const Vec2& x : fw.p) extent = std::max({extent, std::abs(x[0]), std::abs(x[1])});
    for (const Vec2& x : fw.q) extent = std::max({extent, std::abs(x[0]), std::abs(x[1])});
    const double residual = symmetry_residual(fw);
    if (residual > 1e-9 * extent)
      throw InputError(ErrorCode::precondition,
                       "placement is not symmetric (residual " + std::to_string(residual) + ")");
    out.framework = std::move(fw);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Moves and traces

inline json to_json(const Move& m) {
  json j = {{"kind", std::string(to_string(m.kind))}};
  switch (m.kind) {
    case MoveKind::zero_two_edges: j["v1"] = m.a; j["v2"] = m.b; break;
    case MoveKind::zero_edge_loop: j["v1"] = m.a; break;
    case MoveKind::one_edge_split: j["x0"] = m.a; j["y0"] = m.b; j["z0"] = m.c; break;
    case MoveKind::one_loop_split: j["loop"] = m.a; j["y0"] = m.b; break;
  }
  return j;
}

inline Move move_from_json(const json& j, const std::string& field) {
  using detail::as_int;
  using detail::require_field;
  if (!j.is_object()) throw detail::schema_error(field, "expected an object");
  const json& k = require_field(j, "kind", field);
  const auto kind = k.is_string() ? parse_move_kind(k.get<std::string>()) : std::nullopt;
  if (!kind) throw detail::schema_error(field + ".kind", "unknown move kind");
  Move m{*kind};
  auto get = [&](const char* key) { return as_int(require_field(j, key, field), field + "." + key); };
  switch (m.kind) {
    case MoveKind::zero_two_edges: m.a = get("v1"); m.b = get("v2"); break;
    case MoveKind::zero_edge_loop: m.a = get("v1"); break;
    case MoveKind::one_edge_split: m.a = get("x0"); m.b = get("y0"); m.c = get("z0"); break;
    case MoveKind::one_loop_split: m.a = get("loop"); m.b = get("y0"); break;
  }
  return m;
}

/// Parses "zero2:v1,v2", "zeroloop:v1", "split:x0,y0,z0" or "loopsplit:loop,y0"
/// (the long kind names are accepted as well).
inline Move parse_move_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  auto bad = [&](const std::string& why) {
    return InputError(ErrorCode::schema, "malformed move spec '" + std::string(spec) + "': " + why);
  };
  if (colon == std::string_view::npos) throw bad("expected kind:args");
  const std::string_view name = spec.substr(0, colon);
  std::optional<MoveKind> kind = parse_move_kind(name);
  if (name == "zero2") kind = MoveKind::zero_two_edges;
  if (name == "zeroloop") kind = MoveKind::zero_edge_loop;
  if (name == "split") kind = MoveKind::one_edge_split;
  if (name == "loopsplit") kind = MoveKind::one_loop_split;
  if (!kind) throw bad("unknown move kind");
  std::vector<int> args;
  std::string_view rest = spec.substr(colon + 1);
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view tok = rest.substr(0, comma);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) throw bad("expected integers");
    args.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  const std::size_t want = *kind == MoveKind::zero_edge_loop   ? 1
                           : *kind == MoveKind::one_edge_split ? 3
                                                               : 2;
  if (args.size() != want) throw bad("expected " + std::to_string(want) + " arguments");
  Move m{*kind, args[0]};
  if (want > 1) m.b = args[1];
  if (want > 2) m.c = args[2];
  return m;
}

inline json to_json(const BaseSpec& b) {
  return {{"kind", std::string(to_string(b.kind))}, {"n", b.n}, {"step", b.step}, {"name", base_name(b)}};
}

inline json to_json(const ConstructionTrace& t) {
  json moves = json::array();
  for (const Move& m : t.moves) moves.push_back(to_json(m));
  json bases = json::array();
  for (const BaseSpec& b : t.bases) bases.push_back(to_json(b));
  json j = {{"version", kDocumentVersion}, {"group", group_json(t.group)},
            {"bases", std::move(bases)},   {"moves", std::move(moves)},
            {"vertex_labels", t.vertex_labels}};
  if (t.heuristic) j["heuristic"] = "sufficiency unproven for this group";
  return j;
}

inline ConstructionTrace trace_from_json(const json& j) {
  using detail::as_int;
  using detail::require_field;
  ConstructionTrace t;
  t.group = detail::parse_group(require_field(j, "group", ""));
  const json& bases = require_field(j, "bases", "");
  if (!bases.is_array()) throw detail::schema_error("bases", "expected an array");
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const std::string f = "bases[" + std::to_string(i) + "]";
    const json& k = require_field(bases[i], "kind", f);
    const auto kind = k.is_string() ? parse_base_kind(k.get<std::string>()) : std::nullopt;
    if (!kind) throw detail::schema_error(f + ".kind", "unknown base kind");
    BaseSpec b{*kind, as_int(require_field(bases[i], "n", f), f + ".n"), 1};
    if (auto s = bases[i].find("step"); s != bases[i].end()) b.step = as_int(*s, f + ".step");
    t.bases.push_back(b);
  }
  const json& moves = require_field(j, "moves", "");
  if (!moves.is_array()) throw detail::schema_error("moves", "expected an array");
  for (std::size_t i = 0; i < moves.size(); ++i)
    t.moves.push_back(move_from_json(moves[i], "moves[" + std::to_string(i) + "]"));
  if (auto v = j.find("vertex_labels"); v != j.end()) t.vertex_labels = detail::as_perm(*v, "vertex_labels");
  t.heuristic = j.contains("heuristic");
  return t;
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const SparsityReport& r) {
  json j = {{"verdict", std::string(to_string(r.verdict))},
            {"vertices", r.vertices},
            {"edges", r.edges},
            {"loops", r.loops}};
  if (r.witness)
    j["witness"] = {{"vertices", r.witness->vertices},
                    {"induced_rows", r.witness->induced_rows},
                    {"induced_edges", r.witness->induced_edges}};
  return j;
}

inline json to_json(const ValidationReport& r) {
  json v = json::array();
  for (const Violation& x : r.violations)
    v.push_back({{"element", x.element}, {"rule", x.rule}, {"detail", x.detail}});
  return {{"ok", r.ok()}, {"violations", std::move(v)}};
}

inline json to_json(const Table2Report& r) {
  json conds = json::array();
  for (const Table2Condition& c : r.conditions) {
    json cj = {{"element", element_name(c.element)}, {"requirement", c.requirement}, {"pass", c.pass}};
    if (!c.branch.empty()) cj["branch"] = c.branch;
    if (!c.failed.empty()) cj["failed"] = c.failed;
    conds.push_back(std::move(cj));
  }
  return {{"group", r.group}, {"pass", r.pass}, {"conditions", std::move(conds)}};
}

inline json to_json(const CharacterReport& r) {
  json elems = json::array(), cols = json::array();
  for (const Element e : r.elements) elems.push_back(element_name(e));
  for (const CharacterValue& c : r.cols) {
    if (auto t = c.twice_cos())
      cols.push_back(c.coeff * *t);
    else
      cols.push_back(c.value());
  }
  json delta = json::array();
  for (double d : r.delta) delta.push_back(number(std::abs(d) < 1e-12 ? 0.0 : d));
  return {{"elements", std::move(elems)}, {"edge_loop", r.rows}, {"vertex_displacement", std::move(cols)},
          {"delta", std::move(delta)}, {"equal", r.equal}};
}

inline json to_json(const GammaTightReport& r) {
  json j = {{"validation", to_json(r.validation)},
            {"sparsity", to_json(r.sparsity)},
            {"table2", to_json(r.table2)},
            {"gamma_tight", r.gamma_tight}};
  if (r.characters) j["characters"] = to_json(*r.characters);
  return j;
}

inline json to_json(const RankReport& r) {
  json j = {{"rank", r.rank},
            {"rows", r.rows},
            {"cols", r.cols},
            {"backend", std::string(to_string(r.backend))},
            {"tolerance", r.tolerance},
            {"trials", r.trials},
            {"trial_ranks", r.trial_ranks},
            {"classification", std::string(to_string(r.classification))}};
  if (r.backend == Backend::float64) {
    j["smallest_accepted_singular_value"] = number(r.smallest_accepted);
    j["largest_rejected_singular_value"] = number(r.largest_rejected);
  }
  return j;
}

enum class Verdict { isostatic_certified, necessary_conditions_fail, numeric_only };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::isostatic_certified: return "isostatic-certified";
    case Verdict::necessary_conditions_fail: return "necessary-conditions-fail";
    case Verdict::numeric_only: return "numeric-only";
  }
  return "?";
}

struct VerdictDocument {
  Verdict verdict = Verdict::numeric_only;
  GammaTightReport checks;
  RankReport rank;
  std::optional<ConstructionTrace> trace;

  /// Exit status convention: negative verdicts map to 1.
  bool positive() const {
    if (verdict == Verdict::necessary_conditions_fail) return false;
    if (verdict == Verdict::numeric_only) return rank.isostatic();
    return true;
  }
};

/// Certified only from the combinatorial characterisation (C1, C2, odd C_n);
/// the rank report is attached as confirmation.
inline VerdictDocument make_verdict(const SymmetricGraph& g, const RankReport& rank,
                                    bool with_trace = false) {
  VerdictDocument d;
  d.checks = is_gamma_tight(g, true);
  d.rank = rank;
  const bool characters_ok = !d.checks.characters || d.checks.characters->equal;
  if (!d.checks.gamma_tight || !characters_ok)
    d.verdict = Verdict::necessary_conditions_fail;
  else if (characterisation_proved(g.group()))
    d.verdict = Verdict::isostatic_certified;
  else
    d.verdict = Verdict::numeric_only;
  if (with_trace && d.checks.gamma_tight && characterisation_proved(g.group())) d.trace = decompose(g);
  return d;
}

inline json to_json(const VerdictDocument& d) {
  json j = {{"verdict", std::string(to_string(d.verdict))},
            {"checks", to_json(d.checks)},
            {"rank", to_json(d.rank)},
            {"numeric_confirms", d.rank.isostatic()}};
  if (d.trace) j["trace"] = to_json(*d.trace);
  return j;
}

}  // namespace slc
