#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "slcrigid/error.hpp"
#include "slcrigid/symcheck.hpp"
#include "slcrigid/symgraph.hpp"

namespace slc {

// ---------------------------------------------------------------------------
// Moves

enum class MoveKind { zero_two_edges, zero_edge_loop, one_edge_split, one_loop_split };

inline std::string_view to_string(MoveKind k) {
  switch (k) {
    case MoveKind::zero_two_edges: return "zero_two_edges";
    case MoveKind::zero_edge_loop: return "zero_edge_loop";
    case MoveKind::one_edge_split: return "one_edge_split";
    case MoveKind::one_loop_split: return "one_loop_split";
  }
  return "?";
}

inline std::optional<MoveKind> parse_move_kind(std::string_view s) {
  for (MoveKind k : {MoveKind::zero_two_edges, MoveKind::zero_edge_loop,
                     MoveKind::one_edge_split, MoveKind::one_loop_split})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

/// A symmetrised Henneberg move; all parameters are orbit representatives.
///   zero_two_edges: a = v1, b = v2
///   zero_edge_loop: a = v1
///   one_edge_split: a = x0, b = y0 (the split edge), c = z0
///   one_loop_split: a = loop id, b = y0
struct Move {
  MoveKind kind = MoveKind::zero_edge_loop;
  int a = -1;
  int b = -1;
  int c = -1;

  friend bool operator==(const Move&, const Move&) = default;
};

namespace detail {

struct ActionTables {
  std::vector<Element> elements;
  std::vector<Permutation> vertex;
  std::vector<Permutation> loop;
  int rot_gen = 0;   // element index of r
  int refl_gen = -1; // element index of s
};

inline ActionTables action_tables(const SymmetricGraph& g) {
  const GroupSpec& G = g.group();
  ActionTables t;
  t.elements = G.elements();
  for (const Element e : t.elements) {
    t.vertex.push_back(g.vertex_permutation(e));
    t.loop.push_back(g.loop_permutation(e));
  }
  t.rot_gen = G.index({G.rotations() > 1 ? 1 : 0, false});
  if (G.has_reflection()) t.refl_gen = G.index({0, true});
  return t;
}

/// Builds a graph from explicit lists; new free orbits are appended by the
/// callers, which extend the generator permutations accordingly.
struct GraphDraft {
  GroupSpec group;
  int num_vertices = 0;
  std::vector<Edge> edges;
  std::vector<Loop> loops;
  GeneratorAction rotation;
  GeneratorAction reflection;

  static GraphDraft from(const SymmetricGraph& g) {
    GraphDraft d{g.group(), g.num_vertices(), g.edges(), g.loops(), g.rotation(), {}};
    if (g.group().has_reflection()) d.reflection = g.reflection();
    return d;
  }

  /// Appends a free vertex orbit; returns the index of the first new vertex.
  /// Vertex base + i stands for gamma_i v.
  int add_free_vertex_orbit() {
    const int base = num_vertices;
    const int t = group.size();
    for (int i = 0; i < t; ++i) {
      rotation.vertex.push_back(base + group.index(group.compose({group.rotations() > 1 ? 1 : 0, false}, group.element(i))));
      if (group.has_reflection())
        reflection.vertex.push_back(base + group.index(group.compose({0, true}, group.element(i))));
    }
    num_vertices += t;
    return base;
  }

  /// Appends a free loop orbit with loop i at vertex `at[i]`.
  void add_free_loop_orbit(const std::vector<int>& at) {
    const int base = static_cast<int>(loops.size());
    const int t = group.size();
    for (int i = 0; i < t; ++i) {
      loops.push_back({base + i, at[i], 0});
      rotation.loop.push_back(base + group.index(group.compose({group.rotations() > 1 ? 1 : 0, false}, group.element(i))));
      if (group.has_reflection())
        reflection.loop.push_back(base + group.index(group.compose({0, true}, group.element(i))));
    }
  }

  /// Removes the given loops (a union of orbits) and renumbers the rest.
  void remove_loops(const std::vector<int>& ids) {
    std::vector<char> gone(loops.size(), 0);
    for (int id : ids) gone.at(id) = 1;
    std::vector<int> remap(loops.size(), -1);
    std::vector<Loop> kept;
    for (const Loop& l : loops) {
      if (gone[l.id]) continue;
      remap[l.id] = static_cast<int>(kept.size());
      kept.push_back({static_cast<int>(kept.size()), l.vertex, l.sigma});
    }
    auto fix = [&](Permutation& p) {
      Permutation q(kept.size());
      for (std::size_t old = 0; old < p.size(); ++old)
        if (remap[old] >= 0) q[remap[old]] = remap[p[old]];
      p = std::move(q);
    };
    fix(rotation.loop);
    if (group.has_reflection()) fix(reflection.loop);
    loops = std::move(kept);
  }

  void remove_edges(const std::vector<Edge>& gone) {
    std::vector<Edge> kept;
    for (const Edge& e : edges)
      if (std::find(gone.begin(), gone.end(), e) == gone.end()) kept.push_back(e);
    edges = std::move(kept);
  }

  SymmetricGraph build() && {
    return SymmetricGraph(group, num_vertices, std::move(edges), std::move(loops),
                          std::move(rotation), std::move(reflection));
  }
};

inline void require_vertex(const SymmetricGraph& g, int v, const char* what) {
  if (v < 0 || v >= g.num_vertices())
    throw InputError(ErrorCode::index_out_of_range,
                     std::string(what) + " = " + std::to_string(v) + " is not a vertex");
}

inline InputError move_error(const std::string& msg) {
  return InputError(ErrorCode::precondition, msg);
}

}  // namespace detail

/// Applies a symmetrised 0-extension, 1-extension or looped 1-extension. The
/// new vertex orbit is appended (vertex n + i is gamma_i v) and acted on
/// freely. When `check` is set and the input is gamma-tight, the output is
/// asserted to be gamma-tight.
inline SymmetricGraph apply_extension(const SymmetricGraph& g, const Move& m, bool check = true) {
  const detail::ActionTables T = detail::action_tables(g);
  const int t = g.group().size();
  detail::GraphDraft d = detail::GraphDraft::from(g);
  std::vector<Edge> add;

  switch (m.kind) {
    case MoveKind::zero_two_edges: {
      detail::require_vertex(g, m.a, "v1");
      detail::require_vertex(g, m.b, "v2");
      if (m.a == m.b) throw detail::move_error("zero_two_edges needs v1 != v2");
      const int base = d.add_free_vertex_orbit();
      for (int i = 0; i < t; ++i) {
        add.push_back(make_edge(base + i, T.vertex[i][m.a]));
        add.push_back(make_edge(base + i, T.vertex[i][m.b]));
      }
      break;
    }
    case MoveKind::zero_edge_loop: {
      detail::require_vertex(g, m.a, "v1");
      const int base = d.add_free_vertex_orbit();
      std::vector<int> at;
      for (int i = 0; i < t; ++i) {
        add.push_back(make_edge(base + i, T.vertex[i][m.a]));
        at.push_back(base + i);
      }
      d.add_free_loop_orbit(at);
      break;
    }
    case MoveKind::one_edge_split: {
      detail::require_vertex(g, m.a, "x0");
      detail::require_vertex(g, m.b, "y0");
      detail::require_vertex(g, m.c, "z0");
      if (!g.has_edge(m.a, m.b)) throw detail::move_error("one_edge_split: x0y0 is not an edge");
      if (m.c == m.a || m.c == m.b) throw detail::move_error("one_edge_split needs z0 not in {x0, y0}");
      std::vector<Edge> orbit;
      for (int i = 0; i < t; ++i) orbit.push_back(make_edge(T.vertex[i][m.a], T.vertex[i][m.b]));
      std::vector<Edge> distinct = orbit;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      if (static_cast<int>(distinct.size()) != t)
        throw detail::move_error("one_edge_split needs an edge orbit of size |G| = " + std::to_string(t));
      d.remove_edges(distinct);
      const int base = d.add_free_vertex_orbit();
      for (int i = 0; i < t; ++i) {
        add.push_back(make_edge(base + i, T.vertex[i][m.a]));
        add.push_back(make_edge(base + i, T.vertex[i][m.b]));
        add.push_back(make_edge(base + i, T.vertex[i][m.c]));
      }
      break;
    }
    case MoveKind::one_loop_split: {
      if (m.a < 0 || m.a >= g.num_loops())
        throw InputError(ErrorCode::index_out_of_range, "loop " + std::to_string(m.a) + " does not exist");
      const int x0 = g.loop(m.a).vertex;
      detail::require_vertex(g, m.b, "y0");
      if (m.b == x0) throw detail::move_error("one_loop_split needs y0 != x0");
      std::vector<int> orbit;
      for (int i = 0; i < t; ++i) orbit.push_back(T.loop[i][m.a]);
      std::vector<int> distinct = orbit;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      if (static_cast<int>(distinct.size()) != t)
        throw detail::move_error("one_loop_split needs a loop orbit of size |G| = " + std::to_string(t));
      d.remove_loops(distinct);
      const int base = d.add_free_vertex_orbit();
      std::vector<int> at;
      for (int i = 0; i < t; ++i) {
        add.push_back(make_edge(base + i, T.vertex[i][x0]));
        add.push_back(make_edge(base + i, T.vertex[i][m.b]));
        at.push_back(base + i);
      }
      d.add_free_loop_orbit(at);
      break;
    }
  }
  d.edges.insert(d.edges.end(), add.begin(), add.end());
  SymmetricGraph out = std::move(d).build();
  if (check && is_gamma_tight(g, false).gamma_tight && !is_gamma_tight(out, false).gamma_tight)
    throw std::logic_error("extension did not preserve gamma-tightness");
  return out;
}

// ---------------------------------------------------------------------------
// Base graphs

enum class BaseKind { pinned_fixed, pinned_swapped, pinned_orbit, looped_cycle };

/// A base graph: P1 with fixed loops (C2), P1 with swapped loops (C4),
/// the pinned orbit P_n, or the looped cycle LC_n whose edges join each
/// vertex to its image under r^step.
struct BaseSpec {
  BaseKind kind = BaseKind::pinned_orbit;
  int n = 1;
  int step = 1;

  friend bool operator==(const BaseSpec&, const BaseSpec&) = default;
};

inline std::string base_name(const BaseSpec& b) {
  const std::string n = std::to_string(b.n);
  switch (b.kind) {
    case BaseKind::pinned_fixed: return "P1phi0";
    case BaseKind::pinned_swapped: return "P1phi1";
    case BaseKind::pinned_orbit: return "P" + n + "phi" + n;
    case BaseKind::looped_cycle:
      return "LC" + n + "psi" + n + (b.step != 1 ? "^" + std::to_string(b.step) : "");
  }
  return "?";
}

inline std::string_view to_string(BaseKind k) {
  switch (k) {
    case BaseKind::pinned_fixed: return "pinned_fixed";
    case BaseKind::pinned_swapped: return "pinned_swapped";
    case BaseKind::pinned_orbit: return "pinned_orbit";
    case BaseKind::looped_cycle: return "looped_cycle";
  }
  return "?";
}

inline std::optional<BaseKind> parse_base_kind(std::string_view s) {
  for (BaseKind k : {BaseKind::pinned_fixed, BaseKind::pinned_swapped, BaseKind::pinned_orbit,
                     BaseKind::looped_cycle})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

inline SymmetricGraph make_base(const BaseSpec& b) {
  const int n = b.n;
  switch (b.kind) {
    case BaseKind::pinned_fixed:
      if (n != 2) throw InputError(ErrorCode::precondition, "P1phi0 is a C2 base graph");
      return SymmetricGraph(GroupSpec::cyclic(2), 1, {}, {{0, 0, 0}, {1, 0, 0}}, {{0}, {0, 1}});
    case BaseKind::pinned_swapped:
      if (n != 4) throw InputError(ErrorCode::precondition, "P1phi1 is a C4 base graph");
      return SymmetricGraph(GroupSpec::cyclic(4), 1, {}, {{0, 0, 0}, {1, 0, 0}}, {{0}, {1, 0}});
    case BaseKind::pinned_orbit: {
      if (n < 1) throw InputError(ErrorCode::precondition, "P_n needs n >= 1");
      std::vector<Loop> loops;
      GeneratorAction r;
      for (int i = 0; i < n; ++i) {
        loops.push_back({i, i, 0});
        r.vertex.push_back((i + 1) % n);
      }
      for (int i = 0; i < n; ++i) loops.push_back({n + i, i, 0});
      for (int i = 0; i < 2 * n; ++i) r.loop.push_back((i / n) * n + (i % n + 1) % n);
      return SymmetricGraph(GroupSpec::cyclic(n), n, {}, std::move(loops), std::move(r));
    }
    case BaseKind::looped_cycle: {
      if (n < 3) throw InputError(ErrorCode::precondition, "LC_n needs n >= 3");
      if (b.step < 1 || 2 * b.step >= n || std::gcd(b.step, n) != 1)
        throw InputError(ErrorCode::precondition, "LC_n step must be coprime to n and below n/2");
      std::vector<Edge> edges;
      std::vector<Loop> loops;
      GeneratorAction r;
      for (int i = 0; i < n; ++i) {
        edges.push_back(make_edge(i, (i + b.step) % n));
        loops.push_back({i, i, 0});
        r.vertex.push_back((i + 1) % n);
        r.loop.push_back((i + 1) % n);
      }
      return SymmetricGraph(GroupSpec::cyclic(n), n, std::move(edges), std::move(loops),
                            std::move(r));
    }
  }
  throw std::logic_error("unknown base kind");
}

/// Vertex correspondence from make_base(spec) to a graph recognised as that
/// base: standard vertex k is r^k applied to the smallest vertex.
struct BaseMatch {
  BaseSpec spec;
  std::vector<int> vertex_map;  // standard -> graph
};

inline std::optional<BaseMatch> match_base(const SymmetricGraph& g) {
  const GroupSpec& G = g.group();
  if (G.kind != GroupKind::cyclic) return std::nullopt;
  const int n = G.order;
  const int V = g.num_vertices();
  if (V == 1) {
    if (g.num_edges() != 0 || g.num_loops() != 2) return std::nullopt;
    const Permutation& rl = g.rotation().loop;
    if (n == 1) return BaseMatch{{BaseKind::pinned_orbit, 1, 1}, {0}};
    if (n == 2 && rl[0] == 0 && rl[1] == 1) return BaseMatch{{BaseKind::pinned_fixed, 2, 1}, {0}};
    if (n == 4 && rl[0] == 1 && rl[1] == 0) return BaseMatch{{BaseKind::pinned_swapped, 4, 1}, {0}};
    return std::nullopt;
  }
  if (V != n || n < 2) return std::nullopt;
  // Single free vertex orbit.
  std::vector<int> standard(n);
  int x = 0;
  for (int k = 0; k < n; ++k) {
    standard[k] = x;
    x = g.rotation().vertex[x];
  }
  if (x != 0) return std::nullopt;
  {
    std::vector<int> s = standard;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return std::nullopt;
  }
  std::vector<int> position(n);
  for (int k = 0; k < n; ++k) position[standard[k]] = k;

  if (g.num_edges() == 0 && g.num_loops() == 2 * n) {
    for (int v = 0; v < V; ++v)
      if (g.loops_at(v).size() != 2) return std::nullopt;
    // Two free loop orbits.
    const Orbits o = orbits(g);
    if (o.loop.size() != 2) return std::nullopt;
    return BaseMatch{{BaseKind::pinned_orbit, n, 1}, standard};
  }
  if (n >= 3 && g.num_edges() == n && g.num_loops() == n) {
    for (int v = 0; v < V; ++v)
      if (g.loops_at(v).size() != 1 || g.neighbors(v).size() != 2) return std::nullopt;
    // Vertex 0 is joined to r^step(0) and r^-step(0).
    const int a = position[g.neighbors(standard[0])[0]];
    const int step = std::min(a, n - a);
    if (std::gcd(step, n) != 1) return std::nullopt;  // several disjoint cycles
    return BaseMatch{{BaseKind::looped_cycle, n, step}, standard};
  }
  return std::nullopt;
}

inline std::optional<BaseSpec> is_base_graph(const SymmetricGraph& g) {
  if (auto m = match_base(g)) return m->spec;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Reductions

struct Reduction {
  Move inverse;                  // extension in `result` indices that undoes it
  SymmetricGraph result;
  std::vector<int> vertex_map;   // old -> new, -1 for the removed orbit
  std::vector<int> removed;      // removed vertex gamma_i v at position i
};

/// Groups for which the recursive characterisation is proved: C1, C2, odd C_n.
inline bool characterisation_proved(const GroupSpec& G) {
  return G.kind == GroupKind::cyclic && (G.order == 2 || G.order % 2 == 1);
}

/// Candidate inverse moves whose result is again gamma-tight, in
/// deterministic order (orbit representative, then partner).
inline std::vector<Reduction> enumerate_reductions(const SymmetricGraph& g) {
  if (!is_gamma_tight(g, false).gamma_tight)
    throw InputError(ErrorCode::precondition, "enumerate_reductions needs a gamma-tight graph");
  const detail::ActionTables T = detail::action_tables(g);
  const int t = g.group().size();
  std::vector<Reduction> out;

  for (const auto& orbit : orbits(g).vertex) {
    if (static_cast<int>(orbit.size()) != t) continue;
    const int v = orbit.front();
    std::vector<int> removed(t);
    for (int i = 0; i < t; ++i) removed[i] = T.vertex[i][v];
    const std::vector<int>& nbrs = g.neighbors(v);
    if (std::any_of(nbrs.begin(), nbrs.end(), [&](int x) {
          return std::binary_search(orbit.begin(), orbit.end(), x);
        }))
      continue;
    const int loops_here = static_cast<int>(g.loops_at(v).size());
    const int deg = static_cast<int>(nbrs.size());

    std::vector<int> keep;
    for (int x = 0; x < g.num_vertices(); ++x)
      if (!std::binary_search(orbit.begin(), orbit.end(), x)) keep.push_back(x);

    auto accept = [&](Subgraph&& sub, Move inverse) {
      if (!is_gamma_tight(sub.graph, false).gamma_tight) return;
      out.push_back({inverse, std::move(sub.graph), std::move(sub.vertex_map), removed});
    };

    if ((deg == 2 && loops_here == 0) || (deg == 1 && loops_here == 1)) {
      Subgraph sub = induced_subgraph(g, keep);
      Move inv = deg == 2 ? Move{MoveKind::zero_two_edges, sub.vertex_map[nbrs[0]], sub.vertex_map[nbrs[1]]}
                          : Move{MoveKind::zero_edge_loop, sub.vertex_map[nbrs[0]]};
      accept(std::move(sub), inv);
    } else if (deg == 3 && loops_here == 0) {
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          const int x1 = nbrs[i], x2 = nbrs[j], z = nbrs[3 - i - j];
          std::vector<Edge> extra;
          bool ok = true;
          for (int k = 0; k < t && ok; ++k) {
            const Edge e = make_edge(T.vertex[k][x1], T.vertex[k][x2]);
            if (g.has_edge(e.first, e.second) ||
                std::find(extra.begin(), extra.end(), e) != extra.end())
              ok = false;
            extra.push_back(e);
          }
          if (!ok) continue;
          Subgraph sub = induced_subgraph(g, keep, {}, extra);
          const Move inv{MoveKind::one_edge_split, sub.vertex_map[x1], sub.vertex_map[x2],
                         sub.vertex_map[z]};
          accept(std::move(sub), inv);
        }
      }
    } else if (deg == 2 && loops_here == 1) {
      for (int i = 0; i < 2; ++i) {
        const int x = nbrs[i], y = nbrs[1 - i];
        Subgraph sub = induced_subgraph(g, keep);
        detail::GraphDraft d = detail::GraphDraft::from(sub.graph);
        std::vector<int> at;
        for (int k = 0; k < t; ++k) at.push_back(sub.vertex_map[T.vertex[k][x]]);
        const int new_loop = static_cast<int>(d.loops.size());
        d.add_free_loop_orbit(at);
        sub.graph = std::move(d).build();
        const Move inv{MoveKind::one_loop_split, new_loop, sub.vertex_map[y]};
        accept(std::move(sub), inv);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism under a given vertex map

/// True when `vmap` (vertex of a -> vertex of b) extends to an isomorphism of
/// symmetric graphs, i.e. it preserves edges and commutes with the action,
/// and some loop bijection does the same.
inline bool isomorphic_under(const SymmetricGraph& a, const SymmetricGraph& b,
                             const std::vector<int>& vmap) {
  if (!(a.group() == b.group()) || a.num_vertices() != b.num_vertices() ||
      a.num_edges() != b.num_edges() || a.num_loops() != b.num_loops() ||
      static_cast<int>(vmap.size()) != a.num_vertices() || !is_permutation_of(vmap, b.num_vertices()))
    return false;
  for (const auto& [u, v] : a.edges())
    if (!b.has_edge(vmap[u], vmap[v])) return false;
  std::vector<const GeneratorAction*> ga{&a.rotation()}, gb{&b.rotation()};
  if (a.group().has_reflection()) {
    ga.push_back(&a.reflection());
    gb.push_back(&b.reflection());
  }
  for (std::size_t k = 0; k < ga.size(); ++k)
    for (int v = 0; v < a.num_vertices(); ++v)
      if (vmap[ga[k]->vertex[v]] != gb[k]->vertex[vmap[v]]) return false;

  const detail::ActionTables ta = detail::action_tables(a), tb = detail::action_tables(b);
  const auto loop_orbits = orbits(a).loop;
  std::vector<int> lmap(a.num_loops(), -1), used(b.num_loops(), 0);
  std::function<bool(std::size_t)> assign = [&](std::size_t o) -> bool {
    if (o == loop_orbits.size()) return true;
    const int rep = loop_orbits[o].front();
    const Loop& lr = a.loop(rep);
    for (int cand : b.loops_at(vmap[lr.vertex])) {
      if (used[cand] || b.loop(cand).sigma != lr.sigma) continue;
      std::vector<int> touched;
      bool ok = true;
      for (std::size_t i = 0; i < ta.elements.size() && ok; ++i) {
        const int src = ta.loop[i][rep], dst = tb.loop[i][cand];
        if (lmap[src] == -1) {
          if (used[dst]) {
            ok = false;
            break;
          }
          lmap[src] = dst;
          used[dst] = 1;
          touched.push_back(src);
        } else if (lmap[src] != dst) {
          ok = false;
        }
      }
      if (ok && assign(o + 1)) return true;
      for (int s : touched) {
        used[lmap[s]] = 0;
        lmap[s] = -1;
      }
    }
    return false;
  };
  return assign(0);
}

// ---------------------------------------------------------------------------
// Construction traces

/// Bases are placed side by side (vertices in order), then the moves are
/// applied. vertex_labels[i] is the vertex of the traced graph that replay
/// vertex i corresponds to.
struct ConstructionTrace {
  GroupSpec group;
  std::vector<BaseSpec> bases;
  std::vector<Move> moves;
  std::vector<int> vertex_labels;
  bool heuristic = false;
};

inline SymmetricGraph replay(const ConstructionTrace& trace) {
  SymmetricGraph g(trace.group, 0, {}, {});
  for (const BaseSpec& b : trace.bases) g = disjoint_union(g, make_base(b));
  for (const Move& m : trace.moves) g = apply_extension(g, m, false);
  return g;
}

/// Raised when a gamma-tight component admits no reduction and is not a base
/// graph. For C2 and odd C_n this contradicts the recursive characterisation.
class DecomposeFailure : public std::runtime_error {
 public:
  explicit DecomposeFailure(SymmetricGraph stuck)
      : std::runtime_error("gamma-tight component with no reduction and no base match"),
        stuck_(std::move(stuck)) {}
  const SymmetricGraph& stuck() const { return stuck_; }

 private:
  SymmetricGraph stuck_;
};

namespace detail {

// Moves recorded against original vertex labels; one_loop_split stores the
// label of x0 in `a` since loop ids are not stable across reductions.
struct LabelledStep {
  Move move;
  std::vector<int> orbit_labels;
};

struct LabelledTrace {
  std::vector<std::pair<BaseSpec, std::vector<int>>> bases;  // spec, labels of standard vertices
  std::vector<LabelledStep> steps;
};

struct DecomposeState {
  long budget = 20000;
  bool connected_only = false;
  std::set<std::vector<int>> dead_ends;
};

// Identifies a reduced graph by original labels, so that commuting
// reductions reaching the same state are only explored once.
inline std::vector<int> state_key(const SymmetricGraph& g, const std::vector<int>& labels) {
  std::vector<int> key;
  std::vector<std::pair<int, int>> edges;
  for (const auto& [u, v] : g.edges()) edges.emplace_back(std::minmax(labels[u], labels[v]));
  std::sort(edges.begin(), edges.end());
  std::vector<std::vector<int>> loop_orbits;
  for (const auto& orbit : orbits(g).loop) {
    std::vector<int> at;
    for (int id : orbit) at.push_back(labels[g.loop(id).vertex]);
    std::sort(at.begin(), at.end());
    loop_orbits.push_back(at);
  }
  std::sort(loop_orbits.begin(), loop_orbits.end());
  key = labels;
  std::sort(key.begin(), key.end());
  key.push_back(-1);
  for (const auto& [u, v] : edges) key.insert(key.end(), {u, v});
  key.push_back(-1);
  for (const auto& o : loop_orbits) {
    key.insert(key.end(), o.begin(), o.end());
    key.push_back(-2);
  }
  return key;
}

inline LabelledTrace solve(const SymmetricGraph& g, const std::vector<int>& labels,
                           DecomposeState& state) {
  LabelledTrace out;
  if (g.num_vertices() == 0) return out;
  const auto comps = symmetric_components(g);
  if (comps.size() > 1) {
    for (const auto& comp : comps) {
      Subgraph sub = induced_subgraph(g, comp);
      std::vector<int> sub_labels(comp.size());
      for (std::size_t i = 0; i < comp.size(); ++i) sub_labels[sub.vertex_map[comp[i]]] = labels[comp[i]];
      LabelledTrace part = solve(sub.graph, sub_labels, state);
      out.bases.insert(out.bases.end(), part.bases.begin(), part.bases.end());
      out.steps.insert(out.steps.end(), part.steps.begin(), part.steps.end());
    }
    return out;
  }
  if (auto match = match_base(g)) {
    std::vector<int> base_labels;
    for (int v : match->vertex_map) base_labels.push_back(labels[v]);
    out.bases.push_back({match->spec, base_labels});
    return out;
  }

  const std::vector<int> key = state_key(g, labels);
  if (state.dead_ends.count(key)) throw DecomposeFailure(g);
  std::vector<Reduction> candidates = enumerate_reductions(g);
  // Prefer reductions that keep the graph symmetrically connected.
  const auto split = std::stable_partition(candidates.begin(), candidates.end(), [](const Reduction& r) {
    return symmetric_components(r.result).size() <= 1;
  });
  if (state.connected_only) candidates.erase(split, candidates.end());
  for (Reduction& r : candidates) {
    if (--state.budget < 0) break;
    std::vector<int> next_labels(r.result.num_vertices());
    for (int old = 0; old < g.num_vertices(); ++old)
      if (r.vertex_map[old] >= 0) next_labels[r.vertex_map[old]] = labels[old];
    try {
      LabelledTrace rest = solve(r.result, next_labels, state);
      Move m = r.inverse;
      if (m.kind == MoveKind::one_loop_split)
        m.a = next_labels[r.result.loop(m.a).vertex];
      else
        m.a = next_labels[m.a];
      if (m.b >= 0) m.b = next_labels[m.b];
      if (m.c >= 0) m.c = next_labels[m.c];
      std::vector<int> orbit_labels;
      for (int v : r.removed) orbit_labels.push_back(labels[v]);
      rest.steps.push_back({m, orbit_labels});
      return rest;
    } catch (const DecomposeFailure&) {
      continue;
    }
  }
  if (state.budget >= 0) state.dead_ends.insert(key);
  throw DecomposeFailure(g);
}

}  // namespace detail

/// Splits into symmetric components and reduces each to a base graph. The
/// returned trace replays to a graph isomorphic to `g` under vertex_labels;
/// this is checked before returning.
inline ConstructionTrace decompose(const SymmetricGraph& g) {
  require_valid(g);
  const GammaTightReport tight = is_gamma_tight(g, false);
  if (!tight.gamma_tight) {
    std::string why;
    if (!tight.sparsity.tight())
      why = std::string(to_string(tight.sparsity.verdict)) + " (|E|+|L| = " +
            std::to_string(tight.sparsity.edges + tight.sparsity.loops) +
            ", 2|V| = " + std::to_string(2 * tight.sparsity.vertices) + ")";
    else
      why = "fixed-count condition " + tight.table2.failed();
    throw InputError(ErrorCode::precondition, "graph is not gamma-tight: " + why);
  }
  std::vector<int> labels(g.num_vertices());
  std::iota(labels.begin(), labels.end(), 0);
  // A single base per component when one exists, any split otherwise.
  detail::LabelledTrace lt;
  try {
    detail::DecomposeState state{20000, true, {}};
    lt = detail::solve(g, labels, state);
  } catch (const DecomposeFailure&) {
    detail::DecomposeState state;
    lt = detail::solve(g, labels, state);
  }

  ConstructionTrace trace;
  trace.group = g.group();
  trace.heuristic = !characterisation_proved(g.group());
  SymmetricGraph cur(g.group(), 0, {}, {});
  std::vector<int> index_of(g.num_vertices(), -1);  // label -> replay index
  for (const auto& [spec, base_labels] : lt.bases) {
    const int offset = cur.num_vertices();
    cur = disjoint_union(cur, make_base(spec));
    for (std::size_t k = 0; k < base_labels.size(); ++k) {
      index_of[base_labels[k]] = offset + static_cast<int>(k);
      trace.vertex_labels.push_back(base_labels[k]);
    }
    trace.bases.push_back(spec);
  }
  const int t = g.group().size();
  for (const detail::LabelledStep& step : lt.steps) {
    Move m = step.move;
    if (m.kind == MoveKind::one_loop_split) {
      const int x = index_of[m.a];
      const detail::ActionTables T = detail::action_tables(cur);
      m.a = -1;
      for (int id : cur.loops_at(x)) {
        std::vector<int> orbit;
        for (int i = 0; i < t; ++i) orbit.push_back(T.loop[i][id]);
        std::sort(orbit.begin(), orbit.end());
        if (std::adjacent_find(orbit.begin(), orbit.end()) == orbit.end()) {
          m.a = id;
          break;
        }
      }
      if (m.a < 0) throw std::logic_error("decompose: no full loop orbit to split");
    } else {
      m.a = index_of[m.a];
    }
    if (m.b >= 0) m.b = index_of[m.b];
    if (m.c >= 0) m.c = index_of[m.c];
    const int offset = cur.num_vertices();
    cur = apply_extension(cur, m, false);
    for (int i = 0; i < t; ++i) {
      index_of[step.orbit_labels[i]] = offset + i;
      trace.vertex_labels.push_back(step.orbit_labels[i]);
    }
    trace.moves.push_back(m);
  }
  if (!isomorphic_under(cur, g, trace.vertex_labels))
    throw std::logic_error("decompose: replayed trace is not isomorphic to the input");
  return trace;
}

// ---------------------------------------------------------------------------
// Random generation

struct Generated {
  SymmetricGraph graph;
  ConstructionTrace trace;
};

/// Applies `steps` random extensions to a base graph: the variant is chosen
/// uniformly among the applicable ones, then its parameters uniformly.
inline Generated generate_random(const BaseSpec& base, int steps, std::uint64_t seed) {
  SymmetricGraph g = make_base(base);
  const GroupSpec G = g.group();
  const int t = G.size();
  std::mt19937_64 rng(seed);
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };

  ConstructionTrace trace;
  trace.group = G;
  trace.bases = {base};
  trace.heuristic = !characterisation_proved(G);
  for (int s = 0; s < steps; ++s) {
    const detail::ActionTables T = detail::action_tables(g);
    const int V = g.num_vertices();
    std::vector<int> full_edges, full_loops;
    for (int e = 0; e < g.num_edges(); ++e) {
      const auto [x, y] = g.edges()[e];
      std::vector<Edge> orbit;
      for (int i = 0; i < t; ++i) orbit.push_back(make_edge(T.vertex[i][x], T.vertex[i][y]));
      std::sort(orbit.begin(), orbit.end());
      if (std::adjacent_find(orbit.begin(), orbit.end()) == orbit.end()) full_edges.push_back(e);
    }
    for (int l = 0; l < g.num_loops(); ++l) {
      std::vector<int> orbit;
      for (int i = 0; i < t; ++i) orbit.push_back(T.loop[i][l]);
      std::sort(orbit.begin(), orbit.end());
      if (std::adjacent_find(orbit.begin(), orbit.end()) == orbit.end()) full_loops.push_back(l);
    }
    std::vector<MoveKind> kinds{MoveKind::zero_edge_loop};
    if (V >= 2) kinds.push_back(MoveKind::zero_two_edges);
    if (V >= 3 && !full_edges.empty()) kinds.push_back(MoveKind::one_edge_split);
    if (V >= 2 && !full_loops.empty()) kinds.push_back(MoveKind::one_loop_split);

    Move m{kinds[pick(static_cast<int>(kinds.size()))]};
    switch (m.kind) {
      case MoveKind::zero_edge_loop:
        m.a = pick(V);
        break;
      case MoveKind::zero_two_edges:
        m.a = pick(V);
        m.b = pick(V - 1);
        if (m.b >= m.a) ++m.b;
        break;
      case MoveKind::one_edge_split: {
        const auto [x, y] = g.edges()[full_edges[pick(static_cast<int>(full_edges.size()))]];
        m.a = x;
        m.b = y;
        std::vector<int> others;
        for (int v = 0; v < V; ++v)
          if (v != x && v != y) others.push_back(v);
        m.c = others[pick(static_cast<int>(others.size()))];
        break;
      }
      case MoveKind::one_loop_split: {
        m.a = full_loops[pick(static_cast<int>(full_loops.size()))];
        const int x = g.loop(m.a).vertex;
        m.b = pick(V - 1);
        if (m.b >= x) ++m.b;
        break;
      }
    }
    g = apply_extension(g, m, true);
    trace.moves.push_back(m);
  }
  trace.vertex_labels.resize(g.num_vertices());
  std::iota(trace.vertex_labels.begin(), trace.vertex_labels.end(), 0);
  return {std::move(g), std::move(trace)};
}

/// Base graphs that may seed generation for a group.
inline std::vector<BaseSpec> bases_for(const GroupSpec& G) {
  std::vector<BaseSpec> out;
  if (G.kind != GroupKind::cyclic) return out;
  const int n = G.order;
  if (n == 2) out.push_back({BaseKind::pinned_fixed, 2, 1});
  if (n == 4) out.push_back({BaseKind::pinned_swapped, 4, 1});
  out.push_back({BaseKind::pinned_orbit, n, 1});
  if (n >= 3) out.push_back({BaseKind::looped_cycle, n, 1});
  return out;
}

}  // namespace slc
