#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slcrigid/error.hpp"
#include "slcrigid/group.hpp"

namespace slc {

using Permutation = std::vector<int>;
using Edge = std::pair<int, int>;

/// A loop at a vertex. `sigma` is +1 / -1 for loops fixed by a mirror
/// (normal preserved / inverted by the lowest-index mirror fixing the loop)
/// and 0 when absent.
struct Loop {
  int id = 0;
  int vertex = 0;
  int sigma = 0;

  friend bool operator==(const Loop&, const Loop&) = default;
};

/// Vertex and loop permutations of one generator. Empty means identity.
struct GeneratorAction {
  Permutation vertex;
  Permutation loop;

  friend bool operator==(const GeneratorAction&, const GeneratorAction&) = default;
};

/// Plain looped simple graph, the input of the sparsity checks.
struct LoopedGraph {
  int num_vertices = 0;
  std::vector<Edge> edges;
  std::vector<int> loops;  // incident vertex of each loop

  int rows() const { return static_cast<int>(edges.size() + loops.size()); }
};

inline Permutation identity_permutation(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
  return out;
}

inline bool is_permutation_of(const Permutation& p, int n) {
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int x : p) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/// Looped simple graph with a point group and the generator permutations of
/// its action. Construction checks structural well-formedness only; the
/// group-theoretic invariants are checked by validate_action().
class SymmetricGraph {
 public:
  SymmetricGraph() = default;

  SymmetricGraph(GroupSpec group, int num_vertices, std::vector<Edge> edges,
                 std::vector<Loop> loops, GeneratorAction rotation = {},
                 GeneratorAction reflection = {})
      : group_(group),
        num_vertices_(num_vertices),
        edges_(std::move(edges)),
        loops_(std::move(loops)),
        rotation_(std::move(rotation)),
        reflection_(std::move(reflection)) {
    if (num_vertices_ < 0)
      throw InputError(ErrorCode::schema, "num_vertices must be non-negative");
    for (auto& [u, v] : edges_) {
      if (u < 0 || v < 0 || u >= num_vertices_ || v >= num_vertices_)
        throw InputError(ErrorCode::index_out_of_range,
                         "edge [" + std::to_string(u) + ", " + std::to_string(v) +
                             "] references a vertex out of range");
      if (u == v)
        throw InputError(ErrorCode::schema, "self-edge must be a loop entry (vertex " +
                                                std::to_string(u) + ")");
      if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
      throw InputError(ErrorCode::schema, "duplicate edge");

    std::sort(loops_.begin(), loops_.end(),
              [](const Loop& a, const Loop& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < loops_.size(); ++i) {
      const Loop& l = loops_[i];
      if (l.id != static_cast<int>(i))
        throw InputError(ErrorCode::schema, "loop ids must be exactly 0.." +
                                                std::to_string(loops_.size()) + "-1");
      if (l.vertex < 0 || l.vertex >= num_vertices_)
        throw InputError(ErrorCode::index_out_of_range,
                         "loop " + std::to_string(l.id) + " references a vertex out of range");
      if (l.sigma < -1 || l.sigma > 1)
        throw InputError(ErrorCode::schema, "sigma label must be +1 or -1");
    }

    if (!group_.has_reflection() &&
        (!reflection_.vertex.empty() || !reflection_.loop.empty()))
      throw InputError(ErrorCode::schema, "reflection generator given for a cyclic group");
    normalise(rotation_, "rotation");
    normalise(reflection_, "reflection");

    adjacency_.assign(num_vertices_, {});
    for (const auto& [u, v] : edges_) {
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto& a : adjacency_) std::sort(a.begin(), a.end());
    loops_at_.assign(num_vertices_, {});
    for (const Loop& l : loops_) loops_at_[l.vertex].push_back(l.id);
  }

  const GroupSpec& group() const { return group_; }
  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_loops() const { return static_cast<int>(loops_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Loop>& loops() const { return loops_; }
  const Loop& loop(int id) const { return loops_.at(id); }
  const GeneratorAction& rotation() const { return rotation_; }
  const GeneratorAction& reflection() const { return reflection_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_.at(v); }
  const std::vector<int>& loops_at(int v) const { return loops_at_.at(v); }

  /// Index of edge {u, v} in edges(), or -1.
  int edge_index(int u, int v) const {
    const Edge e = make_edge(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    return (it != edges_.end() && *it == e) ? static_cast<int>(it - edges_.begin()) : -1;
  }
  bool has_edge(int u, int v) const { return edge_index(u, v) >= 0; }

  Permutation vertex_permutation(Element e) const {
    return element_permutation(e, rotation_.vertex, reflection_.vertex, num_vertices_);
  }
  Permutation loop_permutation(Element e) const {
    return element_permutation(e, rotation_.loop, reflection_.loop, num_loops());
  }

  LoopedGraph underlying() const {
    LoopedGraph g;
    g.num_vertices = num_vertices_;
    g.edges = edges_;
    for (const Loop& l : loops_) g.loops.push_back(l.vertex);
    return g;
  }

  friend bool operator==(const SymmetricGraph& a, const SymmetricGraph& b) {
    return a.group_ == b.group_ && a.num_vertices_ == b.num_vertices_ &&
           a.edges_ == b.edges_ && a.loops_ == b.loops_ && a.rotation_ == b.rotation_ &&
           a.reflection_ == b.reflection_;
  }

 private:
  void normalise(GeneratorAction& g, const char* which) const {
    if (g.vertex.empty()) g.vertex = identity_permutation(num_vertices_);
    if (g.loop.empty()) g.loop = identity_permutation(num_loops());
    if (!is_permutation_of(g.vertex, num_vertices_))
      throw InputError(ErrorCode::index_out_of_range,
                       std::string(which) + " vertex permutation is not a permutation of 0.." +
                           std::to_string(num_vertices_ - 1));
    if (!is_permutation_of(g.loop, num_loops()))
      throw InputError(ErrorCode::index_out_of_range,
                       std::string(which) + " loop permutation is not a permutation of 0.." +
                           std::to_string(num_loops() - 1));
  }

  Permutation element_permutation(Element e, const Permutation& r, const Permutation& s,
                                   int n) const {
    if (!group_.contains(e))
      throw InputError(ErrorCode::schema, "element outside group " + group_.name());
    Permutation p = e.refl ? s : identity_permutation(n);
    for (int k = 0; k < e.rot; ++k) p = compose(r, p);
    return p;
  }

  GroupSpec group_;
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<Loop> loops_;
  GeneratorAction rotation_;
  GeneratorAction reflection_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<int>> loops_at_;
};

inline std::string element_name(Element e) {
  std::string out;
  if (e.rot == 0 && !e.refl) return "id";
  if (e.rot == 1) out = "r";
  if (e.rot > 1) out = "r^" + std::to_string(e.rot);
  if (e.refl) out += out.empty() ? "s" : "*s";
  return out;
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string element;  // group element or generator involved
  std::string rule;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline int count_fixed(const Permutation& p) {
  int n = 0;
  for (std::size_t i = 0; i < p.size(); ++i) n += p[i] == static_cast<int>(i);
  return n;
}

/// Sign of tau(e) on the normal of a loop fixed by e: -1 for the half-turn,
/// the loop's label for its lowest-index stabilising mirror and the opposite
/// label for a second mirror. Returns 0 when undefined (missing label or a
/// rotation of order >= 3).
inline int loop_sign(const SymmetricGraph& g, int loop_id, Element e) {
  const GroupSpec& G = g.group();
  if (e.is_identity()) return 1;
  if (!e.refl) return G.element_order(e) == 2 ? -1 : 0;
  const int sigma = g.loop(loop_id).sigma;
  if (sigma == 0) return 0;
  for (int i = G.rotations(); i < G.size(); ++i) {
    const Element m = G.element(i);
    if (g.loop_permutation(m)[loop_id] != loop_id) continue;
    if (m == e) return sigma;
    const Element between = G.compose(G.inverse(m), e);
    return G.element_order(between) == 2 ? -sigma : 0;
  }
  return 0;
}

inline ValidationReport validate_action(const SymmetricGraph& g) {
  ValidationReport report;
  const GroupSpec& G = g.group();
  auto add = [&](std::string elem, std::string rule, std::string detail) {
    report.violations.push_back({std::move(elem), std::move(rule), std::move(detail)});
  };

  // Group relations on the generators.
  const int n = G.rotations();
  const Permutation id_v = identity_permutation(g.num_vertices());
  const Permutation id_l = identity_permutation(g.num_loops());
  if (compose(g.rotation().vertex, g.vertex_permutation({n - 1, false})) != id_v ||
      compose(g.rotation().loop, g.loop_permutation({n - 1, false})) != id_l)
    add("r", "generator order", "rotation generator does not have order dividing " +
                                    std::to_string(n));
  if (G.has_reflection()) {
    const auto& s = g.reflection();
    if (compose(s.vertex, s.vertex) != id_v || compose(s.loop, s.loop) != id_l)
      add("s", "generator order", "reflection generator is not an involution");
    // s r s = r^{-1}
    const auto& r = g.rotation();
    const Permutation rinv_v = g.vertex_permutation({n - 1, false});
    const Permutation rinv_l = g.loop_permutation({n - 1, false});
    if (compose(s.vertex, compose(r.vertex, s.vertex)) != rinv_v ||
        compose(s.loop, compose(r.loop, s.loop)) != rinv_l)
      add("r,s", "dihedral relation", "s r s != r^-1");
  }
  if (!report.ok()) return report;  // element maps below assume a homomorphism

  // Automorphism conditions on each generator.
  std::vector<std::pair<std::string, const GeneratorAction*>> gens{{"r", &g.rotation()}};
  if (G.has_reflection()) gens.push_back({"s", &g.reflection()});
  for (const auto& [name, gen] : gens) {
    for (const auto& [u, v] : g.edges()) {
      const int a = gen->vertex[u], b = gen->vertex[v];
      if (!g.has_edge(a, b))
        add(name, "edge not preserved",
            "edge {" + std::to_string(u) + "," + std::to_string(v) + "} maps to non-edge {" +
                std::to_string(std::min(a, b)) + "," + std::to_string(std::max(a, b)) + "}");
    }
    for (const Loop& l : g.loops()) {
      const int image = gen->loop[l.id];
      if (g.loop(image).vertex != gen->vertex[l.vertex])
        add(name, "loop incidence not preserved",
            "loop " + std::to_string(l.id) + " at vertex " + std::to_string(l.vertex) +
                " maps to loop " + std::to_string(image) + " not at vertex " +
                std::to_string(gen->vertex[l.vertex]));
    }
  }
  if (!report.ok()) return report;

  std::vector<char> mirror_fixed(g.num_loops(), 0);
  for (const Element e : G.elements()) {
    if (e.is_identity()) continue;
    const Permutation lp = g.loop_permutation(e);
    const int order = G.element_order(e);
    for (int j = 0; j < g.num_loops(); ++j) {
      if (lp[j] != j) continue;
      if (order > 2)
        add(element_name(e), "loop fixed by element of order " + std::to_string(order),
            "loop " + std::to_string(j));
      if (e.refl) mirror_fixed[j] = 1;
    }
    if (!e.refl && count_fixed(g.vertex_permutation(e)) > 1)
      add(element_name(e), "rotation fixes more than one vertex",
          "rotation-fixed vertices sit at the centre, so at most one can exist");
  }
  for (const Loop& l : g.loops()) {
    if (mirror_fixed[l.id] && l.sigma == 0)
      add("s", "missing sigma label", "loop " + std::to_string(l.id) + " is fixed by a mirror");
    if (!mirror_fixed[l.id] && l.sigma != 0)
      add("s", "unexpected sigma label",
          "loop " + std::to_string(l.id) + " is not fixed by any mirror");
  }
  return report;
}

inline void require_valid(const SymmetricGraph& g) {
  const ValidationReport r = validate_action(g);
  if (!r.ok()) {
    const Violation& v = r.violations.front();
    const ErrorCode code =
        (v.rule == "generator order" || v.rule == "dihedral relation")
            ? ErrorCode::not_homomorphism
            : ErrorCode::invalid_action;
    throw InputError(code, v.rule + " (" + v.element + "): " + v.detail);
  }
}

// ---------------------------------------------------------------------------
// Element action, orbits, fixed counts

struct ElementAction {
  Permutation vertex;
  Permutation edge;
  Permutation loop;
};

inline ElementAction element_action(const SymmetricGraph& g, Element e) {
  ElementAction out;
  out.vertex = g.vertex_permutation(e);
  out.loop = g.loop_permutation(e);
  out.edge.reserve(g.num_edges());
  for (const auto& [u, v] : g.edges()) {
    const int idx = g.edge_index(out.vertex[u], out.vertex[v]);
    if (idx < 0) throw InputError(ErrorCode::invalid_action, "edge set not closed under action");
    out.edge.push_back(idx);
  }
  return out;
}

struct Orbits {
  std::vector<std::vector<int>> vertex;
  std::vector<std::vector<int>> edge;
  std::vector<std::vector<int>> loop;
};

namespace detail {

inline std::vector<std::vector<int>> orbits_of(int n, const std::vector<Permutation>& perms) {
  std::vector<int> seen(n, 0);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<int> orbit;
    for (const Permutation& p : perms) {
      if (!seen[p[i]]) {
        seen[p[i]] = 1;
        orbit.push_back(p[i]);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace detail

/// Orbits of V, E and L, each sorted, listed by smallest member.
inline Orbits orbits(const SymmetricGraph& g) {
  std::vector<Permutation> vp, ep, lp;
  for (const Element e : g.group().elements()) {
    ElementAction a = element_action(g, e);
    vp.push_back(std::move(a.vertex));
    ep.push_back(std::move(a.edge));
    lp.push_back(std::move(a.loop));
  }
  return {detail::orbits_of(g.num_vertices(), vp), detail::orbits_of(g.num_edges(), ep),
          detail::orbits_of(g.num_loops(), lp)};
}

struct ElementCounts {
  Element element;
  int vertices = 0;
  int edges = 0;
  int loops = 0;
  int loops_plus = 0;   // mirror-fixed loops with preserved normal
  int loops_minus = 0;  // mirror-fixed loops with inverted normal
};

struct FixedCounts {
  std::vector<ElementCounts> per_element;  // indexed like GroupSpec::elements()

  const ElementCounts& at(Element e, const GroupSpec& G) const {
    return per_element.at(G.index(e));
  }
};

inline FixedCounts fixed_counts(const SymmetricGraph& g) {
  FixedCounts out;
  for (const Element e : g.group().elements()) {
    const Permutation vp = g.vertex_permutation(e);
    const Permutation lp = g.loop_permutation(e);
    ElementCounts c;
    c.element = e;
    c.vertices = count_fixed(vp);
    for (const auto& [u, v] : g.edges()) {
      if ((vp[u] == u && vp[v] == v) || (vp[u] == v && vp[v] == u)) ++c.edges;
    }
    for (int j = 0; j < g.num_loops(); ++j) {
      if (lp[j] != j) continue;
      ++c.loops;
      if (e.refl) {
        const int s = loop_sign(g, j, e);
        if (s > 0) ++c.loops_plus;
        if (s < 0) ++c.loops_minus;
      }
    }
    out.per_element.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subgraphs and components

struct Subgraph {
  SymmetricGraph graph;
  std::vector<int> vertex_map;  // old -> new, -1 when removed
  std::vector<int> loop_map;    // old -> new, -1 when removed
};

/// Subgraph induced on a vertex set closed under the action. Loops at kept
/// vertices survive unless listed in `drop_loops`; `extra_edges` are added.
inline Subgraph induced_subgraph(const SymmetricGraph& g, const std::vector<int>& keep,
                                 const std::vector<int>& drop_loops = {},
                                 const std::vector<Edge>& extra_edges = {}) {
  Subgraph out;
  out.vertex_map.assign(g.num_vertices(), -1);
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  for (std::size_t i = 0; i < kept.size(); ++i) out.vertex_map[kept[i]] = static_cast<int>(i);

  std::vector<char> dropped(g.num_loops(), 0);
  for (int j : drop_loops) dropped.at(j) = 1;
  out.loop_map.assign(g.num_loops(), -1);
  std::vector<Loop> loops;
  for (const Loop& l : g.loops()) {
    if (out.vertex_map[l.vertex] < 0 || dropped[l.id]) continue;
    out.loop_map[l.id] = static_cast<int>(loops.size());
    loops.push_back({static_cast<int>(loops.size()), out.vertex_map[l.vertex], l.sigma});
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) {
    if (out.vertex_map[u] >= 0 && out.vertex_map[v] >= 0)
      edges.push_back(make_edge(out.vertex_map[u], out.vertex_map[v]));
  }
  for (const auto& [u, v] : extra_edges) edges.push_back(make_edge(out.vertex_map.at(u), out.vertex_map.at(v)));

  auto restrict = [&](const GeneratorAction& a) {
    GeneratorAction r;
    for (int v : kept) {
      const int image = out.vertex_map[a.vertex[v]];
      if (image < 0) throw InputError(ErrorCode::invalid_action, "vertex set not closed under action");
      r.vertex.push_back(image);
    }
    r.loop.assign(loops.size(), 0);
    for (const Loop& l : g.loops()) {
      if (out.loop_map[l.id] < 0) continue;
      const int image = out.loop_map[a.loop[l.id]];
      if (image < 0) throw InputError(ErrorCode::invalid_action, "loop set not closed under action");
      r.loop[out.loop_map[l.id]] = image;
    }
    return r;
  };
  GeneratorAction rot = restrict(g.rotation());
  GeneratorAction refl;
  if (g.group().has_reflection()) refl = restrict(g.reflection());
  out.graph = SymmetricGraph(g.group(), static_cast<int>(kept.size()), std::move(edges),
                             std::move(loops), std::move(rot), std::move(refl));
  return out;
}

/// Disjoint union; vertices and loops of `b` follow those of `a`.
inline SymmetricGraph disjoint_union(const SymmetricGraph& a, const SymmetricGraph& b) {
  if (!(a.group() == b.group()))
    throw InputError(ErrorCode::schema, "disjoint union of graphs over different groups");
  const int nv = a.num_vertices(), nl = a.num_loops();
  std::vector<Edge> edges = a.edges();
  for (const auto& [u, v] : b.edges()) edges.push_back({u + nv, v + nv});
  std::vector<Loop> loops = a.loops();
  for (const Loop& l : b.loops()) loops.push_back({l.id + nl, l.vertex + nv, l.sigma});
  auto join = [&](const GeneratorAction& x, const GeneratorAction& y) {
    GeneratorAction r = x;
    for (int v : y.vertex) r.vertex.push_back(v + nv);
    for (int l : y.loop) r.loop.push_back(l + nl);
    return r;
  };
  GeneratorAction refl;
  if (a.group().has_reflection()) refl = join(a.reflection(), b.reflection());
  return SymmetricGraph(a.group(), nv + b.num_vertices(), std::move(edges), std::move(loops),
                        join(a.rotation(), b.rotation()), std::move(refl));
}

/// Gamma-symmetrically connected components: vertex classes closed under
/// adjacency and under the group action, ordered by smallest vertex.
inline std::vector<std::vector<int>> symmetric_components(const SymmetricGraph& g) {
  const int n = g.num_vertices();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (const auto& [u, v] : g.edges()) unite(u, v);
  for (int v = 0; v < n; ++v) {
    unite(v, g.rotation().vertex[v]);
    if (g.group().has_reflection()) unite(v, g.reflection().vertex[v]);
  }
  std::vector<std::vector<int>> comps;
  std::vector<int> slot(n, -1);
  for (int v = 0; v < n; ++v) {
    const int root = find(v);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[slot[root]].push_back(v);
  }
  return comps;
}

}  // namespace slc
