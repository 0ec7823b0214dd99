#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slcrigid/error.hpp"
#include "slcrigid/symgraph.hpp"

namespace slc {

enum class SparsityVerdict { tight, sparse_not_tight, not_sparse };

inline std::string_view to_string(SparsityVerdict v) {
  switch (v) {
    case SparsityVerdict::tight: return "sparse-and-tight";
    case SparsityVerdict::sparse_not_tight: return "sparse-not-tight";
    case SparsityVerdict::not_sparse: return "not-sparse";
  }
  return "?";
}

struct SparsityWitness {
  std::vector<int> vertices;
  int induced_rows = 0;   // i_{E+L}(X)
  int induced_edges = 0;  // i_E(X)
};

struct SparsityReport {
  SparsityVerdict verdict = SparsityVerdict::tight;
  std::optional<SparsityWitness> witness;
  int vertices = 0;
  int edges = 0;
  int loops = 0;

  bool sparse() const { return verdict != SparsityVerdict::not_sparse; }
  bool tight() const { return verdict == SparsityVerdict::tight; }
};

struct InducedCounts {
  int rows = 0;   // i_{E+L}
  int edges = 0;  // i_E
};

inline std::vector<char> membership(const LoopedGraph& g, const std::vector<int>& X) {
  std::vector<char> in(g.num_vertices, 0);
  for (int v : X) {
    if (v < 0 || v >= g.num_vertices)
      throw InputError(ErrorCode::index_out_of_range,
                       "vertex " + std::to_string(v) + " outside graph");
    in[v] = 1;
  }
  return in;
}

inline InducedCounts induced_counts(const LoopedGraph& g, const std::vector<int>& X) {
  const std::vector<char> in = membership(g, X);
  InducedCounts c;
  for (const auto& [u, v] : g.edges) c.edges += in[u] && in[v];
  c.rows = c.edges;
  for (int v : g.loops) c.rows += in[v];
  return c;
}

/// A set violates sparsity when it spans more than 2|X| rows, or spans a
/// non-empty edge set with more than 2|X| - 3 edges.
inline bool violates(int size, int rows, int edges) {
  return rows > 2 * size || (edges > 0 && edges > 2 * size - 3);
}

namespace detail {

inline SparsityReport finish(const LoopedGraph& g, std::optional<SparsityWitness> w) {
  SparsityReport r;
  r.vertices = g.num_vertices;
  r.edges = static_cast<int>(g.edges.size());
  r.loops = static_cast<int>(g.loops.size());
  r.witness = std::move(w);
  if (r.witness)
    r.verdict = SparsityVerdict::not_sparse;
  else
    r.verdict = g.rows() == 2 * g.num_vertices ? SparsityVerdict::tight
                                               : SparsityVerdict::sparse_not_tight;
  return r;
}

}  // namespace detail

/// Exhaustive check over all vertex subsets. Reports a violating set of
/// minimum size (smallest bitmask among those).
inline SparsityReport subset_audit(const LoopedGraph& g, int max_vertices = 24) {
  const int n = g.num_vertices;
  if (n > max_vertices || n > 30)
    throw InputError(ErrorCode::precondition,
                     "subset audit limited to " + std::to_string(max_vertices) +
                         " vertices; use pebble fast path");
  std::vector<std::uint32_t> adj(n, 0);
  std::vector<int> loops(n, 0);
  for (const auto& [u, v] : g.edges) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  for (int v : g.loops) ++loops[v];

  std::optional<std::uint32_t> best;
  int best_size = n + 1;
  SparsityWitness w;
  const std::uint32_t limit = n == 0 ? 1u : (1u << n);
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    const int size = std::popcount(mask);
    if (size >= best_size) continue;
    int twice_edges = 0, loop_count = 0;
    for (std::uint32_t m = mask; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      twice_edges += std::popcount(adj[v] & mask);
      loop_count += loops[v];
    }
    const int edges = twice_edges / 2;
    if (violates(size, edges + loop_count, edges)) {
      best = mask;
      best_size = size;
      w.induced_edges = edges;
      w.induced_rows = edges + loop_count;
    }
  }
  if (!best) return detail::finish(g, std::nullopt);
  for (int v = 0; v < n; ++v)
    if (*best >> v & 1u) w.vertices.push_back(v);
  return detail::finish(g, w);
}

/// (k, l) pebble game on a directed multigraph. Loops consume a pebble at
/// their vertex and are not traversed.
class PebbleGame {
 public:
  PebbleGame(int n, int k, int l) : l_(l), pebbles_(n, k), out_(n) {}

  bool insert_edge(int u, int v) {
    while (pebbles_[u] + pebbles_[v] < l_ + 1) {
      if (!fetch(u, u, v) && !fetch(v, u, v)) return false;
    }
    const int tail = pebbles_[u] > 0 ? u : v;
    --pebbles_[tail];
    out_[tail].push_back(tail == u ? v : u);
    return true;
  }

  bool insert_loop(int v) {
    while (pebbles_[v] < l_ + 1) {
      if (!fetch(v, v, v)) return false;
    }
    --pebbles_[v];
    return true;
  }

  /// Vertices reachable from `from` along oriented edges.
  std::vector<int> reach(std::vector<int> from) const {
    std::vector<char> seen(pebbles_.size(), 0);
    std::vector<int> stack, out;
    for (int s : from) {
      if (!seen[s]) {
        seen[s] = 1;
        stack.push_back(s);
      }
    }
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      out.push_back(x);
      for (int y : out_[x]) {
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  // Depth-first search from `start` for a free pebble away from the two
  // protected vertices; reverses the path so the pebble arrives at `start`.
  bool fetch(int start, int a, int b) {
    const int n = static_cast<int>(pebbles_.size());
    std::vector<int> parent(n, -2);
    std::vector<int> stack{start};
    parent[start] = -1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      if (x != a && x != b && pebbles_[x] > 0) {
        --pebbles_[x];
        ++pebbles_[start];
        for (int y = x; parent[y] >= 0; y = parent[y]) {
          const int p = parent[y];
          auto& edges = out_[p];
          edges.erase(std::find(edges.begin(), edges.end(), y));
          out_[y].push_back(p);
        }
        return true;
      }
      for (int y : out_[x]) {
        if (parent[y] == -2) {
          parent[y] = x;
          stack.push_back(y);
        }
      }
    }
    return false;
  }

  int l_;
  std::vector<int> pebbles_;
  std::vector<std::vector<int>> out_;
};

/// Polynomial sparsity check: a (2,3) pebble game over the edges and a
/// (2,0) pebble game over edges and loops. A rejected insertion yields the
/// reachable set of its endpoints as a violating witness.
inline SparsityReport pebble_check(const LoopedGraph& g) {
  const int n = g.num_vertices;
  auto witness = [&](std::vector<int> X) {
    const InducedCounts c = induced_counts(g, X);
    return SparsityWitness{std::move(X), c.rows, c.edges};
  };

  PebbleGame laman(n, 2, 3);
  for (const auto& [u, v] : g.edges) {
    if (!laman.insert_edge(u, v)) return detail::finish(g, witness(laman.reach({u, v})));
  }
  PebbleGame slider(n, 2, 0);
  for (const auto& [u, v] : g.edges) {
    if (!slider.insert_edge(u, v)) return detail::finish(g, witness(slider.reach({u, v})));
  }
  for (int v : g.loops) {
    if (!slider.insert_loop(v)) return detail::finish(g, witness(slider.reach({v})));
  }
  return detail::finish(g, std::nullopt);
}

/// k_X = 2|X| - i_{E+L}(X) and kbar_X = 2|X| - i_E(X).
struct Criticality {
  int k = 0;
  int kbar = 0;
};

inline Criticality criticality(const LoopedGraph& g, const std::vector<int>& X) {
  const InducedCounts c = induced_counts(g, X);
  const std::vector<char> in = membership(g, X);
  const int size = static_cast<int>(std::count(in.begin(), in.end(), char{1}));
  return {2 * size - c.rows, 2 * size - c.edges};
}

}  // namespace slc
