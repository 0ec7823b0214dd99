#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "slcrigid/error.hpp"
#include "slcrigid/linalg.hpp"
#include "slcrigid/symgraph.hpp"

namespace slc {

using Vec2 = std::array<double, 2>;

/// Placement p of the vertices and constraint normals q of the loops.
struct Framework {
  SymmetricGraph graph;
  std::vector<Vec2> p;
  std::vector<Vec2> q;
};

inline constexpr long long kDefaultScale = 1'000'000;
inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr int kDefaultTrials = 3;

namespace detail {

inline std::vector<int> stabiliser(const std::vector<Permutation>& perms, int x) {
  std::vector<int> out;
  for (std::size_t i = 0; i < perms.size(); ++i)
    if (perms[i][x] == x) out.push_back(static_cast<int>(i));
  return out;
}

inline long long draw_nonzero(std::mt19937_64& rng, long long scale) {
  std::uniform_int_distribution<long long> d(-scale, scale);
  for (;;) {
    const long long x = d(rng);
    if (x != 0) return x;
  }
}

inline Vec2 draw_point(std::mt19937_64& rng, long long scale) {
  std::uniform_int_distribution<long long> d(-scale, scale);
  for (;;) {
    const Vec2 v{static_cast<double>(d(rng)), static_cast<double>(d(rng))};
    if (v[0] != 0.0 || v[1] != 0.0) return v;
  }
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline bool injective(const std::vector<Vec2>& p, double eps) {
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (std::abs(p[i][0] - p[j][0]) <= eps && std::abs(p[i][1] - p[j][1]) <= eps) return false;
  return true;
}

}  // namespace detail

/// Random symmetric placement with integer orbit representatives drawn from
/// [-scale, scale]^2 and propagated by tau. A degenerate draw (coincident
/// points) is redrawn from the next derived seed.
inline Framework sample_symmetric_placement(const SymmetricGraph& g, std::uint64_t seed,
                                            long long scale = kDefaultScale) {
  const GroupSpec& G = g.group();
  std::vector<Permutation> vperm, lperm;
  for (const Element e : G.elements()) {
    vperm.push_back(g.vertex_permutation(e));
    lperm.push_back(g.loop_permutation(e));
  }
  const Orbits orb = orbits(g);

  // Loop normals: fixed subspace of the stabiliser (with loop signs).
  struct LoopRule {
    int mirror = -1;  // element index of a stabilising mirror
    int sign = 0;
  };
  std::vector<LoopRule> loop_rules;
  for (const auto& orbit : orb.loop) {
    const int rep = orbit.front();
    LoopRule rule;
    for (int idx : detail::stabiliser(lperm, rep)) {
      const Element e = G.element(idx);
      if (!e.refl && G.element_order(e) > 2)
        throw InputError(ErrorCode::invalid_action,
                         "loop " + std::to_string(rep) + " fixed by a rotation of order > 2");
      if (e.refl && rule.mirror < 0) {
        rule.mirror = idx;
        rule.sign = loop_sign(g, rep, e);
      }
    }
    if (rule.mirror >= 0 && rule.sign == 0)
      throw InputError(ErrorCode::invalid_action,
                       "loop " + std::to_string(rep) + " is fixed by a mirror but has no sigma label");
    if (rule.mirror < 0 && g.loop(rep).sigma != 0)
      throw InputError(ErrorCode::invalid_action,
                       "sigma label on loop " + std::to_string(rep) +
                           " contradicts the group: no mirror fixes it");
    loop_rules.push_back(rule);
  }

  const double eps = 1e-9 * static_cast<double>(scale);
  for (std::uint64_t attempt = 0;; ++attempt) {
    std::mt19937_64 rng(detail::mix_seed(seed, attempt));
    Framework fw{g, std::vector<Vec2>(g.num_vertices()), std::vector<Vec2>(g.num_loops())};

    std::vector<char> placed(g.num_vertices(), 0);
    for (const auto& orbit : orb.vertex) {
      const int rep = orbit.front();
      Vec2 p{0.0, 0.0};
      bool rotation_fixed = false;
      int mirror = -1;
      for (int idx : detail::stabiliser(vperm, rep)) {
        const Element e = G.element(idx);
        if (!e.refl && e.rot != 0) rotation_fixed = true;
        if (e.refl && mirror < 0) mirror = idx;
      }
      if (!rotation_fixed) {
        if (mirror >= 0) {
          const Vec2 d = G.mirror_direction(G.element(mirror));
          const double t = static_cast<double>(detail::draw_nonzero(rng, scale));
          p = {t * d[0], t * d[1]};
        } else {
          p = detail::draw_point(rng, scale);
        }
      }
      for (int idx = 0; idx < G.size(); ++idx) {
        const int target = vperm[idx][rep];
        if (placed[target]) continue;
        placed[target] = 1;
        fw.p[target] = G.tau(G.element(idx)).apply(p);
      }
    }
    if (!detail::injective(fw.p, eps)) continue;

    std::vector<char> assigned(g.num_loops(), 0);
    for (std::size_t o = 0; o < orb.loop.size(); ++o) {
      const int rep = orb.loop[o].front();
      const LoopRule& rule = loop_rules[o];
      Vec2 q;
      if (rule.mirror >= 0) {
        const Vec2 d = G.mirror_direction(G.element(rule.mirror));
        const double t = static_cast<double>(detail::draw_nonzero(rng, scale));
        q = rule.sign > 0 ? Vec2{t * d[0], t * d[1]} : Vec2{-t * d[1], t * d[0]};
      } else {
        q = detail::draw_point(rng, scale);
      }
      for (int idx = 0; idx < G.size(); ++idx) {
        const int target = lperm[idx][rep];
        if (assigned[target]) continue;
        assigned[target] = 1;
        fw.q[target] = G.tau(G.element(idx)).apply(q);
      }
    }
    return fw;
  }
}

/// Largest violation of the symmetry compatibility equations. Normals of
/// loops that are not fixed are compared up to sign.
inline double symmetry_residual(const Framework& fw) {
  const SymmetricGraph& g = fw.graph;
  const GroupSpec& G = g.group();
  double worst = 0.0;
  auto dist = [](const Vec2& a, const Vec2& b, double s) {
    return std::max(std::abs(a[0] - s * b[0]), std::abs(a[1] - s * b[1]));
  };
  for (const Element e : G.elements()) {
    const Mat2 t = G.tau(e);
    const Permutation vp = g.vertex_permutation(e);
    const Permutation lp = g.loop_permutation(e);
    for (int i = 0; i < g.num_vertices(); ++i)
      worst = std::max(worst, dist(t.apply(fw.p[i]), fw.p[vp[i]], 1.0));
    for (int j = 0; j < g.num_loops(); ++j) {
      const Vec2 image = t.apply(fw.q[j]);
      if (lp[j] == j) {
        worst = std::max(worst, dist(image, fw.q[j], loop_sign(g, j, e)));
      } else {
        worst = std::max(worst, std::min(dist(image, fw.q[lp[j]], 1.0),
                                         dist(image, fw.q[lp[j]], -1.0)));
      }
    }
  }
  return worst;
}

/// Rigidity matrix with its group, so the exact backend can tell whether the
/// entries are rational by construction.
struct RigidityMatrix {
  GroupSpec group;
  Matrix<double> values;
};

/// Rows: edges in canonical order, then loops by id. Columns: (x, y) per
/// vertex.
inline RigidityMatrix build_rigidity_matrix(const Framework& fw) {
  const SymmetricGraph& g = fw.graph;
  RigidityMatrix out{g.group(), Matrix<double>(g.num_edges() + g.num_loops(), 2 * g.num_vertices())};
  Matrix<double>& m = out.values;
  int row = 0;
  for (const auto& [i, j] : g.edges()) {
    const Vec2 d{fw.p[i][0] - fw.p[j][0], fw.p[i][1] - fw.p[j][1]};
    if (d[0] == 0.0 && d[1] == 0.0)
      throw InputError(ErrorCode::degenerate, "zero-length edge {" + std::to_string(i) + "," +
                                                  std::to_string(j) + "}");
    m(row, 2 * i) = d[0];
    m(row, 2 * i + 1) = d[1];
    m(row, 2 * j) = -d[0];
    m(row, 2 * j + 1) = -d[1];
    ++row;
  }
  for (const Loop& l : g.loops()) {
    m(row, 2 * l.vertex) = fw.q[l.id][0];
    m(row, 2 * l.vertex + 1) = fw.q[l.id][1];
    ++row;
  }
  return out;
}

enum class Backend { float64, exact };

inline std::string_view to_string(Backend b) { return b == Backend::exact ? "exact" : "float"; }

enum class Classification { isostatic, rigid_dependent, independent_flexible, dependent_flexible };

inline std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::isostatic: return "isostatic";
    case Classification::rigid_dependent: return "rigid-dependent";
    case Classification::independent_flexible: return "independent-flexible";
    case Classification::dependent_flexible: return "dependent-flexible";
  }
  return "?";
}

inline Classification classify_rank(int rank, int rows, int cols) {
  const bool rigid = rank == cols;
  const bool independent = rank == rows;
  if (rigid && independent) return Classification::isostatic;
  if (rigid) return Classification::rigid_dependent;
  if (independent) return Classification::independent_flexible;
  return Classification::dependent_flexible;
}

struct RankReport {
  int rank = 0;
  int rows = 0;
  int cols = 0;
  Backend backend = Backend::float64;
  double tolerance = kDefaultTolerance;
  int trials = 1;
  Classification classification = Classification::isostatic;
  // Float backend only; NaN when absent.
  double smallest_accepted = std::numeric_limits<double>::quiet_NaN();
  double largest_rejected = std::numeric_limits<double>::quiet_NaN();
  std::vector<int> trial_ranks;

  bool rigid() const { return rank == cols; }
  bool independent() const { return rank == rows; }
  bool isostatic() const { return classification == Classification::isostatic; }
};

inline Matrix<Rational> to_rational(const Matrix<double>& m) {
  Matrix<Rational> out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.data.size(); ++i) out.data[i] = Rational(m.data[i]);
  return out;
}

inline void require_exact_backend(const GroupSpec& G) {
  if (!G.exact_rational())
    throw InputError(ErrorCode::unsupported_backend,
                     "exact backend needs rational symmetry matrices; " + G.name() +
                         " has irrational entries");
}

inline RankReport rank(const RigidityMatrix& m, Backend backend = Backend::float64,
                       double tol = kDefaultTolerance) {
  RankReport r;
  r.rows = m.values.rows;
  r.cols = m.values.cols;
  r.backend = backend;
  r.tolerance = tol;
  if (backend == Backend::exact) {
    require_exact_backend(m.group);
    r.rank = exact_rank(to_rational(m.values));
  } else {
    const FloatRank f = float_rank(m.values, tol);
    r.rank = f.rank;
    r.smallest_accepted = f.smallest_accepted;
    r.largest_rejected = f.largest_rejected;
  }
  r.trial_ranks = {r.rank};
  r.classification = classify_rank(r.rank, r.rows, r.cols);
  return r;
}

/// Symmetric-generic rank estimated as the maximum over `trials` random
/// symmetric placements.
inline RankReport classify(const SymmetricGraph& g, int trials = kDefaultTrials,
                           std::uint64_t seed = 0, double tol = kDefaultTolerance,
                           Backend backend = Backend::float64, long long scale = kDefaultScale) {
  if (backend == Backend::exact) require_exact_backend(g.group());
  RankReport best;
  std::vector<int> ranks;
  for (int t = 0; t < std::max(trials, 1); ++t) {
    const Framework fw = sample_symmetric_placement(g, detail::mix_seed(seed, 1000 + t), scale);
    RankReport r = rank(build_rigidity_matrix(fw), backend, tol);
    ranks.push_back(r.rank);
    if (t == 0 || r.rank > best.rank) best = r;
  }
  best.trials = std::max(trials, 1);
  best.trial_ranks = std::move(ranks);
  return best;
}

struct MotionReport {
  Backend backend = Backend::float64;
  int dimension = 0;
  std::vector<std::vector<Vec2>> basis;  // one velocity per vertex
  std::vector<std::vector<Rational>> exact_basis;  // exact backend only
  double max_residual = 0.0;
};

/// Largest |(p_i - p_j).(v_i - v_j)| over edges and |q_j . v_i| over loops.
inline double motion_residual(const Framework& fw, const std::vector<Vec2>& v) {
  double worst = 0.0;
  for (const auto& [i, j] : fw.graph.edges()) {
    const double r = (fw.p[i][0] - fw.p[j][0]) * (v[i][0] - v[j][0]) +
                     (fw.p[i][1] - fw.p[j][1]) * (v[i][1] - v[j][1]);
    worst = std::max(worst, std::abs(r));
  }
  for (const Loop& l : fw.graph.loops()) {
    const double r = fw.q[l.id][0] * v[l.vertex][0] + fw.q[l.id][1] * v[l.vertex][1];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

inline MotionReport motions(const Framework& fw, double tol = kDefaultTolerance,
                            Backend backend = Backend::float64) {
  const RigidityMatrix m = build_rigidity_matrix(fw);
  const int n = fw.graph.num_vertices();
  MotionReport out;
  out.backend = backend;
  if (backend == Backend::exact) {
    require_exact_backend(m.group);
    const Matrix<Rational> a = to_rational(m.values);
    out.exact_basis = exact_null_space(a);
    for (const auto& v : out.exact_basis) {
      // Exact check: every row annihilates the vector.
      for (int i = 0; i < a.rows; ++i) {
        Rational s = 0;
        for (int j = 0; j < a.cols; ++j) s += a(i, j) * v[j];
        if (s != 0) out.max_residual = std::numeric_limits<double>::infinity();
      }
      std::vector<Vec2> motion(n);
      for (int i = 0; i < n; ++i)
        motion[i] = {static_cast<double>(v[2 * i]), static_cast<double>(v[2 * i + 1])};
      out.basis.push_back(std::move(motion));
    }
  } else {
    const Eigen::MatrixXd ns = float_null_space(m.values, tol);
    for (int c = 0; c < ns.cols(); ++c) {
      std::vector<Vec2> motion(n);
      for (int i = 0; i < n; ++i) motion[i] = {ns(2 * i, c), ns(2 * i + 1, c)};
      out.max_residual = std::max(out.max_residual, motion_residual(fw, motion));
      out.basis.push_back(std::move(motion));
    }
  }
  out.dimension = static_cast<int>(out.basis.size());
  return out;
}

}  // namespace slc
