#include <gtest/gtest.h>

#include <cmath>

#include "slcrigid/catalog.hpp"
#include "slcrigid/henneberg.hpp"
#include "slcrigid/realize.hpp"
#include "slcrigid/symcheck.hpp"

using namespace slc;

namespace {

std::vector<long long> integer_cols(const CharacterReport& r) {
  std::vector<long long> out;
  for (const CharacterValue& c : r.cols) out.push_back(std::llround(c.value()));
  return out;
}

// Characters read off an actual symmetric placement: an edge row is fixed
// when its edge is, a fixed loop row contributes the sign relating tau(g) q
// to q, and a fixed vertex contributes trace tau(g).
std::pair<std::vector<double>, std::vector<double>> numeric_characters(const SymmetricGraph& g,
                                                                       std::uint64_t seed) {
  const Framework fw = sample_symmetric_placement(g, seed);
  const GroupSpec& G = g.group();
  std::vector<double> rows, cols;
  for (Element e : G.elements()) {
    const ElementAction a = element_action(g, e);
    const Mat2 t = G.tau(e);
    double r = 0, c = 0;
    for (int k = 0; k < g.num_edges(); ++k) r += a.edge[k] == k;
    for (int j = 0; j < g.num_loops(); ++j) {
      if (a.loop[j] != j) continue;
      const Vec2 img = t.apply(fw.q[j]);
      const double qq = fw.q[j][0] * fw.q[j][0] + fw.q[j][1] * fw.q[j][1];
      r += (img[0] * fw.q[j][0] + img[1] * fw.q[j][1]) / qq;
    }
    for (int v = 0; v < g.num_vertices(); ++v) c += (a.vertex[v] == v) * t.trace();
    rows.push_back(r);
    cols.push_back(c);
  }
  return {rows, cols};
}

}  // namespace

TEST(Characters, PinnedFixed) {
  const CharacterReport r = character_vectors(make_base({BaseKind::pinned_fixed, 2, 1}));
  EXPECT_EQ(r.rows, (std::vector<long long>{2, -2}));
  EXPECT_EQ(integer_cols(r), (std::vector<long long>{2, -2}));
  EXPECT_TRUE(r.equal);
}

TEST(Characters, LoopedTriangle) {
  const CharacterReport r = character_vectors(make_base({BaseKind::looped_cycle, 3, 1}));
  EXPECT_EQ(r.rows, (std::vector<long long>{6, 0, 0}));
  EXPECT_EQ(integer_cols(r), (std::vector<long long>{6, 0, 0}));
  EXPECT_TRUE(r.equal);
}

TEST(Characters, FixedEdgeBreaksEquality) {
  // Swapped pair joined by an edge, two loops each: one fixed edge, no
  // fixed vertices or loops.
  const SymmetricGraph g(GroupSpec::cyclic(2), 2, {{0, 1}}, {{0, 0, 0}, {1, 1, 0}, {2, 0, 0}, {3, 1, 0}},
                         {{1, 0}, {1, 0, 3, 2}});
  const CharacterReport r = character_vectors(g);
  EXPECT_EQ(r.rows[1], 1);
  EXPECT_EQ(integer_cols(r)[1], 0);
  EXPECT_FALSE(r.equal);
}

TEST(Characters, IrrationalEntriesStaySymbolic) {
  // One fixed vertex under C5: 2cos(2pi/5) is not an integer.
  const CharacterValue c{1, 1, 5};
  EXPECT_FALSE(c.twice_cos());
  EXPECT_FALSE(c.equals(0));
  EXPECT_NEAR(c.value(), 2 * std::cos(2 * std::numbers::pi / 5), 1e-15);
  EXPECT_TRUE((CharacterValue{0, 1, 5}).equals(0));
}

TEST(Characters, MatchNumericTracesOnPlacements) {
  for (int n : {2, 3, 4, 5}) {
    for (const BaseSpec& b : bases_for(GroupSpec::cyclic(n))) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const SymmetricGraph g = generate_random(b, 3, seed).graph;
        const CharacterReport r = character_vectors(g);
        const auto [rows, cols] = numeric_characters(g, seed);
        for (std::size_t i = 0; i < rows.size(); ++i) {
          EXPECT_NEAR(rows[i], static_cast<double>(r.rows[i]), 1e-9);
          EXPECT_NEAR(cols[i], r.cols[i].value(), 1e-9);
        }
        EXPECT_TRUE(r.equal);  // generated graphs are isostatic
      }
    }
  }
  // Mirror-fixed loops: one labelled + (normal along the mirror), one -.
  const SymmetricGraph cs(GroupSpec::reflection(), 1, {}, {{0, 0, 1}, {1, 0, -1}}, {}, {{0}, {0, 1}});
  const CharacterReport r = character_vectors(cs);
  const auto [rows, cols] = numeric_characters(cs, 3);
  EXPECT_NEAR(rows[1], static_cast<double>(r.rows[1]), 1e-9);
  EXPECT_NEAR(cols[1], r.cols[1].value(), 1e-9);
  EXPECT_EQ(r.rows[1], 0);
}

TEST(FixedCounts, Examples) {
  const Table2Report p = table2_check(make_base({BaseKind::pinned_fixed, 2, 1}));
  EXPECT_TRUE(p.pass);
  EXPECT_EQ(p.conditions.at(0).branch, "v_2 = 1, e_2 = 0, l_2 = 2");

  const Table2Report e = table2_check(half_turn_fixed_edge());
  EXPECT_FALSE(e.pass);
  EXPECT_EQ(e.failed(), "e_2 = 0");

  const Table2Report v = table2_check(rotation_fixed_vertex());
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.failed(), "v_n = 0");

  EXPECT_TRUE(table2_check(make_base({BaseKind::pinned_swapped, 4, 1})).pass);
}

TEST(FixedCounts, MirrorBalance) {
  // e_s + l_s+ = l_s-: one + loop and one - loop balance, two + loops do not.
  const SymmetricGraph balanced(GroupSpec::reflection(), 1, {}, {{0, 0, 1}, {1, 0, -1}}, {}, {{0}, {0, 1}});
  EXPECT_TRUE(table2_check(balanced).pass);
  const SymmetricGraph bad(GroupSpec::reflection(), 1, {}, {{0, 0, 1}, {1, 0, 1}}, {}, {{0}, {0, 1}});
  EXPECT_FALSE(table2_check(bad).pass);
  EXPECT_EQ(table2_check(bad).failed(), "e_s + l_s+ = l_s-");
  // Two vertices swapped by the mirror, each with two loops: nothing fixed.
  const SymmetricGraph ok(GroupSpec::reflection(), 2, {}, {{0, 0, 0}, {1, 1, 0}, {2, 0, 0}, {3, 1, 0}}, {},
                          {{1, 0}, {1, 0, 3, 2}});
  EXPECT_TRUE(table2_check(ok).pass);
}

TEST(GammaTight, Examples) {
  EXPECT_TRUE(is_gamma_tight(make_base({BaseKind::pinned_orbit, 2, 1})).gamma_tight);
  EXPECT_TRUE(is_gamma_tight(make_base({BaseKind::looped_cycle, 5, 1})).gamma_tight);
  const GammaTightReport f = is_gamma_tight(rigid_without_isostatic_subgraph());
  EXPECT_FALSE(f.gamma_tight);
  EXPECT_EQ(f.sparsity.verdict, SparsityVerdict::not_sparse);
  EXPECT_EQ(f.sparsity.edges + f.sparsity.loops, 9);
}
