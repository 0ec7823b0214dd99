#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "slcrigid/catalog.hpp"
#include "slcrigid/henneberg.hpp"
#include "slcrigid/realize.hpp"

using namespace slc;

namespace {

double norm(const Vec2& v) { return std::hypot(v[0], v[1]); }

// Looped triangle on the unit circle. With radial normals every slider line
// is tangent and the rotation about the centre is a motion; with tangential
// normals the slider lines are radial and the framework is rigid.
Framework loop_triangle_on_circle(bool radial_normals) {
  const SymmetricGraph g = make_base({BaseKind::looped_cycle, 3, 1});
  Framework fw{g, {}, {}};
  for (int i = 0; i < 3; ++i) {
    const double a = 2 * std::numbers::pi * i / 3;
    fw.p.push_back({std::cos(a), std::sin(a)});
    if (radial_normals)
      fw.q.push_back({std::cos(a), std::sin(a)});
    else
      fw.q.push_back({-std::sin(a), std::cos(a)});
  }
  return fw;
}

}  // namespace

TEST(Placement, PinnedFixedAtOrigin) {
  const SymmetricGraph g = make_base({BaseKind::pinned_fixed, 2, 1});
  const Framework fw = sample_symmetric_placement(g, 5);
  EXPECT_EQ(fw.p[0], (Vec2{0, 0}));
  const double det = fw.q[0][0] * fw.q[1][1] - fw.q[0][1] * fw.q[1][0];
  EXPECT_NE(det, 0.0);
}

TEST(Placement, HalfTurnPairs) {
  const SymmetricGraph g = make_base({BaseKind::pinned_orbit, 2, 1});
  const Framework fw = sample_symmetric_placement(g, 5);
  EXPECT_EQ(fw.p[1][0], -fw.p[0][0]);
  EXPECT_EQ(fw.p[1][1], -fw.p[0][1]);
  EXPECT_GT(norm(fw.p[0]), 0);
  EXPECT_EQ(fw.q[1][0], -fw.q[0][0]);
  EXPECT_EQ(fw.q[3][1], -fw.q[2][1]);
}

TEST(Placement, TriangleAt120Degrees) {
  const SymmetricGraph g = make_base({BaseKind::looped_cycle, 3, 1});
  const Framework fw = sample_symmetric_placement(g, 11);
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const double cp = (fw.p[i][0] * fw.p[j][0] + fw.p[i][1] * fw.p[j][1]) / (norm(fw.p[i]) * norm(fw.p[j]));
    EXPECT_NEAR(cp, -0.5, 1e-12);
    const double cq = (fw.q[i][0] * fw.q[j][0] + fw.q[i][1] * fw.q[j][1]) / (norm(fw.q[i]) * norm(fw.q[j]));
    EXPECT_NEAR(cq, -0.5, 1e-12);
  }
  EXPECT_LT(symmetry_residual(fw), 1e-6);
}

TEST(Placement, SymmetricForAllGroups) {
  for (int n : {1, 2, 3, 4, 5, 6}) {
    for (const BaseSpec& b : bases_for(GroupSpec::cyclic(n))) {
      const SymmetricGraph g = generate_random(b, 3, 77).graph;
      const Framework fw = sample_symmetric_placement(g, 1);
      EXPECT_LT(symmetry_residual(fw), 1e-9 * kDefaultScale) << base_name(b);
    }
  }
  const SymmetricGraph cs(GroupSpec::reflection(), 3, {{0, 1}, {0, 2}}, {{0, 0, 1}, {1, 1, 0}, {2, 2, 0}},
                          {}, {{0, 2, 1}, {0, 2, 1}});
  const Framework fw = sample_symmetric_placement(cs, 4);
  EXPECT_LT(symmetry_residual(fw), 1e-6);
  EXPECT_EQ(fw.p[0][1], 0.0);  // on the mirror
  EXPECT_EQ(fw.q[0][1], 0.0);  // + label: normal along the mirror
}

TEST(Placement, Deterministic) {
  const SymmetricGraph g = generate_random({BaseKind::looped_cycle, 5, 1}, 2, 3).graph;
  const Framework a = sample_symmetric_placement(g, 99), b = sample_symmetric_placement(g, 99);
  EXPECT_EQ(a.p, b.p);
  EXPECT_EQ(a.q, b.q);
}

TEST(RigidityMatrix, Templates) {
  const SymmetricGraph p1(GroupSpec::cyclic(1), 1, {}, {{0, 0, 0}, {1, 0, 0}});
  const Framework fw{p1, {{0, 0}}, {{1, 0}, {0, 1}}};
  const RigidityMatrix m = build_rigidity_matrix(fw);
  EXPECT_EQ(m.values.data, (std::vector<double>{1, 0, 0, 1}));
  EXPECT_EQ(rank(m).rank, 2);

  const SymmetricGraph bar(GroupSpec::cyclic(1), 2, {{0, 1}}, {});
  const RigidityMatrix b = build_rigidity_matrix({bar, {{0, 0}, {1, 0}}, {}});
  EXPECT_EQ(b.values.data, (std::vector<double>{-1, 0, 1, 0}));

  const RankReport r = rank(build_rigidity_matrix(loop_triangle_on_circle(false)));
  EXPECT_EQ(r.rows, 6);
  EXPECT_EQ(r.rank, 6);
  EXPECT_EQ(rank(build_rigidity_matrix(loop_triangle_on_circle(true))).rank, 5);

  EXPECT_THROW(build_rigidity_matrix({bar, {{1, 1}, {1, 1}}, {}}), InputError);
}

TEST(Classify, Examples) {
  EXPECT_TRUE(classify(make_base({BaseKind::looped_cycle, 5, 1})).isostatic());
  const SymmetricGraph single(GroupSpec::cyclic(1), 1, {}, {{0, 0, 0}});
  const RankReport s = classify(single);
  EXPECT_EQ(s.rank, 1);
  EXPECT_EQ(s.classification, Classification::independent_flexible);

  // K4 with two loops: 8 rows on 8 columns, but K4's six edges are dependent.
  const SymmetricGraph k4(GroupSpec::cyclic(1), 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
                          {{0, 0, 0}, {1, 1, 0}});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const RankReport r = classify(k4, 1, seed);
    EXPECT_EQ(r.rows, 8);
    EXPECT_LT(r.rank, 8);
  }

  const RankReport rigid = classify(rigid_without_isostatic_subgraph());
  EXPECT_EQ(rigid.rank, 8);
  EXPECT_EQ(rigid.rows, 9);
  EXPECT_EQ(rigid.classification, Classification::rigid_dependent);
}

TEST(Classify, ExactBackend) {
  const RankReport r = classify(make_base({BaseKind::pinned_fixed, 2, 1}), 3, 1, kDefaultTolerance, Backend::exact);
  EXPECT_EQ(r.rank, 2);
  EXPECT_EQ(r.backend, Backend::exact);
  EXPECT_THROW(classify(make_base({BaseKind::looped_cycle, 3, 1}), 1, 1, kDefaultTolerance, Backend::exact),
               InputError);
  const RankReport c4 =
      classify(make_base({BaseKind::pinned_swapped, 4, 1}), 3, 1, kDefaultTolerance, Backend::exact);
  EXPECT_TRUE(c4.isostatic());
}

TEST(Motions, Examples) {
  const SymmetricGraph p1(GroupSpec::cyclic(1), 1, {}, {{0, 0, 0}, {1, 0, 0}});
  EXPECT_EQ(motions({p1, {{0, 0}}, {{1, 0}, {0, 1}}}).dimension, 0);

  const SymmetricGraph single(GroupSpec::cyclic(1), 1, {}, {{0, 0, 0}});
  const Framework fw{single, {{0, 0}}, {{3, 4}}};
  const MotionReport m = motions(fw);
  ASSERT_EQ(m.dimension, 1);
  // The motion runs along the constraint line, orthogonal to q.
  const Vec2 v = m.basis[0][0];
  EXPECT_NEAR(3 * v[0] + 4 * v[1], 0.0, 1e-12);
  EXPECT_GT(norm(v), 0.5);
  const MotionReport e = motions(fw, kDefaultTolerance, Backend::exact);
  ASSERT_EQ(e.dimension, 1);
  EXPECT_EQ(Rational(3) * e.exact_basis[0][0] + Rational(4) * e.exact_basis[0][1], 0);

  EXPECT_EQ(motions(loop_triangle_on_circle(false)).dimension, 0);
  const Framework tangent = loop_triangle_on_circle(true);
  const MotionReport rot = motions(tangent);
  ASSERT_EQ(rot.dimension, 1);
  // The motion is the rotation: v_i proportional to J p_i.
  for (int i = 0; i < 3; ++i) {
    const Vec2 v = rot.basis[0][i], p = tangent.p[i];
    EXPECT_NEAR(v[0] * p[0] + v[1] * p[1], 0.0, 1e-12);
  }
  EXPECT_EQ(motions(sample_symmetric_placement(make_base({BaseKind::looped_cycle, 3, 1}), 2)).dimension, 0);
}
