#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "slcrigid/group.hpp"

using namespace slc;

namespace {

// Dense matrix product, independent of GroupSpec::compose.
Mat2 mul(const Mat2& x, const Mat2& y) {
  return {{x.a[0] * y.a[0] + x.a[1] * y.a[2], x.a[0] * y.a[1] + x.a[1] * y.a[3],
           x.a[2] * y.a[0] + x.a[3] * y.a[2], x.a[2] * y.a[1] + x.a[3] * y.a[3]}};
}

double diff(const Mat2& x, const Mat2& y) {
  double d = 0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(x.a[i] - y.a[i]));
  return d;
}

}  // namespace

TEST(Group, TauIsAHomomorphism) {
  for (GroupSpec G : {GroupSpec::cyclic(1), GroupSpec::cyclic(2), GroupSpec::cyclic(5),
                      GroupSpec::reflection(), GroupSpec::dihedral(3), GroupSpec::dihedral(4)}) {
    for (Element a : G.elements())
      for (Element b : G.elements())
        EXPECT_LT(diff(mul(G.tau(a), G.tau(b)), G.tau(G.compose(a, b))), 1e-12) << G.name();
  }
}

TEST(Group, InverseAndOrder) {
  const GroupSpec G = GroupSpec::dihedral(6);
  for (Element a : G.elements()) {
    EXPECT_TRUE(G.compose(a, G.inverse(a)).is_identity());
    if (a.refl) {
      EXPECT_EQ(G.element_order(a), 2);
    }
  }
  EXPECT_EQ(G.element_order({1, false}), 6);
  EXPECT_EQ(G.element_order({2, false}), 3);
  EXPECT_EQ(G.element_order({3, false}), 2);
}

TEST(Group, ExactQuarterTurns) {
  const GroupSpec G = GroupSpec::cyclic(4);
  const Mat2 r = G.tau({1, false});
  EXPECT_EQ(r.a[0], 0.0);
  EXPECT_EQ(r.a[1], -1.0);
  EXPECT_EQ(r.a[2], 1.0);
  EXPECT_EQ(r.a[3], 0.0);
  EXPECT_TRUE(G.exact_rational());
  EXPECT_TRUE(GroupSpec::cyclic(2).exact_rational());
  EXPECT_FALSE(GroupSpec::cyclic(3).exact_rational());
}

TEST(Group, MirrorDirectionIsFixedByMirror) {
  const GroupSpec G = GroupSpec::dihedral(5);
  for (Element e : G.elements()) {
    if (!e.refl) continue;
    const auto d = G.mirror_direction(e);
    const auto img = G.tau(e).apply(d);
    EXPECT_NEAR(img[0], d[0], 1e-12);
    EXPECT_NEAR(img[1], d[1], 1e-12);
  }
}

TEST(Group, Names) {
  EXPECT_EQ(parse_group_name("c3"), GroupSpec::cyclic(3));
  EXPECT_EQ(parse_group_name("cs"), GroupSpec::reflection());
  EXPECT_EQ(parse_group_name("c4v"), GroupSpec::dihedral(4));
  EXPECT_EQ(GroupSpec::cyclic(5).name(), "C5");
  EXPECT_THROW(parse_group_name("d3"), InputError);
  EXPECT_THROW(parse_group_name("c0"), InputError);
}
