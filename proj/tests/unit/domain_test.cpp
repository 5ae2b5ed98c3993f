#include "denseflock/domain.hpp"
#include "denseflock/errors.hpp"

#include <gtest/gtest.h>

using namespace denseflock;

TEST(Domain, UnboundedDistanceIsEuclidean) {
  const Domain d = Domain::unbounded();
  EXPECT_DOUBLE_EQ(d.distance(Eigen::Vector2d(0, 0), Eigen::Vector2d(3, 4)), 5.0);
}

TEST(Domain, MinimumImage) {
  const Domain d = Domain::periodic(10.0);
  EXPECT_NEAR(d.distance(Eigen::Vector2d(0.5, 5), Eigen::Vector2d(9.5, 5)), 1.0, 1e-12);
  const Eigen::VectorXd disp = d.displacement(Eigen::Vector2d(0.5, 9.0), Eigen::Vector2d(9.5, 1.0));
  EXPECT_NEAR(disp[0], -1.0, 1e-12);
  EXPECT_NEAR(disp[1], 2.0, 1e-12);
}

TEST(Domain, WrapIntoBox) {
  const Domain d = Domain::periodic(10.0);
  Points p(2, 3);
  p << -0.5, 10.0, 23.0,
       5.0, -10.0, -1e-18;
  d.wrap(p);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    EXPECT_GE(p(i), 0.0);
    EXPECT_LT(p(i), 10.0);
  }
  EXPECT_NEAR(p(0, 0), 9.5, 1e-12);
  EXPECT_NEAR(p(0, 2), 3.0, 1e-12);
}

TEST(Domain, RangeMustFitBox) {
  EXPECT_NO_THROW(Domain::periodic(25.0).require_range(2.0));
  EXPECT_THROW(Domain::periodic(4.0).require_range(2.0), ConfigError);
  EXPECT_NO_THROW(Domain::unbounded().require_range(1e9));
  EXPECT_ANY_THROW(Domain::periodic(-1.0));
}
