#include "denseflock/dynamics.hpp"
#include "denseflock/errors.hpp"
#include "denseflock/scenarios.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace denseflock;

TEST(Rng, ReproducibleUnitInterval) {
  Rng a(123), b(123), c(124);
  bool differs = false;
  for (int k = 0; k < 1000; ++k) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
    differs = differs || x != c.uniform();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, DerivedSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t k = 0; k < 10000; ++k) seen.insert(derive_seed(1, k));
  EXPECT_EQ(seen.size(), 10000u);
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(RandomClusters, BoxAndBias) {
  const EnsembleState s = init_random_clusters(2000, 25.0, 1, 2.0);
  EXPECT_GE(s.positions.minCoeff(), 2.0);
  EXPECT_LE(s.positions.maxCoeff(), 23.0);
  // first half: r (cos a + 0.5, sin a + 1), mean (0.25, 0.5); second half mean 0
  const Eigen::Vector2d biased = s.velocities.leftCols(1000).rowwise().mean();
  const Eigen::Vector2d plain = s.velocities.rightCols(1000).rowwise().mean();
  EXPECT_NEAR(biased[0], 0.25, 0.05);
  EXPECT_NEAR(biased[1], 0.5, 0.05);
  EXPECT_LT(plain.norm(), 0.05);
  EXPECT_LE(s.velocities.rightCols(1000).colwise().norm().maxCoeff(), 1.0);
  const EnsembleState again = init_random_clusters(2000, 25.0, 1, 2.0);
  EXPECT_EQ(again.positions, s.positions);
}

TEST(ThreeBody, Geometry) {
  const ThreeBody config{1.5, 2.5, 0.7, 12, -1.0, false};
  const EnsembleState s = init_three_body(config, 2.0, 5);
  ASSERT_EQ(s.size(), 13u);
  const auto [b, c] = three_body_indices(config);
  EXPECT_EQ(b, 11u);
  EXPECT_EQ(c, 12u);
  for (std::size_t i = 0; i < b; ++i) {
    EXPECT_EQ(s.positions(0, static_cast<Eigen::Index>(i)), 0.0);
    EXPECT_LE(std::abs(s.positions(1, static_cast<Eigen::Index>(i))), 0.02);
  }
  EXPECT_EQ(s.positions.col(11), Eigen::Vector2d(1.5, 0.0));
  EXPECT_EQ(s.positions.col(12), Eigen::Vector2d(2.5, 0.0));
  EXPECT_EQ(s.velocities.col(12), Eigen::Vector2d(0.7, 0.0));
  EXPECT_EQ(s.velocities.leftCols(12).cwiseAbs().maxCoeff(), 0.0);

  ThreeBody transverse = config;
  transverse.transverse = true;
  EXPECT_EQ(init_three_body(transverse, 2.0, 5).velocities.col(12), Eigen::Vector2d(0.0, 0.7));
}

TEST(ThreeBody, ConstraintsChecked) {
  ScenarioSpec ok = three_body_spec(1.0, 2.0, 1.0, 30, 2.0);
  EXPECT_NO_THROW(ok.validate());
  EXPECT_THROW(three_body_spec(2.0, 2.5, 1.0, 30, 2.0).validate(), ConfigError);   // beta >= delta
  EXPECT_THROW(three_body_spec(0.5, 2.6, 1.0, 30, 2.0).validate(), ConfigError);   // gamma - beta >= delta
  EXPECT_THROW(three_body_spec(1.0, 1.5, 1.0, 30, 2.0).validate(), ConfigError);   // gamma < delta
  EXPECT_THROW(three_body_spec(1.0, 2.0, -1.0, 30, 2.0).validate(), ConfigError);
  ScenarioSpec big_m = ok;
  big_m.params.m = 30;
  EXPECT_THROW(big_m.validate(), ConfigError);
}

TEST(GroupVsIndividual, SameMomentumDifferentShape) {
  GroupVsIndividual a, b;
  b.shape = GroupShape::B;
  const EnsembleState sa = init_group_vs_individual(a);
  const EnsembleState sb = init_group_vs_individual(b);
  ASSERT_EQ(sa.size(), 29u);
  ASSERT_EQ(sb.size(), 29u);
  EXPECT_NEAR(total_momentum(sa.velocities)[0], 0.1, 1e-12);
  EXPECT_NEAR(total_momentum(sb.velocities)[0], 0.1, 1e-12);
  EXPECT_EQ(sa.velocities, sb.velocities);
  EXPECT_NE(sa.positions, sb.positions);
  // the singleton starts `gap` in front of the lattice's front column, on the axis
  EXPECT_EQ(sa.positions.col(28), Eigen::Vector2d(3.0, 0.0));
  EXPECT_EQ(sa.positions.row(0).head(28).maxCoeff(), 0.0);
  const LatticeLayout la = layout_of(a), lb = layout_of(b);
  EXPECT_EQ(la.cols * la.rows, 28u);
  EXPECT_EQ(lb.cols * lb.rows, 28u);
  EXPECT_GT(la.cols, la.rows);
  EXPECT_LT(lb.cols, lb.rows);
}

TEST(Chain, VerticalLineAndSingleton) {
  const EnsembleState s = init_chain(Chain{});
  ASSERT_EQ(s.size(), 22u);
  EXPECT_DOUBLE_EQ(chain_spacing(Chain{}), 1.0);
  for (Eigen::Index i = 0; i < 21; ++i) {
    EXPECT_EQ(s.positions(0, i), 0.0);
    EXPECT_NEAR(s.positions(1, i), static_cast<double>(i) - 10.0, 1e-12);
    EXPECT_EQ(s.velocities.col(i), Eigen::Vector2d(0.1, 0.0));
  }
  EXPECT_EQ(s.velocities.col(21), Eigen::Vector2d(-8.0, 0.0));
}

TEST(Predict, RegimeTable) {
  EXPECT_EQ(predict_three_body(1.0, 2.0, 2.0, 30, 1.0).regime, Regime::Stability);
  EXPECT_EQ(predict_three_body(1.95, 2.0, 2.0, 30, 1.0).regime, Regime::Breaking);
  EXPECT_EQ(predict_three_body(1.0, 2.0, 2.0, 30, 0.03).regime, Regime::Sticking);
  EXPECT_EQ(predict_three_body(1.0, 2.0, 2.0, 30, 0.0).regime, Regime::Sticking);
  const RegimeResult r = predict_three_body(1.0, 2.0, 2.0, 30, 1.0);
  EXPECT_DOUBLE_EQ(*r.t_c_detach, 1.0);
  // the breaking boundary T_b = T_c sits at beta = N delta / (N + 1) when gamma = delta
  const double boundary = 30.0 * 2.0 / 31.0;
  EXPECT_EQ(predict_three_body(boundary - 1e-6, 2.0, 2.0, 30, 1.0).regime, Regime::Stability);
  EXPECT_EQ(predict_three_body(boundary + 1e-6, 2.0, 2.0, 30, 1.0).regime, Regime::Breaking);
}

TEST(Classify, RegimeTableBySimulation) {
  struct Case {
    double beta, v_c;
    Regime expected;
  };
  for (const Case& c : {Case{1.0, 1.0, Regime::Stability}, Case{1.95, 1.0, Regime::Breaking}}) {
    ScenarioSpec spec = three_body_spec(c.beta, 2.0, c.v_c, 30, 2.0);
    spec.t_end = 10.0;
    const RegimeResult r = classify_three_body(run_simulation(spec));
    EXPECT_EQ(r.regime, c.expected) << c.beta;
  }
  ScenarioSpec sticking = three_body_spec(1.0, 2.0, 0.03, 30, 2.0);
  const RegimeResult r = classify_three_body(run_simulation(sticking));
  EXPECT_EQ(r.regime, Regime::Sticking);
  EXPECT_FALSE(r.t_c_detach.has_value());
  EXPECT_FALSE(r.t_b_detach.has_value());
}

TEST(Classify, NeedsTables) {
  ScenarioSpec spec = three_body_spec(1.0, 2.0, 1.0, 30, 2.0);
  spec.t_end = 0.1;
  spec.record_tables = false;
  EXPECT_THROW(classify_three_body(run_simulation(spec)), InputError);
}

TEST(Classify, StaysOnTheLine) {
  ScenarioSpec spec = three_body_spec(1.0, 2.0, 1.0, 30, 2.0);
  std::get<ThreeBody>(spec.generator).a_spread = 0.0;
  spec.t_end = 5.0;
  const TrajectoryRecord r = run_simulation(spec);
  EXPECT_EQ(r.samples.back().state.velocities.row(1).cwiseAbs().maxCoeff(), 0.0);
}

TEST(MomentumEstimate, Limits) {
  EXPECT_NEAR(momentum_estimate(Regime::Stability, 2.0, 30, 1e-6), 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(momentum_estimate(Regime::Breaking, 2.0, 30, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(momentum_estimate(Regime::Sticking, 2.0, 30, 2.0 / 30.0), 2.0);
  EXPECT_NEAR(momentum_estimate(Regime::Stability, 2.0, 30, 1.0), 2.0 + std::exp(-2.0 / 30.0), 1e-15);
  EXPECT_TRUE(std::isnan(momentum_estimate(Regime::Undetermined, 2.0, 30, 1.0)));
}

TEST(MomentumEstimate, WithinFactorTwoForStickingAndBreaking) {
  for (auto [beta, v_c] : {std::pair{1.95, 1.0}, std::pair{1.0, 0.03}}) {
    const ScenarioSpec spec = three_body_spec(beta, 2.0, v_c, 30, 2.0);
    const RegimeResult r = classify_three_body(run_simulation(spec));
    const double gain = r.final_momentum[0] - v_c;
    const double estimate = momentum_estimate(r.regime, 2.0, 30, v_c);
    EXPECT_GT(gain, 0.5 * estimate) << beta;
    EXPECT_LT(gain, 2.0 * estimate) << beta;
  }
}
