#include <gtest/gtest.h>

#include <random>

#include "sirs/error.hpp"
#include "sirs/geometry.hpp"
#include "sirs/presets.hpp"
#include "sirs/rng.hpp"
#include "sirs/threshold.hpp"

using namespace sirs;

TEST(Lambda, HandValues) {
  EXPECT_NEAR(lambda(presets::p1()), 2.0, 2e-12);
  EXPECT_NEAR(lambda(presets::p2()), 1.4, 2e-12);
  EXPECT_NEAR(lambda(presets::p3()), -0.15, 2e-13);
  EXPECT_NEAR(lambda(presets::p5()), -0.35, 2e-13);
  // Unequal rates: p = 1/3 in +.
  const ModelParams m({0.04, 1, 0.5}, {0.02, 1, 0.5}, 100, {2.0, 1.0});
  EXPECT_NEAR(lambda(m), 3.0 / 3.0 + 2.0 / 3.0, 1e-12);
  const ModelParams zero({0.01, 1, 0.5}, {0.02, 2, 0.5}, 100, {1, 1});
  EXPECT_EQ(lambda(zero), 0.0);
}

TEST(Classify, Regimes) {
  RegimeReport r = classify(presets::p3());
  EXPECT_EQ(r.classification, Regime::kExtinction);
  ASSERT_TRUE(r.predicted_limit);
  EXPECT_EQ(*r.predicted_limit, (Point{100, 0}));
  EXPECT_EQ(classify(presets::p1()).classification, Regime::kPermanent);
  EXPECT_EQ(classify(presets::p2()).classification, Regime::kPersistent);
  EXPECT_EQ(classify(presets::p5()).classification, Regime::kExtinction);
  r = classify(presets::p4());
  EXPECT_EQ(r.classification, Regime::kDegenerateCommonEquilibrium);
  ASSERT_TRUE(r.predicted_limit);
  EXPECT_NEAR(r.predicted_limit->s, 25.0, 1e-12);
  EXPECT_NEAR(r.predicted_limit->i, 25.0, 1e-12);
  r = classify(presets::p1());
  EXPECT_NEAR(r.r0_plus, 4.0, 1e-12);
  EXPECT_NEAR(r.r0_minus, 2.0, 1e-12);
}

TEST(Classify, ZeroLambdaIsUnresolved) {
  const ModelParams zero({0.01, 1, 0.5}, {0.02, 2, 0.5}, 100, {1, 1});
  try {
    classify(zero);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnresolvedThreshold);
  }
}

TEST(Classify, FuzzSignAndCorollary) {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> la(-4.0, 0.0), lr(-1.0, 1.0), uc(0.05, 2.0);
  for (int k = 0; k < 10000; ++k) {
    const EnvParams plus{std::pow(10.0, la(gen)), std::pow(10.0, lr(gen)), uc(gen)};
    const EnvParams minus{std::pow(10.0, la(gen)), std::pow(10.0, lr(gen)), uc(gen)};
    const SwitchRates rates{std::pow(10.0, lr(gen)), std::pow(10.0, lr(gen))};
    const ModelParams params(plus, minus, 100.0, rates);
    const double l = lambda(params);
    const RegimeReport r = classify(params);
    EXPECT_EQ(r.classification == Regime::kExtinction, l < 0.0);
    EXPECT_LE(params.plus().b / params.plus().a, params.minus().b / params.minus().a);
    if (params.plus().b / params.plus().a >= 100.0) EXPECT_LT(l, 0.0);
    // Rate scaling leaves lambda unchanged.
    const double f = 3.7;
    const ModelParams scaled(plus, minus, 100.0, {rates.alpha * f, rates.beta * f});
    EXPECT_NEAR(lambda(scaled), l, 1e-12 * std::max(1.0, std::abs(l)));
  }
}

TEST(Proportional, Detection) {
  EXPECT_TRUE(is_proportional(presets::p4()));
  EXPECT_FALSE(is_proportional(presets::p1()));
  const ModelParams same({0.04, 1, 0.5}, {0.04, 1, 0.5}, 100, {1, 1});
  EXPECT_TRUE(is_proportional(same));
  const ModelParams p = presets::p4();
  const Point e1 = equilibrium(p.plus(), 100).point, e2 = equilibrium(p.minus(), 100).point;
  EXPECT_NEAR(e1.s, e2.s, 1e-12 * 100);
  EXPECT_NEAR(e1.i, e2.i, 1e-12 * 100);
}

TEST(OccupationFloor, HandValue) {
  // c_min lambda / ((a_max N + c_max) a_max) = 0.5 * 2 / (4.5 * 0.04)
  EXPECT_NEAR(occupation_floor(presets::p1()), 1.0 / 0.18, 1e-12);
  EXPECT_NEAR(occupation_floor(presets::p2()), 0.7 / 0.18, 1e-12);
}

TEST(Verdict, ConstantTrajectories) {
  const ModelParams params = presets::p1();
  Trajectory traj = simulate(params, {{80, 10}, EnvState::kPlus, 1.0, 1e-3, 0.1, 1});
  traj.sample_times.clear();
  traj.points.clear();
  traj.states.clear();
  traj.switch_indices.clear();
  for (int k = 0; k <= 1000; ++k) {
    traj.sample_times.push_back(k);
    traj.points.push_back({100, 0});
    traj.states.push_back(EnvState::kPlus);
  }
  EXPECT_EQ(persistence_verdict(traj, 1e-4, 100), Verdict::kExtinctObserved);
  const std::vector<Trajectory> ens{traj, traj};
  PermanenceBounds b = permanence_bounds(ens, 0.5);
  EXPECT_EQ(b.i_lower, 0.0);
  EXPECT_EQ(b.i_upper, 0.0);
  EXPECT_EQ(b.s_lower, 100.0);
  EXPECT_EQ(b.s_upper, 100.0);
  for (auto& p : traj.points) p = {25, 25};
  EXPECT_EQ(persistence_verdict(traj, 1e-4, 100), Verdict::kPersistentObserved);
  b = permanence_bounds(std::vector<Trajectory>{traj}, 0.5);
  EXPECT_EQ(b.i_lower, 25.0);
  EXPECT_EQ(b.s_upper, 25.0);
  EXPECT_THROW(persistence_verdict(traj, 1e-4, 600), Error);
  EXPECT_THROW(persistence_verdict(traj, 0.0, 100), Error);
}

TEST(Verdict, Simulated) {
  const ModelParams p1 = presets::p1();
  const Trajectory t1 = simulate(p1, {{80, 10}, EnvState::kPlus, 2000, 1e-3, 0.1, 6});
  EXPECT_EQ(persistence_verdict(t1, 1e-6, 200), Verdict::kPersistentObserved);
  const ModelParams p3 = presets::p3();
  const Trajectory t3 = simulate(p3, {{80, 10}, EnvState::kPlus, 5000, 1e-3, 0.1, 6});
  EXPECT_EQ(persistence_verdict(t3, 1e-6, 500), Verdict::kExtinctObserved);
  EXPECT_NEAR(t3.points.back().s, 100.0, 0.5);
}

TEST(PermanenceBounds, P1EnsembleAboveIMin) {
  const ModelParams params = presets::p1();
  std::vector<Trajectory> ens;
  for (std::uint64_t r = 0; r < 4; ++r)
    ens.push_back(simulate(params, {{80, 10}, EnvState::kPlus, 2000, 1e-3, 0.1, derive_seed(8, r)}));
  const PermanenceBounds b = permanence_bounds(ens, 0.5);
  const Region g = region_g(params, choose_epsilon0(params, occupation_floor(params)));
  EXPECT_GT(b.i_lower, 0.5 * g.metadata().i_min);
  EXPECT_GE(b.s_lower, choose_s_min(params).s_min);
  EXPECT_LT(b.i_upper, 100.0);
}
