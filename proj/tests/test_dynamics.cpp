#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "sirs/dynamics.hpp"
#include "sirs/error.hpp"

using namespace sirs;

namespace {
const EnvParams kP{0.04, 1.0, 0.5};
const EnvParams kM{0.02, 1.0, 0.5};
constexpr double N = 100.0;
}  // namespace

TEST(VectorField, HandValues) {
  Velocity v = vector_field(kP, N, {N, 0.0});
  EXPECT_EQ(v.ds, 0.0);
  EXPECT_EQ(v.di, 0.0);
  v = vector_field(kP, N, {50.0, 10.0});
  EXPECT_NEAR(v.ds, 0.0, 1e-12);
  EXPECT_NEAR(v.di, 10.0, 1e-12);
  for (const EnvParams& e : {kP, kM}) {
    const Point eq = equilibrium(e, N).point;
    v = vector_field(e, N, eq);
    EXPECT_NEAR(v.ds, 0.0, 1e-12 * N);
    EXPECT_NEAR(v.di, 0.0, 1e-12 * N);
  }
}

TEST(Equilibrium, HandValues) {
  Equilibrium e = equilibrium(kP, N);
  EXPECT_TRUE(e.endemic);
  EXPECT_NEAR(e.point.s, 25.0, 1e-12);
  EXPECT_NEAR(e.point.i, 25.0, 1e-12);
  e = equilibrium(kM, N);
  EXPECT_NEAR(e.point.s, 50.0, 1e-12);
  EXPECT_NEAR(e.point.i, 50.0 / 3.0, 1e-12);
  e = equilibrium({0.008, 1.0, 0.5}, N);
  EXPECT_FALSE(e.endemic);
  EXPECT_EQ(e.point, (Point{N, 0.0}));
}

TEST(BasicReproductionNumber, HandValues) {
  EXPECT_NEAR(basic_reproduction_number(kP, N), 4.0, 1e-15);
  EXPECT_NEAR(basic_reproduction_number({0.008, 1.0, 0.5}, N), 0.8, 1e-15);
  EXPECT_DOUBLE_EQ(basic_reproduction_number({1.0 / N, 1.0, 0.5}, N), 1.0);
}

TEST(EnvParams, Validation) {
  EXPECT_THROW(validate(EnvParams{0.0, 1.0, 1.0}), Error);
  EXPECT_THROW(validate(EnvParams{1.0, -1.0, 1.0}), Error);
  EXPECT_THROW(validate(EnvParams{1.0, 1.0, INFINITY}), Error);
  EXPECT_NO_THROW(validate(kP));
}

TEST(ModelParams, OrdersLabels) {
  const ModelParams a(kP, kM, N, {2.0, 1.0});
  EXPECT_FALSE(a.labels_swapped());
  const ModelParams b(kM, kP, N, {2.0, 1.0});
  EXPECT_TRUE(b.labels_swapped());
  EXPECT_EQ(b.plus(), kP);
  EXPECT_EQ(b.minus(), kM);
  EXPECT_EQ(b.rates().alpha, 1.0);
  EXPECT_EQ(b.rates().beta, 2.0);
  EXPECT_EQ(b.internal_state(EnvState::kPlus), EnvState::kMinus);
  EXPECT_THROW(ModelParams(kP, kM, 0.0, {1, 1}), Error);
  EXPECT_THROW(ModelParams(kP, kM, N, {0, 1}), Error);
}

TEST(Flow, IdentityAndFixedPoint) {
  const Point start{80.0, 10.0};
  EXPECT_EQ(flow(kP, N, start, 0.0), start);
  const Point eq = equilibrium(kP, N).point;
  const Point end = flow(kP, N, eq, 50.0);
  EXPECT_LT(distance(end, eq), 1e-8 * N);
}

TEST(Flow, RejectsBadInput) {
  EXPECT_THROW(flow(kP, N, {80, 10}, -1.0), Error);
  EXPECT_THROW(flow(kP, N, {80, 10}, 1.0, 0.0), Error);
  EXPECT_THROW(flow(kP, N, {90, 20}, 1.0), Error);
}

TEST(Flow, MatchesFineStepOracle) {
  const Point end = flow(kP, N, {80.0, 10.0}, 200.0);
  EXPECT_LT(distance(end, {25.0, 25.0}), 1e-4 * N);
  const oracle::State ref = oracle::integrate({0.04, 1.0, 0.5, N}, {80.0, 10.0}, 7.3, 1e-4);
  const Point mid = flow(kP, N, {80.0, 10.0}, 7.3);
  EXPECT_NEAR(mid.s, ref[0], 1e-9 * N);
  EXPECT_NEAR(mid.i, ref[1], 1e-9 * N);
}

TEST(Flow, Semigroup) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int k = 0; k < 20; ++k) {
    const double t1 = u(gen), t2 = u(gen);
    const Point start{60.0, 5.0};
    const Point whole = flow(kM, N, start, t1 + t2);
    const Point split = flow(kM, N, flow(kM, N, start, t1), t2);
    EXPECT_LT(distance(whole, split), 1e-8 * N) << t1 << " " << t2;
  }
}

TEST(Flow, StaysInTriangleAndISign) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    double s = u(gen) * N, i = u(gen) * N;
    if (s + i > N) {
      s = N - s;
      i = N - i;
    }
    const EnvParams& e = (k % 2 == 0) ? kP : kM;
    Point x{s, i};
    for (int n = 0; n < 10; ++n) {
      x = flow(e, N, x, 10.0, 1e-2);
      EXPECT_LE(triangle_violation(x, N), 1e-9 * N);
      if (x.i > 0.0 && x.s < e.b / e.a) EXPECT_LT(vector_field(e, N, x).di, 0.0);
    }
  }
}

TEST(Flow, DiseaseFreeAxisInvariant) {
  const Point end = flow(kP, N, {30.0, 0.0}, 100.0);
  EXPECT_EQ(end.i, 0.0);
  EXPECT_NEAR(end.s, N, 1e-6 * N);
}

TEST(Flow, ConvergenceDichotomy) {
  for (Point start : {Point{80, 10}, Point{5, 90}, Point{1, 1}}) {
    EXPECT_LT(distance(flow(kP, N, start, 500.0), {25, 25}), 1e-3 * N);
    EXPECT_LT(distance(flow({0.008, 1, 0.5}, N, start, 500.0), {N, 0}), 1e-3 * N);
  }
}

TEST(Flow, StepHalving) {
  const Point coarse = flow(kP, N, {80.0, 10.0}, 50.0, 1e-3);
  const Point fine = flow(kP, N, {80.0, 10.0}, 50.0, 5e-4);
  EXPECT_LT(distance(coarse, fine), 1e-6 * N);
}

TEST(Flow, TooLargeStepIsDetected) {
  EXPECT_THROW(flow({5.0, 1.0, 0.5}, N, {80, 10}, 10.0, 1.0), Error);
}

TEST(Triangle, Membership) {
  EXPECT_TRUE(in_triangle({0, 0}, N));
  EXPECT_TRUE(in_triangle({50, 50}, N));
  EXPECT_FALSE(in_triangle({50, 50.1}, N));
  EXPECT_TRUE(in_triangle({-1e-8, 0}, N));
  EXPECT_FALSE(in_triangle_interior({0, 10}, N));
  EXPECT_TRUE(in_triangle_interior({10, 10}, N));
  EXPECT_NEAR(triangle_violation({-2, 3}, N), 2.0, 1e-15);
}
