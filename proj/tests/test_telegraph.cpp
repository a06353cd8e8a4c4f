#include <gtest/gtest.h>

#include <numeric>

#include "sirs/error.hpp"
#include "sirs/rng.hpp"
#include "sirs/telegraph.hpp"

using namespace sirs;

TEST(StationaryProbabilities, HandValues) {
  auto pq = stationary_probabilities({1.0, 1.0});
  EXPECT_DOUBLE_EQ(pq.p, 0.5);
  EXPECT_DOUBLE_EQ(pq.q, 0.5);
  pq = stationary_probabilities({2.0, 1.0});
  EXPECT_NEAR(pq.p, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(pq.q, 2.0 / 3.0, 1e-15);
  pq = stationary_probabilities({0.5, 1.5});
  EXPECT_NEAR(pq.p, 0.75, 1e-15);
  EXPECT_NEAR(pq.q, 0.25, 1e-15);
}

TEST(StationaryProbabilities, RejectsNonPositiveRates) {
  for (SwitchRates r : {SwitchRates{0.0, 1.0}, SwitchRates{1.0, -1.0}, SwitchRates{NAN, 1.0}}) {
    try {
      stationary_probabilities(r);
      FAIL() << "expected an error";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kInvalidParameter);
    }
  }
}

TEST(SamplePath, Deterministic) {
  const SwitchRates r{1.3, 0.7};
  EXPECT_EQ(sample_path(r, EnvState::kPlus, 500.0, 42), sample_path(r, EnvState::kPlus, 500.0, 42));
  EXPECT_NE(sample_path(r, EnvState::kPlus, 500.0, 42), sample_path(r, EnvState::kPlus, 500.0, 43));
  EXPECT_NE(sample_path(r, EnvState::kPlus, 500.0, 42, 0),
            sample_path(r, EnvState::kPlus, 500.0, 42, 1));
}

TEST(SamplePath, RejectsBadHorizon) {
  EXPECT_THROW(sample_path({1, 1}, EnvState::kPlus, 0.0, 1), Error);
  EXPECT_THROW(sample_path({1, 1}, EnvState::kPlus, -3.0, 1), Error);
}

TEST(SamplePath, Structure) {
  const SwitchPath path = sample_path({1.0, 2.0}, EnvState::kMinus, 300.0, 7);
  const auto& h = path.holding_times();
  const double total = std::accumulate(h.begin(), h.end(), 0.0);
  EXPECT_GE(total, 300.0);
  EXPECT_LT(total - h.back(), 300.0);
  const auto& jumps = path.jump_times();
  ASSERT_FALSE(jumps.empty());
  EXPECT_GT(jumps.front(), 0.0);
  EXPECT_LT(jumps.back(), 300.0);
  for (std::size_t n = 1; n < jumps.size(); ++n) EXPECT_LT(jumps[n - 1], jumps[n]);
  EXPECT_EQ(path.state_of_sojourn(0), EnvState::kMinus);
  EXPECT_EQ(path.state_of_sojourn(1), EnvState::kPlus);
}

TEST(SamplePath, PlusHoldingTimeMean) {
  const SwitchPath path = sample_path({2.0, 1.0}, EnvState::kPlus, 1e4, 11);
  const auto& h = path.holding_times();
  double sum = 0.0;
  int count = 0;
  for (std::size_t n = 0; n + 1 < h.size(); n += 2) {
    sum += h[n];
    ++count;
  }
  EXPECT_NEAR(sum / count, 0.5, 0.05);
}

TEST(OccupationFraction, ByConstruction) {
  EXPECT_DOUBLE_EQ(occupation_fraction(SwitchPath(EnvState::kPlus, {10.0}, 5.0), EnvState::kPlus),
                   1.0);
  const SwitchPath path(EnvState::kPlus, {2.0, 3.0}, 5.0);
  EXPECT_NEAR(occupation_fraction(path, EnvState::kPlus), 0.4, 1e-15);
  EXPECT_NEAR(occupation_fraction(path, EnvState::kMinus), 0.6, 1e-15);
}

TEST(OccupationFraction, ClipsLastSojourn) {
  const SwitchPath path(EnvState::kMinus, {1.0, 1.0, 10.0}, 4.0);
  EXPECT_NEAR(occupation_fraction(path, EnvState::kMinus), 0.75, 1e-15);
}

TEST(OccupationFraction, Ergodic) {
  for (SwitchRates r : {SwitchRates{1, 1}, SwitchRates{2, 1}, SwitchRates{0.5, 1.5}}) {
    const double p = r.beta / (r.alpha + r.beta);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const SwitchPath path = sample_path(r, EnvState::kPlus, 1e4, derive_seed(99, seed));
      EXPECT_NEAR(occupation_fraction(path, EnvState::kPlus), p, 0.02);
    }
  }
}

TEST(Rng, UniformRangeAndDerivedSeeds) {
  Rng rng(5);
  for (int k = 0; k < 10000; ++k) {
    const double u = rng.uniform_open_closed();
    EXPECT_GT(u, 0.0);
    EXPECT_LE(u, 1.0);
  }
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(1, 3), derive_seed(1, 3));
}
