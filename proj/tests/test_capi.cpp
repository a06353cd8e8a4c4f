#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "sirs/sirs.h"

namespace {

struct ModelGuard {
  sirs_model* m = nullptr;
  ~ModelGuard() { sirs_model_destroy(m); }
};

const sirs_env_params kPlus{0.04, 1.0, 0.5};
const sirs_env_params kMinus{0.02, 1.0, 0.5};

}  // namespace

TEST(CApi, ModelQueries) {
  ModelGuard g;
  ASSERT_EQ(sirs_model_create(&kPlus, &kMinus, 100.0, 1.0, 1.0, &g.m), SIRS_OK);
  double l = 0;
  ASSERT_EQ(sirs_model_lambda(g.m, &l), SIRS_OK);
  EXPECT_NEAR(l, 2.0, 1e-12);
  sirs_regime_report r{};
  ASSERT_EQ(sirs_model_classify(g.m, &r), SIRS_OK);
  EXPECT_EQ(r.classification, SIRS_REGIME_PERMANENT);
  EXPECT_FALSE(r.has_predicted_limit);
  double s = 0, i = 0;
  int endemic = 0;
  ASSERT_EQ(sirs_model_equilibrium(g.m, SIRS_ENV_MINUS, &s, &i, &endemic), SIRS_OK);
  EXPECT_NEAR(s, 50.0, 1e-12);
  EXPECT_NEAR(i, 50.0 / 3.0, 1e-12);
  EXPECT_TRUE(endemic);
  int prop = 1;
  ASSERT_EQ(sirs_model_is_proportional(g.m, 1e-12, &prop), SIRS_OK);
  EXPECT_FALSE(prop);
}

TEST(CApi, SwappedLabelsAreInvisible) {
  ModelGuard g;
  ASSERT_EQ(sirs_model_create(&kMinus, &kPlus, 100.0, 2.0, 1.0, &g.m), SIRS_OK);
  double p = 0, q = 0;
  ASSERT_EQ(sirs_model_stationary_probabilities(g.m, &p, &q), SIRS_OK);
  EXPECT_NEAR(p, 1.0 / 3.0, 1e-15);
  double s = 0, i = 0;
  ASSERT_EQ(sirs_model_equilibrium(g.m, SIRS_ENV_PLUS, &s, &i, nullptr), SIRS_OK);
  EXPECT_NEAR(s, 50.0, 1e-12);
  sirs_trajectory* t = nullptr;
  ASSERT_EQ(sirs_simulate(g.m, 80, 10, SIRS_ENV_PLUS, 5.0, 1e-3, 0.1, 3, &t), SIRS_OK);
  sirs_sample first{};
  ASSERT_EQ(sirs_trajectory_sample(t, 0, &first), SIRS_OK);
  EXPECT_EQ(first.env, SIRS_ENV_PLUS);
  sirs_trajectory_destroy(t);
}

TEST(CApi, Errors) {
  sirs_model* m = nullptr;
  const sirs_env_params bad{-1.0, 1.0, 0.5};
  EXPECT_EQ(sirs_model_create(&bad, &kMinus, 100.0, 1.0, 1.0, &m), SIRS_ERR_INVALID_PARAMETER);
  EXPECT_EQ(m, nullptr);
  EXPECT_NE(std::string(sirs_last_error()), "");
  EXPECT_EQ(sirs_model_lambda(nullptr, nullptr), SIRS_ERR_INVALID_PARAMETER);
  const sirs_env_params z1{0.01, 1.0, 0.5}, z2{0.02, 2.0, 0.5};
  ModelGuard g;
  ASSERT_EQ(sirs_model_create(&z1, &z2, 100.0, 1.0, 1.0, &g.m), SIRS_OK);
  sirs_regime_report r{};
  EXPECT_EQ(sirs_model_classify(g.m, &r), SIRS_ERR_UNRESOLVED_THRESHOLD);
  EXPECT_EQ(sirs_status_exit_code(SIRS_ERR_CONFIG_PARSE), 2);
  EXPECT_EQ(sirs_status_exit_code(SIRS_ERR_INVALID_PARAMETER), 3);
  EXPECT_EQ(sirs_status_exit_code(SIRS_ERR_NUMERICAL_INSTABILITY), 4);
  EXPECT_EQ(sirs_status_exit_code(SIRS_OK), 0);
  sirs_scenario* sc = nullptr;
  EXPECT_EQ(sirs_scenario_parse("{\"schema_version\": 1, \"bogus\": 2}", &sc),
            SIRS_ERR_CONFIG_PARSE);
  EXPECT_EQ(sc, nullptr);
}

TEST(CApi, TrajectoryAccess) {
  ModelGuard g;
  ASSERT_EQ(sirs_model_create(&kPlus, &kMinus, 100.0, 1.0, 1.0, &g.m), SIRS_OK);
  sirs_trajectory* t = nullptr;
  ASSERT_EQ(sirs_simulate(g.m, 80, 10, SIRS_ENV_PLUS, 100.0, 1e-3, 0.1, 3, &t), SIRS_OK);
  const size_t n = sirs_trajectory_size(t);
  ASSERT_GT(n, 1000u);
  int switches = 0;
  for (size_t k = 0; k < n; ++k) {
    sirs_sample smp{};
    ASSERT_EQ(sirs_trajectory_sample(t, k, &smp), SIRS_OK);
    EXPECT_NEAR(smp.s + smp.i + smp.r, 100.0, 1e-12);
    switches += smp.is_switch;
  }
  EXPECT_GT(switches, 0);
  sirs_sample smp{};
  EXPECT_EQ(sirs_trajectory_sample(t, n, &smp), SIRS_ERR_INVALID_PARAMETER);
  double avg = 0;
  ASSERT_EQ(sirs_trajectory_growth_average(t, &avg), SIRS_OK);
  EXPECT_TRUE(std::isfinite(avg));
  const auto path = std::filesystem::temp_directory_path() / "sirs_capi_traj.csv";
  EXPECT_EQ(sirs_trajectory_write_csv(t, path.c_str()), SIRS_OK);
  EXPECT_TRUE(std::filesystem::file_size(path) > 0);
  std::filesystem::remove(path);
  sirs_trajectory_destroy(t);
}

TEST(CApi, ScenarioLifecycle) {
  sirs_scenario* sc = nullptr;
  ASSERT_EQ(sirs_scenario_preset("example1", &sc), SIRS_OK);
  char* text = nullptr;
  size_t count = 99;
  ASSERT_EQ(sirs_scenario_validate(sc, &text, &count), SIRS_OK);
  EXPECT_EQ(count, 0u);
  sirs_string_free(text);
  ASSERT_EQ(sirs_scenario_serialize(sc, &text), SIRS_OK);
  sirs_scenario* again = nullptr;
  ASSERT_EQ(sirs_scenario_parse(text, &again), SIRS_OK);
  sirs_string_free(text);
  sirs_scenario_destroy(again);

  sirs_scenario_set_horizon(sc, -1.0);
  ASSERT_EQ(sirs_scenario_validate(sc, &text, &count), SIRS_OK);
  EXPECT_GE(count, 1u);
  EXPECT_NE(std::string(text).find("horizon"), std::string::npos);
  sirs_string_free(text);
  const auto dir = std::filesystem::temp_directory_path() / "sirs_capi_run";
  sirs_scenario_set_output_dir(sc, dir.c_str());
  EXPECT_STREQ(sirs_scenario_output_dir(sc), dir.c_str());
  EXPECT_EQ(sirs_scenario_run(sc, &text), SIRS_ERR_INVALID_PARAMETER);
  EXPECT_NE(std::string(text).find("\"status\": \"error\""), std::string::npos);
  sirs_string_free(text);
  sirs_scenario_destroy(sc);
  std::filesystem::remove_all(dir);
}
