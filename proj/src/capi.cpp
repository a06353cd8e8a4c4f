#include "sirs/sirs.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include "json.hpp"
#include "sirs/error.hpp"
#include "sirs/scenario.hpp"
#include "sirs/switched.hpp"
#include "sirs/threshold.hpp"

struct sirs_model {
  sirs::ModelParams params;
};

struct sirs_trajectory {
  sirs::Trajectory traj;
};

struct sirs_scenario {
  sirs::ScenarioConfig config;
};

namespace {

thread_local std::string g_last_error;

sirs_status status_of(sirs::ErrorKind kind) {
  switch (kind) {
    case sirs::ErrorKind::kInvalidParameter: return SIRS_ERR_INVALID_PARAMETER;
    case sirs::ErrorKind::kNotApplicable: return SIRS_ERR_NOT_APPLICABLE;
    case sirs::ErrorKind::kNumericalInstability: return SIRS_ERR_NUMERICAL_INSTABILITY;
    case sirs::ErrorKind::kUnresolvedThreshold: return SIRS_ERR_UNRESOLVED_THRESHOLD;
    case sirs::ErrorKind::kConfigParse: return SIRS_ERR_CONFIG_PARSE;
    case sirs::ErrorKind::kIo: return SIRS_ERR_IO;
  }
  return SIRS_ERR_INTERNAL;
}

sirs_status set_error(sirs_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
sirs_status guarded(F&& body) {
  try {
    body();
    return SIRS_OK;
  } catch (const sirs::Error& e) {
    return set_error(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(SIRS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(SIRS_ERR_INTERNAL, e.what());
  }
}

sirs_status null_arg(const char* name) {
  return set_error(SIRS_ERR_INVALID_PARAMETER, std::string(name) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sirs::EnvParams to_env(const sirs_env_params& p) { return {p.a, p.b, p.c}; }
sirs::EnvState to_state(sirs_env e) {
  return e == SIRS_ENV_MINUS ? sirs::EnvState::kMinus : sirs::EnvState::kPlus;
}
sirs_env from_state(sirs::EnvState e) {
  return e == sirs::EnvState::kMinus ? SIRS_ENV_MINUS : SIRS_ENV_PLUS;
}

sirs_regime from_regime(sirs::Regime r) {
  switch (r) {
    case sirs::Regime::kExtinction: return SIRS_REGIME_EXTINCTION;
    case sirs::Regime::kPersistent: return SIRS_REGIME_PERSISTENT;
    case sirs::Regime::kPermanent: return SIRS_REGIME_PERMANENT;
    case sirs::Regime::kDegenerateCommonEquilibrium:
      return SIRS_REGIME_DEGENERATE_COMMON_EQUILIBRIUM;
  }
  return SIRS_REGIME_EXTINCTION;
}

}  // namespace

extern "C" {

const char* sirs_version(void) { return "1.0.0"; }

const char* sirs_last_error(void) { return g_last_error.c_str(); }

const char* sirs_status_name(sirs_status status) {
  switch (status) {
    case SIRS_OK: return "ok";
    case SIRS_ERR_INVALID_PARAMETER: return "invalid_parameter";
    case SIRS_ERR_NOT_APPLICABLE: return "not_applicable";
    case SIRS_ERR_NUMERICAL_INSTABILITY: return "numerical_instability";
    case SIRS_ERR_UNRESOLVED_THRESHOLD: return "unresolved_threshold";
    case SIRS_ERR_CONFIG_PARSE: return "config_parse";
    case SIRS_ERR_IO: return "io";
    case SIRS_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

int sirs_status_exit_code(sirs_status status) {
  switch (status) {
    case SIRS_OK: return 0;
    case SIRS_ERR_CONFIG_PARSE: return 2;
    case SIRS_ERR_INVALID_PARAMETER:
    case SIRS_ERR_NOT_APPLICABLE:
    case SIRS_ERR_UNRESOLVED_THRESHOLD: return 3;
    case SIRS_ERR_NUMERICAL_INSTABILITY: return 4;
    default: return 1;
  }
}

void sirs_string_free(char* text) { std::free(text); }

sirs_status sirs_model_create(const sirs_env_params* plus, const sirs_env_params* minus,
                              double N, double alpha, double beta, sirs_model** out) {
  if (plus == nullptr) return null_arg("plus");
  if (minus == nullptr) return null_arg("minus");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new sirs_model{sirs::ModelParams(to_env(*plus), to_env(*minus), N, {alpha, beta})};
  });
}

void sirs_model_destroy(sirs_model* model) { delete model; }

sirs_status sirs_model_lambda(const sirs_model* model, double* out) {
  if (model == nullptr) return null_arg("model");
  if (out == nullptr) return null_arg("out");
  return guarded([&] { *out = sirs::lambda(model->params); });
}

sirs_status sirs_model_stationary_probabilities(const sirs_model* model, double* p, double* q) {
  if (model == nullptr) return null_arg("model");
  if (p == nullptr || q == nullptr) return null_arg("p/q");
  return guarded([&] {
    const auto pq = sirs::stationary_probabilities(model->params.rates());
    const bool swapped = model->params.labels_swapped();
    *p = swapped ? pq.q : pq.p;
    *q = swapped ? pq.p : pq.q;
  });
}

sirs_status sirs_model_classify(const sirs_model* model, sirs_regime_report* out) {
  if (model == nullptr) return null_arg("model");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    const sirs::RegimeReport r = sirs::classify(model->params);
    out->lambda = r.lambda;
    out->r0_plus = r.r0_plus;
    out->r0_minus = r.r0_minus;
    out->classification = from_regime(r.classification);
    out->has_predicted_limit = r.predicted_limit.has_value();
    out->limit_s = r.predicted_limit ? r.predicted_limit->s : 0.0;
    out->limit_i = r.predicted_limit ? r.predicted_limit->i : 0.0;
    out->labels_swapped = r.labels_swapped;
  });
}

sirs_status sirs_model_is_proportional(const sirs_model* model, double tol, int* out) {
  if (model == nullptr) return null_arg("model");
  if (out == nullptr) return null_arg("out");
  return guarded([&] { *out = sirs::is_proportional(model->params, tol); });
}

sirs_status sirs_model_equilibrium(const sirs_model* model, sirs_env env, double* s, double* i,
                                   int* endemic) {
  if (model == nullptr) return null_arg("model");
  if (s == nullptr || i == nullptr) return null_arg("s/i");
  return guarded([&] {
    const auto& p = model->params;
    const sirs::Equilibrium e =
        sirs::equilibrium(p.env(p.internal_state(to_state(env))), p.N());
    *s = e.point.s;
    *i = e.point.i;
    if (endemic != nullptr) *endemic = e.endemic;
  });
}

sirs_status sirs_simulate(const sirs_model* model, double s0, double i0, sirs_env initial_env,
                          double horizon, double step, double sample_interval, uint64_t seed,
                          sirs_trajectory** out) {
  if (model == nullptr) return null_arg("model");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    const auto& p = model->params;
    sirs::SimulationSpec spec{{s0, i0}, p.internal_state(to_state(initial_env)), horizon, step,
                              sample_interval, seed};
    *out = new sirs_trajectory{sirs::simulate(p, spec)};
  });
}

void sirs_trajectory_destroy(sirs_trajectory* traj) { delete traj; }

size_t sirs_trajectory_size(const sirs_trajectory* traj) {
  return traj == nullptr ? 0 : traj->traj.size();
}

sirs_status sirs_trajectory_sample(const sirs_trajectory* traj, size_t index, sirs_sample* out) {
  if (traj == nullptr) return null_arg("traj");
  if (out == nullptr) return null_arg("out");
  const sirs::Trajectory& t = traj->traj;
  if (index >= t.size())
    return set_error(SIRS_ERR_INVALID_PARAMETER, "sample index out of range");
  const bool swapped = t.params.labels_swapped();
  const sirs::EnvState internal = t.states[index];
  out->t = t.sample_times[index];
  out->env = from_state(swapped ? sirs::flip(internal) : internal);
  out->s = t.points[index].s;
  out->i = t.points[index].i;
  out->r = t.params.N() - out->s - out->i;
  out->is_switch = std::binary_search(t.switch_indices.begin(), t.switch_indices.end(), index);
  return SIRS_OK;
}

sirs_status sirs_trajectory_growth_average(const sirs_trajectory* traj, double* out) {
  if (traj == nullptr) return null_arg("traj");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = sirs::time_average(traj->traj, sirs::growth_rate_observable(traj->traj.params));
  });
}

sirs_status sirs_trajectory_write_csv(const sirs_trajectory* traj, const char* path) {
  if (traj == nullptr) return null_arg("traj");
  if (path == nullptr) return null_arg("path");
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) sirs::fail(sirs::ErrorKind::kIo, std::string("cannot open ") + path);
    sirs::write_trajectory_csv(traj->traj, out);
    if (!out) sirs::fail(sirs::ErrorKind::kIo, std::string("failed writing ") + path);
  });
}

sirs_status sirs_scenario_parse(const char* json_text, sirs_scenario** out) {
  if (json_text == nullptr) return null_arg("json_text");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new sirs_scenario{sirs::parse_config(json_text)}; });
}

sirs_status sirs_scenario_preset(const char* name, sirs_scenario** out) {
  if (name == nullptr) return null_arg("name");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new sirs_scenario{sirs::preset(name)}; });
}

void sirs_scenario_destroy(sirs_scenario* scenario) { delete scenario; }

sirs_status sirs_scenario_set_seed(sirs_scenario* scenario, uint64_t seed) {
  if (scenario == nullptr) return null_arg("scenario");
  scenario->config.seed = seed;
  return SIRS_OK;
}

sirs_status sirs_scenario_set_horizon(sirs_scenario* scenario, double horizon) {
  if (scenario == nullptr) return null_arg("scenario");
  scenario->config.horizon = horizon;
  return SIRS_OK;
}

sirs_status sirs_scenario_set_replicas(sirs_scenario* scenario, int replicas) {
  if (scenario == nullptr) return null_arg("scenario");
  scenario->config.replicas = replicas;
  return SIRS_OK;
}

sirs_status sirs_scenario_set_output_dir(sirs_scenario* scenario, const char* dir) {
  if (scenario == nullptr) return null_arg("scenario");
  if (dir == nullptr) {
    scenario->config.output_dir.reset();
  } else {
    scenario->config.output_dir = dir;
  }
  return SIRS_OK;
}

const char* sirs_scenario_output_dir(const sirs_scenario* scenario) {
  if (scenario == nullptr || !scenario->config.output_dir) return nullptr;
  return scenario->config.output_dir->c_str();
}

sirs_status sirs_scenario_serialize(const sirs_scenario* scenario, char** json_out) {
  if (scenario == nullptr) return null_arg("scenario");
  if (json_out == nullptr) return null_arg("json_out");
  return guarded([&] { *json_out = dup_string(sirs::serialize_config(scenario->config)); });
}

sirs_status sirs_scenario_validate(const sirs_scenario* scenario, char** json_out,
                                   size_t* count_out) {
  if (scenario == nullptr) return null_arg("scenario");
  return guarded([&] {
    const auto diags = sirs::validate(scenario->config);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& d : diags) arr.push_back({{"path", d.path}, {"message", d.message}});
    if (count_out != nullptr) *count_out = diags.size();
    if (json_out != nullptr) *json_out = dup_string(arr.dump(2) + "\n");
  });
}

sirs_status sirs_scenario_run(const sirs_scenario* scenario, char** json_out) {
  if (scenario == nullptr) return null_arg("scenario");
  std::string text;
  const sirs_status status = guarded([&] {
    text = sirs::run(scenario->config, scenario->config.output_dir.value_or("sirs_out"));
  });
  if (json_out != nullptr) {
    if (status != SIRS_OK) {
      nlohmann::ordered_json err{{"status", "error"},
                                 {"kind", sirs_status_name(status)},
                                 {"message", g_last_error}};
      text = err.dump(2) + "\n";
    }
    try {
      *json_out = dup_string(text);
    } catch (const std::bad_alloc&) {
      *json_out = nullptr;
      return set_error(SIRS_ERR_INTERNAL, "out of memory");
    }
  }
  return status;
}

}  // extern "C"
