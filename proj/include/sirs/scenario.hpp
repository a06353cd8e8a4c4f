#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sirs/dynamics.hpp"
#include "sirs/limit_set.hpp"
#include "sirs/stationary.hpp"
#include "sirs/telegraph.hpp"

namespace sirs {

inline constexpr int kSchemaVersion = 1;

enum class Analysis { kClassify, kSimulate, kGamma, kStationary, kRegions, kDiagnostics };
const char* to_string(Analysis analysis);

/// Everything a run needs, as read from a JSON config. Model values are kept
/// raw (unvalidated, in the caller's labels) so `validate` can report them.
struct ScenarioConfig {
  int schema_version = kSchemaVersion;
  std::string label;
  EnvParams plus;
  EnvParams minus;
  double N = 0.0;
  SwitchRates rates;
  Point start;
  EnvState initial_env = EnvState::kPlus;
  double horizon = 1000.0;
  double step = kDefaultStep;
  double sample_interval = kDefaultSampleInterval;
  std::uint64_t seed = 0;
  int replicas = 1;
  std::set<Analysis> analyses = {Analysis::kClassify, Analysis::kSimulate};
  std::optional<std::string> output_dir;

  GammaOptions gamma;
  double tube_radius = 1.0;
  int stationary_bins_s = 50;
  int stationary_bins_i = 50;
  std::optional<double> burn_in;
  Binning binning = Binning::kLeftEndpoint;
  double boundary_margin = 0.01;  // fraction of N
  std::optional<double> extinction_threshold;
  std::optional<double> window;
  std::optional<double> delta1;
  int entry_probes = 100;
  double entry_delta2 = 1.0;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Throws Error(kConfigParse) on malformed JSON, wrong types, unknown keys or
/// a missing required key.
ScenarioConfig parse_config(const std::string& json_text);
std::string serialize_config(const ScenarioConfig& config);

struct Diagnostic {
  std::string path;
  std::string message;
};

/// Every violated precondition; empty iff `run` would start.
std::vector<Diagnostic> validate(const ScenarioConfig& config);

std::vector<std::string> preset_names();
/// example1 / example2 / example3; kInvalidParameter for other names.
ScenarioConfig preset(const std::string& name);

/// Runs the requested analyses and writes the artifacts into `output_dir`.
/// Returns the summary JSON text (also written as summary.json).
std::string run(const ScenarioConfig& config, const std::string& output_dir);

}  // namespace sirs
