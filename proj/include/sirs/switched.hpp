#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sirs/dynamics.hpp"
#include "sirs/telegraph.hpp"

namespace sirs {

inline constexpr double kDefaultSampleInterval = 0.1;
inline constexpr std::size_t kMaxSamples = 10'000'000;

/// Sampled path of the switched system. states[k] is the environment on
/// [sample_times[k], sample_times[k+1]), so at a switch sample it is already
/// the new state.
struct Trajectory {
  std::vector<double> sample_times;
  std::vector<EnvState> states;
  std::vector<Point> points;
  std::vector<std::size_t> switch_indices;
  ModelParams params;
  std::uint64_t seed = 0;

  std::size_t size() const { return sample_times.size(); }
  double horizon() const { return sample_times.empty() ? 0.0 : sample_times.back(); }

  bool operator==(const Trajectory&) const = default;
};

struct SimulationSpec {
  Point start;
  EnvState initial_env = EnvState::kPlus;
  double horizon = 0.0;
  double step = kDefaultStep;
  double sample_interval = kDefaultSampleInterval;
  std::uint64_t seed = 0;
};

/// Receives every sample in time order: time, state on the following segment,
/// position, and whether the sample is a jump time of the environment.
using SampleVisitor = std::function<void(double t, EnvState state, Point pt, bool is_switch)>;

/// Integrates the switched system along a freshly sampled switch path without
/// storing anything; `simulate` and `streaming_time_average` are built on it.
void integrate_switched(const ModelParams& params, const SimulationSpec& spec,
                        const SampleVisitor& visit);

Trajectory simulate(const ModelParams& params, const SimulationSpec& spec);

using Observable = std::function<double(Point, EnvState)>;

/// Trapezoidal time average. Each segment uses the state that holds on it.
double time_average(const Trajectory& traj, const Observable& observable);

/// Same quadrature as `time_average`, accumulated while integrating.
double streaming_time_average(const ModelParams& params, const SimulationSpec& spec,
                              const Observable& observable);

/// a(xi) N - b(xi): its long-run average is the threshold lambda.
Observable growth_rate_observable(const ModelParams& params);

struct SwitchSamples {
  std::vector<Point> odd_switch_points;   // tau_1, tau_3, ...
  std::vector<Point> even_switch_points;  // tau_2, tau_4, ...
};

SwitchSamples switch_samples(const Trajectory& traj);

/// R = N - S - I for every sample.
std::vector<double> reconstruct_removed(const Trajectory& traj);

/// CSV with header t,env,S,I,R,is_switch and 17 significant digits. The env
/// column uses the labels the model was constructed with.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

}  // namespace sirs
