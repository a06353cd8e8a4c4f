#include "sirs/telegraph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sirs/error.hpp"
#include "sirs/rng.hpp"

namespace sirs {

void validate(const SwitchRates& rates) {
  require(std::isfinite(rates.alpha) && rates.alpha > 0.0, ErrorKind::kInvalidParameter,
          "switching rate alpha must be positive");
  require(std::isfinite(rates.beta) && rates.beta > 0.0, ErrorKind::kInvalidParameter,
          "switching rate beta must be positive");
}

StationaryProbabilities stationary_probabilities(const SwitchRates& rates) {
  validate(rates);
  const double p = rates.beta / (rates.alpha + rates.beta);
  return {p, 1.0 - p};
}

SwitchPath::SwitchPath(EnvState initial_state, std::vector<double> holding_times,
                       double horizon)
    : initial_state_(initial_state), holding_times_(std::move(holding_times)), horizon_(horizon) {
  require(horizon > 0.0, ErrorKind::kInvalidParameter, "path horizon must be positive");
  double t = 0.0;
  for (double sigma : holding_times_) {
    require(sigma > 0.0, ErrorKind::kInvalidParameter, "holding times must be positive");
    t += sigma;
    if (t < horizon_) jump_times_.push_back(t);
  }
  require(t >= horizon_, ErrorKind::kInvalidParameter,
          "holding times do not cover the horizon");
}

SwitchPath sample_path(const SwitchRates& rates, EnvState initial, double horizon,
                       std::uint64_t seed, std::uint64_t stream) {
  validate(rates);
  require(std::isfinite(horizon) && horizon > 0.0, ErrorKind::kInvalidParameter,
          "horizon must be positive");
  Rng rng(seed, stream);
  std::vector<double> holding;
  EnvState state = initial;
  double t = 0.0;
  while (t < horizon) {
    require(holding.size() < kMaxJumps, ErrorKind::kInvalidParameter,
            "switch path exceeds " + std::to_string(kMaxJumps) + " jumps");
    double sigma = rng.exponential(rates.exit_rate(state));
    // u = 1 gives sigma = 0; holding times must be strictly positive.
    while (sigma <= 0.0) sigma = rng.exponential(rates.exit_rate(state));
    holding.push_back(sigma);
    t += sigma;
    state = flip(state);
  }
  return SwitchPath(initial, std::move(holding), horizon);
}

double occupation_fraction(const SwitchPath& path, EnvState state) {
  double t = 0.0;
  double inside = 0.0;
  const auto& sigma = path.holding_times();
  for (std::size_t n = 0; n < sigma.size() && t < path.horizon(); ++n) {
    const double end = std::min(t + sigma[n], path.horizon());
    if (path.state_of_sojourn(n) == state) inside += end - t;
    t = end;
  }
  return inside / path.horizon();
}

}  // namespace sirs
