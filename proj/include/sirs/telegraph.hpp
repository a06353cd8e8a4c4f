#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sirs {

/// Environmental state of the telegraph process.
enum class EnvState : std::uint8_t { kPlus, kMinus };

constexpr EnvState flip(EnvState s) {
  return s == EnvState::kPlus ? EnvState::kMinus : EnvState::kPlus;
}

constexpr char symbol(EnvState s) { return s == EnvState::kPlus ? '+' : '-'; }

/// Transition intensities: alpha for + -> -, beta for - -> +.
struct SwitchRates {
  double alpha = 1.0;
  double beta = 1.0;

  /// Rate of leaving `state`.
  double exit_rate(EnvState state) const {
    return state == EnvState::kPlus ? alpha : beta;
  }
  /// Mean holding time averaged over the two states, 0.5 (1/alpha + 1/beta).
  double mean_holding_time() const { return 0.5 * (1.0 / alpha + 1.0 / beta); }

  bool operator==(const SwitchRates&) const = default;
};

void validate(const SwitchRates& rates);

struct StationaryProbabilities {
  double p;  // P(xi = +)
  double q;  // P(xi = -)
};

StationaryProbabilities stationary_probabilities(const SwitchRates& rates);

/// Maximum number of jumps generated for one path.
inline constexpr std::size_t kMaxJumps = 10'000'000;

/// Realized telegraph trajectory on [0, horizon]. holding_times[n] is the
/// sojourn that starts at jump_time(n) (jump_time(0) = 0); the state during
/// sojourn n is initial_state flipped n times. The retained prefix covers the
/// horizon: sum of holding times >= horizon.
class SwitchPath {
 public:
  SwitchPath(EnvState initial_state, std::vector<double> holding_times, double horizon);

  EnvState initial_state() const { return initial_state_; }
  double horizon() const { return horizon_; }
  const std::vector<double>& holding_times() const { return holding_times_; }

  /// Jump times tau_1 < tau_2 < ... strictly inside (0, horizon).
  const std::vector<double>& jump_times() const { return jump_times_; }

  /// State during sojourn n (0-based).
  EnvState state_of_sojourn(std::size_t n) const {
    return (n % 2 == 0) ? initial_state_ : flip(initial_state_);
  }

  bool operator==(const SwitchPath&) const = default;

 private:
  EnvState initial_state_;
  std::vector<double> holding_times_;
  std::vector<double> jump_times_;
  double horizon_;
};

SwitchPath sample_path(const SwitchRates& rates, EnvState initial, double horizon,
                       std::uint64_t seed, std::uint64_t stream = 0);

/// Time spent in `state` on [0, horizon], divided by horizon.
double occupation_fraction(const SwitchPath& path, EnvState state);

}  // namespace sirs
