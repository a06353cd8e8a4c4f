#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sirs/dynamics.hpp"
#include "sirs/switched.hpp"

namespace sirs {

enum class Binning { kLeftEndpoint, kMidpoint };

/// Occupation measure on a bins_s x bins_i lattice over [0,N]^2, one layer per
/// environment. mass sums to 1.
struct Histogram {
  double N = 0.0;
  int bins_s = 0;
  int bins_i = 0;
  std::vector<double> mass;  // [env][is][ii], env 0 = +
  double total_time = 0.0;

  std::size_t index(EnvState env, int is, int ii) const {
    return (static_cast<std::size_t>(env == EnvState::kPlus ? 0 : 1) * bins_s + is) * bins_i + ii;
  }
  double at(EnvState env, int is, int ii) const { return mass[index(env, is, ii)]; }
  double env_marginal(EnvState env) const;
  double s_edge(int is) const { return N * is / bins_s; }
  double i_edge(int ii) const { return N * ii / bins_i; }
};

/// Raw (unnormalized) occupation times. Adding and merging commute; the
/// histogram is normalized once in `histogram()`.
class OccupationAccumulator {
 public:
  OccupationAccumulator(double N, int bins_s, int bins_i);

  /// Adds the segments of `traj` inside [burn_in, until].
  void add(const Trajectory& traj, double burn_in, std::optional<double> until = std::nullopt,
           Binning rule = Binning::kLeftEndpoint);
  void merge(const OccupationAccumulator& other);
  Histogram histogram() const;

 private:
  std::size_t bin(EnvState env, Point pt) const;
  double N_;
  int bins_s_, bins_i_;
  std::vector<double> time_;
};

Histogram occupation_histogram(const Trajectory& traj, double burn_in, int bins_s, int bins_i,
                               Binning rule = Binning::kLeftEndpoint);

/// 0.5 * sum |m1 - m2|; kInvalidParameter on grid mismatch.
double total_variation(const Histogram& h1, const Histogram& h2);

/// Mass in bins that intersect s < margin or i < margin.
double boundary_mass(const Histogram& h, double margin);

/// 10% of the horizon, at least 100 mean holding times.
double default_burn_in(const ModelParams& params, double horizon);

struct ConvergenceOptions {
  int bins_s = 30;
  int bins_i = 30;
  double step = kDefaultStep;
  double sample_interval = kDefaultSampleInterval;
  EnvState initial_env = EnvState::kPlus;
};

struct ConvergenceTable {
  std::vector<double> checkpoints;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::vector<double>> tv;  // tv[checkpoint][pair]
  bool monotone_trend = false;           // mean TV at last checkpoint < at first
};

/// Pairwise TV between occupation histograms of runs from different starts,
/// each truncated at every checkpoint (burn-in per default_burn_in).
ConvergenceTable convergence_diagnostic(const ModelParams& params, std::span<const Point> starts,
                                        double horizon, std::span<const double> checkpoints,
                                        std::span<const std::uint64_t> seeds,
                                        const ConvergenceOptions& opt = {});
/// Seeds derived from seed_base, one per start.
ConvergenceTable convergence_diagnostic(const ModelParams& params, std::span<const Point> starts,
                                        double horizon, std::span<const double> checkpoints,
                                        std::uint64_t seed_base,
                                        const ConvergenceOptions& opt = {});

/// CSV env,s_lo,s_hi,i_lo,i_hi,mass over every bin.
void write_histogram_csv(const Histogram& h, std::ostream& out);

}  // namespace sirs
