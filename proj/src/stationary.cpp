#include "sirs/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "format.hpp"
#include "parallel.hpp"
#include "sirs/error.hpp"
#include "sirs/rng.hpp"
#include "sirs/threshold.hpp"

namespace sirs {

double Histogram::env_marginal(EnvState env) const {
  const std::size_t layer = static_cast<std::size_t>(bins_s) * bins_i;
  const std::size_t offset = env == EnvState::kPlus ? 0 : layer;
  return std::accumulate(mass.begin() + offset, mass.begin() + offset + layer, 0.0);
}

OccupationAccumulator::OccupationAccumulator(double N, int bins_s, int bins_i)
    : N_(N), bins_s_(bins_s), bins_i_(bins_i) {
  require(N > 0.0 && bins_s > 0 && bins_i > 0, ErrorKind::kInvalidParameter,
          "histogram needs N > 0 and positive bin counts");
  time_.assign(2 * static_cast<std::size_t>(bins_s) * bins_i, 0.0);
}

std::size_t OccupationAccumulator::bin(EnvState env, Point pt) const {
  const int is = std::clamp(static_cast<int>(std::floor(pt.s / N_ * bins_s_)), 0, bins_s_ - 1);
  const int ii = std::clamp(static_cast<int>(std::floor(pt.i / N_ * bins_i_)), 0, bins_i_ - 1);
  return (static_cast<std::size_t>(env == EnvState::kPlus ? 0 : 1) * bins_s_ + is) * bins_i_ + ii;
}

void OccupationAccumulator::add(const Trajectory& traj, double burn_in,
                                std::optional<double> until, Binning rule) {
  require(traj.params.N() == N_, ErrorKind::kInvalidParameter,
          "trajectory population size does not match the histogram");
  const double end = std::min(until.value_or(traj.horizon()), traj.horizon());
  require(end > burn_in, ErrorKind::kInvalidParameter,
          "trajectory horizon must exceed the burn-in");
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    const double t0 = std::max(traj.sample_times[k], burn_in);
    const double t1 = std::min(traj.sample_times[k + 1], end);
    if (t1 <= t0) continue;
    Point where = traj.points[k];
    if (rule == Binning::kMidpoint) {
      const Point& next = traj.points[k + 1];
      where = {0.5 * (where.s + next.s), 0.5 * (where.i + next.i)};
    }
    time_[bin(traj.states[k], where)] += t1 - t0;
  }
}

void OccupationAccumulator::merge(const OccupationAccumulator& other) {
  require(N_ == other.N_ && bins_s_ == other.bins_s_ && bins_i_ == other.bins_i_,
          ErrorKind::kInvalidParameter, "cannot merge histograms on different grids");
  for (std::size_t k = 0; k < time_.size(); ++k) time_[k] += other.time_[k];
}

Histogram OccupationAccumulator::histogram() const {
  Histogram h{N_, bins_s_, bins_i_, time_, 0.0};
  h.total_time = std::accumulate(time_.begin(), time_.end(), 0.0);
  require(h.total_time > 0.0, ErrorKind::kInvalidParameter, "no occupation time recorded");
  for (double& m : h.mass) m /= h.total_time;
  return h;
}

Histogram occupation_histogram(const Trajectory& traj, double burn_in, int bins_s, int bins_i,
                               Binning rule) {
  require(traj.horizon() > burn_in, ErrorKind::kInvalidParameter,
          "trajectory horizon must exceed the burn-in");
  OccupationAccumulator acc(traj.params.N(), bins_s, bins_i);
  acc.add(traj, burn_in, std::nullopt, rule);
  return acc.histogram();
}

double total_variation(const Histogram& h1, const Histogram& h2) {
  require(h1.N == h2.N && h1.bins_s == h2.bins_s && h1.bins_i == h2.bins_i &&
              h1.mass.size() == h2.mass.size(),
          ErrorKind::kInvalidParameter, "total variation needs identical grids");
  double sum = 0.0;
  for (std::size_t k = 0; k < h1.mass.size(); ++k) sum += std::abs(h1.mass[k] - h2.mass[k]);
  return 0.5 * sum;
}

double boundary_mass(const Histogram& h, double margin) {
  double sum = 0.0;
  for (EnvState env : {EnvState::kPlus, EnvState::kMinus}) {
    for (int is = 0; is < h.bins_s; ++is) {
      for (int ii = 0; ii < h.bins_i; ++ii) {
        if (h.s_edge(is) < margin || h.i_edge(ii) < margin) sum += h.at(env, is, ii);
      }
    }
  }
  return sum;
}

double default_burn_in(const ModelParams& params, double horizon) {
  return std::max(0.1 * horizon, 100.0 * params.rates().mean_holding_time());
}

ConvergenceTable convergence_diagnostic(const ModelParams& params, std::span<const Point> starts,
                                        double horizon, std::span<const double> checkpoints,
                                        std::span<const std::uint64_t> seeds,
                                        const ConvergenceOptions& opt) {
  require(lambda(params) > 0.0, ErrorKind::kNotApplicable,
          "stationary distribution needs lambda > 0");
  require(!is_proportional(params), ErrorKind::kNotApplicable,
          "proportional parameters: the limit is the common equilibrium, not a density");
  require(starts.size() >= 2 && seeds.size() == starts.size(), ErrorKind::kInvalidParameter,
          "need at least two starts and one seed per start");
  require(!checkpoints.empty(), ErrorKind::kInvalidParameter, "no checkpoints given");
  for (const Point& p : starts)
    require(in_triangle_interior(p, params.N()), ErrorKind::kInvalidParameter,
            "every start must be interior");
  for (double c : checkpoints)
    require(c > default_burn_in(params, c) && c <= horizon, ErrorKind::kInvalidParameter,
            "checkpoints must lie in (burn-in, horizon]");

  std::vector<Trajectory> runs;
  runs.reserve(starts.size());
  for (std::size_t k = 0; k < starts.size(); ++k) {
    SimulationSpec spec{starts[k], opt.initial_env, horizon, opt.step, opt.sample_interval,
                        seeds[k]};
    runs.push_back(simulate(params, spec));
  }

  ConvergenceTable table;
  table.checkpoints.assign(checkpoints.begin(), checkpoints.end());
  for (std::size_t a = 0; a < starts.size(); ++a)
    for (std::size_t b = a + 1; b < starts.size(); ++b) table.pairs.emplace_back(a, b);

  for (double c : checkpoints) {
    std::vector<Histogram> hs;
    for (const Trajectory& traj : runs) {
      OccupationAccumulator acc(params.N(), opt.bins_s, opt.bins_i);
      acc.add(traj, default_burn_in(params, c), c);
      hs.push_back(acc.histogram());
    }
    std::vector<double> row;
    for (auto [a, b] : table.pairs) row.push_back(total_variation(hs[a], hs[b]));
    table.tv.push_back(std::move(row));
  }
  auto mean = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  table.monotone_trend = mean(table.tv.back()) < mean(table.tv.front());
  return table;
}

ConvergenceTable convergence_diagnostic(const ModelParams& params, std::span<const Point> starts,
                                        double horizon, std::span<const double> checkpoints,
                                        std::uint64_t seed_base, const ConvergenceOptions& opt) {
  std::vector<std::uint64_t> seeds(starts.size());
  for (std::size_t k = 0; k < seeds.size(); ++k) seeds[k] = derive_seed(seed_base, k);
  return convergence_diagnostic(params, starts, horizon, checkpoints, seeds, opt);
}

void write_histogram_csv(const Histogram& h, std::ostream& out) {
  using detail::fmt17;
  out << "env,s_lo,s_hi,i_lo,i_hi,mass\n";
  for (EnvState env : {EnvState::kPlus, EnvState::kMinus}) {
    for (int is = 0; is < h.bins_s; ++is) {
      for (int ii = 0; ii < h.bins_i; ++ii) {
        out << symbol(env) << ',' << fmt17(h.s_edge(is)) << ',' << fmt17(h.s_edge(is + 1)) << ','
            << fmt17(h.i_edge(ii)) << ',' << fmt17(h.i_edge(ii + 1)) << ','
            << fmt17(h.at(env, is, ii)) << '\n';
      }
    }
  }
}

}  // namespace sirs
