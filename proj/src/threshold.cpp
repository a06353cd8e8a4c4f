#include "sirs/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sirs/error.hpp"
#include "sirs/geometry.hpp"

namespace sirs {

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::kExtinction: return "Extinction";
    case Regime::kPersistent: return "Persistent";
    case Regime::kPermanent: return "Permanent";
    case Regime::kDegenerateCommonEquilibrium: return "DegenerateCommonEquilibrium";
  }
  return "unknown";
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kExtinctObserved: return "ExtinctObserved";
    case Verdict::kPersistentObserved: return "PersistentObserved";
    case Verdict::kInconclusive: return "Inconclusive";
  }
  return "unknown";
}

double lambda(const ModelParams& params) {
  const auto [p, q] = stationary_probabilities(params.rates());
  const double N = params.N();
  return p * (params.plus().a * N - params.plus().b) +
         q * (params.minus().a * N - params.minus().b);
}

RegimeReport classify(const ModelParams& params) {
  RegimeReport report;
  report.lambda = lambda(params);
  report.r0_plus = basic_reproduction_number(params.plus(), params.N());
  report.r0_minus = basic_reproduction_number(params.minus(), params.N());
  report.labels_swapped = params.labels_swapped();

  const double N = params.N();
  const double scale = std::max({params.plus().a * N, params.plus().b, params.minus().a * N,
                                 params.minus().b});
  require(std::abs(report.lambda) > 1e-12 * scale, ErrorKind::kUnresolvedThreshold,
          "lambda is zero to within 1e-12 relative; the threshold case is not covered");

  if (report.lambda < 0.0) {
    report.classification = Regime::kExtinction;
    report.predicted_limit = Point{N, 0.0};
  } else if (is_proportional(params)) {
    report.classification = Regime::kDegenerateCommonEquilibrium;
    report.predicted_limit = equilibrium(params.plus(), N).point;
  } else if (params.plus().threshold_s() < N && params.minus().threshold_s() < N) {
    report.classification = Regime::kPermanent;
  } else {
    report.classification = Regime::kPersistent;
  }
  return report;
}

bool is_proportional(const ModelParams& params, double tol) {
  const double ra = params.plus().a / params.minus().a;
  const double rb = params.plus().b / params.minus().b;
  const double rc = params.plus().c / params.minus().c;
  auto close = [tol](double x, double y) {
    return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y));
  };
  return close(ra, rb) && close(rb, rc) && close(ra, rc);
}

double occupation_floor(const ModelParams& params) {
  const double a_max = std::max(params.plus().a, params.minus().a);
  const double c_min = std::min(params.plus().c, params.minus().c);
  const double c_max = std::max(params.plus().c, params.minus().c);
  return c_min * lambda(params) / ((a_max * params.N() + c_max) * a_max);
}

double default_extinction_threshold(const ModelParams& params) { return 1e-6 * params.N(); }

double default_window(const ModelParams& params) {
  return 100.0 * params.rates().mean_holding_time();
}

Verdict persistence_verdict(const Trajectory& traj, double extinction_threshold,
                            double window) {
  require(window > 0.0 && traj.horizon() >= 2.0 * window, ErrorKind::kInvalidParameter,
          "trajectory horizon must be at least twice the verdict window");
  require(std::isfinite(extinction_threshold) && extinction_threshold > 0.0,
          ErrorKind::kInvalidParameter, "extinction threshold must be positive");
  const double from = traj.horizon() - window;
  double i_max = 0.0;
  double s_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (traj.sample_times[k] < from) continue;
    i_max = std::max(i_max, traj.points[k].i);
    s_min = std::min(s_min, traj.points[k].s);
  }
  if (i_max < extinction_threshold) return Verdict::kExtinctObserved;

  double s_floor = 0.0;
  if (traj.params.plus().threshold_s() < traj.params.N())
    s_floor = 0.5 * choose_s_min(traj.params).s_min;
  if (i_max >= 10.0 * extinction_threshold && s_min >= s_floor && s_min > 0.0)
    return Verdict::kPersistentObserved;
  return Verdict::kInconclusive;
}

PermanenceBounds permanence_bounds(std::span<const Trajectory> ensemble, double tail_fraction) {
  require(!ensemble.empty(), ErrorKind::kInvalidParameter, "ensemble is empty");
  require(tail_fraction > 0.0 && tail_fraction <= 1.0, ErrorKind::kInvalidParameter,
          "tail_fraction must lie in (0, 1]");
  constexpr double inf = std::numeric_limits<double>::infinity();
  PermanenceBounds b{inf, -inf, inf, -inf};
  for (const Trajectory& traj : ensemble) {
    const double tail = tail_fraction * traj.horizon();
    require(tail > 10.0 * traj.params.rates().mean_holding_time(),
            ErrorKind::kInvalidParameter,
            "tail must span more than 10 mean holding times");
    const double from = traj.horizon() - tail;
    for (std::size_t k = 0; k < traj.size(); ++k) {
      if (traj.sample_times[k] < from) continue;
      const Point& p = traj.points[k];
      b.i_lower = std::min(b.i_lower, p.i);
      b.i_upper = std::max(b.i_upper, p.i);
      b.s_lower = std::min(b.s_lower, p.s);
      b.s_upper = std::max(b.s_upper, p.s);
    }
  }
  return b;
}

}  // namespace sirs
