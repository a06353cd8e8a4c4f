#pragma once

#include <optional>
#include <span>

#include "sirs/dynamics.hpp"
#include "sirs/switched.hpp"

namespace sirs {

enum class Regime { kExtinction, kPersistent, kPermanent, kDegenerateCommonEquilibrium };
const char* to_string(Regime regime);

struct RegimeReport {
  double lambda = 0.0;
  double r0_plus = 0.0;
  double r0_minus = 0.0;
  Regime classification = Regime::kExtinction;
  std::optional<Point> predicted_limit;
  bool labels_swapped = false;
};

/// p (a(+) N - b(+)) + q (a(-) N - b(-)).
double lambda(const ModelParams& params);

/// Throws kUnresolvedThreshold when lambda vanishes to 1e-12 relative.
RegimeReport classify(const ModelParams& params);

inline constexpr double kProportionalTolerance = 1e-12;

/// a(+)/a(-) = b(+)/b(-) = c(+)/c(-) within `tol` (relative).
bool is_proportional(const ModelParams& params, double tol = kProportionalTolerance);

/// c_min lambda / ((a_max N + c_max) a_max): lower bound on the long-run mean
/// of I when lambda > 0. Also the default delta_1 for curve-bounded regions.
double occupation_floor(const ModelParams& params);

enum class Verdict { kExtinctObserved, kPersistentObserved, kInconclusive };
const char* to_string(Verdict verdict);

double default_extinction_threshold(const ModelParams& params);
double default_window(const ModelParams& params);

Verdict persistence_verdict(const Trajectory& traj, double extinction_threshold,
                            double window);

struct PermanenceBounds {
  double i_lower;
  double i_upper;
  double s_lower;
  double s_upper;
};

PermanenceBounds permanence_bounds(std::span<const Trajectory> ensemble,
                                   double tail_fraction);

}  // namespace sirs
