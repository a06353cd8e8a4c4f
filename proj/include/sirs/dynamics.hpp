#pragma once

#include "sirs/telegraph.hpp"

namespace sirs {

/// Rates of one frozen environment: transmission a, recovery b, loss of
/// immunity c.
struct EnvParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  /// Susceptible level b/a at which the infective count is stationary.
  double threshold_s() const { return b / a; }

  bool operator==(const EnvParams&) const = default;
};

void validate(const EnvParams& params);

/// A point (s, i) of the reduced SIRS phase plane.
struct Point {
  double s = 0.0;
  double i = 0.0;

  bool operator==(const Point&) const = default;
};

double distance(Point a, Point b);

/// Relative tolerance (times N) used for membership in the triangle s, i >= 0,
/// s + i <= N.
inline constexpr double kTriangleTolerance = 1e-9;

/// Default integrator step.
inline constexpr double kDefaultStep = 1e-3;

/// Amount by which `pt` lies outside the triangle (0 when inside).
double triangle_violation(Point pt, double N);
bool in_triangle(Point pt, double N, double tol = kTriangleTolerance);
bool in_triangle_interior(Point pt, double N);

/// Parameters of the switched system. The constructor validates its inputs
/// and relabels the environments so that b(+)/a(+) <= b(-)/a(-); when it does
/// so the rates are exchanged with the labels and labels_swapped() is true.
class ModelParams {
 public:
  ModelParams(EnvParams plus, EnvParams minus, double N, SwitchRates rates);

  const EnvParams& plus() const { return plus_; }
  const EnvParams& minus() const { return minus_; }
  const EnvParams& env(EnvState state) const {
    return state == EnvState::kPlus ? plus_ : minus_;
  }
  double N() const { return N_; }
  const SwitchRates& rates() const { return rates_; }
  bool labels_swapped() const { return labels_swapped_; }

  /// Maps a state expressed in the caller's labels onto the internal labels.
  EnvState internal_state(EnvState user_state) const {
    return labels_swapped_ ? flip(user_state) : user_state;
  }

  bool operator==(const ModelParams&) const = default;

 private:
  EnvParams plus_;
  EnvParams minus_;
  double N_;
  SwitchRates rates_;
  bool labels_swapped_ = false;
};

struct Velocity {
  double ds;
  double di;
};

/// ds/dt = -a s i + c (N - s - i),  di/dt = i (a s - b).
inline Velocity vector_field(const EnvParams& p, double N, Point pt) {
  return {-p.a * pt.s * pt.i + p.c * (N - pt.s - pt.i), pt.i * (p.a * pt.s - p.b)};
}

struct Equilibrium {
  Point point;
  bool endemic;  // false: disease-free (N, 0)
};

Equilibrium equilibrium(const EnvParams& params, double N);

double basic_reproduction_number(const EnvParams& params, double N);

/// One classical RK4 step of size h, without any triangle handling.
Point rk4_step(const EnvParams& params, double N, Point pt, double h);

/// Projects round-off excursions back into the triangle. Throws
/// kNumericalInstability when the violation exceeds kTriangleTolerance * N.
void settle_in_triangle(Point& pt, double N);

/// Deterministic semiflow of one frozen environment: fixed-step RK4 with the
/// last step shortened to land on `duration`.
Point flow(const EnvParams& params, double N, Point start, double duration,
           double step = kDefaultStep);

}  // namespace sirs
