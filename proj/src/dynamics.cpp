#include "sirs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "sirs/error.hpp"

namespace sirs {

void validate(const EnvParams& p) {
  require(std::isfinite(p.a) && p.a > 0.0, ErrorKind::kInvalidParameter,
          "transmission rate a must be positive");
  require(std::isfinite(p.b) && p.b > 0.0, ErrorKind::kInvalidParameter,
          "recovery rate b must be positive");
  require(std::isfinite(p.c) && p.c > 0.0, ErrorKind::kInvalidParameter,
          "immunity-loss rate c must be positive");
}

double distance(Point a, Point b) { return std::hypot(a.s - b.s, a.i - b.i); }

double triangle_violation(Point pt, double N) {
  if (!std::isfinite(pt.s) || !std::isfinite(pt.i)) return INFINITY;
  return std::max({0.0, -pt.s, -pt.i, pt.s + pt.i - N});
}

bool in_triangle(Point pt, double N, double tol) {
  return triangle_violation(pt, N) <= tol * N;
}

bool in_triangle_interior(Point pt, double N) {
  return pt.s > 0.0 && pt.i > 0.0 && pt.s + pt.i < N;
}

ModelParams::ModelParams(EnvParams plus, EnvParams minus, double N, SwitchRates rates)
    : plus_(plus), minus_(minus), N_(N), rates_(rates) {
  validate(plus_);
  validate(minus_);
  sirs::validate(rates_);
  require(std::isfinite(N_) && N_ > 0.0, ErrorKind::kInvalidParameter,
          "population size N must be positive");
  if (plus_.threshold_s() > minus_.threshold_s()) {
    std::swap(plus_, minus_);
    std::swap(rates_.alpha, rates_.beta);
    labels_swapped_ = true;
  }
}

Equilibrium equilibrium(const EnvParams& p, double N) {
  const double s_star = p.b / p.a;
  if (N > s_star) return {{s_star, p.c * (N - s_star) / (p.b + p.c)}, true};
  return {{N, 0.0}, false};
}

double basic_reproduction_number(const EnvParams& p, double N) { return N * p.a / p.b; }

Point rk4_step(const EnvParams& p, double N, Point x, double h) {
  const Velocity k1 = vector_field(p, N, x);
  const Velocity k2 = vector_field(p, N, {x.s + 0.5 * h * k1.ds, x.i + 0.5 * h * k1.di});
  const Velocity k3 = vector_field(p, N, {x.s + 0.5 * h * k2.ds, x.i + 0.5 * h * k2.di});
  const Velocity k4 = vector_field(p, N, {x.s + h * k3.ds, x.i + h * k3.di});
  return {x.s + h / 6.0 * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds),
          x.i + h / 6.0 * (k1.di + 2.0 * k2.di + 2.0 * k3.di + k4.di)};
}

void settle_in_triangle(Point& pt, double N) {
  const double v = triangle_violation(pt, N);
  if (v == 0.0) return;
  if (!(v <= kTriangleTolerance * N)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "integration left the triangle by " << v << " at (" << pt.s << ", " << pt.i
        << "); reduce the step";
    fail(ErrorKind::kNumericalInstability, msg.str());
  }
  pt.s = std::max(pt.s, 0.0);
  pt.i = std::max(pt.i, 0.0);
  const double total = pt.s + pt.i;
  if (total > N) {
    const double excess = total - N;
    pt.s -= excess * pt.s / total;
    pt.i -= excess * pt.i / total;
  }
}

Point flow(const EnvParams& params, double N, Point start, double duration, double step) {
  require(duration >= 0.0, ErrorKind::kInvalidParameter, "flow duration must be nonnegative");
  require(step > 0.0, ErrorKind::kInvalidParameter, "flow step must be positive");
  require(in_triangle(start, N), ErrorKind::kInvalidParameter, "flow start outside the triangle");
  Point x = start;
  settle_in_triangle(x, N);
  double t = 0.0;
  // Remainders below this are round-off in the step count, not a real step.
  const double slack = 1e-9 * step;
  while (duration - t > slack) {
    const double h = std::min(step, duration - t);
    x = rk4_step(params, N, x, h);
    settle_in_triangle(x, N);
    t = (duration - t - h <= slack) ? duration : t + h;
  }
  return x;
}

}  // namespace sirs
