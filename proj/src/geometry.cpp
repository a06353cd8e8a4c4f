#include "sirs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "format.hpp"
#include "sirs/error.hpp"
#include "sirs/threshold.hpp"

namespace sirs {

const char* to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::kTriangle: return "Triangle";
    case RegionKind::kQuadrangle: return "Quadrangle";
    case RegionKind::kCurveBoundedG: return "CurveBoundedG";
    case RegionKind::kCurveBoundedK: return "CurveBoundedK";
    case RegionKind::kNeighborhood: return "Neighborhood";
  }
  return "unknown";
}

double FloorCurve::curve(double s) const { return eps0 * std::exp(-k * (s - s0)); }

namespace {

double signed_area(const std::vector<Point>& poly) {
  double a = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Point& p = poly[k];
    const Point& q = poly[(k + 1) % poly.size()];
    a += p.s * q.i - q.s * p.i;
  }
  return 0.5 * a;
}

// Convex polygon of either orientation; tol is a distance.
bool in_convex_polygon(const std::vector<Point>& poly, Point pt, double tol) {
  const double orient = signed_area(poly) >= 0.0 ? 1.0 : -1.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Point& p = poly[k];
    const Point& q = poly[(k + 1) % poly.size()];
    const double es = q.s - p.s, ei = q.i - p.i;
    const double len = std::hypot(es, ei);
    if (len == 0.0) continue;
    const double cross = es * (pt.i - p.i) - ei * (pt.s - p.s);
    if (orient * cross / len < -tol) return false;
  }
  return true;
}

}  // namespace

Region Region::triangle(double N) {
  Region r;
  r.kind_ = RegionKind::kTriangle;
  r.N_ = N;
  r.boundary_ = {{0.0, 0.0}, {N, 0.0}, {0.0, N}};
  return r;
}

Region Region::quadrangle(std::vector<Point> vertices, double s_min) {
  Region r;
  r.kind_ = RegionKind::kQuadrangle;
  r.boundary_ = vertices;
  r.quad_ = std::move(vertices);
  r.metadata_.s_min = s_min;
  return r;
}

Region Region::curve_bounded(RegionKind kind, std::vector<Point> quad, FloorCurve floor,
                             int curve_points) {
  Region r;
  r.kind_ = kind;
  r.quad_ = std::move(quad);
  r.floor_ = floor;
  r.metadata_ = {floor.s0, floor.eps1(), floor.eps0};

  // quad = A, B, C, D with D = (N, 0) on the hypotenuse.
  const double N = r.quad_[3].s;
  const double eps1 = floor.eps1();
  r.boundary_.push_back({floor.s0, floor.eps0});
  r.boundary_.push_back(r.quad_[1]);
  r.boundary_.push_back(r.quad_[2]);
  r.boundary_.push_back({N - eps1, eps1});
  r.boundary_.push_back({floor.s_switch, eps1});
  const int n = std::max(curve_points, 2);
  for (int j = n - 2; j >= 1; --j) {
    const double s = floor.s0 + (floor.s_switch - floor.s0) * j / (n - 1);
    r.boundary_.push_back({s, floor.curve(s)});
  }
  return r;
}

Region Region::neighborhood(Point center, double radius) {
  Region r;
  r.kind_ = RegionKind::kNeighborhood;
  r.center_ = center;
  r.metadata_.epsilon = radius;
  constexpr int kSides = 64;
  for (int j = 0; j < kSides; ++j) {
    const double a = 2.0 * std::numbers::pi * j / kSides;
    r.boundary_.push_back({center.s + radius * std::cos(a), center.i + radius * std::sin(a)});
  }
  return r;
}

bool Region::contains(Point pt, double tol) const {
  switch (kind_) {
    case RegionKind::kTriangle:
      return pt.s >= -tol && pt.i >= -tol && pt.s + pt.i <= N_ + tol;
    case RegionKind::kQuadrangle:
      return in_convex_polygon(quad_, pt, tol);
    case RegionKind::kCurveBoundedG:
    case RegionKind::kCurveBoundedK:
      return in_convex_polygon(quad_, pt, tol) && pt.i >= floor_.floor_at(pt.s) - tol;
    case RegionKind::kNeighborhood:
      return distance(pt, center_) <= metadata_.epsilon + tol;
  }
  return false;
}

Region::Box Region::bounding_box() const {
  if (kind_ == RegionKind::kNeighborhood) {
    const double r = metadata_.epsilon;
    return {center_.s - r, center_.s + r, center_.i - r, center_.i + r};
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  Box b{inf, -inf, inf, -inf};
  for (const Point& p : boundary_) {
    b.s_lo = std::min(b.s_lo, p.s);
    b.s_hi = std::max(b.s_hi, p.s);
    b.i_lo = std::min(b.i_lo, p.i);
    b.i_hi = std::max(b.i_hi, p.i);
  }
  return b;
}

SMinChoice choose_s_min(const ModelParams& params) {
  const double N = params.N();
  require(params.plus().threshold_s() < N, ErrorKind::kNotApplicable,
          "b(+)/a(+) >= N: infection dies out in both environments, no S_min region");
  const double half = params.plus().b / (2.0 * params.plus().a);
  double bound = std::numeric_limits<double>::infinity();
  for (const EnvParams* e : {&params.plus(), &params.minus()})
    bound = std::min(bound, e->c * half / (N * e->a + e->c));
  SMinChoice out{0.5 * bound, std::numeric_limits<double>::infinity()};
  for (const EnvParams* e : {&params.plus(), &params.minus()})
    out.m = std::min(out.m, -N * e->a * out.s_min + e->c * (half - out.s_min));
  require(out.m > 0.0, ErrorKind::kNumericalInstability, "S_min inequality not satisfied");
  return out;
}

Region quadrangle_abcd(const ModelParams& params) {
  const SMinChoice choice = choose_s_min(params);
  const double N = params.N();
  const double h = params.plus().b / (2.0 * params.plus().a);
  return Region::quadrangle(
      {{choice.s_min, 0.0}, {choice.s_min, N - h}, {h, N - h}, {N, 0.0}}, choice.s_min);
}

bool strip_has_positive_ds(const ModelParams& params, bool plus_only, double s_hi, double eps,
                           const GeometryOptions& opt) {
  const double N = params.N();
  const int g = opt.grid;
  for (const EnvParams* e : {&params.plus(), &params.minus()}) {
    if (plus_only && e == &params.minus()) continue;
    for (int js = 0; js <= g; ++js) {
      const double s = s_hi * js / g;
      for (int ji = 1; ji <= g; ++ji) {
        const double i = eps * ji / g;
        if (!(vector_field(*e, N, {s, i}).ds > 0.0)) return false;
      }
    }
  }
  return true;
}

namespace {

// Upper bound on (b - a s) / (ds/dt) over the strip, times the safety margin.
double slope_bound(const ModelParams& params, bool plus_only, double s_hi, double eps,
                   const GeometryOptions& opt) {
  const double N = params.N();
  const int g = opt.grid;
  double worst = 0.0;
  for (const EnvParams* e : {&params.plus(), &params.minus()}) {
    if (plus_only && e == &params.minus()) continue;
    for (int js = 0; js <= g; ++js) {
      const double s = s_hi * js / g;
      for (int ji = 1; ji <= g; ++ji) {
        const double i = eps * ji / g;
        worst = std::max(worst, (e->b - e->a * s) / vector_field(*e, N, {s, i}).ds);
      }
    }
  }
  return opt.k_margin * std::max(worst, 1e-12);
}

double halve_until_valid(const ModelParams& params, bool plus_only, double s_hi, double start,
                         const GeometryOptions& opt) {
  require(std::isfinite(start) && start > 0.0, ErrorKind::kInvalidParameter,
          "epsilon must be positive");
  const double ceiling = params.N() - params.plus().b / (2.0 * params.plus().a);
  double eps = start;
  for (int j = 0; j < 60; ++j, eps *= 0.5) {
    if (eps < ceiling && strip_has_positive_ds(params, plus_only, s_hi, eps, opt)) return eps;
  }
  fail(ErrorKind::kInvalidParameter, "no epsilon satisfies the strip condition");
}

}  // namespace

double choose_epsilon0(const ModelParams& params, double start, const GeometryOptions& opt) {
  const double s_hi = params.minus().threshold_s();
  require(s_hi < params.N(), ErrorKind::kNotApplicable,
          "b(-)/a(-) >= N: region G needs both environments endemic");
  return halve_until_valid(params, false, s_hi, start, opt);
}

Region region_g(const ModelParams& params, double epsilon0, const GeometryOptions& opt) {
  const double s_hi = params.minus().threshold_s();
  require(s_hi < params.N(), ErrorKind::kNotApplicable,
          "b(-)/a(-) >= N: region G needs both environments endemic");
  require(epsilon0 > 0.0 && strip_has_positive_ds(params, false, s_hi, epsilon0, opt),
          ErrorKind::kInvalidParameter,
          "epsilon0 too large: ds/dt is not positive on the strip below b(-)/a(-)");
  const Region abcd = quadrangle_abcd(params);
  FloorCurve floor{abcd.metadata().s_min, epsilon0,
                   slope_bound(params, false, s_hi, epsilon0, opt), s_hi};
  return Region::curve_bounded(RegionKind::kCurveBoundedG, abcd.quad(), floor, opt.curve_points);
}

Region region_k(const ModelParams& params, double delta1, const GeometryOptions& opt) {
  require(lambda(params) > 0.0, ErrorKind::kNotApplicable, "region K needs lambda > 0");
  if (params.minus().threshold_s() < params.N())
    return region_g(params, choose_epsilon0(params, delta1, opt), opt);

  const double s_hi = params.plus().threshold_s();
  const double eps = halve_until_valid(params, true, s_hi, delta1, opt);
  const Region abcd = quadrangle_abcd(params);
  FloorCurve floor{abcd.metadata().s_min, eps, slope_bound(params, true, s_hi, eps, opt), s_hi};
  return Region::curve_bounded(RegionKind::kCurveBoundedK, abcd.quad(), floor, opt.curve_points);
}

double degeneracy_curve_residual(const ModelParams& params, Point pt) {
  const EnvParams& p = params.plus();
  const EnvParams& m = params.minus();
  const double N = params.N();
  const double s = pt.s, i = pt.i;
  return (-p.a * s * i + p.c * (N - s - i)) * (m.a * s - m.b) -
         (-m.a * s * i + m.c * (N - s - i)) * (p.a * s - p.b);
}

void write_region_csv(const std::string& name, const Region& region, std::ostream& out) {
  using detail::fmt17;
  const auto& b = region.boundary();
  for (std::size_t k = 0; k <= b.size(); ++k) {
    const Point& p = b[k % b.size()];
    out << name << ',' << fmt17(p.s) << ',' << fmt17(p.i) << '\n';
  }
}

}  // namespace sirs
