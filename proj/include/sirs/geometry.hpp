#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sirs/dynamics.hpp"

namespace sirs {

enum class RegionKind { kTriangle, kQuadrangle, kCurveBoundedG, kCurveBoundedK, kNeighborhood };
const char* to_string(RegionKind kind);

/// Lower boundary of the curve-bounded regions: i = eps0 exp(-k (s - s0)) for
/// s0 <= s <= s_switch, then the constant floor eps1 = curve(s_switch).
struct FloorCurve {
  double s0 = 0.0;
  double eps0 = 0.0;
  double k = 0.0;
  double s_switch = 0.0;

  double curve(double s) const;
  double eps1() const { return curve(s_switch); }
  double floor_at(double s) const { return s <= s_switch ? curve(s) : eps1(); }
};

struct RegionMetadata {
  double s_min = 0.0;
  double i_min = 0.0;  // eps1 for curve-bounded regions
  double epsilon = 0.0;  // eps0 / delta_1, or the radius of a neighborhood
};

class Region {
 public:
  static Region triangle(double N);
  static Region quadrangle(std::vector<Point> vertices, double s_min);
  static Region curve_bounded(RegionKind kind, std::vector<Point> quad, FloorCurve floor,
                              int curve_points = 1000);
  static Region neighborhood(Point center, double radius);

  RegionKind kind() const { return kind_; }
  /// Closed polyline (first vertex not repeated).
  const std::vector<Point>& boundary() const { return boundary_; }
  const RegionMetadata& metadata() const { return metadata_; }
  const std::vector<Point>& quad() const { return quad_; }
  const FloorCurve& floor() const { return floor_; }
  Point center() const { return center_; }

  /// Membership with an absolute slack `tol`. Curve-bounded regions use the
  /// closed-form floor rather than the polyline.
  bool contains(Point pt, double tol = 0.0) const;

  struct Box {
    double s_lo, s_hi, i_lo, i_hi;
  };
  Box bounding_box() const;

  bool operator==(const Region&) const = default;

 private:
  Region() = default;

  RegionKind kind_ = RegionKind::kTriangle;
  std::vector<Point> boundary_;
  std::vector<Point> quad_;
  FloorCurve floor_;
  RegionMetadata metadata_;
  Point center_;
  double N_ = 0.0;
};

struct GeometryOptions {
  int grid = 200;            // lattice per axis for the strip scans
  double k_margin = 1.2;     // safety factor on the scanned slope bound
  int curve_points = 1000;   // polyline resolution of the floor curve
};

struct SMinChoice {
  double s_min;
  double m;  // min over both states of the left-hand side at s_min
};

/// Half of the largest S_min allowed by -N a S + c (b(+)/(2a(+)) - S) > 0 in
/// both environments. kNotApplicable when b(+)/a(+) >= N.
SMinChoice choose_s_min(const ModelParams& params);

/// Quadrangle A=(S_min,0), B=(S_min,N-h), C=(h,N-h), D=(N,0), h=b(+)/(2a(+)).
Region quadrangle_abcd(const ModelParams& params);

/// true when ds/dt > 0 on the strip (only in + when plus_only, else in both)
/// 0 < s <= s_hi, 0 < i <= eps.
bool strip_has_positive_ds(const ModelParams& params, bool plus_only, double s_hi,
                           double eps, const GeometryOptions& opt = {});

/// Largest eps of the form start / 2^j satisfying the strip condition below
/// s = b(-)/a(-) (both environments). kInvalidParameter if none is found.
double choose_epsilon0(const ModelParams& params, double start,
                       const GeometryOptions& opt = {});

/// Region G: ABCD above the floor curve from (S_min, eps0) to s = b(-)/a(-).
Region region_g(const ModelParams& params, double epsilon0, const GeometryOptions& opt = {});

/// Compact set visited at odd jump times. Equals region_g when b(-)/a(-) < N,
/// otherwise the analogous construction for the + system alone.
Region region_k(const ModelParams& params, double delta1, const GeometryOptions& opt = {});

/// [-a+ s i + c+(N-s-i)][a- s - b-] - [-a- s i + c-(N-s-i)][a+ s - b+];
/// vanishes exactly where the two vector fields are parallel.
double degeneracy_curve_residual(const ModelParams& params, Point pt);

/// CSV rows `region,s,i` (no header); the polyline is closed by repeating the
/// first vertex.
void write_region_csv(const std::string& name, const Region& region, std::ostream& out);

}  // namespace sirs
