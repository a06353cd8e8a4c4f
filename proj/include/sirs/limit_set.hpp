#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sirs/dynamics.hpp"
#include "sirs/geometry.hpp"
#include "sirs/switched.hpp"

namespace sirs {

struct PointCloud {
  std::vector<Point> points;
  /// Composition depth at which each point first appeared (same order).
  std::vector<int> levels;
  int generation_depth = 0;
  std::string time_grid;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  /// Points generated at depth <= d.
  PointCloud truncated(int depth) const;

  bool operator==(const PointCloud&) const = default;
};

PointCloud make_cloud(std::vector<Point> points);

struct GammaOptions {
  int depth = 6;
  int times_per_level = 24;
  double t_min = 1e-2;
  double t_max = 50.0;
  double step = 1e-2;
  double dedup_resolution = 1e-4;  // fraction of N

  bool operator==(const GammaOptions&) const = default;
};

/// Geometric grid of `count` times from t_min to t_max inclusive.
std::vector<double> geometric_times(double t_min, double t_max, int count);

/// Alternating compositions pi^-, pi^+, pi^-, ... of the frozen flows applied to
/// the endemic + equilibrium, breadth first, deduplicated on a lattice.
PointCloud gamma_cloud(const ModelParams& params, const GammaOptions& opt = {});
PointCloud gamma_cloud(const ModelParams& params, int depth, int times_per_level,
                       double t_max);

/// Grid-bucketed nearest-neighbour queries over a fixed point set.
class NearestNeighborIndex {
 public:
  explicit NearestNeighborIndex(std::span<const Point> points);

  double nearest_distance(Point q) const;
  bool any_within(Point q, double radius) const;

 private:
  long cell_of(double v, double lo, long n) const;
  std::vector<Point> points_;
  std::vector<std::size_t> cell_start_;
  double s_lo_ = 0, i_lo_ = 0, cell_ = 1;
  long ns_ = 1, ni_ = 1;
};

double directed_hausdorff(std::span<const Point> from, std::span<const Point> to);
double hausdorff(const PointCloud& a, const PointCloud& b);

/// Samples of `traj` with t >= t_from, as a cloud.
PointCloud tail_cloud(const Trajectory& traj, double t_from);

/// First sample time after which every sample stays within tube_radius of the
/// cloud; nullopt when the last sample is still outside.
std::optional<double> absorption_time(const Trajectory& traj, const PointCloud& cloud,
                                      double tube_radius);

inline constexpr double kEntryHorizonCap = 1e4;

/// Max over probes in J of the time after which the + flow stays within
/// delta2 of the + equilibrium.
double uniform_entry_time(const ModelParams& params, const Region& region_j, double delta2,
                          int probe_count, double step = kDefaultStep);

/// Quasi-uniform (Halton) probes inside a region.
std::vector<Point> region_probes(const Region& region, int count);

void write_cloud_csv(const PointCloud& cloud, std::ostream& out);

}  // namespace sirs
