#include "sirs/limit_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "format.hpp"
#include "parallel.hpp"
#include "sirs/error.hpp"
#include "sirs/threshold.hpp"

namespace sirs {

PointCloud PointCloud::truncated(int depth) const {
  PointCloud out;
  out.generation_depth = std::min(depth, generation_depth);
  out.time_grid = time_grid;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (levels[k] <= depth) {
      out.points.push_back(points[k]);
      out.levels.push_back(levels[k]);
    }
  }
  return out;
}

PointCloud make_cloud(std::vector<Point> points) {
  PointCloud out;
  out.levels.assign(points.size(), 0);
  out.points = std::move(points);
  return out;
}

std::vector<double> geometric_times(double t_min, double t_max, int count) {
  require(count >= 1 && t_min > 0.0 && t_max >= t_min, ErrorKind::kInvalidParameter,
          "time grid needs count >= 1 and 0 < t_min <= t_max");
  std::vector<double> t(count);
  if (count == 1) {
    t[0] = t_max;
    return t;
  }
  const double ratio = std::log(t_max / t_min) / (count - 1);
  for (int j = 0; j < count; ++j) t[j] = t_min * std::exp(ratio * j);
  t.back() = t_max;
  return t;
}

namespace {

using CellKey = std::uint64_t;

CellKey cell_key(Point p, double res) {
  const auto ix = static_cast<std::uint64_t>(std::max(0.0, std::floor(p.s / res)));
  const auto iy = static_cast<std::uint64_t>(std::max(0.0, std::floor(p.i / res)));
  return (ix << 32) | iy;
}

}  // namespace

PointCloud gamma_cloud(const ModelParams& params, const GammaOptions& opt) {
  require(lambda(params) > 0.0, ErrorKind::kNotApplicable, "Gamma is defined only for lambda > 0");
  const Equilibrium eq = equilibrium(params.plus(), params.N());
  require(eq.endemic, ErrorKind::kNotApplicable, "the + system has no positive equilibrium");
  require(opt.depth >= 0, ErrorKind::kInvalidParameter, "depth must be nonnegative");
  require(opt.step > 0.0, ErrorKind::kInvalidParameter, "step must be positive");
  require(opt.dedup_resolution > 0.0, ErrorKind::kInvalidParameter,
          "dedup resolution must be positive");

  const double N = params.N();
  const double res = opt.dedup_resolution * N;
  const std::vector<double> times = geometric_times(opt.t_min, opt.t_max, opt.times_per_level);

  std::vector<Point> points{eq.point};
  std::vector<int> levels{0};
  std::unordered_map<CellKey, std::size_t> cells{{cell_key(eq.point, res), 0}};
  // A cell is expanded at most once per flow sign.
  std::unordered_set<CellKey> expanded[2];
  std::vector<Point> frontier{eq.point};
  expanded[1].insert(cell_key(eq.point, res));

  for (int level = 1; level <= opt.depth && !frontier.empty(); ++level) {
    const EnvParams& env = (level % 2 == 1) ? params.minus() : params.plus();
    std::vector<std::vector<Point>> children(frontier.size());
    detail::parallel_for(frontier.size(), [&](std::size_t k) {
      auto& out = children[k];
      out.reserve(times.size());
      Point x = frontier[k];
      double t = 0.0;
      for (double target : times) {
        x = flow(env, N, x, target - t, opt.step);
        t = target;
        out.push_back(x);
      }
    });

    std::vector<Point> next;
    auto& next_expanded = expanded[(level + 1) % 2];
    for (const auto& group : children) {
      for (const Point& p : group) {
        require(in_triangle(p, N), ErrorKind::kNumericalInstability, "cloud point left the triangle");
        const CellKey key = cell_key(p, res);
        if (cells.emplace(key, points.size()).second) {
          points.push_back(p);
          levels.push_back(level);
        }
        if (level < opt.depth && next_expanded.insert(key).second) next.push_back(p);
      }
    }
    frontier = std::move(next);
  }

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<CellKey> keys(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) keys[k] = cell_key(points[k], res);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return keys[x] < keys[y]; });

  PointCloud cloud;
  cloud.generation_depth = opt.depth;
  cloud.points.reserve(points.size());
  cloud.levels.reserve(points.size());
  for (std::size_t k : order) {
    cloud.points.push_back(points[k]);
    cloud.levels.push_back(levels[k]);
  }
  std::ostringstream grid;
  grid.precision(17);
  grid << "geometric " << opt.times_per_level << " times in [" << opt.t_min << ", " << opt.t_max
       << "], step " << opt.step << ", dedup " << res;
  cloud.time_grid = grid.str();
  return cloud;
}

PointCloud gamma_cloud(const ModelParams& params, int depth, int times_per_level, double t_max) {
  GammaOptions opt;
  opt.depth = depth;
  opt.times_per_level = times_per_level;
  opt.t_max = t_max;
  return gamma_cloud(params, opt);
}

NearestNeighborIndex::NearestNeighborIndex(std::span<const Point> points) {
  require(!points.empty(), ErrorKind::kInvalidParameter, "point set is empty");
  double s_hi = -std::numeric_limits<double>::infinity(), i_hi = s_hi;
  s_lo_ = i_lo_ = std::numeric_limits<double>::infinity();
  for (const Point& p : points) {
    s_lo_ = std::min(s_lo_, p.s);
    i_lo_ = std::min(i_lo_, p.i);
    s_hi = std::max(s_hi, p.s);
    i_hi = std::max(i_hi, p.i);
  }
  const double span = std::max({s_hi - s_lo_, i_hi - i_lo_, 1e-12});
  // Roughly two points per occupied cell for area-filling sets.
  const double side = std::max(1.0, std::sqrt(static_cast<double>(points.size()) / 2.0));
  cell_ = span / side;
  ns_ = static_cast<long>((s_hi - s_lo_) / cell_) + 1;
  ni_ = static_cast<long>((i_hi - i_lo_) / cell_) + 1;

  std::vector<std::size_t> count(static_cast<std::size_t>(ns_ * ni_) + 1, 0);
  std::vector<std::size_t> cell_of_point(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    const long c = cell_of(points[k].s, s_lo_, ns_) * ni_ + cell_of(points[k].i, i_lo_, ni_);
    cell_of_point[k] = static_cast<std::size_t>(c);
    ++count[c + 1];
  }
  std::partial_sum(count.begin(), count.end(), count.begin());
  cell_start_ = count;
  points_.resize(points.size());
  std::vector<std::size_t> fill(count.begin(), count.end() - 1);
  for (std::size_t k = 0; k < points.size(); ++k) points_[fill[cell_of_point[k]]++] = points[k];
}

long NearestNeighborIndex::cell_of(double v, double lo, long n) const {
  const long c = static_cast<long>(std::floor((v - lo) / cell_));
  return std::clamp(c, 0L, n - 1);
}

double NearestNeighborIndex::nearest_distance(Point q) const {
  const long cs = cell_of(q.s, s_lo_, ns_);
  const long ci = cell_of(q.i, i_lo_, ni_);
  double best2 = std::numeric_limits<double>::infinity();
  const long max_ring = std::max(ns_, ni_);
  for (long r = 0; r <= max_ring; ++r) {
    for (long a = cs - r; a <= cs + r; ++a) {
      if (a < 0 || a >= ns_) continue;
      const bool edge_row = (a == cs - r || a == cs + r);
      for (long b = ci - r; b <= ci + r; b += (edge_row ? 1 : 2 * r)) {
        if (b >= 0 && b < ni_) {
          const std::size_t c = static_cast<std::size_t>(a * ni_ + b);
          for (std::size_t k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
            const double ds = points_[k].s - q.s, di = points_[k].i - q.i;
            best2 = std::min(best2, ds * ds + di * di);
          }
        }
        if (r == 0) break;
      }
    }
    // Points beyond ring r are at least r cells away from q's cell.
    const double reach = static_cast<double>(r) * cell_;
    if (best2 <= reach * reach) break;
  }
  return std::sqrt(best2);
}

bool NearestNeighborIndex::any_within(Point q, double radius) const {
  const long a0 = cell_of(q.s - radius, s_lo_, ns_), a1 = cell_of(q.s + radius, s_lo_, ns_);
  const long b0 = cell_of(q.i - radius, i_lo_, ni_), b1 = cell_of(q.i + radius, i_lo_, ni_);
  const double r2 = radius * radius;
  for (long a = a0; a <= a1; ++a) {
    for (long b = b0; b <= b1; ++b) {
      const std::size_t c = static_cast<std::size_t>(a * ni_ + b);
      for (std::size_t k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
        const double ds = points_[k].s - q.s, di = points_[k].i - q.i;
        if (ds * ds + di * di <= r2) return true;
      }
    }
  }
  return false;
}

double directed_hausdorff(std::span<const Point> from, std::span<const Point> to) {
  require(!from.empty() && !to.empty(), ErrorKind::kInvalidParameter,
          "Hausdorff distance needs nonempty point sets");
  const NearestNeighborIndex index(to);
  std::vector<double> nearest(from.size());
  detail::parallel_for(from.size(), [&](std::size_t k) { nearest[k] = index.nearest_distance(from[k]); });
  return *std::max_element(nearest.begin(), nearest.end());
}

double hausdorff(const PointCloud& a, const PointCloud& b) {
  return std::max(directed_hausdorff(a.points, b.points), directed_hausdorff(b.points, a.points));
}

PointCloud tail_cloud(const Trajectory& traj, double t_from) {
  std::vector<Point> pts;
  for (std::size_t k = 0; k < traj.size(); ++k)
    if (traj.sample_times[k] >= t_from) pts.push_back(traj.points[k]);
  return make_cloud(std::move(pts));
}

std::optional<double> absorption_time(const Trajectory& traj, const PointCloud& cloud,
                                      double tube_radius) {
  require(!cloud.empty(), ErrorKind::kInvalidParameter, "cloud is empty");
  require(traj.size() > 0, ErrorKind::kInvalidParameter, "trajectory is empty");
  const NearestNeighborIndex index(cloud.points);
  std::size_t k = traj.size();
  while (k > 0 && index.any_within(traj.points[k - 1], tube_radius)) --k;
  // Samples [k, size) are inside the tube; k - 1 is the last one outside.
  if (k == traj.size()) return std::nullopt;
  return traj.sample_times[k];
}

std::vector<Point> region_probes(const Region& region, int count) {
  require(count >= 1, ErrorKind::kInvalidParameter, "probe count must be positive");
  if (region.kind() == RegionKind::kNeighborhood && region.metadata().epsilon == 0.0)
    return {region.center()};
  auto halton = [](std::uint64_t index, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    for (; index > 0; index /= base) {
      f /= static_cast<double>(base);
      r += f * static_cast<double>(index % base);
    }
    return r;
  };
  const Region::Box box = region.bounding_box();
  std::vector<Point> probes;
  const std::uint64_t attempts = static_cast<std::uint64_t>(count) * 1000;
  for (std::uint64_t n = 1; n <= attempts && probes.size() < static_cast<std::size_t>(count); ++n) {
    const Point p{box.s_lo + (box.s_hi - box.s_lo) * halton(n, 2),
                  box.i_lo + (box.i_hi - box.i_lo) * halton(n, 3)};
    if (p.s > 0.0 && p.i > 0.0 && region.contains(p)) probes.push_back(p);
  }
  require(!probes.empty(), ErrorKind::kInvalidParameter, "region has no interior probes");
  return probes;
}

double uniform_entry_time(const ModelParams& params, const Region& region_j, double delta2,
                          int probe_count, double step) {
  const Equilibrium eq = equilibrium(params.plus(), params.N());
  require(eq.endemic, ErrorKind::kNotApplicable, "the + system has no positive equilibrium");
  require(delta2 > 0.0, ErrorKind::kInvalidParameter, "delta2 must be positive");
  require(step > 0.0, ErrorKind::kInvalidParameter, "step must be positive");
  const std::vector<Point> probes = region_probes(region_j, probe_count);
  const double N = params.N();

  std::vector<double> entry(probes.size());
  detail::parallel_for(probes.size(), [&](std::size_t k) {
    Point x = probes[k];
    double t = 0.0;
    double entered = distance(x, eq.point) < delta2 ? 0.0 : -1.0;
    while (true) {
      // Entry is accepted after staying for 10x the entry time (at least 1).
      if (entered >= 0.0 && t - entered >= std::max(10.0 * entered, 1.0)) break;
      require(t <= kEntryHorizonCap, ErrorKind::kNumericalInstability,
              "probe did not settle near the + equilibrium within the horizon cap");
      x = rk4_step(params.plus(), N, x, step);
      settle_in_triangle(x, N);
      t += step;
      if (distance(x, eq.point) < delta2) {
        if (entered < 0.0) entered = t;
      } else {
        entered = -1.0;
      }
    }
    entry[k] = entered;
  });
  return *std::max_element(entry.begin(), entry.end());
}

void write_cloud_csv(const PointCloud& cloud, std::ostream& out) {
  using detail::fmt17;
  out << "s,i\n";
  for (const Point& p : cloud.points) out << fmt17(p.s) << ',' << fmt17(p.i) << '\n';
}

}  // namespace sirs
