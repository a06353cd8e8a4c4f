#include "sirs/switched.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "format.hpp"
#include "sirs/error.hpp"

namespace sirs {

namespace {

void check_spec(const ModelParams& params, const SimulationSpec& spec) {
  require(in_triangle_interior(spec.start, params.N()), ErrorKind::kInvalidParameter,
          "start must lie in the interior of the triangle (s > 0, i > 0, s + i < N)");
  require(std::isfinite(spec.horizon) && spec.horizon > 0.0, ErrorKind::kInvalidParameter,
          "horizon must be positive");
  require(spec.step > 0.0, ErrorKind::kInvalidParameter, "step must be positive");
  require(spec.sample_interval > 0.0, ErrorKind::kInvalidParameter,
          "sample_interval must be positive");
}

}  // namespace

void integrate_switched(const ModelParams& params, const SimulationSpec& spec,
                        const SampleVisitor& visit) {
  check_spec(params, spec);
  const SwitchPath path =
      sample_path(params.rates(), spec.initial_env, spec.horizon, spec.seed);
  const auto& jumps = path.jump_times();
  const double N = params.N();
  const double dt = spec.sample_interval;
  const double tiny = 1e-9 * dt;

  const double expected = spec.horizon / dt + static_cast<double>(jumps.size()) + 2.0;
  require(expected <= static_cast<double>(kMaxSamples), ErrorKind::kInvalidParameter,
          "trajectory would exceed the sample cap; use a coarser sample_interval or "
          "streaming averages");

  EnvState env = spec.initial_env;
  Point x = spec.start;
  double t = 0.0;
  visit(t, env, x, false);

  std::size_t k = 1;
  std::size_t j = 0;
  while (t < spec.horizon) {
    double next_grid = static_cast<double>(k) * dt;
    if (next_grid > spec.horizon - tiny) next_grid = spec.horizon;
    const double next_jump =
        j < jumps.size() ? jumps[j] : std::numeric_limits<double>::infinity();

    double t_next;
    bool is_switch = false;
    if (next_jump <= next_grid + tiny) {
      t_next = next_jump;
      is_switch = true;
      if (next_grid - next_jump <= tiny) ++k;  // grid point absorbed into the jump
    } else {
      t_next = next_grid;
      ++k;
    }

    x = flow(params.env(env), N, x, t_next - t, spec.step);
    t = t_next;
    if (is_switch) {
      env = flip(env);
      ++j;
    }
    visit(t, env, x, is_switch);
  }
}

Trajectory simulate(const ModelParams& params, const SimulationSpec& spec) {
  Trajectory traj{{}, {}, {}, {}, params, spec.seed};
  const std::size_t hint = static_cast<std::size_t>(spec.horizon / spec.sample_interval) + 16;
  traj.sample_times.reserve(hint);
  traj.states.reserve(hint);
  traj.points.reserve(hint);
  integrate_switched(params, spec, [&](double t, EnvState env, Point pt, bool is_switch) {
    if (is_switch) traj.switch_indices.push_back(traj.sample_times.size());
    traj.sample_times.push_back(t);
    traj.states.push_back(env);
    traj.points.push_back(pt);
  });
  return traj;
}

namespace {

// Running trapezoid shared by the stored and the streaming averages so both
// perform the same floating-point operations in the same order.
class TrapezoidAccumulator {
 public:
  explicit TrapezoidAccumulator(const Observable& f) : f_(f) {}

  void push(double t, EnvState state, Point pt) {
    if (started_) {
      integral_ += 0.5 * (f_(prev_pt_, prev_state_) + f_(pt, prev_state_)) * (t - prev_t_);
    } else {
      t0_ = t;
      started_ = true;
    }
    prev_t_ = t;
    prev_state_ = state;
    prev_pt_ = pt;
  }

  double average() const {
    require(started_ && prev_t_ > t0_, ErrorKind::kInvalidParameter,
            "time average needs at least two samples");
    return integral_ / (prev_t_ - t0_);
  }

 private:
  const Observable& f_;
  bool started_ = false;
  double t0_ = 0.0, prev_t_ = 0.0, integral_ = 0.0;
  EnvState prev_state_ = EnvState::kPlus;
  Point prev_pt_;
};

}  // namespace

double time_average(const Trajectory& traj, const Observable& observable) {
  require(traj.size() >= 2, ErrorKind::kInvalidParameter,
          "time average needs at least two samples");
  TrapezoidAccumulator acc(observable);
  for (std::size_t k = 0; k < traj.size(); ++k)
    acc.push(traj.sample_times[k], traj.states[k], traj.points[k]);
  return acc.average();
}

double streaming_time_average(const ModelParams& params, const SimulationSpec& spec,
                              const Observable& observable) {
  TrapezoidAccumulator acc(observable);
  integrate_switched(params, spec, [&](double t, EnvState env, Point pt, bool) {
    acc.push(t, env, pt);
  });
  return acc.average();
}

Observable growth_rate_observable(const ModelParams& params) {
  return [params](Point, EnvState env) {
    const EnvParams& e = params.env(env);
    return e.a * params.N() - e.b;
  };
}

SwitchSamples switch_samples(const Trajectory& traj) {
  SwitchSamples out;
  for (std::size_t n = 0; n < traj.switch_indices.size(); ++n) {
    const Point pt = traj.points[traj.switch_indices[n]];
    // switch_indices[0] is tau_1.
    if (n % 2 == 0) {
      out.odd_switch_points.push_back(pt);
    } else {
      out.even_switch_points.push_back(pt);
    }
  }
  return out;
}

std::vector<double> reconstruct_removed(const Trajectory& traj) {
  std::vector<double> r;
  r.reserve(traj.size());
  const double N = traj.params.N();
  for (const Point& p : traj.points) r.push_back(N - p.s - p.i);
  return r;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  using detail::fmt17;
  out << "t,env,S,I,R,is_switch\n";
  const double N = traj.params.N();
  std::size_t next_switch = 0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    bool is_switch = false;
    if (next_switch < traj.switch_indices.size() && traj.switch_indices[next_switch] == k) {
      is_switch = true;
      ++next_switch;
    }
    const Point& p = traj.points[k];
    // internal_state is an involution, so it also maps back to the caller's labels.
    const EnvState env = traj.params.internal_state(traj.states[k]);
    out << fmt17(traj.sample_times[k]) << ',' << symbol(env) << ','
        << fmt17(p.s) << ',' << fmt17(p.i) << ',' << fmt17(N - p.s - p.i) << ','
        << (is_switch ? 1 : 0) << '\n';
  }
}

}  // namespace sirs
