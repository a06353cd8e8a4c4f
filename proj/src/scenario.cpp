#include "sirs/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "parallel.hpp"
#include "sirs/error.hpp"
#include "sirs/geometry.hpp"
#include "sirs/rng.hpp"
#include "sirs/switched.hpp"
#include "sirs/threshold.hpp"

namespace sirs {

using Json = nlohmann::ordered_json;

namespace {

const std::map<std::string, Analysis>& analysis_names() {
  static const std::map<std::string, Analysis> names{
      {"classify", Analysis::kClassify},     {"simulate", Analysis::kSimulate},
      {"gamma", Analysis::kGamma},           {"stationary", Analysis::kStationary},
      {"regions", Analysis::kRegions},       {"diagnostics", Analysis::kDiagnostics}};
  return names;
}

[[noreturn]] void parse_error(const std::string& path, const std::string& what) {
  fail(ErrorKind::kConfigParse, (path.empty() ? std::string("config") : path) + ": " + what);
}

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

// Reads an object, rejecting keys outside `allowed` and requiring `required`.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path, std::initializer_list<const char*> allowed,
               std::initializer_list<const char*> required = {})
      : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) parse_error(path_, "expected an object");
    for (const auto& [key, value] : j_.items()) {
      if (std::find_if(allowed.begin(), allowed.end(),
                       [&](const char* a) { return key == a; }) == allowed.end())
        parse_error(join(path_, key), "unknown key");
    }
    for (const char* key : required)
      if (!j_.contains(key)) parse_error(join(path_, key), "missing required key");
  }

  bool has(const char* key) const { return j_.contains(key); }
  const Json& at(const char* key) const { return j_.at(key); }
  std::string path(const char* key) const { return join(path_, key); }

  void number(const char* key, double& out) const {
    if (!has(key)) return;
    const Json& v = at(key);
    if (!v.is_number()) parse_error(path(key), "expected a number");
    out = v.get<double>();
  }
  void number(const char* key, std::optional<double>& out) const {
    if (!has(key)) return;
    double v = 0.0;
    number(key, v);
    out = v;
  }
  void integer(const char* key, int& out) const {
    if (!has(key)) return;
    const Json& v = at(key);
    if (!v.is_number_integer()) parse_error(path(key), "expected an integer");
    out = v.get<int>();
  }
  void string(const char* key, std::string& out) const {
    if (!has(key)) return;
    const Json& v = at(key);
    if (!v.is_string()) parse_error(path(key), "expected a string");
    out = v.get<std::string>();
  }

 private:
  const Json& j_;
  std::string path_;
};

EnvParams read_env(const Json& j, const std::string& path) {
  ObjectReader r(j, path, {"a", "b", "c"}, {"a", "b", "c"});
  EnvParams e;
  r.number("a", e.a);
  r.number("b", e.b);
  r.number("c", e.c);
  return e;
}

EnvState read_env_state(const Json& j, const std::string& path) {
  if (j == "+") return EnvState::kPlus;
  if (j == "-") return EnvState::kMinus;
  parse_error(path, "expected \"+\" or \"-\"");
}

Json env_json(const EnvParams& e) { return Json{{"a", e.a}, {"b", e.b}, {"c", e.c}}; }
Json point_json(Point p) { return Json{{"s", p.s}, {"i", p.i}}; }

}  // namespace

const char* to_string(Analysis analysis) {
  for (const auto& [name, a] : analysis_names())
    if (a == analysis) return name.c_str();
  return "unknown";
}

ScenarioConfig parse_config(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    parse_error("", std::string("malformed JSON: ") + e.what());
  }
  ObjectReader top(j, "",
                   {"schema_version", "label", "plus", "minus", "N", "rates", "start",
                    "initial_env", "horizon", "step", "sample_interval", "seed", "replicas",
                    "analyses", "output_dir", "gamma", "stationary", "verdict", "regions",
                    "diagnostics"},
                   {"schema_version", "plus", "minus", "N", "rates", "start"});
  ScenarioConfig c;
  top.integer("schema_version", c.schema_version);
  top.string("label", c.label);
  c.plus = read_env(j.at("plus"), "plus");
  c.minus = read_env(j.at("minus"), "minus");
  top.number("N", c.N);
  {
    ObjectReader r(j.at("rates"), "rates", {"alpha", "beta"}, {"alpha", "beta"});
    r.number("alpha", c.rates.alpha);
    r.number("beta", c.rates.beta);
  }
  {
    ObjectReader r(j.at("start"), "start", {"s", "i"}, {"s", "i"});
    r.number("s", c.start.s);
    r.number("i", c.start.i);
  }
  if (top.has("initial_env")) c.initial_env = read_env_state(j.at("initial_env"), "initial_env");
  top.number("horizon", c.horizon);
  top.number("step", c.step);
  top.number("sample_interval", c.sample_interval);
  if (top.has("seed")) {
    const Json& s = j.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
      parse_error("seed", "expected a nonnegative integer");
    c.seed = s.get<std::uint64_t>();
  }
  top.integer("replicas", c.replicas);
  if (top.has("analyses")) {
    const Json& a = j.at("analyses");
    if (!a.is_array()) parse_error("analyses", "expected an array of analysis names");
    c.analyses.clear();
    for (std::size_t k = 0; k < a.size(); ++k) {
      const std::string p = "analyses[" + std::to_string(k) + "]";
      if (!a[k].is_string()) parse_error(p, "expected a string");
      auto it = analysis_names().find(a[k].get<std::string>());
      if (it == analysis_names().end()) parse_error(p, "unknown analysis");
      c.analyses.insert(it->second);
    }
  }
  if (top.has("output_dir")) {
    std::string dir;
    top.string("output_dir", dir);
    c.output_dir = dir;
  }
  if (top.has("gamma")) {
    ObjectReader r(j.at("gamma"), "gamma",
                   {"depth", "times_per_level", "t_min", "t_max", "step", "dedup_resolution",
                    "tube_radius"});
    r.integer("depth", c.gamma.depth);
    r.integer("times_per_level", c.gamma.times_per_level);
    r.number("t_min", c.gamma.t_min);
    r.number("t_max", c.gamma.t_max);
    r.number("step", c.gamma.step);
    r.number("dedup_resolution", c.gamma.dedup_resolution);
    r.number("tube_radius", c.tube_radius);
  }
  if (top.has("stationary")) {
    ObjectReader r(j.at("stationary"), "stationary",
                   {"bins_s", "bins_i", "burn_in", "binning", "boundary_margin"});
    r.integer("bins_s", c.stationary_bins_s);
    r.integer("bins_i", c.stationary_bins_i);
    r.number("burn_in", c.burn_in);
    r.number("boundary_margin", c.boundary_margin);
    if (r.has("binning")) {
      std::string rule;
      r.string("binning", rule);
      if (rule == "left") {
        c.binning = Binning::kLeftEndpoint;
      } else if (rule == "midpoint") {
        c.binning = Binning::kMidpoint;
      } else {
        parse_error("stationary.binning", "expected \"left\" or \"midpoint\"");
      }
    }
  }
  if (top.has("verdict")) {
    ObjectReader r(j.at("verdict"), "verdict", {"extinction_threshold", "window"});
    r.number("extinction_threshold", c.extinction_threshold);
    r.number("window", c.window);
  }
  if (top.has("regions")) {
    ObjectReader r(j.at("regions"), "regions", {"delta1"});
    r.number("delta1", c.delta1);
  }
  if (top.has("diagnostics")) {
    ObjectReader r(j.at("diagnostics"), "diagnostics", {"entry_probes", "entry_delta2"});
    r.integer("entry_probes", c.entry_probes);
    r.number("entry_delta2", c.entry_delta2);
  }
  return c;
}

std::string serialize_config(const ScenarioConfig& c) {
  Json j;
  j["schema_version"] = c.schema_version;
  if (!c.label.empty()) j["label"] = c.label;
  j["plus"] = env_json(c.plus);
  j["minus"] = env_json(c.minus);
  j["N"] = c.N;
  j["rates"] = {{"alpha", c.rates.alpha}, {"beta", c.rates.beta}};
  j["start"] = point_json(c.start);
  j["initial_env"] = std::string(1, symbol(c.initial_env));
  j["horizon"] = c.horizon;
  j["step"] = c.step;
  j["sample_interval"] = c.sample_interval;
  j["seed"] = c.seed;
  j["replicas"] = c.replicas;
  Json analyses = Json::array();
  for (Analysis a : c.analyses) analyses.push_back(to_string(a));
  j["analyses"] = analyses;
  if (c.output_dir) j["output_dir"] = *c.output_dir;
  j["gamma"] = {{"depth", c.gamma.depth},
                {"times_per_level", c.gamma.times_per_level},
                {"t_min", c.gamma.t_min},
                {"t_max", c.gamma.t_max},
                {"step", c.gamma.step},
                {"dedup_resolution", c.gamma.dedup_resolution},
                {"tube_radius", c.tube_radius}};
  Json st{{"bins_s", c.stationary_bins_s},
          {"bins_i", c.stationary_bins_i},
          {"binning", c.binning == Binning::kMidpoint ? "midpoint" : "left"},
          {"boundary_margin", c.boundary_margin}};
  if (c.burn_in) st["burn_in"] = *c.burn_in;
  j["stationary"] = st;
  Json verdict = Json::object();
  if (c.extinction_threshold) verdict["extinction_threshold"] = *c.extinction_threshold;
  if (c.window) verdict["window"] = *c.window;
  j["verdict"] = verdict;
  Json regions = Json::object();
  if (c.delta1) regions["delta1"] = *c.delta1;
  j["regions"] = regions;
  j["diagnostics"] = {{"entry_probes", c.entry_probes}, {"entry_delta2", c.entry_delta2}};
  return j.dump(2) + "\n";
}

std::vector<Diagnostic> validate(const ScenarioConfig& c) {
  std::vector<Diagnostic> out;
  auto check = [&](bool ok, const std::string& path, const std::string& message) {
    if (!ok) out.push_back({path, message});
  };
  auto positive = [&](double v, const std::string& path) {
    check(std::isfinite(v) && v > 0.0, path, "must be a positive finite number");
  };
  check(c.schema_version == kSchemaVersion, "schema_version",
        "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
  for (auto [env, name] : {std::pair{&c.plus, "plus"}, std::pair{&c.minus, "minus"}}) {
    positive(env->a, std::string(name) + ".a");
    positive(env->b, std::string(name) + ".b");
    positive(env->c, std::string(name) + ".c");
  }
  positive(c.N, "N");
  positive(c.rates.alpha, "rates.alpha");
  positive(c.rates.beta, "rates.beta");
  check(std::isfinite(c.N) && c.N > 0.0 && in_triangle_interior(c.start, c.N), "start",
        "must satisfy s > 0, i > 0 and s + i < N");
  positive(c.horizon, "horizon");
  positive(c.step, "step");
  positive(c.sample_interval, "sample_interval");
  if (c.horizon > 0.0 && c.sample_interval > 0.0)
    check(c.horizon / c.sample_interval <= static_cast<double>(kMaxSamples) / 2.0,
          "sample_interval", "too many samples for the horizon");
  check(c.replicas >= 1, "replicas", "must be at least 1");
  check(!c.analyses.empty(), "analyses", "must request at least one analysis");

  check(c.gamma.depth >= 0 && c.gamma.depth <= 12, "gamma.depth", "must lie in [0, 12]");
  check(c.gamma.times_per_level >= 1, "gamma.times_per_level", "must be at least 1");
  positive(c.gamma.t_min, "gamma.t_min");
  check(c.gamma.t_max >= c.gamma.t_min, "gamma.t_max", "must be at least t_min");
  positive(c.gamma.step, "gamma.step");
  positive(c.gamma.dedup_resolution, "gamma.dedup_resolution");
  positive(c.tube_radius, "gamma.tube_radius");
  check(c.stationary_bins_s >= 1, "stationary.bins_s", "must be at least 1");
  check(c.stationary_bins_i >= 1, "stationary.bins_i", "must be at least 1");
  if (c.burn_in)
    check(*c.burn_in >= 0.0 && *c.burn_in < c.horizon, "stationary.burn_in",
          "must lie in [0, horizon)");
  check(c.boundary_margin > 0.0 && c.boundary_margin < 1.0, "stationary.boundary_margin",
        "must lie in (0, 1)");
  if (c.extinction_threshold) positive(*c.extinction_threshold, "verdict.extinction_threshold");
  if (c.window) {
    positive(*c.window, "verdict.window");
    check(2.0 * *c.window <= c.horizon, "verdict.window", "horizon must be at least 2 windows");
  }
  if (c.delta1) positive(*c.delta1, "regions.delta1");
  check(c.entry_probes >= 1, "diagnostics.entry_probes", "must be at least 1");
  positive(c.entry_delta2, "diagnostics.entry_delta2");

  if (out.empty()) {
    const ModelParams params(c.plus, c.minus, c.N, c.rates);
    const double l = lambda(params);
    const double scale = std::max({params.plus().a * c.N, params.plus().b,
                                   params.minus().a * c.N, params.minus().b});
    check(std::abs(l) > 1e-12 * scale, "plus",
          "lambda vanishes for these parameters; the threshold case is not covered");
  }
  return out;
}

std::vector<std::string> preset_names() { return {"example1", "example2", "example3"}; }

ScenarioConfig preset(const std::string& name) {
  ScenarioConfig c;
  c.N = 100.0;
  c.rates = {1.0, 1.0};
  c.plus = {0.04, 1.0, 0.5};
  c.start = {80.0, 10.0};
  c.seed = 1;
  c.replicas = 4;
  c.analyses = {Analysis::kClassify, Analysis::kSimulate, Analysis::kRegions, Analysis::kGamma,
                Analysis::kStationary, Analysis::kDiagnostics};
  c.gamma.depth = 4;
  if (name == "example1") {
    c.label = "example1: two endemic environments (qualitative reproduction)";
    c.minus = {0.02, 1.0, 0.5};
    c.horizon = 2000.0;
  } else if (name == "example2") {
    c.label = "example2: endemic + and disease-free - (qualitative reproduction)";
    c.minus = {0.008, 1.0, 0.5};
    c.horizon = 2000.0;
  } else if (name == "example3") {
    c.label = "example3: eradication, lambda < 0 (qualitative reproduction)";
    c.plus = {0.012, 1.0, 0.5};
    c.minus = {0.005, 1.0, 0.5};
    c.horizon = 5000.0;
    c.window = 500.0;
    c.extinction_threshold = 1e-6;
  } else {
    fail(ErrorKind::kInvalidParameter, "unknown preset '" + name + "'");
  }
  return c;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) fail(ErrorKind::kIo, "failed writing " + path.string());
}

template <class Writer>
void write_with(const std::filesystem::path& path, Writer&& writer) {
  std::ostringstream buf;
  writer(buf);
  write_file(path, buf.str());
}

struct TailStats {
  double s_min, s_max, s_mean, i_min, i_max, i_mean;
};

TailStats tail_stats(const Trajectory& traj, double from) {
  TailStats t{INFINITY, -INFINITY, 0.0, INFINITY, -INFINITY, 0.0};
  std::size_t n = 0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (traj.sample_times[k] < from) continue;
    const Point& p = traj.points[k];
    t.s_min = std::min(t.s_min, p.s);
    t.s_max = std::max(t.s_max, p.s);
    t.i_min = std::min(t.i_min, p.i);
    t.i_max = std::max(t.i_max, p.i);
    t.s_mean += p.s;
    t.i_mean += p.i;
    ++n;
  }
  t.s_mean /= static_cast<double>(n);
  t.i_mean /= static_cast<double>(n);
  return t;
}

Json report_json(const RegimeReport& r) {
  Json j{{"lambda", r.lambda},
         {"r0_plus", r.r0_plus},
         {"r0_minus", r.r0_minus},
         {"classification", to_string(r.classification)},
         {"labels_swapped", r.labels_swapped}};
  j["predicted_limit"] = r.predicted_limit ? point_json(*r.predicted_limit) : Json(nullptr);
  return j;
}

Json region_json(const Region& r) {
  return Json{{"kind", to_string(r.kind())},
              {"s_min", r.metadata().s_min},
              {"i_min", r.metadata().i_min},
              {"epsilon", r.metadata().epsilon},
              {"k", r.floor().k},
              {"vertices", r.boundary().size()}};
}

}  // namespace

std::string run(const ScenarioConfig& config, const std::string& output_dir) {
  const std::vector<Diagnostic> diags = validate(config);
  if (!diags.empty()) {
    std::string msg = "config failed validation:";
    for (const auto& d : diags) msg += " " + d.path + ": " + d.message + ";";
    fail(ErrorKind::kInvalidParameter, msg);
  }
  namespace fs = std::filesystem;
  const fs::path dir(output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::kIo, "cannot create output directory " + output_dir);

  const ModelParams params(config.plus, config.minus, config.N, config.rates);
  const EnvState env0 = params.internal_state(config.initial_env);
  const auto has = [&](Analysis a) { return config.analyses.count(a) > 0; };
  const double N = params.N();

  Json summary;
  summary["schema_version"] = kSchemaVersion;
  if (!config.label.empty()) summary["label"] = config.label;
  summary["params"] = {{"plus", env_json(config.plus)},
                       {"minus", env_json(config.minus)},
                       {"N", config.N},
                       {"rates", {{"alpha", config.rates.alpha}, {"beta", config.rates.beta}}},
                       {"start", point_json(config.start)},
                       {"initial_env", std::string(1, symbol(config.initial_env))},
                       {"horizon", config.horizon},
                       {"step", config.step},
                       {"sample_interval", config.sample_interval}};
  summary["seed"] = config.seed;
  summary["replicas"] = config.replicas;
  Json analyses = Json::array();
  for (Analysis a : config.analyses) analyses.push_back(to_string(a));
  summary["analyses"] = analyses;

  // Classification always runs first; lambda decides what else is meaningful.
  const RegimeReport report = classify(params);
  summary["lambda"] = report.lambda;
  summary["classification"] = to_string(report.classification);
  summary["report"] = report_json(report);
  summary["environment_labels"] =
      params.labels_swapped() ? "swapped so that b(+)/a(+) <= b(-)/a(-)" : "as given";
  const bool positive = report.lambda > 0.0;
  Json skipped = Json::object();

  const bool need_traj = has(Analysis::kSimulate) || has(Analysis::kGamma) ||
                         has(Analysis::kStationary) || has(Analysis::kDiagnostics);
  std::vector<std::optional<Trajectory>> slots(need_traj ? config.replicas : 0);
  detail::parallel_for(slots.size(), [&](std::size_t r) {
    SimulationSpec spec{config.start, env0, config.horizon, config.step, config.sample_interval,
                        derive_seed(config.seed, r)};
    slots[r] = simulate(params, spec);
  });
  std::vector<Trajectory> runs;
  for (auto& s : slots) runs.push_back(std::move(*s));

  if (has(Analysis::kSimulate)) {
    const double threshold = config.extinction_threshold.value_or(default_extinction_threshold(params));
    const double window = config.window.value_or(default_window(params));
    const Observable growth = growth_rate_observable(params);
    Json reps = Json::array();
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const Trajectory& traj = runs[r];
      write_with(dir / ("trajectory_" + std::to_string(r) + ".csv"),
                 [&](std::ostream& o) { write_trajectory_csv(traj, o); });
      const TailStats t = tail_stats(traj, 0.5 * traj.horizon());
      Json rep{{"replica", r},
               {"seed", traj.seed},
               {"samples", traj.size()},
               {"switches", traj.switch_indices.size()},
               {"growth_rate_average", time_average(traj, growth)},
               {"tail", {{"from", 0.5 * traj.horizon()},
                         {"s_min", t.s_min}, {"s_max", t.s_max}, {"s_mean", t.s_mean},
                         {"i_min", t.i_min}, {"i_max", t.i_max}, {"i_mean", t.i_mean}}}};
      if (2.0 * window <= traj.horizon()) {
        rep["verdict"] = to_string(persistence_verdict(traj, threshold, window));
      } else {
        rep["verdict"] = nullptr;
        skipped["verdict"] = "horizon shorter than two verdict windows";
      }
      reps.push_back(rep);
    }
    Json sim{{"extinction_threshold", threshold}, {"window", window}, {"replicas", reps}};
    if (0.5 * config.horizon > 10.0 * params.rates().mean_holding_time()) {
      const PermanenceBounds b = permanence_bounds(runs, 0.5);
      sim["permanence_bounds"] = {{"tail_fraction", 0.5},
                                  {"i_lower", b.i_lower}, {"i_upper", b.i_upper},
                                  {"s_lower", b.s_lower}, {"s_upper", b.s_upper},
                                  {"i_lower_positive", b.i_lower > 0.0}};
    } else {
      skipped["permanence_bounds"] = "tail shorter than 10 mean holding times";
    }
    summary["simulate"] = sim;
  }

  const double delta1 = config.delta1.value_or(positive ? occupation_floor(params) : 0.0);
  std::optional<Region> region_k_built;
  if (positive) {
    try {
      region_k_built = region_k(params, delta1);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kNotApplicable && e.kind() != ErrorKind::kInvalidParameter) throw;
    }
  }

  if (has(Analysis::kRegions)) {
    std::ostringstream csv;
    csv << "region,s,i\n";
    Json regions = Json::object();
    Json region_skips = Json::object();
    try {
      const Region abcd = quadrangle_abcd(params);
      write_region_csv("ABCD", abcd, csv);
      regions["ABCD"] = region_json(abcd);
      regions["ABCD"]["m"] = choose_s_min(params).m;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kNotApplicable) throw;
      region_skips["ABCD"] = e.what();
    }
    if (!positive) {
      region_skips["G"] = "lambda <= 0";
      region_skips["K"] = "lambda <= 0";
    } else {
      try {
        const Region g = region_g(params, choose_epsilon0(params, delta1));
        write_region_csv("G", g, csv);
        regions["G"] = region_json(g);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kNotApplicable && e.kind() != ErrorKind::kInvalidParameter)
          throw;
        region_skips["G"] = e.what();
      }
      if (region_k_built) {
        write_region_csv("K", *region_k_built, csv);
        regions["K"] = region_json(*region_k_built);
      } else {
        region_skips["K"] = "construction not applicable for these parameters";
      }
    }
    write_file(dir / "regions.csv", csv.str());
    summary["regions"] = {{"delta1", delta1}, {"built", regions}, {"skipped", region_skips}};
  }

  if (has(Analysis::kGamma)) {
    if (!positive) {
      skipped["gamma"] = "lambda <= 0: the limit set is the disease-free equilibrium";
    } else {
      const PointCloud cloud = gamma_cloud(params, config.gamma);
      write_with(dir / "gamma.csv", [&](std::ostream& o) { write_cloud_csv(cloud, o); });
      Json reps = Json::array();
      for (std::size_t r = 0; r < runs.size(); ++r) {
        const auto t = absorption_time(runs[r], cloud, config.tube_radius);
        const double burn = default_burn_in(params, runs[r].horizon());
        Json rep{{"replica", r}};
        rep["absorption_time"] = t ? Json(*t) : Json(nullptr);
        rep["hausdorff_to_tail"] = hausdorff(cloud, tail_cloud(runs[r], burn));
        rep["tail_from"] = burn;
        reps.push_back(rep);
      }
      summary["gamma"] = {{"points", cloud.size()},
                          {"depth", cloud.generation_depth},
                          {"time_grid", cloud.time_grid},
                          {"tube_radius", config.tube_radius},
                          {"replicas", reps}};
    }
  }

  if (has(Analysis::kStationary)) {
    if (!positive) {
      skipped["stationary"] = "lambda <= 0: the occupation measure collapses onto (N, 0)";
    } else {
      const double burn = config.burn_in.value_or(default_burn_in(params, config.horizon));
      if (burn >= config.horizon) {
        skipped["stationary"] = "burn-in covers the whole horizon";
      } else {
        OccupationAccumulator acc(N, config.stationary_bins_s, config.stationary_bins_i);
        double mean_i = 0.0;
        for (const Trajectory& traj : runs) {
          acc.add(traj, burn, std::nullopt, config.binning);
          mean_i += time_average(traj, [](Point p, EnvState) { return p.i; });
        }
        mean_i /= static_cast<double>(runs.size());
        const Histogram h = acc.histogram();
        write_with(dir / "histogram.csv", [&](std::ostream& o) { write_histogram_csv(h, o); });
        const auto pq = stationary_probabilities(params.rates());
        summary["stationary"] = {
            {"burn_in", burn},
            {"bins_s", h.bins_s},
            {"bins_i", h.bins_i},
            {"env_marginal", {{"plus", h.env_marginal(EnvState::kPlus)},
                              {"minus", h.env_marginal(EnvState::kMinus)}}},
            {"stationary_probabilities", {{"p", pq.p}, {"q", pq.q}}},
            {"boundary_margin", config.boundary_margin * N},
            {"boundary_mass", boundary_mass(h, config.boundary_margin * N)},
            {"mean_i", mean_i},
            {"occupation_floor", occupation_floor(params)},
            {"proportional_parameters", is_proportional(params)}};
      }
    }
  }

  if (has(Analysis::kDiagnostics)) {
    Json d = Json::object();
    const double duration = std::min(config.horizon, 100.0);
    const Point coarse = flow(params.plus(), N, config.start, duration, config.step);
    const Point fine = flow(params.plus(), N, config.start, duration, 0.5 * config.step);
    d["step_halving"] = {{"duration", duration}, {"endpoint_change", distance(coarse, fine)}};
    SimulationSpec spec0{config.start, env0, config.horizon, config.step, config.sample_interval,
                         runs.front().seed};
    const Observable growth = growth_rate_observable(params);
    const double stored = time_average(runs.front(), growth);
    const double streamed = streaming_time_average(params, spec0, growth);
    d["streaming_average"] = {{"stored", stored}, {"streamed", streamed},
                              {"abs_difference", std::abs(stored - streamed)}};
    if (region_k_built) {
      const SwitchSamples sw = switch_samples(runs.front());
      std::size_t inside = 0, counted = 0;
      for (std::size_t n = sw.odd_switch_points.size() / 2; n < sw.odd_switch_points.size(); ++n) {
        ++counted;
        if (region_k_built->contains(sw.odd_switch_points[n], 1e-6 * N)) ++inside;
      }
      d["odd_switch_points_in_K"] = {{"examined", counted}, {"inside", inside}};
      try {
        d["uniform_entry_time"] = {
            {"delta2", config.entry_delta2},
            {"probes", config.entry_probes},
            {"T1", uniform_entry_time(params, *region_k_built, config.entry_delta2,
                                      config.entry_probes, config.step)}};
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kNumericalInstability) throw;
        skipped["uniform_entry_time"] = e.what();
      }
    } else {
      skipped["odd_switch_points_in_K"] = "region K not available";
    }
    summary["diagnostics"] = d;
  }

  summary["skipped"] = skipped;
  const std::string text = summary.dump(2) + "\n";
  write_file(dir / "summary.json", text);
  return text;
}

}  // namespace sirs
