#pragma once

// Scenario description, built-in benchmark presets, the key-value config
// format and seeded connected initial deployments.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mwsn/algorithms.hpp"
#include "mwsn/coverage.hpp"
#include "mwsn/density.hpp"
#include "mwsn/geometry.hpp"
#include "mwsn/rng.hpp"

namespace mwsn {

inline constexpr const char* kSchemaVersion = "1";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DensitySpec {
  enum class Kind { uniform, gaussian_mixture, targets };
  Kind kind = Kind::uniform;
  double value = 1.0;
  struct Component {
    Point center;
    double amplitude = 1.0;
    std::optional<double> length_scale;  // defaults to the smallest sensing radius
  };
  std::vector<Component> components;
  std::optional<double> length_scale;  // for Kind::targets
};

struct Scenario {
  std::string name = "custom";
  std::vector<Point> region;
  std::size_t sensor_count = 0;
  std::vector<double> eta;
  std::vector<double> xi;
  std::vector<double> battery;
  std::vector<double> sensing_radius;
  double comm_range = 0.4;
  DensitySpec density;
  std::vector<Target> targets;
  double power = 1.0;
  double lifetime = 1.3;
  int grid = 256;
  int max_iters = 100;
  std::uint64_t seed = 1;
  Algorithm algorithm = Algorithm::ccml;
  double lloyd_step = 0.2;
  StepSchedule dcml_step;
  double tol = 1e-5;
  bool exact_sweep = false;
  int bccml_eval_iters = 10;
  BccmlRule bccml_rule = BccmlRule::largest_decrease;
  std::vector<Point> initial_positions;  // empty: generate from seed

  RunOptions run_options() const {
    RunOptions opt;
    opt.max_iters = max_iters;
    opt.tol = tol;
    opt.exact_sweep = exact_sweep;
    opt.bccml_eval_iters = bccml_eval_iters;
    opt.bccml_rule = bccml_rule;
    opt.dcml_step = dcml_step;
    opt.lloyd_step = lloyd_step;
    return opt;
  }
};

inline std::vector<Point> benchmark_polygon() {
  return {{0.0, 0.0},   {2.125, 0.0}, {2.9325, 1.5}, {2.975, 1.6},
          {2.9325, 1.7}, {2.295, 2.1}, {0.85, 2.3},   {0.17, 1.2}};
}

namespace detail {

/// Value v1 for ids 1..8 and v2 for ids 9..32.
inline std::vector<double> split_groups(double first_eight, double rest) {
  std::vector<double> out(32, rest);
  std::fill_n(out.begin(), 8, first_eight);
  return out;
}

}  // namespace detail

/// Built-in benchmark fleets "mwsn1", "mwsn2", "mwsn3".
inline Scenario preset(std::string_view name) {
  Scenario s;
  s.name = std::string(name);
  s.region = benchmark_polygon();
  s.sensor_count = 32;
  if (name == "mwsn1") {
    s.eta.assign(32, 1.0);
    s.xi.assign(32, 1.0);
    s.sensing_radius.assign(32, 0.2);
    s.battery.assign(32, 2.0);
  } else if (name == "mwsn2" || name == "mwsn3") {
    s.eta = detail::split_groups(1.0, 4.0);
    s.xi = detail::split_groups(2.0, 1.0);
    s.sensing_radius = detail::split_groups(0.3, 0.15);
    s.battery.assign(32, 2.0);
    if (name == "mwsn3") {
      std::fill(s.battery.begin() + 28, s.battery.end(), 0.8);
      const auto field = benchmark_gaussian_field();
      s.density.kind = DensitySpec::Kind::gaussian_mixture;
      for (const auto& c : field.components()) {
        s.density.components.push_back({c.center, c.amplitude, c.length_scale});
      }
    }
  } else {
    throw ConfigError("preset: unknown preset '" + std::string(name) + "'");
  }
  return s;
}

using nlohmann::json;

inline json point_to_json(Point p) { return json::array({p.x, p.y}); }

inline json points_to_json(const std::vector<Point>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(point_to_json(p));
  return out;
}

inline json to_json(const Scenario& s) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = s.name;
  j["region"] = points_to_json(s.region);
  j["sensor_count"] = s.sensor_count;
  j["eta"] = s.eta;
  j["xi"] = s.xi;
  j["battery"] = s.battery;
  j["sensing_radius"] = s.sensing_radius;
  j["comm_range"] = s.comm_range;
  json d;
  switch (s.density.kind) {
    case DensitySpec::Kind::uniform:
      d["kind"] = "uniform";
      d["value"] = s.density.value;
      break;
    case DensitySpec::Kind::gaussian_mixture: {
      d["kind"] = "gaussian_mixture";
      json comps = json::array();
      for (const auto& c : s.density.components) {
        json cj{{"center", point_to_json(c.center)}, {"amplitude", c.amplitude}};
        if (c.length_scale) cj["length_scale"] = *c.length_scale;
        comps.push_back(cj);
      }
      d["components"] = comps;
      break;
    }
    case DensitySpec::Kind::targets:
      d["kind"] = "targets";
      if (s.density.length_scale) d["length_scale"] = *s.density.length_scale;
      break;
  }
  j["density"] = d;
  json targets = json::array();
  for (const auto& t : s.targets) {
    targets.push_back({{"location", point_to_json(t.location)}, {"importance", t.importance}});
  }
  j["targets"] = targets;
  j["power"] = s.power;
  j["lifetime"] = s.lifetime;
  j["grid"] = s.grid;
  j["max_iters"] = s.max_iters;
  j["seed"] = s.seed;
  j["algorithm"] = std::string(to_string(s.algorithm));
  j["lloyd_step"] = s.lloyd_step;
  json step{{"kind", s.dcml_step.kind == StepSchedule::Kind::constant ? "constant" : "proportional"}};
  if (s.dcml_step.value) step["value"] = *s.dcml_step.value;
  j["dcml_step"] = step;
  j["tol"] = s.tol;
  j["exact_sweep"] = s.exact_sweep;
  j["bccml_eval_iters"] = s.bccml_eval_iters;
  j["bccml_rule"] = s.bccml_rule == BccmlRule::largest_decrease ? "largest_decrease" : "smallest_decrease";
  if (!s.initial_positions.empty()) j["initial_positions"] = points_to_json(s.initial_positions);
  return j;
}

namespace detail {

[[noreturn]] inline void config_fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

inline double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) config_fail(path, "expected a number");
  return v.get<double>();
}

inline double positive_at(const json& v, const std::string& path) {
  const double x = number_at(v, path);
  if (!(x > 0.0)) config_fail(path, "expected a positive number");
  return x;
}

inline double non_negative_at(const json& v, const std::string& path) {
  const double x = number_at(v, path);
  if (!(x >= 0.0)) config_fail(path, "expected a non-negative number");
  return x;
}

inline std::int64_t integer_at(const json& v, const std::string& path) {
  if (!v.is_number_integer()) config_fail(path, "expected an integer");
  return v.get<std::int64_t>();
}

inline std::string string_at(const json& v, const std::string& path) {
  if (!v.is_string()) config_fail(path, "expected a string");
  return v.get<std::string>();
}

inline bool bool_at(const json& v, const std::string& path) {
  if (!v.is_boolean()) config_fail(path, "expected true or false");
  return v.get<bool>();
}

inline Point point_at(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) config_fail(path, "expected [x, y]");
  Point p{number_at(v[0], path + "[0]"), number_at(v[1], path + "[1]")};
  if (!is_finite(p)) config_fail(path, "expected finite coordinates");
  return p;
}

inline std::vector<Point> points_at(const json& v, const std::string& path) {
  if (!v.is_array()) config_fail(path, "expected an array of [x, y] points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(point_at(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

/// Per-sensor value: a scalar broadcast, an array of N values, or an array
/// of {"ids": [first, last], "value": v} range rules (1-based, inclusive).
inline std::vector<double> per_sensor_at(const json& v, std::size_t n, const std::string& path) {
  if (v.is_number()) return std::vector<double>(n, v.get<double>());
  if (!v.is_array()) config_fail(path, "expected a number, an array or range rules");
  if (!v.empty() && v[0].is_object()) {
    std::vector<std::optional<double>> slots(n);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string at = path + "[" + std::to_string(i) + "]";
      const json& rule = v[i];
      if (!rule.is_object() || !rule.contains("ids") || !rule.contains("value")) {
        config_fail(at, "expected {\"ids\": [first, last], \"value\": v}");
      }
      const json& ids = rule["ids"];
      if (!ids.is_array() || ids.size() != 2) config_fail(at + ".ids", "expected [first, last]");
      const auto first = integer_at(ids[0], at + ".ids[0]");
      const auto last = integer_at(ids[1], at + ".ids[1]");
      if (first < 1 || last < first || static_cast<std::size_t>(last) > n) {
        config_fail(at + ".ids", "range outside 1.." + std::to_string(n));
      }
      const double value = number_at(rule["value"], at + ".value");
      for (auto id = first; id <= last; ++id) slots[static_cast<std::size_t>(id - 1)] = value;
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) {
      if (!slots[i]) config_fail(path, "sensor " + std::to_string(i + 1) + " not covered by any rule");
      out.push_back(*slots[i]);
    }
    return out;
  }
  if (v.size() != n) config_fail(path, "expected " + std::to_string(n) + " values");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number_at(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline DensitySpec density_at(const json& v, const std::string& path) {
  if (!v.is_object() || !v.contains("kind")) config_fail(path, "expected an object with a kind");
  DensitySpec d;
  const std::string kind = string_at(v["kind"], path + ".kind");
  if (kind == "uniform") {
    d.kind = DensitySpec::Kind::uniform;
    if (v.contains("value")) d.value = positive_at(v["value"], path + ".value");
  } else if (kind == "gaussian_mixture") {
    d.kind = DensitySpec::Kind::gaussian_mixture;
    if (!v.contains("components") || !v["components"].is_array() || v["components"].empty()) {
      config_fail(path + ".components", "expected a non-empty array");
    }
    const json& comps = v["components"];
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const std::string at = path + ".components[" + std::to_string(i) + "]";
      if (!comps[i].is_object() || !comps[i].contains("center")) config_fail(at, "expected an object with a center");
      DensitySpec::Component c;
      c.center = point_at(comps[i]["center"], at + ".center");
      if (comps[i].contains("amplitude")) c.amplitude = positive_at(comps[i]["amplitude"], at + ".amplitude");
      if (comps[i].contains("length_scale")) {
        c.length_scale = positive_at(comps[i]["length_scale"], at + ".length_scale");
      }
      d.components.push_back(c);
    }
  } else if (kind == "targets") {
    d.kind = DensitySpec::Kind::targets;
    if (v.contains("length_scale")) d.length_scale = positive_at(v["length_scale"], path + ".length_scale");
  } else {
    config_fail(path + ".kind", "unknown density kind '" + kind + "'");
  }
  return d;
}

}  // namespace detail

/// Applies the keys of `j` on top of `base`. Unknown keys are rejected.
inline Scenario scenario_from_json(const json& j, Scenario base = {}) {
  using namespace detail;
  if (!j.is_object()) config_fail("<root>", "expected an object");
  static const std::vector<std::string> known = {
      "schema_version", "preset", "name", "region", "sensor_count", "eta", "xi", "battery",
      "sensing_radius", "comm_range", "density", "targets", "power", "lifetime", "grid",
      "max_iters", "seed", "algorithm", "lloyd_step", "dcml_step", "tol", "exact_sweep",
      "bccml_eval_iters", "bccml_rule", "initial_positions"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) config_fail(key, "unknown key");
  }

  Scenario s = std::move(base);
  if (j.contains("preset")) s = preset(string_at(j["preset"], "preset"));
  if (j.contains("schema_version")) {
    const json& v = j["schema_version"];
    const std::string version = v.is_string() ? v.get<std::string>() : v.dump();
    if (version != kSchemaVersion) config_fail("schema_version", "unsupported version " + version);
  }
  if (j.contains("name")) s.name = string_at(j["name"], "name");
  if (j.contains("region")) s.region = points_at(j["region"], "region");
  if (j.contains("sensor_count")) {
    const auto n = integer_at(j["sensor_count"], "sensor_count");
    if (n < 1) config_fail("sensor_count", "expected at least one sensor");
    s.sensor_count = static_cast<std::size_t>(n);
  }
  auto resolve = [&](const char* key, std::vector<double>& field) {
    if (j.contains(key)) {
      field = per_sensor_at(j[key], s.sensor_count, key);
    } else if (field.size() != s.sensor_count) {
      const bool uniform = !field.empty() && std::all_of(field.begin(), field.end(),
                                                         [&](double x) { return x == field[0]; });
      if (!uniform) config_fail(key, "expected " + std::to_string(s.sensor_count) + " values");
      field.assign(s.sensor_count, field[0]);
    }
  };
  resolve("eta", s.eta);
  resolve("xi", s.xi);
  resolve("battery", s.battery);
  resolve("sensing_radius", s.sensing_radius);
  if (j.contains("comm_range")) s.comm_range = positive_at(j["comm_range"], "comm_range");
  if (j.contains("density")) s.density = density_at(j["density"], "density");
  if (j.contains("targets")) {
    const json& v = j["targets"];
    if (!v.is_array()) config_fail("targets", "expected an array");
    s.targets.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string at = "targets[" + std::to_string(i) + "]";
      Target t;
      if (v[i].is_array()) {
        t.location = point_at(v[i], at);
      } else if (v[i].is_object() && v[i].contains("location")) {
        t.location = point_at(v[i]["location"], at + ".location");
        if (v[i].contains("importance")) t.importance = positive_at(v[i]["importance"], at + ".importance");
      } else {
        config_fail(at, "expected [x, y] or {\"location\": [x, y], \"importance\": a}");
      }
      s.targets.push_back(t);
    }
  }
  if (j.contains("power")) s.power = positive_at(j["power"], "power");
  if (j.contains("lifetime")) s.lifetime = non_negative_at(j["lifetime"], "lifetime");
  if (j.contains("grid")) s.grid = static_cast<int>(integer_at(j["grid"], "grid"));
  if (j.contains("max_iters")) s.max_iters = static_cast<int>(integer_at(j["max_iters"], "max_iters"));
  if (j.contains("seed")) {
    const json& v = j["seed"];
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      config_fail("seed", "expected a non-negative integer");
    }
    s.seed = v.get<std::uint64_t>();
  }
  if (j.contains("algorithm")) {
    const std::string name = string_at(j["algorithm"], "algorithm");
    const auto a = parse_algorithm(name);
    if (!a) config_fail("algorithm", "unknown algorithm '" + name + "'");
    s.algorithm = *a;
  }
  if (j.contains("lloyd_step")) s.lloyd_step = non_negative_at(j["lloyd_step"], "lloyd_step");
  if (j.contains("dcml_step")) {
    const json& v = j["dcml_step"];
    if (!v.is_object() || !v.contains("kind")) config_fail("dcml_step", "expected an object with a kind");
    const std::string kind = string_at(v["kind"], "dcml_step.kind");
    if (kind == "constant") {
      s.dcml_step.kind = StepSchedule::Kind::constant;
    } else if (kind == "proportional") {
      s.dcml_step.kind = StepSchedule::Kind::proportional;
    } else {
      config_fail("dcml_step.kind", "expected constant or proportional");
    }
    s.dcml_step.value.reset();
    if (v.contains("value")) s.dcml_step.value = positive_at(v["value"], "dcml_step.value");
  }
  if (j.contains("tol")) s.tol = positive_at(j["tol"], "tol");
  if (j.contains("exact_sweep")) s.exact_sweep = bool_at(j["exact_sweep"], "exact_sweep");
  if (j.contains("bccml_eval_iters")) {
    s.bccml_eval_iters = static_cast<int>(integer_at(j["bccml_eval_iters"], "bccml_eval_iters"));
  }
  if (j.contains("bccml_rule")) {
    const std::string rule = string_at(j["bccml_rule"], "bccml_rule");
    if (rule == "largest_decrease") {
      s.bccml_rule = BccmlRule::largest_decrease;
    } else if (rule == "smallest_decrease") {
      s.bccml_rule = BccmlRule::smallest_decrease;
    } else {
      config_fail("bccml_rule", "expected largest_decrease or smallest_decrease");
    }
  }
  if (j.contains("initial_positions")) {
    s.initial_positions = points_at(j["initial_positions"], "initial_positions");
  }
  return s;
}

/// Throws ConfigError naming the first offending key.
inline void validate(const Scenario& s) {
  using detail::config_fail;
  try {
    ConvexPolygon poly(s.region);
  } catch (const GeometryError& e) {
    config_fail("region", e.what());
  }
  const ConvexPolygon poly(s.region);
  if (s.sensor_count < 1) config_fail("sensor_count", "expected at least one sensor");
  auto check_vector = [&](const char* key, const std::vector<double>& v, bool allow_zero) {
    if (v.size() != s.sensor_count) config_fail(key, "expected " + std::to_string(s.sensor_count) + " values");
    for (std::size_t i = 0; i < v.size(); ++i) {
      const bool ok = std::isfinite(v[i]) && (allow_zero ? v[i] >= 0.0 : v[i] > 0.0);
      if (!ok) config_fail(std::string(key) + "[" + std::to_string(i) + "]", "expected a positive value");
    }
  };
  check_vector("eta", s.eta, false);
  check_vector("xi", s.xi, false);
  check_vector("battery", s.battery, true);
  check_vector("sensing_radius", s.sensing_radius, false);
  if (!(s.comm_range > 0.0)) config_fail("comm_range", "expected a positive number");
  if (!(s.power > 0.0)) config_fail("power", "expected a positive number");
  if (!(s.lifetime >= 0.0)) config_fail("lifetime", "expected a non-negative number");
  if (s.grid < 8) config_fail("grid", "resolution must be at least 8");
  if (s.max_iters < 0) config_fail("max_iters", "expected a non-negative integer");
  if (s.lloyd_step > 1.0) config_fail("lloyd_step", "expected a value in [0, 1]");
  if (s.bccml_eval_iters < 1) config_fail("bccml_eval_iters", "expected a positive integer");
  for (std::size_t i = 0; i < s.targets.size(); ++i) {
    if (!poly.contains(s.targets[i].location, kMembershipTolerance)) {
      config_fail("targets[" + std::to_string(i) + "]", "target lies outside the region");
    }
  }
  if (s.density.kind == DensitySpec::Kind::targets && s.targets.empty()) {
    config_fail("density.kind", "targets density needs a non-empty target set");
  }
  if (!s.initial_positions.empty()) {
    if (s.initial_positions.size() != s.sensor_count) {
      config_fail("initial_positions", "expected " + std::to_string(s.sensor_count) + " positions");
    }
    for (std::size_t i = 0; i < s.initial_positions.size(); ++i) {
      if (!poly.contains(s.initial_positions[i], kMembershipTolerance)) {
        config_fail("initial_positions[" + std::to_string(i) + "]", "position lies outside the region");
      }
    }
  }
}

/// Parses the flat `key = value` format: one assignment per line, `#`
/// comments, dotted keys for nesting, JSON literals as values (bare words
/// are read as strings). A `preset` line seeds every other key.
inline Scenario parse_scenario(std::string_view text) {
  json doc = json::object();
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string raw = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": missing key");
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) {
      const bool bare = !raw.empty() && std::all_of(raw.begin(), raw.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
      });
      if (!bare) throw ConfigError(key + ": malformed value on line " + std::to_string(line_no));
      value = raw;
    }
    json* slot = &doc;
    std::size_t start = 0;
    while (true) {
      const auto dot = key.find('.', start);
      const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
      if (dot == std::string::npos) {
        (*slot)[part] = value;
        break;
      }
      slot = &(*slot)[part];
      if (!slot->is_object()) *slot = json::object();
      start = dot + 1;
    }
  }
  Scenario s = scenario_from_json(doc);
  validate(s);
  return s;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open scenario file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

/// Sequential uniform sampling over the region, keeping a node only if it
/// lies within communication range of a node already kept.
inline std::vector<Point> generate_initial_deployment(const Scenario& s, std::uint64_t seed) {
  const ConvexPolygon poly(s.region);
  const Box box = poly.bounding_box();
  Xoshiro256 rng(seed);
  auto sample = [&]() {
    for (;;) {
      const double x = box.min.x + rng.uniform() * box.width();
      const double y = box.min.y + rng.uniform() * box.height();
      const Point q{x, y};
      if (poly.contains(q)) return q;
    }
  };
  std::vector<Point> out;
  out.reserve(s.sensor_count);
  if (s.sensor_count == 0) return out;
  out.push_back(sample());
  constexpr long kMaxRejections = 1'000'000;
  while (out.size() < s.sensor_count) {
    long rejections = 0;
    for (;;) {
      const Point q = sample();
      const bool connects = std::any_of(out.begin(), out.end(),
                                        [&](Point p) { return linked(p, q, s.comm_range); });
      if (connects) {
        out.push_back(q);
        break;
      }
      if (++rejections > kMaxRejections) {
        throw ScenarioError("could not place sensor " + std::to_string(out.size() + 1) +
                            " within communication range; range too small");
      }
    }
  }
  return out;
}

inline DensityField make_density(const Scenario& s) {
  const double smallest_radius = *std::min_element(s.sensing_radius.begin(), s.sensing_radius.end());
  switch (s.density.kind) {
    case DensitySpec::Kind::uniform:
      return DensityField::uniform(s.density.value);
    case DensitySpec::Kind::gaussian_mixture: {
      std::vector<GaussianComponent> comps;
      for (const auto& c : s.density.components) {
        comps.push_back({c.center, c.amplitude, c.length_scale.value_or(smallest_radius)});
      }
      return DensityField::gaussian_mixture(std::move(comps));
    }
    case DensitySpec::Kind::targets:
      return gaussian_density_from_targets(s.targets, s.density.length_scale.value_or(smallest_radius));
  }
  throw ConfigError("density: unknown kind");
}

/// Resolves the scenario into an optimizer problem. Initial positions come
/// from the scenario when present, otherwise from the seeded generator.
inline Problem build_problem(const Scenario& s) {
  validate(s);
  const std::vector<Point> start =
      s.initial_positions.empty() ? generate_initial_deployment(s, s.seed) : s.initial_positions;
  std::vector<Sensor> sensors;
  for (std::size_t n = 0; n < s.sensor_count; ++n) {
    sensors.push_back({start[n], start[n], s.eta[n], s.xi[n], s.battery[n], s.sensing_radius[n]});
  }
  return Problem(ConvexPolygon(s.region), s.grid, make_density(s), std::move(sensors), s.comm_range,
                 s.power, s.lifetime, s.targets);
}

}  // namespace mwsn
