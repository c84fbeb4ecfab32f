#pragma once

// Experiment orchestration and the on-disk artifacts of a run:
// metrics.csv, trace.json, summary.json and deployment.svg.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mwsn/algorithms.hpp"
#include "mwsn/scenario.hpp"

namespace mwsn {

struct Summary {
  Algorithm algorithm = Algorithm::ccml;
  std::uint64_t seed = 0;
  int iterations = 0;
  double initial_distortion = 0.0;
  double final_distortion = 0.0;
  std::optional<double> best_subgraph_distortion;
  double lifetime = 0.0;
  double lifetime_target = 0.0;
  bool lifetime_met = false;
  double area_coverage = 0.0;
  std::optional<double> target_coverage;
  std::size_t backbone_size = 0;
  std::size_t active_count = 0;
  std::vector<double> spent;
  std::vector<double> budgets;
  std::vector<std::string> warnings;
};

struct ExperimentResult {
  Scenario scenario;  // initial positions resolved
  IterationTrace trace;
  Summary summary;
};

inline Summary summarize(const Problem& p, const Scenario& s, const IterationTrace& trace) {
  const IterationRecord& last = trace.final_state();
  Summary out;
  out.algorithm = trace.algorithm;
  out.seed = s.seed;
  out.iterations = static_cast<int>(trace.iterations.size());
  out.initial_distortion = trace.initial.distortion;
  out.final_distortion = last.distortion;
  out.best_subgraph_distortion = last.best_subgraph_distortion;
  out.lifetime = last.lifetime;
  out.lifetime_target = p.lifetime_target;
  out.lifetime_met = last.lifetime >= p.lifetime_target - 1e-9;
  out.area_coverage = last.area_coverage;
  out.target_coverage = last.target_coverage;
  out.backbone_size = last.backbone.count();
  out.active_count = last.active.count();
  out.spent = last.spent;
  for (std::size_t n = 0; n < p.size(); ++n) out.budgets.push_back(p.movement_budget(n));
  out.warnings = trace.warnings;
  return out;
}

inline ExperimentResult run_experiment(const Scenario& scenario) {
  ExperimentResult result;
  result.scenario = scenario;
  const Problem problem = build_problem(scenario);
  result.scenario.initial_positions = problem.initial_positions();
  result.trace = run_algorithm(scenario.algorithm, problem, scenario.run_options());
  result.summary = summarize(problem, scenario, result.trace);
  return result;
}

// ---------------------------------------------------------------------------
// JSON

inline json to_json(const SensorSet& set) {
  json out = json::array();
  for (std::size_t i = 0; i < set.universe(); ++i) out.push_back(set.contains(i));
  return out;
}

inline json to_json(const IterationRecord& r) {
  json j;
  j["iter"] = r.iteration;
  j["positions"] = points_to_json(r.positions);
  j["active"] = to_json(r.active);
  j["backbone"] = to_json(r.backbone);
  j["distortion"] = r.distortion;
  j["spent"] = r.spent;
  j["lifetime"] = r.lifetime;
  j["area_coverage"] = r.area_coverage;
  if (r.target_coverage) j["target_coverage"] = *r.target_coverage;
  if (r.best_subgraph_distortion) j["best_subgraph_distortion"] = *r.best_subgraph_distortion;
  return j;
}

inline json trace_to_json(const Scenario& s, const IterationTrace& t) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["algorithm"] = std::string(to_string(t.algorithm));
  j["scenario"] = to_json(s);
  j["initial"] = to_json(t.initial);
  json iters = json::array();
  for (const auto& r : t.iterations) iters.push_back(to_json(r));
  j["iterations"] = iters;
  j["warnings"] = t.warnings;
  return j;
}

inline json summary_to_json(const Summary& s) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["algorithm"] = std::string(to_string(s.algorithm));
  j["seed"] = s.seed;
  j["iterations"] = s.iterations;
  j["initial_distortion"] = s.initial_distortion;
  j["final_distortion"] = s.final_distortion;
  j["best_subgraph_distortion"] =
      s.best_subgraph_distortion ? json(*s.best_subgraph_distortion) : json(nullptr);
  j["lifetime"] = s.lifetime;
  j["lifetime_target"] = s.lifetime_target;
  j["lifetime_met"] = s.lifetime_met;
  j["area_coverage"] = s.area_coverage;
  j["target_coverage"] = s.target_coverage ? json(*s.target_coverage) : json(nullptr);
  j["backbone_size"] = s.backbone_size;
  j["active_count"] = s.active_count;
  j["spent"] = s.spent;
  j["budgets"] = s.budgets;
  j["warnings"] = s.warnings;
  return j;
}

namespace detail {

inline SensorSet set_at(const json& v, const std::string& path) {
  if (!v.is_array()) config_fail(path, "expected an array of booleans");
  SensorSet out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (bool_at(v[i], path + "[" + std::to_string(i) + "]")) out.insert(i);
  }
  return out;
}

inline IterationRecord record_at(const json& v, const std::string& path) {
  if (!v.is_object()) config_fail(path, "expected an object");
  auto field = [&](const char* key) -> const json& {
    if (!v.contains(key)) config_fail(path + "." + key, "missing");
    return v[key];
  };
  IterationRecord r;
  r.iteration = static_cast<int>(integer_at(field("iter"), path + ".iter"));
  r.positions = points_at(field("positions"), path + ".positions");
  r.active = set_at(field("active"), path + ".active");
  r.backbone = set_at(field("backbone"), path + ".backbone");
  r.distortion = number_at(field("distortion"), path + ".distortion");
  const json& spent = field("spent");
  if (!spent.is_array()) config_fail(path + ".spent", "expected an array");
  for (std::size_t i = 0; i < spent.size(); ++i) {
    r.spent.push_back(number_at(spent[i], path + ".spent[" + std::to_string(i) + "]"));
  }
  r.lifetime = number_at(field("lifetime"), path + ".lifetime");
  r.area_coverage = number_at(field("area_coverage"), path + ".area_coverage");
  if (v.contains("target_coverage")) r.target_coverage = number_at(v["target_coverage"], path + ".target_coverage");
  if (v.contains("best_subgraph_distortion")) {
    r.best_subgraph_distortion = number_at(v["best_subgraph_distortion"], path + ".best_subgraph_distortion");
  }
  return r;
}

}  // namespace detail

struct LoadedTrace {
  Scenario scenario;
  IterationTrace trace;
};

inline LoadedTrace trace_from_json(const json& j) {
  using namespace detail;
  if (!j.is_object()) config_fail("<root>", "expected an object");
  if (!j.contains("schema_version") || j["schema_version"] != kSchemaVersion) {
    config_fail("schema_version", "expected \"" + std::string(kSchemaVersion) + "\"");
  }
  LoadedTrace out;
  if (!j.contains("scenario")) config_fail("scenario", "missing");
  out.scenario = scenario_from_json(j["scenario"]);
  const std::string name = string_at(j.value("algorithm", json()), "algorithm");
  const auto algorithm = parse_algorithm(name);
  if (!algorithm) config_fail("algorithm", "unknown algorithm '" + name + "'");
  out.trace.algorithm = *algorithm;
  if (!j.contains("initial")) config_fail("initial", "missing");
  out.trace.initial = record_at(j["initial"], "initial");
  if (!j.contains("iterations") || !j["iterations"].is_array()) config_fail("iterations", "expected an array");
  for (std::size_t i = 0; i < j["iterations"].size(); ++i) {
    out.trace.iterations.push_back(record_at(j["iterations"][i], "iterations[" + std::to_string(i) + "]"));
  }
  if (j.contains("warnings")) out.trace.warnings = j["warnings"].get<std::vector<std::string>>();
  return out;
}

inline LoadedTrace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open trace");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError(path.string() + ": malformed JSON");
  return trace_from_json(j);
}

// ---------------------------------------------------------------------------
// Files

inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline constexpr const char* kMetricsHeader =
    "iter,distortion,lifetime,area_coverage,target_coverage,backbone_size,max_energy_spent";

inline std::string metrics_csv(const IterationTrace& t) {
  std::ostringstream out;
  out << kMetricsHeader << '\n';
  for (const auto& r : t.iterations) {
    out << r.iteration << ',' << format_number(r.distortion) << ',' << format_number(r.lifetime)
        << ',' << format_number(r.area_coverage) << ','
        << (r.target_coverage ? format_number(*r.target_coverage) : std::string()) << ','
        << r.backbone.count() << ',' << format_number(r.max_spent()) << '\n';
  }
  return out.str();
}

/// Final deployment: region outline, sensing disks, movement paths,
/// initial (green), active (red) and inactive (black) positions.
inline std::string deployment_svg(const Scenario& s, const IterationTrace& t) {
  const ConvexPolygon poly(s.region);
  const Box box = poly.bounding_box();
  const double margin = 0.1 * std::max(box.width(), box.height());
  const double scale = 300.0;
  const double width = (box.width() + 2 * margin) * scale;
  const double height = (box.height() + 2 * margin) * scale;
  auto sx = [&](double x) { return format_number((x - box.min.x + margin) * scale); };
  auto sy = [&](double y) { return format_number((box.max.y + margin - y) * scale); };

  const IterationRecord& last = t.final_state();
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << format_number(width)
      << "\" height=\"" << format_number(height + 60) << "\">\n";
  out << "  <polygon fill=\"none\" stroke=\"#000000\" stroke-width=\"2\" points=\"";
  for (const Point& v : s.region) out << sx(v.x) << ',' << sy(v.y) << ' ';
  out << "\"/>\n";

  for (std::size_t n = 0; n < last.positions.size(); ++n) {
    const bool active = last.active.contains(n);
    out << "  <circle cx=\"" << sx(last.positions[n].x) << "\" cy=\"" << sy(last.positions[n].y)
        << "\" r=\"" << format_number(s.sensing_radius[n] * scale) << "\" fill=\"none\" stroke=\""
        << (active ? "#1f4fd8" : "#000000") << "\" stroke-width=\"1\"/>\n";
  }
  for (std::size_t n = 0; n < last.positions.size(); ++n) {
    out << "  <polyline fill=\"none\" stroke=\"#1f4fd8\" stroke-width=\"1.5\" points=\"";
    out << sx(t.initial.positions[n].x) << ',' << sy(t.initial.positions[n].y);
    for (const auto& r : t.iterations) out << ' ' << sx(r.positions[n].x) << ',' << sy(r.positions[n].y);
    out << "\"/>\n";
  }
  for (const Point& p : t.initial.positions) {
    out << "  <circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3\" fill=\"#1a9c3a\"/>\n";
  }
  for (std::size_t n = 0; n < last.positions.size(); ++n) {
    out << "  <circle cx=\"" << sx(last.positions[n].x) << "\" cy=\"" << sy(last.positions[n].y)
        << "\" r=\"4\" fill=\"" << (last.active.contains(n) ? "#d81f1f" : "#000000") << "\"/>\n";
  }
  const double legend_y = height + 20;
  const char* labels[][2] = {{"#1a9c3a", "initial"}, {"#d81f1f", "active"}, {"#000000", "inactive"}};
  for (int i = 0; i < 3; ++i) {
    const double x = 20 + 120 * i;
    out << "  <circle cx=\"" << format_number(x) << "\" cy=\"" << format_number(legend_y)
        << "\" r=\"5\" fill=\"" << labels[i][0] << "\"/>\n"
        << "  <text x=\"" << format_number(x + 10) << "\" y=\"" << format_number(legend_y + 5)
        << "\" font-size=\"14\">" << labels[i][1] << "</text>\n";
  }
  out << "  <text x=\"20\" y=\"" << format_number(legend_y + 30) << "\" font-size=\"14\">"
      << to_string(t.algorithm) << " D=" << format_number(last.distortion) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace detail

inline void emit_outputs(const ExperimentResult& result, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error(out_dir.string() + ": " + ec.message());
  detail::write_file(out_dir / "metrics.csv", metrics_csv(result.trace));
  detail::write_file(out_dir / "trace.json", trace_to_json(result.scenario, result.trace).dump(2) + "\n");
  detail::write_file(out_dir / "summary.json", summary_to_json(result.summary).dump(2) + "\n");
  detail::write_file(out_dir / "deployment.svg", deployment_svg(result.scenario, result.trace));
}

}  // namespace mwsn
