// mwsn: deploy, sweep and check for movement-constrained sensor deployment.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "mwsn/experiment.hpp"

namespace fs = std::filesystem;
using namespace mwsn;

namespace {

struct ScenarioFlags {
  std::string preset;
  std::string config;
  std::string algo;
  std::optional<double> lifetime;
  std::optional<double> rc;
  std::optional<std::uint64_t> seed;
  std::optional<int> grid;
  std::optional<int> max_iters;
  std::optional<double> lloyd_alpha;
  bool exact_sweep = false;
  std::string bccml_rule;

  void attach(CLI::App* app, bool with_seed) {
    auto* p = app->add_option("--preset", preset, "built-in scenario: mwsn1, mwsn2, mwsn3");
    auto* c = app->add_option("--config", config, "scenario file (see docs/schema.md)");
    p->excludes(c);
    app->add_option("--algo", algo, "ccml, bccml, dcml or lloyd_alpha");
    app->add_option("--lifetime", lifetime, "required network lifetime");
    app->add_option("--rc", rc, "communication range");
    if (with_seed) app->add_option("--seed", seed, "deployment seed");
    app->add_option("--grid", grid, "quadrature resolution per axis");
    app->add_option("--max-iters", max_iters, "iteration cap");
    app->add_option("--lloyd-alpha", lloyd_alpha, "Lloyd-alpha step fraction");
    app->add_flag("--exact-sweep", exact_sweep, "re-partition before every sensor move");
    app->add_option("--bccml-rule", bccml_rule, "largest_decrease or smallest_decrease");
  }

  Scenario resolve() const {
    Scenario s;
    if (!config.empty()) {
      s = load_scenario(config);
    } else {
      s = preset.empty() ? mwsn::preset("mwsn1") : mwsn::preset(preset);
    }
    if (!algo.empty()) {
      const auto a = parse_algorithm(algo);
      if (!a) throw ConfigError("--algo: unknown algorithm '" + algo + "'");
      s.algorithm = *a;
    }
    if (lifetime) s.lifetime = *lifetime;
    if (rc) s.comm_range = *rc;
    if (seed) s.seed = *seed;
    if (grid) s.grid = *grid;
    if (max_iters) s.max_iters = *max_iters;
    if (lloyd_alpha) s.lloyd_step = *lloyd_alpha;
    if (exact_sweep) s.exact_sweep = true;
    if (bccml_rule == "largest_decrease") {
      s.bccml_rule = BccmlRule::largest_decrease;
    } else if (bccml_rule == "smallest_decrease") {
      s.bccml_rule = BccmlRule::smallest_decrease;
    } else if (!bccml_rule.empty()) {
      throw ConfigError("--bccml-rule: expected largest_decrease or smallest_decrease");
    }
    validate(s);
    return s;
  }
};

std::string describe(const Summary& s) {
  std::ostringstream out;
  out << to_string(s.algorithm) << " seed=" << s.seed << " iters=" << s.iterations
      << " D0=" << format_number(s.initial_distortion) << " D=" << format_number(s.final_distortion);
  if (s.best_subgraph_distortion) out << " D_best=" << format_number(*s.best_subgraph_distortion);
  out << " T=" << format_number(s.lifetime) << (s.lifetime_met ? "" : " (below target)")
      << " backbone=" << s.backbone_size << "/" << s.spent.size()
      << " C_area=" << format_number(s.area_coverage);
  if (s.target_coverage) out << " C_target=" << format_number(*s.target_coverage);
  return out.str();
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    const auto dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        seeds.push_back(std::stoull(item));
      } else {
        const auto lo = std::stoull(item.substr(0, dots));
        const auto hi = std::stoull(item.substr(dots + 2));
        if (hi < lo) throw ConfigError("--seeds: empty range '" + item + "'");
        for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
      }
    } catch (const std::logic_error&) {
      throw ConfigError("--seeds: cannot parse '" + item + "'");
    }
  }
  if (seeds.empty()) throw ConfigError("--seeds: no seeds given");
  return seeds;
}

unsigned worker_count(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("MWSN_THREADS")) {
    const int v = std::atoi(cap);
    if (v >= 1) n = std::min(n, static_cast<unsigned>(v));
  }
  return static_cast<unsigned>(std::min<std::size_t>(n, jobs));
}

int do_deploy(const ScenarioFlags& flags, const std::string& out) {
  const Scenario s = flags.resolve();
  const ExperimentResult result = run_experiment(s);
  emit_outputs(result, out);
  for (const auto& w : result.trace.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << describe(result.summary) << '\n';
  return 0;
}

int do_sweep(const ScenarioFlags& flags, const std::string& seeds_text, const std::string& out) {
  const Scenario base = flags.resolve();
  const auto seeds = parse_seeds(seeds_text);
  std::vector<std::optional<Summary>> summaries(seeds.size());
  std::vector<std::string> errors(seeds.size());
  std::atomic<std::size_t> next{0};
  std::mutex log;

  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        Scenario s = base;
        s.seed = seeds[i];
        s.initial_positions.clear();
        const ExperimentResult result = run_experiment(s);
        emit_outputs(result, fs::path(out) / ("seed_" + std::to_string(seeds[i])));
        summaries[i] = result.summary;
        std::lock_guard lock(log);
        std::cout << describe(result.summary) << std::endl;
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned workers = worker_count(seeds.size());
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "seed,algorithm,iterations,initial_distortion,final_distortion,best_subgraph_distortion,"
         "lifetime,lifetime_met,area_coverage,target_coverage,backbone_size\n";
  int failures = 0;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (!summaries[i]) {
      std::cerr << "seed " << seeds[i] << ": " << errors[i] << '\n';
      ++failures;
      continue;
    }
    const Summary& s = *summaries[i];
    csv << seeds[i] << ',' << to_string(s.algorithm) << ',' << s.iterations << ','
        << format_number(s.initial_distortion) << ',' << format_number(s.final_distortion) << ','
        << (s.best_subgraph_distortion ? format_number(*s.best_subgraph_distortion) : "") << ','
        << format_number(s.lifetime) << ',' << (s.lifetime_met ? 1 : 0) << ','
        << format_number(s.area_coverage) << ','
        << (s.target_coverage ? format_number(*s.target_coverage) : "") << ',' << s.backbone_size << '\n';
  }
  fs::create_directories(out);
  detail::write_file(fs::path(out) / "sweep.csv", csv.str());
  return failures == 0 ? 0 : 1;
}

const char* case_name(ConditionCase c) {
  switch (c) {
    case ConditionCase::centroid_feasible: return "centroid-feasible";
    case ConditionCase::centroid_outside: return "projected";
    case ConditionCase::reactivation: return "reactivation";
  }
  return "?";
}

int do_check(const std::string& trace_path) {
  const LoadedTrace loaded = load_trace(trace_path);
  const Problem problem = build_problem(loaded.scenario);
  const TraceAudit audit = audit_trace(problem, loaded.trace);
  for (const auto& v : audit.violations) std::cout << "invariant: " << v << '\n';
  std::cout << "invariants: " << (audit.ok() ? "ok" : "VIOLATED") << " ("
            << loaded.trace.iterations.size() << " iterations)\n";

  const IterationRecord& last = loaded.trace.final_state();
  const auto reports = check_necessary_conditions(problem, last.positions, last.active);
  std::size_t passed = 0;
  std::size_t geometric = 0;
  for (const auto& r : reports) {
    if (r.pass) {
      ++passed;
    } else {
      if (r.kind != ConditionCase::reactivation) ++geometric;
      std::cout << "sensor " << r.sensor + 1 << ": FAIL " << case_name(r.kind)
                << " deviation=" << format_number(r.deviation) << '\n';
    }
  }
  std::cout << "conditions: " << passed << "/" << reports.size() << " pass, " << geometric
            << " geometric violations\n";
  return audit.ok() && geometric == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Movement-constrained sensor deployment"};
  app.require_subcommand(1);

  ScenarioFlags deploy_flags;
  std::string deploy_out;
  auto* deploy = app.add_subcommand("deploy", "run one optimizer and write its artifacts");
  deploy_flags.attach(deploy, true);
  deploy->add_option("--out", deploy_out, "output directory")->required();

  ScenarioFlags sweep_flags;
  std::string sweep_seeds = "1..10";
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "run one optimizer over several seeds");
  sweep_flags.attach(sweep, false);
  sweep->add_option("--seeds", sweep_seeds, "seed list, e.g. 1..10 or 1,4,9")->capture_default_str();
  sweep->add_option("--out", sweep_out, "output directory")->required();

  std::string trace_path;
  auto* check = app.add_subcommand("check", "audit a recorded trace");
  check->add_option("--trace", trace_path, "trace.json from a deploy run")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (deploy->parsed()) return do_deploy(deploy_flags, deploy_out);
    if (sweep->parsed()) return do_sweep(sweep_flags, sweep_seeds, sweep_out);
    if (check->parsed()) return do_check(trace_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
