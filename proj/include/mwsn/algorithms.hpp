#pragma once

// Deployment optimizers (CCML, BCCML, DCML, Lloyd-alpha), energy
// accounting, achieved lifetime and the optimality-condition checker.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mwsn/connectivity.hpp"
#include "mwsn/coverage.hpp"
#include "mwsn/density.hpp"
#include "mwsn/geometry.hpp"
#include "mwsn/partition.hpp"

namespace mwsn {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kEnergySlack = 1e-9;

/// Everything an optimizer needs: region, quadrature, fleet and the
/// lifetime requirement.
struct Problem {
  ConvexPolygon region;
  IntegrationGrid grid;
  std::vector<double> masses;
  std::vector<Sensor> sensors;
  double comm_range = 0.0;
  double power = 1.0;            // post-relocation power draw
  double lifetime_target = 0.0;  // required network lifetime
  std::vector<Target> targets;

  Problem(ConvexPolygon region_, int grid_resolution, const DensityField& density,
          std::vector<Sensor> sensors_, double comm_range_, double power_,
          double lifetime_target_, std::vector<Target> targets_ = {})
      : region(std::move(region_)),
        grid(build_grid(region, grid_resolution)),
        masses(cell_masses(grid, density)),
        sensors(std::move(sensors_)),
        comm_range(comm_range_),
        power(power_),
        lifetime_target(lifetime_target_),
        targets(std::move(targets_)) {
    if (sensors.empty()) throw ScenarioError("problem needs at least one sensor");
  }

  std::size_t size() const { return sensors.size(); }

  /// gamma_n = e_n - power * T.
  double movement_budget(std::size_t n) const {
    return sensors[n].battery - power * lifetime_target;
  }

  std::vector<double> etas() const { return etas_of(sensors); }

  std::vector<double> sensing_radii() const {
    std::vector<double> out;
    for (const auto& s : sensors) out.push_back(s.sensing_radius);
    return out;
  }

  std::vector<Point> initial_positions() const {
    std::vector<Point> out;
    for (const auto& s : sensors) out.push_back(s.initial);
    return out;
  }
};

inline double movement_energy(double xi, Point a, Point b) { return xi * distance(a, b); }

/// min over active sensors of (e_n - spent_n) / power.
inline double achieved_lifetime(std::span<const Sensor> sensors, std::span<const double> spent,
                                const SensorSet& active, double power) {
  double out = std::numeric_limits<double>::infinity();
  for (std::size_t n : active.members()) {
    out = std::min(out, (sensors[n].battery - spent[n]) / power);
  }
  return out;
}

enum class Algorithm { ccml, bccml, dcml, lloyd_alpha };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::ccml: return "ccml";
    case Algorithm::bccml: return "bccml";
    case Algorithm::dcml: return "dcml";
    case Algorithm::lloyd_alpha: return "lloyd_alpha";
  }
  return "unknown";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view s) {
  for (Algorithm a : {Algorithm::ccml, Algorithm::bccml, Algorithm::dcml, Algorithm::lloyd_alpha}) {
    if (s == to_string(a)) return a;
  }
  return std::nullopt;
}

enum class BccmlRule { largest_decrease, smallest_decrease };

/// Per-iteration step bound d_n^k for DCML.
struct StepSchedule {
  enum class Kind { constant, proportional };
  Kind kind = Kind::constant;
  std::optional<double> value;  // constant: d (default R_c / 2); proportional: alpha

  double bound(Point position, Point centroid, double comm_range) const {
    if (kind == Kind::proportional) return value.value_or(1.0) * distance(position, centroid);
    return value.value_or(0.5 * comm_range);
  }
};

struct RunOptions {
  int max_iters = 100;
  double tol = 1e-5;
  bool exact_sweep = false;
  int bccml_eval_iters = 10;
  BccmlRule bccml_rule = BccmlRule::largest_decrease;
  StepSchedule dcml_step;
  double lloyd_step = 0.2;
};

struct IterationRecord {
  int iteration = 0;
  std::vector<Point> positions;
  SensorSet active;    // sensors the algorithm is using
  SensorSet backbone;  // active sensors reachable from the access point
  double distortion = 0.0;
  std::vector<double> spent;
  double lifetime = 0.0;
  double area_coverage = 0.0;
  std::optional<double> target_coverage;
  std::optional<double> best_subgraph_distortion;

  double max_spent() const {
    return spent.empty() ? 0.0 : *std::max_element(spent.begin(), spent.end());
  }
};

struct IterationTrace {
  Algorithm algorithm = Algorithm::ccml;
  IterationRecord initial;
  std::vector<IterationRecord> iterations;
  std::vector<std::string> warnings;

  const IterationRecord& final_state() const {
    return iterations.empty() ? initial : iterations.back();
  }
};

/// Lowest distortion among the connected sub-graphs of `within`, each
/// sub-graph partitioning the whole region on its own.
inline double best_subgraph_distortion(const Problem& p, std::span<const Point> positions,
                                       const SensorSet& within) {
  const auto eta = p.etas();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& part : components(positions, within, p.comm_range)) {
    SensorSet s(p.size());
    for (std::size_t n : part) s.insert(n);
    best = std::min(best, distortion(positions, eta, s, p.grid, p.masses));
  }
  return best;
}

inline IterationRecord make_record(const Problem& p, int iteration, std::vector<Point> positions,
                                   SensorSet active, std::vector<double> spent,
                                   bool with_best_subgraph = false) {
  IterationRecord r;
  r.iteration = iteration;
  r.backbone = backbone(positions, p.comm_range, active);
  const auto eta = p.etas();
  const auto radii = p.sensing_radii();
  r.distortion = distortion(positions, eta, r.backbone, p.grid, p.masses);
  r.lifetime = achieved_lifetime(p.sensors, spent, active, p.power);
  r.area_coverage = area_coverage(positions, radii, r.backbone, p.grid);
  if (!p.targets.empty()) r.target_coverage = target_coverage(positions, radii, r.backbone, p.targets);
  if (with_best_subgraph) r.best_subgraph_distortion = best_subgraph_distortion(p, positions, active);
  r.positions = std::move(positions);
  r.active = std::move(active);
  r.spent = std::move(spent);
  return r;
}

namespace detail {

inline void require_connected(const Problem& p) {
  const auto start = p.initial_positions();
  if (!backbone(start, p.comm_range).full()) {
    throw ScenarioError("initial deployment is not fully connected");
  }
}

inline std::vector<double> point_to_point_spent(const Problem& p, std::span<const Point> positions) {
  std::vector<double> spent(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) {
    spent[n] = movement_energy(p.sensors[n].xi, p.sensors[n].initial, positions[n]);
  }
  return spent;
}

/// One CCML sweep: partition, then move each active sensor in ascending
/// order to the point of its approximate feasible region nearest its
/// centroid. Returns the largest displacement.
inline double ccml_sweep(const Problem& p, std::vector<Point>& positions, const SensorSet& active,
                         std::span<const double> reach, bool exact_sweep) {
  const auto eta = p.etas();
  auto moments = cell_moments(assign_mwvd(positions, eta, active, p.grid), p.masses, p.grid, positions);
  double max_move = 0.0;
  bool first = true;
  for (std::size_t n : active.members()) {
    if (exact_sweep && !first) {
      moments = cell_moments(assign_mwvd(positions, eta, active, p.grid), p.masses, p.grid, positions);
    }
    first = false;
    // Projection candidates pass a membership test with slack, so the budget
    // disk is shrunk by that slack; a sensor with less reach than that stays.
    if (reach[n] <= kMembershipTolerance) continue;
    const DiskRegion region = approx_feasible_region(n, positions, active, p.comm_range,
                                                     p.sensors[n].initial,
                                                     reach[n] - kMembershipTolerance);
    const auto moved = project_to_disk_region(moments[n].centroid, region, positions[n], p.region);
    max_move = std::max(max_move, distance(moved.point, positions[n]));
    positions[n] = moved.point;
  }
  return max_move;
}

struct PhaseResult {
  int iterations = 0;
  bool converged = false;
};

inline PhaseResult ccml_phase(const Problem& p, std::vector<Point>& positions,
                              const SensorSet& active, std::span<const double> reach,
                              const RunOptions& opt, int budget, int first_index,
                              std::vector<IterationRecord>& out) {
  PhaseResult result;
  while (result.iterations < budget) {
    const double moved = ccml_sweep(p, positions, active, reach, opt.exact_sweep);
    ++result.iterations;
    out.push_back(make_record(p, first_index + result.iterations, positions, active,
                              point_to_point_spent(p, positions)));
    if (moved < opt.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace detail

/// Centralized constrained-movement Lloyd: every sensor stays in the
/// backbone and within gamma_n / xi_n of its start.
inline IterationTrace run_ccml(const Problem& p, const RunOptions& opt) {
  detail::require_connected(p);
  std::vector<double> reach(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double gamma = p.movement_budget(n);
    if (gamma < 0.0) {
      throw ScenarioError("sensor " + std::to_string(n + 1) +
                          " cannot meet the lifetime target (negative movement budget)");
    }
    reach[n] = gamma / p.sensors[n].xi;
  }
  IterationTrace trace;
  trace.algorithm = Algorithm::ccml;
  std::vector<Point> positions = p.initial_positions();
  const SensorSet active = SensorSet::all(p.size());
  trace.initial = make_record(p, 0, positions, active, std::vector<double>(p.size(), 0.0));
  detail::ccml_phase(p, positions, active, reach, opt, opt.max_iters, 0, trace.iterations);
  return trace;
}

/// Leaf sensors of `active` that exhausted their budget while a neighbor
/// still has slack. The access point is never a candidate.
inline std::vector<std::size_t> bottleneck_candidates(const Problem& p,
                                                      std::span<const Point> positions,
                                                      const SensorSet& active) {
  const auto spent = detail::point_to_point_spent(p, positions);
  auto tol = [&](std::size_t n) { return 1e-6 * std::abs(p.movement_budget(n)); };
  std::vector<std::size_t> out;
  for (std::size_t n : active.members()) {
    if (n == 0) continue;
    if (components_excluding(active, n, positions, p.comm_range).size() != 1) continue;
    if (spent[n] < p.movement_budget(n) - tol(n)) continue;
    const auto near = neighbors(n, positions, active, p.comm_range);
    const bool slack = std::any_of(near.begin(), near.end(), [&](std::size_t m) {
      return spent[m] < p.movement_budget(m) - tol(m);
    });
    if (slack) out.push_back(n);
  }
  return out;
}

/// Backward-stepwise CCML. Sensors with a negative budget are excluded up
/// front; afterwards the algorithm alternates CCML phases with trial
/// removals of bottleneck sensors, committing the removal chosen by
/// `opt.bccml_rule` among those that strictly lower the distortion. The
/// recorded trace (committed trials included) is capped at `opt.max_iters`.
inline IterationTrace run_bccml(const Problem& p, const RunOptions& opt) {
  detail::require_connected(p);
  IterationTrace trace;
  trace.algorithm = Algorithm::bccml;
  std::vector<Point> positions = p.initial_positions();
  trace.initial = make_record(p, 0, positions, SensorSet::all(p.size()),
                              std::vector<double>(p.size(), 0.0));

  SensorSet active = SensorSet::all(p.size());
  std::vector<double> reach(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double gamma = p.movement_budget(n);
    reach[n] = std::max(0.0, gamma) / p.sensors[n].xi;
    if (gamma < 0.0) {
      if (n == 0) throw ScenarioError("access point cannot meet the lifetime target");
      active.erase(n);
      trace.warnings.push_back("sensor " + std::to_string(n + 1) +
                               " has a negative movement budget and is excluded");
    }
  }
  const SensorSet reachable = backbone(positions, p.comm_range, active);
  for (std::size_t n : active.members()) {
    if (!reachable.contains(n)) {
      active.erase(n);
      trace.warnings.push_back("sensor " + std::to_string(n + 1) +
                               " is cut off from the access point after exclusions");
    }
  }

  const auto eta = p.etas();
  int used = 0;
  while (used < opt.max_iters) {
    used += detail::ccml_phase(p, positions, active, reach, opt, opt.max_iters - used, used,
                               trace.iterations)
                .iterations;
    const int remaining = opt.max_iters - used;
    if (remaining <= 0) break;
    const auto candidates = bottleneck_candidates(p, positions, active);
    if (candidates.empty()) break;

    const double current = distortion(positions, eta, active, p.grid, p.masses);
    struct Trial {
      std::size_t sensor;
      double decrease;
      std::vector<Point> positions;
      std::vector<IterationRecord> records;
    };
    std::optional<Trial> chosen;
    for (std::size_t c : candidates) {
      SensorSet reduced = active;
      reduced.erase(c);
      Trial trial{c, 0.0, positions, {}};
      detail::ccml_phase(p, trial.positions, reduced, reach, opt,
                         std::min(opt.bccml_eval_iters, remaining), used, trial.records);
      trial.decrease = current - distortion(trial.positions, eta, reduced, p.grid, p.masses);
      if (!(trial.decrease > 0.0)) continue;
      const bool better = !chosen || (opt.bccml_rule == BccmlRule::largest_decrease
                                          ? trial.decrease > chosen->decrease
                                          : trial.decrease < chosen->decrease);
      if (better) chosen = std::move(trial);
    }
    if (!chosen) break;

    active.erase(chosen->sensor);
    positions = std::move(chosen->positions);
    used += static_cast<int>(chosen->records.size());
    trace.iterations.insert(trace.iterations.end(), chosen->records.begin(), chosen->records.end());
    trace.warnings.push_back("sensor " + std::to_string(chosen->sensor + 1) +
                             " deactivated as a bottleneck");
  }
  return trace;
}

/// Distributed constrained-movement Lloyd: all sensors move simultaneously
/// inside their semi-feasible regions, debiting path energy.
inline IterationTrace run_dcml(const Problem& p, const RunOptions& opt) {
  detail::require_connected(p);
  std::vector<double> gamma(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) {
    gamma[n] = p.movement_budget(n);
    if (gamma[n] < 0.0) {
      throw ScenarioError("sensor " + std::to_string(n + 1) +
                          " cannot meet the lifetime target (negative movement budget)");
    }
  }
  IterationTrace trace;
  trace.algorithm = Algorithm::dcml;
  std::vector<Point> positions = p.initial_positions();
  const SensorSet everyone = SensorSet::all(p.size());
  std::vector<double> spent(p.size(), 0.0);
  trace.initial = make_record(p, 0, positions, everyone, spent);

  const auto eta = p.etas();
  for (int k = 1; k <= opt.max_iters; ++k) {
    const auto moments =
        cell_moments(assign_mwvd(positions, eta, everyone, p.grid), p.masses, p.grid, positions);
    const auto tree = euclidean_mst(positions, p.comm_range);
    std::vector<Point> next = positions;
    double max_move = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
      const double xi = p.sensors[n].xi;
      const double residual = std::max(0.0, gamma[n] - spent[n]);
      if (residual / xi <= kMembershipTolerance) continue;  // same slack as in ccml_sweep
      const double cap = opt.dcml_step.bound(positions[n], moments[n].centroid, p.comm_range);
      const DiskRegion region = semi_feasible_region(n, positions, tree, p.comm_range,
                                                     residual - xi * kMembershipTolerance, cap, xi);
      next[n] = project_to_disk_region(moments[n].centroid, region, positions[n], p.region).point;
      max_move = std::max(max_move, distance(next[n], positions[n]));
    }
    for (std::size_t n = 0; n < p.size(); ++n) {
      spent[n] += movement_energy(p.sensors[n].xi, positions[n], next[n]);
    }
    positions = std::move(next);
    trace.iterations.push_back(make_record(p, k, positions, everyone, spent));
    if (max_move < opt.tol) break;
  }
  return trace;
}

/// Lloyd-alpha baseline: unconstrained Lloyd steps scaled by alpha,
/// truncated once a sensor's path energy reaches its budget. Connectivity
/// is ignored; records carry both backbone and best-subgraph distortion.
inline IterationTrace run_lloyd_alpha(const Problem& p, const RunOptions& opt) {
  if (!(opt.lloyd_step >= 0.0 && opt.lloyd_step <= 1.0)) {
    throw ScenarioError("lloyd step must lie in [0, 1]");
  }
  IterationTrace trace;
  trace.algorithm = Algorithm::lloyd_alpha;
  std::vector<double> gamma(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) {
    gamma[n] = p.movement_budget(n);
    if (gamma[n] < 0.0) {
      trace.warnings.push_back("sensor " + std::to_string(n + 1) +
                               " cannot meet the lifetime target (negative movement budget)");
    }
  }
  std::vector<Point> positions = p.initial_positions();
  const SensorSet everyone = SensorSet::all(p.size());
  std::vector<double> spent(p.size(), 0.0);
  trace.initial = make_record(p, 0, positions, everyone, spent, true);

  const auto eta = p.etas();
  for (int k = 1; k <= opt.max_iters; ++k) {
    const auto moments =
        cell_moments(assign_mwvd(positions, eta, everyone, p.grid), p.masses, p.grid, positions);
    double max_move = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
      Point step = opt.lloyd_step * (moments[n].centroid - positions[n]);
      const double len = norm(step);
      const double allowed = std::max(0.0, gamma[n] - spent[n]) / p.sensors[n].xi;
      if (len > allowed) step = len > 0.0 ? (allowed / len) * step : Point{};
      positions[n] = positions[n] + step;
      spent[n] += p.sensors[n].xi * norm(step);
      max_move = std::max(max_move, norm(step));
    }
    trace.iterations.push_back(make_record(p, k, positions, everyone, spent, true));
    if (max_move < opt.tol) break;
  }
  return trace;
}

inline IterationTrace run_algorithm(Algorithm a, const Problem& p, const RunOptions& opt) {
  switch (a) {
    case Algorithm::ccml: return run_ccml(p, opt);
    case Algorithm::bccml: return run_bccml(p, opt);
    case Algorithm::dcml: return run_dcml(p, opt);
    case Algorithm::lloyd_alpha: return run_lloyd_alpha(p, opt);
  }
  throw ScenarioError("unknown algorithm");
}

enum class ConditionCase {
  centroid_feasible,  // p_n must equal c_n
  centroid_outside,   // p_n must be the nearest point of the feasible region to c_n
  reactivation,       // c_n lies in the feasible region within reach of an external sensor
};

struct ConditionReport {
  std::size_t sensor = 0;
  ConditionCase kind = ConditionCase::centroid_feasible;
  bool pass = false;
  Point centroid;
  Point mandated;
  double deviation = 0.0;  // excess distance to the centroid over the mandated one
  bool empty_region = false;
};

/// Checks each backbone sensor of a final deployment against the
/// optimality conditions, using the exact feasible region.
inline std::vector<ConditionReport> check_necessary_conditions(const Problem& p,
                                                               std::span<const Point> positions,
                                                               const SensorSet& active,
                                                               double tol_geo) {
  const SensorSet s = backbone(positions, p.comm_range, active);
  const auto eta = p.etas();
  const auto moments =
      cell_moments(assign_mwvd(positions, eta, s, p.grid), p.masses, p.grid, positions);
  std::vector<ConditionReport> out;
  for (std::size_t n : s.members()) {
    ConditionReport r;
    r.sensor = n;
    r.centroid = moments[n].centroid;
    const double reach = std::max(0.0, p.movement_budget(n)) / p.sensors[n].xi;
    const DiskRegion fr =
        feasible_region(n, positions, s, p.comm_range, p.sensors[n].initial, reach);
    const bool in_fr = fr.contains(r.centroid) && p.region.contains(r.centroid, kMembershipTolerance);
    if (in_fr && external_field_membership(r.centroid, positions, s, p.comm_range)) {
      r.kind = ConditionCase::reactivation;
      r.mandated = r.centroid;
      r.deviation = distance(positions[n], r.centroid);
      r.pass = false;
    } else if (in_fr) {
      r.kind = ConditionCase::centroid_feasible;
      r.mandated = r.centroid;
      r.deviation = distance(positions[n], r.centroid);
      r.pass = r.deviation <= tol_geo;
    } else {
      r.kind = ConditionCase::centroid_outside;
      const auto best = project_to_disk_region(r.centroid, fr, positions[n], p.region);
      r.mandated = best.point;
      r.empty_region = best.empty_region;
      r.deviation = distance(positions[n], r.centroid) - distance(best.point, r.centroid);
      r.pass = !best.empty_region && fr.contains(positions[n], tol_geo) && r.deviation <= tol_geo;
    }
    out.push_back(r);
  }
  return out;
}

inline std::vector<ConditionReport> check_necessary_conditions(const Problem& p,
                                                               std::span<const Point> positions,
                                                               const SensorSet& active) {
  return check_necessary_conditions(p, positions, active, 2.0 * p.grid.cell_diagonal());
}

/// Invariant violations found in a recorded trace.
struct TraceAudit {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

inline TraceAudit audit_trace(const Problem& p, const IterationTrace& trace) {
  TraceAudit audit;
  const bool keeps_backbone = trace.algorithm != Algorithm::lloyd_alpha;
  const IterationRecord* prev = &trace.initial;
  for (const auto& rec : trace.iterations) {
    const std::string at = "iteration " + std::to_string(rec.iteration) + ": ";
    const bool same_set = rec.active == prev->active;
    if (keeps_backbone && same_set && rec.distortion > prev->distortion + 1e-9) {
      audit.violations.push_back(at + "distortion increased");
    }
    if (keeps_backbone && rec.backbone != rec.active) {
      audit.violations.push_back(at + "active sensors disconnected from the access point");
    }
    for (std::size_t n = 0; n < p.size(); ++n) {
      const double gamma = p.movement_budget(n);
      if (gamma >= 0.0 && rec.spent[n] > gamma + kEnergySlack) {
        audit.violations.push_back(at + "sensor " + std::to_string(n + 1) + " overspent");
      }
    }
    if (keeps_backbone && rec.lifetime < p.lifetime_target - 1e-9) {
      audit.violations.push_back(at + "lifetime below target");
    }
    prev = &rec;
  }
  return audit;
}

}  // namespace mwsn
