#pragma once

// Independent oracles shared by the unit suites and the acceptance gate.
// Nothing here calls the code under test except for plain data types.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "mwsn/geometry.hpp"

namespace mwsn::testing {

inline ConvexPolygon unit_square() { return ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

inline bool within(Point a, Point b, double r) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy <= r * r;
}

/// Plain closed-disk membership, written out independently of DiskRegion.
inline bool in_region(Point q, const std::vector<std::vector<Disk>>& groups,
                      const std::optional<Disk>& cap, double slack = 0.0) {
  if (cap && !within(q, cap->center, cap->radius + slack)) return false;
  for (const auto& g : groups) {
    bool hit = false;
    for (const auto& d : g) hit = hit || within(q, d.center, d.radius + slack);
    if (!hit) return false;
  }
  return true;
}

struct BruteForce {
  double distance = std::numeric_limits<double>::infinity();
  Point point;
  bool found = false;
};

/// Minimum distance from `target` to the lattice points (spacing `step`)
/// that lie inside the region and the optional polygon.
inline BruteForce brute_force_nearest(Point target, const std::vector<std::vector<Disk>>& groups,
                                      const std::optional<Disk>& cap, double step,
                                      const ConvexPolygon* clip = nullptr) {
  double lo_x = -std::numeric_limits<double>::infinity();
  double lo_y = lo_x;
  double hi_x = std::numeric_limits<double>::infinity();
  double hi_y = hi_x;
  auto shrink = [&](double ax, double ay, double bx, double by) {
    lo_x = std::max(lo_x, ax);
    lo_y = std::max(lo_y, ay);
    hi_x = std::min(hi_x, bx);
    hi_y = std::min(hi_y, by);
  };
  for (const auto& g : groups) {
    double ax = std::numeric_limits<double>::infinity();
    double ay = ax;
    double bx = -ax;
    double by = -ax;
    for (const auto& d : g) {
      ax = std::min(ax, d.center.x - d.radius);
      ay = std::min(ay, d.center.y - d.radius);
      bx = std::max(bx, d.center.x + d.radius);
      by = std::max(by, d.center.y + d.radius);
    }
    shrink(ax, ay, bx, by);
  }
  if (cap) {
    shrink(cap->center.x - cap->radius, cap->center.y - cap->radius, cap->center.x + cap->radius,
           cap->center.y + cap->radius);
  }
  BruteForce best;
  if (!(lo_x <= hi_x && lo_y <= hi_y) || !std::isfinite(lo_x) || !std::isfinite(hi_x)) return best;
  const long nx = static_cast<long>(std::floor((hi_x - lo_x) / step)) + 1;
  const long ny = static_cast<long>(std::floor((hi_y - lo_y) / step)) + 1;
  for (long i = 0; i < nx; ++i) {
    for (long j = 0; j < ny; ++j) {
      const Point q{lo_x + i * step, lo_y + j * step};
      if (!in_region(q, groups, cap)) continue;
      if (clip && !clip->contains(q)) continue;
      const double d = std::hypot(q.x - target.x, q.y - target.y);
      if (d < best.distance) best = {d, q, true};
    }
  }
  return best;
}

/// Sequential uniform sampling in a box, keeping a node only if it lands
/// within `rc` of a node already kept.
template <class Rng>
std::vector<Point> random_connected(std::size_t n, double width, double height, double rc, Rng& rng) {
  std::uniform_real_distribution<double> ux(0.0, width);
  std::uniform_real_distribution<double> uy(0.0, height);
  std::vector<Point> out{{ux(rng), uy(rng)}};
  while (out.size() < n) {
    const Point q{ux(rng), uy(rng)};
    if (std::any_of(out.begin(), out.end(), [&](Point p) { return within(p, q, rc); })) out.push_back(q);
  }
  return out;
}

/// Breadth-first reachability from index 0 over links of length <= rc.
inline std::size_t reachable_from_first(const std::vector<Point>& pts, double rc, double slack = 1e-9) {
  if (pts.empty()) return 0;
  std::vector<bool> seen(pts.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t a = stack.back();
    stack.pop_back();
    for (std::size_t b = 0; b < pts.size(); ++b) {
      if (!seen[b] && within(pts[a], pts[b], rc + slack)) {
        seen[b] = true;
        ++count;
        stack.push_back(b);
      }
    }
  }
  return count;
}

/// Whether the sensors listed in `members` form one connected graph.
inline bool members_connected(const std::vector<Point>& pts, const std::vector<std::size_t>& members,
                              double rc) {
  std::vector<Point> sub;
  for (std::size_t m : members) sub.push_back(pts[m]);
  return reachable_from_first(sub, rc, 0.0) == sub.size();
}

}  // namespace mwsn::testing
