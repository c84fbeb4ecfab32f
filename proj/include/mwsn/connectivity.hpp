#pragma once

// Communication graph, backbone extraction, components, the Euclidean MST
// and the constructors for every connectivity constraint region.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <numeric>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "mwsn/geometry.hpp"
#include "mwsn/partition.hpp"

namespace mwsn {

class ConnectivityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed-disk link test. Shares the membership tolerance so that points
/// projected onto a range circle keep their link.
inline bool linked(Point a, Point b, double comm_range) {
  return distance(a, b) <= comm_range + kMembershipTolerance;
}

/// Indices in `within` linked to n (n excluded), ascending.
inline std::vector<std::size_t> neighbors(std::size_t n, std::span<const Point> positions,
                                          const SensorSet& within, double comm_range) {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < positions.size(); ++m) {
    if (m != n && within.contains(m) && linked(positions[n], positions[m], comm_range)) {
      out.push_back(m);
    }
  }
  return out;
}

namespace detail {

inline std::vector<std::size_t> bfs(std::size_t start, std::span<const Point> positions,
                                    const SensorSet& within, double comm_range,
                                    std::vector<bool>& seen) {
  std::vector<std::size_t> component;
  std::deque<std::size_t> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    const std::size_t n = queue.front();
    queue.pop_front();
    component.push_back(n);
    for (std::size_t m = 0; m < positions.size(); ++m) {
      if (!seen[m] && within.contains(m) && linked(positions[n], positions[m], comm_range)) {
        seen[m] = true;
        queue.push_back(m);
      }
    }
  }
  std::sort(component.begin(), component.end());
  return component;
}

}  // namespace detail

/// Sensors of `within` reachable from the access point (index 0).
inline SensorSet backbone(std::span<const Point> positions, double comm_range,
                          const SensorSet& within) {
  SensorSet out(positions.size());
  if (positions.empty() || !within.contains(0)) return out;
  std::vector<bool> seen(positions.size(), false);
  for (std::size_t n : detail::bfs(0, positions, within, comm_range, seen)) out.insert(n);
  return out;
}

inline SensorSet backbone(std::span<const Point> positions, double comm_range) {
  return backbone(positions, comm_range, SensorSet::all(positions.size()));
}

/// Connected components of the graph induced on `within`, each sorted and
/// ordered by smallest member.
inline std::vector<std::vector<std::size_t>> components(std::span<const Point> positions,
                                                        const SensorSet& within,
                                                        double comm_range) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(positions.size(), false);
  for (std::size_t n : within.members()) {
    if (!seen[n]) out.push_back(detail::bfs(n, positions, within, comm_range, seen));
  }
  return out;
}

/// Components U_n1..U_nK of I \ {n}.
inline std::vector<std::vector<std::size_t>> components_excluding(const SensorSet& internal,
                                                                  std::size_t n,
                                                                  std::span<const Point> positions,
                                                                  double comm_range) {
  if (!internal.contains(n)) throw std::invalid_argument("components_excluding: n not in set");
  SensorSet rest = internal;
  rest.erase(n);
  return components(positions, rest, comm_range);
}

namespace detail {

inline DiskRegion union_groups(const std::vector<std::vector<std::size_t>>& parts,
                               std::span<const Point> positions, double comm_range) {
  DiskRegion region;
  for (const auto& part : parts) {
    std::vector<Disk> group;
    for (std::size_t j : part) group.push_back({positions[j], comm_range});
    region.groups.push_back(std::move(group));
  }
  return region;
}

}  // namespace detail

/// Placements of n that keep `internal` connected: intersection over the
/// components of I \ {n} of the union of their range disks.
inline DiskRegion desired_region(std::size_t n, std::span<const Point> positions,
                                 const SensorSet& internal, double comm_range) {
  return detail::union_groups(components_excluding(internal, n, positions, comm_range), positions,
                              comm_range);
}

inline DiskRegion feasible_region(std::size_t n, std::span<const Point> positions,
                                  const SensorSet& internal, double comm_range, Point origin,
                                  double budget) {
  DiskRegion region = desired_region(n, positions, internal, comm_range);
  region.cap = Disk{origin, std::max(0.0, budget)};
  return region;
}

/// Desired region built from n's one-hop neighbors only. A component with
/// no neighbor of n contributes an empty group, making the region empty.
inline DiskRegion approx_desired_region(std::size_t n, std::span<const Point> positions,
                                        const SensorSet& internal, double comm_range) {
  auto parts = components_excluding(internal, n, positions, comm_range);
  for (auto& part : parts) {
    std::erase_if(part, [&](std::size_t j) { return !linked(positions[n], positions[j], comm_range); });
  }
  return detail::union_groups(parts, positions, comm_range);
}

inline DiskRegion approx_feasible_region(std::size_t n, std::span<const Point> positions,
                                         const SensorSet& internal, double comm_range,
                                         Point origin, double budget) {
  DiskRegion region = approx_desired_region(n, positions, internal, comm_range);
  region.cap = Disk{origin, std::max(0.0, budget)};
  return region;
}

/// q lies within range of a sensor outside `internal`.
inline bool external_field_membership(Point q, std::span<const Point> positions,
                                      const SensorSet& internal, double comm_range) {
  for (std::size_t m = 0; m < positions.size(); ++m) {
    if (!internal.contains(m) && Disk{positions[m], comm_range}.contains(q)) return true;
  }
  return false;
}

struct MstEdge {
  std::size_t a = 0;  // a < b
  std::size_t b = 0;
  double length = 0.0;
};

/// Kruskal over the communication graph of `within`. Equal lengths are
/// ordered by (min index, max index). Throws if the graph is disconnected.
inline std::vector<MstEdge> euclidean_mst(std::span<const Point> positions, double comm_range,
                                          const SensorSet& within) {
  std::vector<MstEdge> edges;
  const auto members = within.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const Point a = positions[members[i]];
      const Point b = positions[members[j]];
      if (linked(a, b, comm_range)) edges.push_back({members[i], members[j], distance(a, b)});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const MstEdge& l, const MstEdge& r) {
    return std::tie(l.length, l.a, l.b) < std::tie(r.length, r.a, r.b);
  });

  std::vector<std::size_t> parent(positions.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  std::vector<MstEdge> tree;
  for (const auto& e : edges) {
    const std::size_t ra = find(e.a);
    const std::size_t rb = find(e.b);
    if (ra == rb) continue;
    parent[std::max(ra, rb)] = std::min(ra, rb);
    tree.push_back(e);
  }
  if (!members.empty() && tree.size() + 1 != members.size()) {
    throw ConnectivityError("euclidean_mst: communication graph is disconnected");
  }
  return tree;
}

inline std::vector<MstEdge> euclidean_mst(std::span<const Point> positions, double comm_range) {
  return euclidean_mst(positions, comm_range, SensorSet::all(positions.size()));
}

inline std::vector<std::size_t> mst_neighbors(std::size_t n, std::span<const MstEdge> tree) {
  std::vector<std::size_t> out;
  for (const auto& e : tree) {
    if (e.a == n) out.push_back(e.b);
    if (e.b == n) out.push_back(e.a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Intersection of the half-range disks centered on the midpoints of n's
/// MST edges. A sensor without MST edges gets the whole plane.
inline DiskRegion semi_desired_region(std::size_t n, std::span<const Point> positions,
                                      std::span<const MstEdge> tree, double comm_range) {
  DiskRegion region;
  for (std::size_t m : mst_neighbors(n, tree)) {
    region.groups.push_back({Disk{midpoint(positions[m], positions[n]), 0.5 * comm_range}});
  }
  return region;
}

/// Semi-desired region capped by a step disk around the current position
/// with radius min(residual / xi, step_cap).
inline DiskRegion semi_feasible_region(std::size_t n, std::span<const Point> positions,
                                       std::span<const MstEdge> tree, double comm_range,
                                       double residual, double step_cap, double xi) {
  DiskRegion region = semi_desired_region(n, positions, tree, comm_range);
  const double reach = std::max(0.0, std::min(residual / xi, step_cap));
  region.cap = Disk{positions[n], reach};
  return region;
}

}  // namespace mwsn
