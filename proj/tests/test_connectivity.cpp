#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "mwsn/connectivity.hpp"
#include "support.hpp"

using namespace mwsn;
namespace t = mwsn::testing;

namespace {

std::vector<Point> chain(int n, double spacing) {
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) out.push_back({i * spacing, 0.0});
  return out;
}

/// Twelve sensors, range 1. Sensor 1 bridges a left cluster {2..7} and a
/// right cluster {8..12}; its one-hop neighbors are 2, 3 and 12.
std::vector<Point> bridged_twelve() {
  return {{0.0, 0.0},  {-0.9, 0.0}, {-0.6, 0.6}, {-1.5, 0.5}, {-2.2, 0.9}, {-2.9, 0.5},
          {-1.2, 1.3}, {2.6, -1.3}, {1.9, -0.8}, {2.4, 0.0},  {1.7, 0.3},  {0.9, 0.0}};
}

Point sample_in(const DiskRegion& r, std::mt19937_64& rng) {
  const Disk& d = r.groups.front().front();
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const Point q = d.center + d.radius * Point{u(rng), u(rng)};
    if (t::in_region(q, r.groups, r.cap)) return q;
  }
}

}  // namespace

TEST(Backbone, ChainAtExactRange) {
  EXPECT_TRUE(backbone(chain(5, 0.4), 0.4).full());
}

TEST(Backbone, ChainWithGap) {
  auto pts = chain(5, 0.4);
  for (std::size_t i = 3; i < pts.size(); ++i) pts[i].x += 1e-6;
  const auto s = backbone(pts, 0.4);
  EXPECT_EQ(s.members(), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Backbone, SingleSensorAndInactiveAccessPoint) {
  const std::vector<Point> one{{0.3, 0.3}};
  EXPECT_EQ(backbone(one, 0.1).members(), (std::vector<std::size_t>{0}));
  SensorSet without_ap = SensorSet::all(3);
  without_ap.erase(0);
  EXPECT_TRUE(backbone(chain(3, 0.1), 1.0, without_ap).empty());
}

TEST(Components, CollinearMiddleRemoved) {
  const auto parts = components_excluding(SensorSet::all(3), 1, chain(3, 1.0), 1.0);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0], (std::vector<std::size_t>{0}));
  EXPECT_EQ(parts[1], (std::vector<std::size_t>{2}));
}

TEST(Components, TriangleStaysWhole) {
  const std::vector<Point> tri{{0, 0}, {0.5, 0}, {0.25, 0.4}};
  for (std::size_t n = 0; n < 3; ++n) {
    EXPECT_EQ(components_excluding(SensorSet::all(3), n, tri, 1.0).size(), 1u);
  }
}

TEST(Components, BridgedTwelve) {
  const auto pts = bridged_twelve();
  ASSERT_TRUE(backbone(pts, 1.0).full());
  const auto parts = components_excluding(SensorSet::all(12), 0, pts, 1.0);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0], (std::vector<std::size_t>{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(parts[1], (std::vector<std::size_t>{7, 8, 9, 10, 11}));
  EXPECT_EQ(neighbors(0, pts, SensorSet::all(12), 1.0), (std::vector<std::size_t>{1, 2, 11}));
}

TEST(Components, RequiresMember) {
  SensorSet s = SensorSet::all(3);
  s.erase(1);
  EXPECT_THROW(components_excluding(s, 1, chain(3, 0.5), 1.0), std::invalid_argument);
}

TEST(DesiredRegion, TangentPair) {
  const std::vector<Point> pts{{1, 5}, {0, 0}, {2, 0}};
  SensorSet s(3);
  s.insert(0);
  s.insert(1);
  s.insert(2);
  // Sensor 0 is the bridge; the region is the single tangency point (1, 0).
  const auto dr = desired_region(0, pts, s, 1.0);
  ASSERT_EQ(dr.groups.size(), 2u);
  EXPECT_TRUE(dr.contains({1, 0}));
  EXPECT_FALSE(dr.contains({1, 0.01}));
  const auto p = project_to_disk_region({1, 5}, dr, {1, 0});
  EXPECT_FALSE(p.empty_region);
  EXPECT_NEAR(p.point.x, 1.0, 1e-12);
  EXPECT_NEAR(p.point.y, 0.0, 1e-12);
}

TEST(DesiredRegion, SingleComponentIsUnionOfDisks) {
  const std::vector<Point> pts{{0, 0}, {1, 0}, {1.8, 0}};
  const auto dr = desired_region(0, pts, SensorSet::all(3), 1.0);
  ASSERT_EQ(dr.groups.size(), 1u);
  EXPECT_EQ(dr.groups[0].size(), 2u);
  EXPECT_TRUE(dr.contains({2.8, 0}));
  EXPECT_TRUE(dr.contains({1.0, 1.0}));
  EXPECT_FALSE(dr.contains({-0.1, 0}));
}

TEST(DesiredRegion, FarComponentsGiveEmptyRegion) {
  const std::vector<Point> spread{{0, 0}, {-1.5, 0}, {1.5, 0}};
  const auto dr = desired_region(0, spread, SensorSet::all(3), 1.0);
  const auto p = project_to_disk_region({0, 0}, dr, spread[0]);
  EXPECT_TRUE(p.empty_region);
}

TEST(DesiredRegion, MatchesDefinitionByReconnection) {
  // q is in the desired region of n iff putting n at q reconnects I.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.5, 3.5);
  int inside = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto pts = t::random_connected(10, 3.0, 3.0, 1.0, rng);
    const std::size_t n = rng() % pts.size();
    const auto dr = desired_region(n, pts, SensorSet::all(pts.size()), 1.0);
    for (int k = 0; k < 200; ++k) {
      const Point q{u(rng), u(rng)};
      auto moved = pts;
      moved[n] = q;
      const bool by_definition = t::reachable_from_first(moved, 1.0, 0.0) == moved.size();
      ASSERT_EQ(dr.contains(q, 0.0), by_definition) << "trial " << trial << " q=(" << q.x << "," << q.y << ")";
      inside += by_definition ? 1 : 0;
    }
  }
  EXPECT_GT(inside, 100);
}

TEST(FeasibleRegion, ZeroBudget) {
  const auto pts = chain(3, 0.8);
  const auto inside = feasible_region(1, pts, SensorSet::all(3), 1.0, pts[1], 0.0);
  EXPECT_TRUE(inside.contains(pts[1]));
  EXPECT_FALSE(inside.contains(pts[1] + Point{0.01, 0}));

  const auto outside = feasible_region(1, pts, SensorSet::all(3), 1.0, {5, 5}, 0.0);
  EXPECT_EQ(project_to_disk_region({5, 5}, outside, pts[1]).empty_region, true);
}

TEST(FeasibleRegion, HugeBudgetEqualsDesired) {
  std::mt19937_64 rng(4);
  const auto pts = t::random_connected(8, 2.0, 2.0, 0.8, rng);
  const auto dr = desired_region(3, pts, SensorSet::all(8), 0.8);
  const auto fr = feasible_region(3, pts, SensorSet::all(8), 0.8, pts[3], 1e6);
  std::uniform_real_distribution<double> u(-1.0, 3.0);
  for (int k = 0; k < 2000; ++k) {
    const Point q{u(rng), u(rng)};
    EXPECT_EQ(dr.contains(q), fr.contains(q));
  }
}

TEST(FeasibleRegion, BridgedTwelveIsDesiredCappedByBudget) {
  const auto pts = bridged_twelve();
  const auto fr = feasible_region(0, pts, SensorSet::all(12), 1.0, pts[0], 0.3);
  ASSERT_TRUE(fr.cap.has_value());
  EXPECT_EQ(fr.cap->radius, 0.3);
  EXPECT_TRUE(fr.contains({0.0, 0.3}));
  EXPECT_FALSE(fr.contains({0.0, 0.31}));
}

TEST(ApproxRegion, NeighborsOnly) {
  const auto pts = bridged_twelve();
  const auto adr = approx_desired_region(0, pts, SensorSet::all(12), 1.0);
  ASSERT_EQ(adr.groups.size(), 2u);
  ASSERT_EQ(adr.groups[0].size(), 2u);
  EXPECT_EQ(adr.groups[0][0].center, pts[1]);
  EXPECT_EQ(adr.groups[0][1].center, pts[2]);
  ASSERT_EQ(adr.groups[1].size(), 1u);
  EXPECT_EQ(adr.groups[1][0].center, pts[11]);
}

TEST(ApproxRegion, LensFromOneNeighborPerComponent) {
  const std::vector<Point> pts{{0, 0}, {-0.8, 0}, {0.8, 0}};
  const auto adr = approx_desired_region(0, pts, SensorSet::all(3), 1.0);
  ASSERT_EQ(adr.groups.size(), 2u);
  EXPECT_EQ(adr.groups[0].size(), 1u);
  EXPECT_EQ(adr.groups[1].size(), 1u);
  EXPECT_TRUE(adr.contains({0, 0.5}));
  EXPECT_FALSE(adr.contains({0.9, 0}));
  EXPECT_FALSE(adr.contains({-0.9, 0}));
}

TEST(ApproxRegion, AllNeighborsMeansNoApproximation) {
  const std::vector<Point> pts{{0, 0}, {0.3, 0.3}, {-0.3, 0.2}, {0.1, -0.4}};
  const auto dr = desired_region(0, pts, SensorSet::all(4), 1.0);
  const auto adr = approx_desired_region(0, pts, SensorSet::all(4), 1.0);
  ASSERT_EQ(dr.groups.size(), adr.groups.size());
  for (std::size_t k = 0; k < dr.groups.size(); ++k) EXPECT_EQ(dr.groups[k].size(), adr.groups[k].size());
}

TEST(ApproxRegion, CappedByBudget) {
  const std::vector<Point> pts{{0, 0}, {-0.8, 0}, {0.8, 0}};
  const auto afr = approx_feasible_region(0, pts, SensorSet::all(3), 1.0, {0, 0}, 0.1);
  EXPECT_TRUE(afr.contains({0, 0.1}));
  EXPECT_FALSE(afr.contains({0, 0.2}));
}

TEST(ExternalField, ClosedDisksOfOutsiders) {
  const std::vector<Point> pts{{5, 5}, {0, 0}};
  EXPECT_FALSE(external_field_membership({0, 0}, pts, SensorSet::all(2), 1.0));
  SensorSet s(2);
  s.insert(0);
  EXPECT_TRUE(external_field_membership({1.0, 0}, pts, s, 1.0));
  EXPECT_FALSE(external_field_membership({1.0 + 1e-6, 0}, pts, s, 1.0));
}

TEST(Mst, Chain) {
  const auto tree = euclidean_mst(chain(3, 0.5), 1.0);
  ASSERT_EQ(tree.size(), 2u);
  EXPECT_EQ(tree[0].a, 0u);
  EXPECT_EQ(tree[0].b, 1u);
  EXPECT_EQ(tree[1].a, 1u);
  EXPECT_EQ(tree[1].b, 2u);
  EXPECT_DOUBLE_EQ(tree[0].length + tree[1].length, 1.0);
}

TEST(Mst, EquilateralTieRule) {
  // Side lengths agree up to rounding; the result must equal the first two
  // edges under the (length, a, b) order.
  const double h = std::sqrt(3.0) / 2.0;
  const std::vector<Point> tri{{0, 0}, {1, 0}, {0.5, h}};
  const auto tree = euclidean_mst(tri, 2.0);
  ASSERT_EQ(tree.size(), 2u);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : tree) edges.push_back({e.a, e.b});
  // Brute force over all three spanning trees with the (length, a, b) key.
  std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>> all = {
      {distance(tri[0], tri[1]), {0, 1}}, {distance(tri[0], tri[2]), {0, 2}}, {distance(tri[1], tri[2]), {1, 2}}};
  std::sort(all.begin(), all.end());
  EXPECT_EQ(edges[0], all[0].second);
  EXPECT_EQ(edges[1], all[1].second);
}

TEST(Mst, ExactTieTakesSmallerIds) {
  // Square of side 1: four perimeter edges of identical length, diagonals
  // out of range. Ties resolve to (0,1), (0,3), (1,2).
  const std::vector<Point> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const auto tree = euclidean_mst(sq, 1.2);
  ASSERT_EQ(tree.size(), 3u);
  EXPECT_EQ(std::make_pair(tree[0].a, tree[0].b), std::make_pair(std::size_t{0}, std::size_t{1}));
  EXPECT_EQ(std::make_pair(tree[1].a, tree[1].b), std::make_pair(std::size_t{0}, std::size_t{3}));
  EXPECT_EQ(std::make_pair(tree[2].a, tree[2].b), std::make_pair(std::size_t{1}, std::size_t{2}));
  double total = 0.0;
  for (const auto& e : tree) total += e.length;
  EXPECT_DOUBLE_EQ(total, 3.0);
}

TEST(Mst, MinimalAgainstExhaustiveSearch) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = t::random_connected(6, 1.5, 1.5, 0.9, rng);
    const auto tree = euclidean_mst(pts, 0.9);
    double total = 0.0;
    for (const auto& e : tree) total += e.length;

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        if (t::within(pts[i], pts[j], 0.9)) edges.push_back({i, j});
      }
    }
    double best = std::numeric_limits<double>::infinity();
    const std::size_t m = edges.size();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      if (std::popcount(mask) != 5) continue;
      std::vector<std::size_t> parent(6);
      std::iota(parent.begin(), parent.end(), 0);
      std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
      };
      double len = 0.0;
      bool acyclic = true;
      for (std::size_t k = 0; k < m && acyclic; ++k) {
        if (!(mask >> k & 1u)) continue;
        const auto [a, b] = edges[k];
        const auto ra = find(a);
        const auto rb = find(b);
        if (ra == rb) acyclic = false;
        parent[ra] = rb;
        len += distance(pts[a], pts[b]);
      }
      if (acyclic) best = std::min(best, len);
    }
    EXPECT_NEAR(total, best, 1e-12);
  }
}

TEST(Mst, DisconnectedGraphThrows) {
  EXPECT_THROW(euclidean_mst(chain(3, 2.0), 1.0), ConnectivityError);
}

TEST(SemiDesired, SingleNeighborAtRange) {
  const std::vector<Point> pts{{0, 0}, {1, 0}};
  const auto tree = euclidean_mst(pts, 1.0);
  const auto sdr = semi_desired_region(0, pts, tree, 1.0);
  ASSERT_EQ(sdr.groups.size(), 1u);
  EXPECT_EQ(sdr.groups[0][0].center, (Point{0.5, 0}));
  EXPECT_EQ(sdr.groups[0][0].radius, 0.5);
  EXPECT_TRUE(sdr.contains(pts[0]));
  EXPECT_FALSE(sdr.contains({-0.01, 0}));
}

TEST(SemiDesired, CoincidentNeighbor) {
  const std::vector<Point> pts{{0.2, 0.2}, {0.2, 0.2}};
  const auto tree = euclidean_mst(pts, 1.0);
  const auto sdr = semi_desired_region(0, pts, tree, 1.0);
  EXPECT_EQ(sdr.groups[0][0].center, pts[0]);
  EXPECT_EQ(sdr.groups[0][0].radius, 0.5);
}

TEST(SemiDesired, TwoOpposedNeighborsPinToPoint) {
  const std::vector<Point> pts{{0, 0}, {-1, 0}, {1, 0}};
  const auto tree = euclidean_mst(pts, 1.0);
  const auto sdr = semi_desired_region(0, pts, tree, 1.0);
  ASSERT_EQ(sdr.groups.size(), 2u);
  EXPECT_TRUE(sdr.contains({0, 0}));
  EXPECT_FALSE(sdr.contains({0, 0.01}));
  EXPECT_FALSE(sdr.contains({0.01, 0}));
}

TEST(SemiDesired, IsolatedSensorGetsWholePlane) {
  const std::vector<Point> one{{0, 0}};
  const auto sdr = semi_desired_region(0, one, euclidean_mst(one, 1.0), 1.0);
  EXPECT_TRUE(sdr.groups.empty());
  EXPECT_TRUE(sdr.contains({100, 100}));
}

TEST(SemiFeasible, CapAtCurrentPosition) {
  const std::vector<Point> pts{{0, 0}, {0.5, 0}};
  const auto tree = euclidean_mst(pts, 1.0);
  const auto frozen = semi_feasible_region(0, pts, tree, 1.0, 0.0, 0.5, 1.0);
  EXPECT_TRUE(frozen.contains(pts[0]));
  EXPECT_FALSE(frozen.contains({0.01, 0}));

  const auto open = semi_feasible_region(0, pts, tree, 1.0, 1e9, 1e9, 1.0);
  const auto sdr = semi_desired_region(0, pts, tree, 1.0);
  for (Point q : {Point{0.9, 0}, Point{0.25, 0.5}, Point{-0.25, 0}, Point{-0.3, 0}}) {
    EXPECT_EQ(open.contains(q), sdr.contains(q));
  }

  const auto small = semi_feasible_region(0, pts, tree, 1.0, 1.0, 0.05, 2.0);
  ASSERT_TRUE(small.cap.has_value());
  EXPECT_EQ(small.cap->center, pts[0]);
  EXPECT_EQ(small.cap->radius, 0.05);
  const auto p = project_to_disk_region({1, 0}, small, pts[0]);
  EXPECT_LE(distance(p.point, pts[0]), 0.05 + 1e-12);
  const auto budget_bound = semi_feasible_region(0, pts, tree, 1.0, 0.06, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(budget_bound.cap->radius, 0.03);
}

TEST(SemiDesired, CurrentPositionAlwaysInside) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pts = t::random_connected(12, 3.0, 3.0, 1.0, rng);
    const auto tree = euclidean_mst(pts, 1.0);
    for (std::size_t n = 0; n < pts.size(); ++n) {
      EXPECT_TRUE(semi_desired_region(n, pts, tree, 1.0).contains(pts[n]));
    }
  }
}

TEST(SemiDesired, SimultaneousMovesKeepConnectivity) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pts = t::random_connected(12, 3.0, 3.0, 1.0, rng);
    const auto tree = euclidean_mst(pts, 1.0);
    std::vector<Point> moved(pts.size());
    for (std::size_t n = 0; n < pts.size(); ++n) moved[n] = sample_in(semi_desired_region(n, pts, tree, 1.0), rng);
    ASSERT_EQ(t::reachable_from_first(moved, 1.0), moved.size()) << "trial " << trial;
  }
}

TEST(Regions, SemiDesiredInsideApproxInsideDesired) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-0.5, 3.5);
  int hits = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto pts = t::random_connected(12, 3.0, 3.0, 1.0, rng);
    const auto all = SensorSet::all(pts.size());
    const auto tree = euclidean_mst(pts, 1.0);
    for (std::size_t n = 0; n < pts.size(); ++n) {
      const auto sdr = semi_desired_region(n, pts, tree, 1.0);
      const auto adr = approx_desired_region(n, pts, all, 1.0);
      const auto dr = desired_region(n, pts, all, 1.0);
      for (int k = 0; k < 100; ++k) {
        const Point q = k % 2 == 0 ? Point{u(rng), u(rng)} : sample_in(sdr, rng);
        if (sdr.contains(q, 0.0)) {
          ++hits;
          EXPECT_TRUE(adr.contains(q));
        }
        if (adr.contains(q, 0.0)) EXPECT_TRUE(dr.contains(q));
      }
    }
  }
  EXPECT_GT(hits, 1000);
}
