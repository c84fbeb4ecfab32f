#pragma once

// Exact 2-D primitives: points, convex polygons, closed disks and the
// disk-region projection kernel shared by every constraint region.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mwsn {

inline constexpr double kPolygonTolerance = 1e-12;
inline constexpr double kMembershipTolerance = 1e-9;
inline constexpr double kTangencyTolerance = 1e-9;
inline constexpr double kCoincidenceTolerance = 1e-12;

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
constexpr double squared_norm(Point a) { return dot(a, a); }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
constexpr double squared_distance(Point a, Point b) { return squared_norm(a - b); }
inline double distance(Point a, Point b) { return norm(a - b); }
constexpr Point midpoint(Point a, Point b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

constexpr bool lexicographic_less(Point a, Point b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

struct Box {
  Point min;
  Point max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  double area() const { return width() * height(); }
};

/// Convex polygon with counter-clockwise vertices. Construction validates
/// strict convexity, orientation and simplicity.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    validate();
  }

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  Point vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  /// Shoelace area.
  double area() const {
    double twice = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) twice += cross(vertex(i), vertex(i + 1));
    return 0.5 * twice;
  }

  Box bounding_box() const {
    Box box{vertices_.front(), vertices_.front()};
    for (const Point& v : vertices_) {
      box.min.x = std::min(box.min.x, v.x);
      box.min.y = std::min(box.min.y, v.y);
      box.max.x = std::max(box.max.x, v.x);
      box.max.y = std::max(box.max.y, v.y);
    }
    return box;
  }

  /// Inside-or-on-boundary test. `tol` is a signed distance to each edge line.
  bool contains(Point q, double tol = kPolygonTolerance) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const Point a = vertex(i);
      const Point edge = vertex(i + 1) - a;
      if (cross(edge, q - a) / norm(edge) < -tol) return false;
    }
    return true;
  }

 private:
  void validate() const {
    if (vertices_.size() < 3) throw GeometryError("convex polygon needs at least 3 vertices");
    for (const Point& v : vertices_) {
      if (!is_finite(v)) throw GeometryError("convex polygon has a non-finite vertex");
    }
    double turning = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const Point e0 = vertex(i + 1) - vertex(i);
      const Point e1 = vertex(i + 2) - vertex(i + 1);
      if (norm(e0) <= kPolygonTolerance) throw GeometryError("convex polygon has repeated vertices");
      if (cross(e0, e1) <= kPolygonTolerance) {
        throw GeometryError("convex polygon must be strictly convex and counter-clockwise");
      }
      turning += std::atan2(cross(e0, e1), dot(e0, e1));
    }
    // A star polygon turns left everywhere but winds more than once.
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-9) {
      throw GeometryError("convex polygon is self-intersecting");
    }
  }

  std::vector<Point> vertices_;
};

inline bool point_in_polygon(Point q, const ConvexPolygon& poly) { return poly.contains(q); }

/// Closed disk.
struct Disk {
  Point center;
  double radius = 0.0;

  bool contains(Point q, double tol = kMembershipTolerance) const {
    return distance(q, center) <= radius + tol;
  }
};

struct CircleIntersection {
  std::array<Point, 2> points{};
  int count = 0;
  bool coincident = false;

  std::span<const Point> view() const { return {points.data(), static_cast<std::size_t>(count)}; }
};

/// Intersection points of the two boundary circles. Tangency within
/// kTangencyTolerance yields a single point; coincident circles yield none
/// and set the `coincident` flag.
inline CircleIntersection circle_circle_intersections(const Disk& a, const Disk& b) {
  CircleIntersection out;
  const Point delta = b.center - a.center;
  const double d = norm(delta);
  if (d <= kCoincidenceTolerance) {
    out.coincident = std::abs(a.radius - b.radius) <= kCoincidenceTolerance;
    return out;
  }
  const Point u = delta / d;
  const double outer = a.radius + b.radius;
  const double inner = std::abs(a.radius - b.radius);
  if (std::abs(d - outer) <= kTangencyTolerance) {
    out.points[0] = a.center + a.radius * u;
    out.count = 1;
    return out;
  }
  if (std::abs(d - inner) <= kTangencyTolerance) {
    // The smaller circle touches the larger one on the side facing away from the larger center.
    out.points[0] = a.radius >= b.radius ? a.center + a.radius * u : a.center - a.radius * u;
    out.count = 1;
    return out;
  }
  if (d > outer || d < inner) return out;

  const double along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
  const double half_chord = std::sqrt(std::max(0.0, a.radius * a.radius - along * along));
  const Point base = a.center + along * u;
  const Point perp{-u.y, u.x};
  out.points[0] = base + half_chord * perp;
  out.points[1] = base - half_chord * perp;
  out.count = 2;
  return out;
}

struct CirclePoint {
  Point point;
  bool tie = false;  // query sat on the center; +x direction chosen
};

inline CirclePoint nearest_point_on_circle(const Disk& d, Point q) {
  const Point delta = q - d.center;
  const double len = norm(delta);
  if (len <= kCoincidenceTolerance) return {d.center + Point{d.radius, 0.0}, true};
  return {d.center + (d.radius / len) * delta, false};
}

/// Intersection over `groups` of the union of each group's disks, optionally
/// intersected with a movement cap. No groups means the whole plane; an
/// empty group makes the region empty.
struct DiskRegion {
  std::vector<std::vector<Disk>> groups;
  std::optional<Disk> cap;

  bool contains(Point q, double tol = kMembershipTolerance) const {
    if (cap && !cap->contains(q, tol)) return false;
    for (const auto& group : groups) {
      const bool hit = std::any_of(group.begin(), group.end(),
                                   [&](const Disk& d) { return d.contains(q, tol); });
      if (!hit) return false;
    }
    return true;
  }

  std::vector<Disk> disks() const {
    std::vector<Disk> out;
    for (const auto& group : groups) out.insert(out.end(), group.begin(), group.end());
    if (cap) out.push_back(*cap);
    return out;
  }
};

struct RegionProjection {
  Point point;
  bool empty_region = false;
};

namespace detail {

inline void segment_circle_points(Point a, Point b, const Disk& d, std::vector<Point>& out) {
  const Point dir = b - a;
  const Point rel = a - d.center;
  const double qa = dot(dir, dir);
  if (qa <= 0.0) return;
  const double qb = 2.0 * dot(dir, rel);
  const double qc = dot(rel, rel) - d.radius * d.radius;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return;
  const double root = std::sqrt(disc);
  for (double t : {(-qb - root) / (2.0 * qa), (-qb + root) / (2.0 * qa)}) {
    if (t >= -1e-12 && t <= 1.0 + 1e-12) out.push_back(a + std::clamp(t, 0.0, 1.0) * dir);
  }
}

inline RegionProjection project(Point target, const DiskRegion& region, Point fallback,
                                const ConvexPolygon* clip) {
  const std::vector<Disk> disks = region.disks();
  std::vector<Point> candidates{target, fallback};
  candidates.reserve(2 + disks.size() * (disks.size() + 1));
  for (const Disk& d : disks) candidates.push_back(nearest_point_on_circle(d, target).point);
  for (std::size_t i = 0; i < disks.size(); ++i) {
    for (std::size_t j = i + 1; j < disks.size(); ++j) {
      const auto hits = circle_circle_intersections(disks[i], disks[j]);
      candidates.insert(candidates.end(), hits.view().begin(), hits.view().end());
    }
  }
  if (clip != nullptr) {
    for (std::size_t i = 0; i < clip->size(); ++i) {
      const Point a = clip->vertex(i);
      const Point b = clip->vertex(i + 1);
      candidates.push_back(a);
      const Point edge = b - a;
      const double t = std::clamp(dot(target - a, edge) / squared_norm(edge), 0.0, 1.0);
      candidates.push_back(a + t * edge);
      for (const Disk& d : disks) segment_circle_points(a, b, d, candidates);
    }
  }

  std::optional<Point> best;
  double best_dist = 0.0;
  for (const Point& q : candidates) {
    if (!region.contains(q, kMembershipTolerance)) continue;
    if (clip != nullptr && !clip->contains(q, kMembershipTolerance)) continue;
    const double dist = distance(q, target);
    if (!best || dist < best_dist || (dist == best_dist && lexicographic_less(q, *best))) {
      best = q;
      best_dist = dist;
    }
  }
  if (!best) return {fallback, true};
  return {*best, false};
}

}  // namespace detail

/// Nearest point of `region` to `target`. Candidates are the target, the
/// fallback, radial feet on every circle and all pairwise circle vertices;
/// the nearest admissible one wins, ties broken lexicographically.
inline RegionProjection project_to_disk_region(Point target, const DiskRegion& region,
                                               Point fallback) {
  return detail::project(target, region, fallback, nullptr);
}

/// Same, restricted to `region ∩ clip`. Polygon vertices, perpendicular feet
/// on edges and edge/circle crossings join the candidate set.
inline RegionProjection project_to_disk_region(Point target, const DiskRegion& region,
                                               Point fallback, const ConvexPolygon& clip) {
  return detail::project(target, region, fallback, &clip);
}

}  // namespace mwsn
