#pragma once

// Multiplicatively weighted Voronoi assignment on the integration grid,
// per-cell moments and the distortion functional.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "mwsn/density.hpp"
#include "mwsn/geometry.hpp"

namespace mwsn {

/// Sensor n has id n + 1; index 0 is the access point.
struct Sensor {
  Point initial;
  Point position;
  double eta = 1.0;             // sensing weight
  double xi = 1.0;              // moving cost, energy per unit length
  double battery = 0.0;         // initial battery energy
  double sensing_radius = 0.0;  // disk coverage radius
};

/// Subset of sensor indices over a fixed universe {0, ..., N-1}.
class SensorSet {
 public:
  SensorSet() = default;
  explicit SensorSet(std::size_t universe, bool filled = false) : bits_(universe, filled) {}

  static SensorSet all(std::size_t universe) { return SensorSet(universe, true); }

  std::size_t universe() const { return bits_.size(); }
  bool contains(std::size_t i) const { return i < bits_.size() && bits_[i]; }
  void insert(std::size_t i) { bits_.at(i) = true; }
  void erase(std::size_t i) { bits_.at(i) = false; }

  std::size_t count() const {
    std::size_t n = 0;
    for (bool b : bits_) n += b ? 1 : 0;
    return n;
  }
  bool empty() const { return count() == 0; }
  bool full() const { return count() == bits_.size(); }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i]) out.push_back(i);
    }
    return out;
  }

  friend bool operator==(const SensorSet&, const SensorSet&) = default;

 private:
  std::vector<bool> bits_;
};

inline std::vector<Point> positions_of(std::span<const Sensor> sensors) {
  std::vector<Point> out;
  out.reserve(sensors.size());
  for (const auto& s : sensors) out.push_back(s.position);
  return out;
}

inline std::vector<double> etas_of(std::span<const Sensor> sensors) {
  std::vector<double> out;
  out.reserve(sensors.size());
  for (const auto& s : sensors) out.push_back(s.eta);
  return out;
}

struct Assignment {
  static constexpr int kUnowned = -1;

  std::vector<int> owner;  // per grid cell: owning sensor index, or kUnowned
  bool empty = false;      // no active sensor was supplied
};

/// Each cell goes to the active sensor minimizing eta_n |w - p_n|^2; ties to
/// the smallest index.
inline Assignment assign_mwvd(std::span<const Point> positions, std::span<const double> eta,
                              const SensorSet& active, const IntegrationGrid& grid) {
  Assignment out;
  out.owner.assign(grid.cells.size(), Assignment::kUnowned);
  const auto members = active.members();
  if (members.empty()) {
    out.empty = true;
    return out;
  }
  for (std::size_t c = 0; c < grid.cells.size(); ++c) {
    const Point w = grid.cells[c].center;
    int best = Assignment::kUnowned;
    double best_cost = 0.0;
    for (std::size_t n : members) {
      const double cost = eta[n] * squared_distance(w, positions[n]);
      if (best == Assignment::kUnowned || cost < best_cost) {
        best = static_cast<int>(n);
        best_cost = cost;
      }
    }
    out.owner[c] = best;
  }
  return out;
}

struct CellMoment {
  double mass = 0.0;
  Point centroid;
};

/// Mass and density centroid of every sensor's cell. A sensor owning no
/// mass gets its own position as centroid.
inline std::vector<CellMoment> cell_moments(const Assignment& assignment,
                                            std::span<const double> masses,
                                            const IntegrationGrid& grid,
                                            std::span<const Point> positions) {
  std::vector<CellMoment> out(positions.size());
  std::vector<Point> first(positions.size());
  for (std::size_t c = 0; c < grid.cells.size(); ++c) {
    const int n = assignment.owner[c];
    if (n == Assignment::kUnowned) continue;
    out[n].mass += masses[c];
    first[n] = first[n] + masses[c] * grid.cells[c].center;
  }
  for (std::size_t n = 0; n < positions.size(); ++n) {
    out[n].centroid = out[n].mass > 0.0 ? first[n] / out[n].mass : positions[n];
  }
  return out;
}

/// sum over owned cells of eta_n |p_n - w|^2 f(w) dw, accumulated in grid order.
inline double distortion(const Assignment& assignment, std::span<const double> masses,
                         const IntegrationGrid& grid, std::span<const Point> positions,
                         std::span<const double> eta) {
  double sum = 0.0;
  for (std::size_t c = 0; c < grid.cells.size(); ++c) {
    const int n = assignment.owner[c];
    if (n == Assignment::kUnowned) continue;
    sum += eta[n] * squared_distance(positions[n], grid.cells[c].center) * masses[c];
  }
  return sum;
}

/// Partitions over `active` and evaluates the distortion in one call.
inline double distortion(std::span<const Point> positions, std::span<const double> eta,
                         const SensorSet& active, const IntegrationGrid& grid,
                         std::span<const double> masses) {
  return distortion(assign_mwvd(positions, eta, active, grid), masses, grid, positions, eta);
}

}  // namespace mwsn
