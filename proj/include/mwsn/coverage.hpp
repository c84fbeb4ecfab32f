#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "mwsn/density.hpp"
#include "mwsn/geometry.hpp"
#include "mwsn/partition.hpp"

namespace mwsn {

struct Target {
  Point location;
  double importance = 1.0;
};

/// Fraction of grid weight within sensing range of any active sensor.
inline double area_coverage(std::span<const Point> positions, std::span<const double> radii,
                            const SensorSet& active, const IntegrationGrid& grid) {
  const auto members = active.members();
  const double total = grid.total_weight();
  if (members.empty() || total <= 0.0) return 0.0;
  double covered = 0.0;
  for (const auto& cell : grid.cells) {
    for (std::size_t n : members) {
      if (squared_distance(cell.center, positions[n]) <= radii[n] * radii[n]) {
        covered += cell.weight;
        break;
      }
    }
  }
  return covered / total;
}

/// Fraction of targets with min_n |t - p_n| / r_n <= 1 over active sensors.
inline double target_coverage(std::span<const Point> positions, std::span<const double> radii,
                              const SensorSet& active, std::span<const Target> targets) {
  if (targets.empty()) throw std::invalid_argument("target_coverage: empty target set");
  const auto members = active.members();
  std::size_t covered = 0;
  for (const auto& t : targets) {
    for (std::size_t n : members) {
      if (distance(t.location, positions[n]) <= radii[n]) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(targets.size());
}

inline DensityField gaussian_density_from_targets(std::span<const Target> targets,
                                                  double length_scale) {
  if (!(length_scale > 0.0)) throw std::invalid_argument("length scale must be positive");
  std::vector<GaussianComponent> components;
  components.reserve(targets.size());
  for (const auto& t : targets) components.push_back({t.location, t.importance, length_scale});
  return DensityField::gaussian_mixture(std::move(components));
}

}  // namespace mwsn
