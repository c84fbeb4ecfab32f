#pragma once

// Event-density fields and the midpoint integration grid over the region.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mwsn/geometry.hpp"

namespace mwsn {

struct GaussianComponent {
  Point center;
  double amplitude = 1.0;
  double length_scale = 1.0;
};

/// f(w) = constant, or f(w) = sum_m A_m exp(-|w - t_m|^2 / l_m^2).
class DensityField {
 public:
  static DensityField uniform(double value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw std::invalid_argument("uniform density must be positive");
    }
    DensityField f;
    f.uniform_value_ = value;
    return f;
  }

  static DensityField gaussian_mixture(std::vector<GaussianComponent> components) {
    if (components.empty()) throw std::invalid_argument("gaussian mixture needs a component");
    for (const auto& c : components) {
      if (!(c.amplitude > 0.0) || !(c.length_scale > 0.0) || !is_finite(c.center)) {
        throw std::invalid_argument("gaussian component needs positive amplitude and length scale");
      }
    }
    DensityField f;
    f.components_ = std::move(components);
    return f;
  }

  bool is_uniform() const { return components_.empty(); }
  double uniform_value() const { return uniform_value_; }
  const std::vector<GaussianComponent>& components() const { return components_; }

  double operator()(Point q) const {
    if (is_uniform()) return uniform_value_;
    double sum = 0.0;
    for (const auto& c : components_) {
      sum += c.amplitude * std::exp(-squared_distance(q, c.center) / (c.length_scale * c.length_scale));
    }
    return sum;
  }

 private:
  DensityField() = default;

  double uniform_value_ = 1.0;
  std::vector<GaussianComponent> components_;
};

inline double eval_density(const DensityField& f, Point q) { return f(q); }

/// Five bumps of the form 5 exp(-6 |w - t|^2) used by the heterogeneous benchmark.
inline DensityField benchmark_gaussian_field() {
  const double scale = 1.0 / std::sqrt(6.0);
  return DensityField::gaussian_mixture({{{2.0, 0.25}, 5.0, scale},
                                         {{1.0, 2.25}, 5.0, scale},
                                         {{1.9, 1.9}, 5.0, scale},
                                         {{2.35, 1.25}, 5.0, scale},
                                         {{0.1, 0.1}, 5.0, scale}});
}

struct GridCell {
  Point center;
  double weight = 0.0;
};

/// Cell centers of a G x G subdivision of the bounding box that fall inside
/// the polygon, stored row-major (y outer, x inner).
struct IntegrationGrid {
  Box bbox;
  int resolution = 0;
  std::vector<GridCell> cells;

  double cell_width() const { return bbox.width() / resolution; }
  double cell_height() const { return bbox.height() / resolution; }
  double cell_diagonal() const { return std::hypot(cell_width(), cell_height()); }

  double total_weight() const {
    double sum = 0.0;
    for (const auto& c : cells) sum += c.weight;
    return sum;
  }
};

inline IntegrationGrid build_grid(const ConvexPolygon& poly, int resolution) {
  if (resolution < 1) throw std::invalid_argument("grid resolution must be at least 1");
  IntegrationGrid grid;
  grid.bbox = poly.bounding_box();
  grid.resolution = resolution;
  const double dx = grid.cell_width();
  const double dy = grid.cell_height();
  const double weight = grid.bbox.area() / (static_cast<double>(resolution) * resolution);
  grid.cells.reserve(static_cast<std::size_t>(resolution) * resolution);
  for (int row = 0; row < resolution; ++row) {
    const double y = grid.bbox.min.y + (row + 0.5) * dy;
    for (int col = 0; col < resolution; ++col) {
      const Point center{grid.bbox.min.x + (col + 0.5) * dx, y};
      if (poly.contains(center)) grid.cells.push_back({center, weight});
    }
  }
  return grid;
}

/// f(center) * weight for every cell, in grid order.
inline std::vector<double> cell_masses(const IntegrationGrid& grid, const DensityField& f) {
  std::vector<double> out;
  out.reserve(grid.cells.size());
  for (const auto& c : grid.cells) out.push_back(f(c.center) * c.weight);
  return out;
}

}  // namespace mwsn
