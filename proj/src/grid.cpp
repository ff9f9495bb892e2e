#include "kirchhoff/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kirchhoff {

Grid make_grid(int dim, double half_width, int points_per_dim) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("grid: dim must be 1, 2 or 3, got " +
                                std::to_string(dim));
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw std::invalid_argument("grid: half_width must be positive");
  if (points_per_dim < 16 || points_per_dim % 2 != 0)
    throw std::invalid_argument(
        "grid: points_per_dim must be even and >= 16, got " +
        std::to_string(points_per_dim));

  double total = std::pow(static_cast<double>(points_per_dim), dim);
  if (total > static_cast<double>(kMaxGridPoints))
    throw std::invalid_argument("grid: total point count exceeds memory budget");

  Grid g;
  g.dim = dim;
  g.half_width = half_width;
  g.points_per_dim = points_per_dim;
  g.spacing = 2.0 * half_width / points_per_dim;
  return g;
}

}  // namespace kirchhoff
