#pragma once

#include <array>
#include <cstddef>

namespace kirchhoff {

/// Uniform periodic discretization of the truncated box [-L, L]^dim.
/// Row-major indexing; along each axis the nodes are x_j = -L + j*spacing,
/// j = 0..M-1 (the right endpoint +L is identified with -L).
struct Grid {
  int dim = 1;
  double half_width = 0.0;
  int points_per_dim = 0;
  double spacing = 0.0;

  std::size_t size() const {
    std::size_t n = 1;
    for (int d = 0; d < dim; ++d) n *= static_cast<std::size_t>(points_per_dim);
    return n;
  }

  double coord(int index) const { return -half_width + spacing * index; }

  /// Cartesian coordinates of a flat (row-major) index; unused axes are 0.
  std::array<double, 3> point(std::size_t flat) const {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    const auto m = static_cast<std::size_t>(points_per_dim);
    for (int d = dim - 1; d >= 0; --d) {
      x[d] = coord(static_cast<int>(flat % m));
      flat /= m;
    }
    return x;
  }

  double cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= spacing;
    return v;
  }

  bool operator==(const Grid&) const = default;
};

/// Largest total point count accepted before the 3D memory guard trips.
inline constexpr std::size_t kMaxGridPoints = std::size_t{1} << 27;

/// Validates and builds a Grid. Throws std::invalid_argument on bad dim,
/// odd or tiny M, non-positive half width, or memory budget overflow.
Grid make_grid(int dim, double half_width, int points_per_dim);

}  // namespace kirchhoff
