#pragma once

#include <string>
#include <vector>

#include "kirchhoff/grid.hpp"

namespace kirchhoff {

/// Real-valued samples over a Grid, row-major. Immutable by convention:
/// every operation returns a fresh Field.
struct Field {
  Grid grid;
  std::vector<double> samples;
};

Field make_field(const Grid& grid);

bool all_finite(const Field& u);

/// Trapezoidal quadrature of an arbitrary sample array on u's grid
/// (periodic, so plain scaled sum).
double quadrature(const Grid& grid, const std::vector<double>& values);

/// Discrete L^2 inner product  spacing^dim * sum(u*v).
double inner(const Field& u, const Field& v);

/// \int |u|^2 dx.
double mass(const Field& u);

/// \int |u|^p dx  (the p-th power, not the norm). Requires p >= 1.
double lp_norm_p(const Field& u, double p);

/// Rescales u onto the mass-c sphere: sqrt(c / mass(u)) * u.
/// Throws std::invalid_argument for the zero field or c <= 0.
Field project_mass(const Field& u, double c);

/// Largest |x_j| over grid points where |u| exceeds 1e-12 * max|u|.
double support_radius(const Field& u);

/// sign(v)|v|^e with the continuous extension 0 at v = 0.
double signed_pow(double v, double e);

// --- KFLD binary format -----------------------------------------------------
// magic "KFLD", version byte 1, one byte dim, u64 LE points_per_dim,
// f64 LE half_width, then M^dim f64 LE samples row-major.

void write_kfld(const Field& u, const std::string& path);
Field read_kfld(const std::string& path);

}  // namespace kirchhoff
