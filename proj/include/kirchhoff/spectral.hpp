#pragma once

#include <array>

#include "kirchhoff/field.hpp"

namespace kirchhoff {

enum class Interp { trig, linear };

/// \int |grad u|^2 dx via the Fourier multiplier |k|^2 (Parseval).
/// Equals inner(u, neg_laplacian(u)) exactly on the grid.
double grad_norm_sq(const Field& u);

/// -Delta u with the spectral multiplier |k|^2 on the periodic box.
Field neg_laplacian(const Field& u);

/// Fiber scaling (t * u)(x) = t^{N/2} u(t x), resampled on the same grid.
/// Mass-preserving up to interpolation error. Warns (stderr) when the
/// rescaled support leaves the box or t is resolution-degenerate.
Field scale_fiber(const Field& u, double t, Interp interp = Interp::trig);

/// x -> u(x - y) by periodic interpolation. Warns on support clipping.
Field translate(const Field& u, const std::array<double, 3>& y,
                Interp interp = Interp::trig);

/// Average of |u| over the unit ball around each grid point
/// (periodic FFT convolution with the scaled ball indicator).
Field unit_ball_average(const Field& u);

}  // namespace kirchhoff
