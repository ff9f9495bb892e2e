#pragma once

#include <limits>

#include "kirchhoff/field.hpp"
#include "kirchhoff/potentials.hpp"
#include "kirchhoff/spectral.hpp"

namespace kirchhoff {

enum class Regime { subcritical, intermediate, critical, supercritical };

/// Constants (a, b, c, p, q) of the constrained equation plus the derived
/// exponents; c is the prescribed mass.
struct KirchhoffParams {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
  double p = 3.0;
  double q = 1.5;

  double gamma_p(int dim) const { return dim * (p - 2.0) / (2.0 * p); }
  double gamma_q(int dim) const { return dim * (q - 2.0) / (2.0 * q); }
  static double p_bar(int dim) { return 2.0 + 8.0 / dim; }
  double p_star(int dim) const {
    return dim == 3 ? 6.0 : std::numeric_limits<double>::infinity();
  }
  Regime regime(int dim) const;

  /// Throws std::invalid_argument unless a,b,c > 0, 2 < p < p_star, 1 <= q < 2.
  void validate(int dim) const;
};

struct EnergyBreakdown {
  double kinetic = 0.0;       //  a/2 |grad u|_2^2
  double nonlocal = 0.0;      //  b/4 |grad u|_2^4
  double power = 0.0;         //  1/p \int |u|^p
  double perturbation = 0.0;  //  1/q \int h |u|^q
  double total = 0.0;         //  kinetic + nonlocal - power - perturbation
};

EnergyBreakdown energy(const Field& u, const KirchhoffParams& params,
                       const SampledPotential& pot);
EnergyBreakdown energy(const Field& u, const KirchhoffParams& params,
                       const PotentialSpec& spec);

/// The autonomous functional (h = 0).
double energy_limit(const Field& u, const KirchhoffParams& params);

/// Scaling-derivative functional; vanishes at constrained critical points.
/// P(u) = a|grad u|^2 + b|grad u|^4 - gamma_p \int |u|^p
///        - gamma_q \int h|u|^q + (1/q) \int <grad h, x> |u|^q.
double pohozaev(const Field& u, const KirchhoffParams& params,
                const SampledPotential& pot);
double pohozaev(const Field& u, const KirchhoffParams& params,
                const PotentialSpec& spec);

/// Unconstrained L^2 gradient of the energy:
/// (a + b|grad u|^2)(-Delta u) - |u|^{p-2}u - h|u|^{q-2}u.
Field energy_gradient(const Field& u, const KirchhoffParams& params,
                      const SampledPotential& pot);

/// L^2 norm of the Euler-Lagrange residual at multiplier lambda.
double el_residual(const Field& u, const KirchhoffParams& params,
                   const SampledPotential& pot, double lambda);
double el_residual(const Field& u, const KirchhoffParams& params,
                   const PotentialSpec& spec, double lambda);

/// Lagrange multiplier estimator
/// (-a|grad u|^2 - b|grad u|^4 + \int|u|^p + \int h|u|^q) / mass(u).
double multiplier(const Field& u, const KirchhoffParams& params,
                  const SampledPotential& pot);
double multiplier(const Field& u, const KirchhoffParams& params,
                  const PotentialSpec& spec);

/// Tangent gradient on the mass sphere: g = grad I(u) + lambda u with lambda
/// chosen so that <g, u> = 0.
Field constrained_gradient(const Field& u, const KirchhoffParams& params,
                           const SampledPotential& pot);
Field constrained_gradient(const Field& u, const KirchhoffParams& params,
                           const PotentialSpec& spec);

}  // namespace kirchhoff
