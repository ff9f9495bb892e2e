#include "kirchhoff/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace kirchhoff {

namespace {

/// \int h |u|^q and \int <grad h, x> |u|^q in one pass.
struct PerturbationIntegrals {
  double h_uq = 0.0;
  double hx_uq = 0.0;
};

PerturbationIntegrals perturbation_integrals(const Field& u, double q,
                                             const SampledPotential& pot) {
  PerturbationIntegrals out;
  if (pot.zero) return out;
  double sh = 0.0, sx = 0.0;
  for (std::size_t i = 0; i < u.samples.size(); ++i) {
    double uq = std::pow(std::fabs(u.samples[i]), q);
    sh += pot.h[i] * uq;
    sx += pot.hx[i] * uq;
  }
  out.h_uq = sh * u.grid.cell_volume();
  out.hx_uq = sx * u.grid.cell_volume();
  return out;
}

}  // namespace

Regime KirchhoffParams::regime(int dim) const {
  double lo = 2.0 + 4.0 / dim;
  double hi = p_bar(dim);
  if (p < lo) return Regime::subcritical;
  if (p > hi) return Regime::supercritical;
  if (p == hi) return Regime::critical;
  return Regime::intermediate;
}

void KirchhoffParams::validate(int dim) const {
  if (!(a > 0.0 && b > 0.0 && c > 0.0))
    throw std::invalid_argument("params: a, b, c must be positive");
  if (!(p > 2.0 && p < p_star(dim)))
    throw std::invalid_argument("params: need 2 < p < p*");
  if (!(q >= 1.0 && q < 2.0))
    throw std::invalid_argument("params: need 1 <= q < 2");
}

EnergyBreakdown energy(const Field& u, const KirchhoffParams& params,
                       const SampledPotential& pot) {
  EnergyBreakdown e;
  double g = grad_norm_sq(u);
  e.kinetic = 0.5 * params.a * g;
  e.nonlocal = 0.25 * params.b * g * g;
  e.power = lp_norm_p(u, params.p) / params.p;
  e.perturbation = perturbation_integrals(u, params.q, pot).h_uq / params.q;
  e.total = e.kinetic + e.nonlocal - e.power - e.perturbation;
  return e;
}

EnergyBreakdown energy(const Field& u, const KirchhoffParams& params,
                       const PotentialSpec& spec) {
  return energy(u, params, sample_potential(spec, u.grid));
}

double energy_limit(const Field& u, const KirchhoffParams& params) {
  double g = grad_norm_sq(u);
  return 0.5 * params.a * g + 0.25 * params.b * g * g -
         lp_norm_p(u, params.p) / params.p;
}

double pohozaev(const Field& u, const KirchhoffParams& params,
                const SampledPotential& pot) {
  const int dim = u.grid.dim;
  double g = grad_norm_sq(u);
  double gp = params.gamma_p(dim);
  double gq = params.gamma_q(dim);
  auto pi = perturbation_integrals(u, params.q, pot);
  return params.a * g + params.b * g * g - gp * lp_norm_p(u, params.p) -
         gq * pi.h_uq + pi.hx_uq / params.q;
}

double pohozaev(const Field& u, const KirchhoffParams& params,
                const PotentialSpec& spec) {
  return pohozaev(u, params, sample_potential(spec, u.grid));
}

Field energy_gradient(const Field& u, const KirchhoffParams& params,
                      const SampledPotential& pot) {
  double g = grad_norm_sq(u);
  Field out = neg_laplacian(u);
  double coef = params.a + params.b * g;
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    double v = u.samples[i];
    double rhs = signed_pow(v, params.p - 1.0);
    if (!pot.zero) rhs += pot.h[i] * signed_pow(v, params.q - 1.0);
    out.samples[i] = coef * out.samples[i] - rhs;
  }
  return out;
}

double multiplier(const Field& u, const KirchhoffParams& params,
                  const SampledPotential& pot) {
  double g = grad_norm_sq(u);
  auto pi = perturbation_integrals(u, params.q, pot);
  return (-params.a * g - params.b * g * g + lp_norm_p(u, params.p) + pi.h_uq) /
         mass(u);
}

double multiplier(const Field& u, const KirchhoffParams& params,
                  const PotentialSpec& spec) {
  return multiplier(u, params, sample_potential(spec, u.grid));
}

double el_residual(const Field& u, const KirchhoffParams& params,
                   const SampledPotential& pot, double lambda) {
  Field r = energy_gradient(u, params, pot);
  for (std::size_t i = 0; i < r.samples.size(); ++i)
    r.samples[i] += lambda * u.samples[i];
  return std::sqrt(mass(r));
}

double el_residual(const Field& u, const KirchhoffParams& params,
                   const PotentialSpec& spec, double lambda) {
  return el_residual(u, params, sample_potential(spec, u.grid), lambda);
}

Field constrained_gradient(const Field& u, const KirchhoffParams& params,
                           const SampledPotential& pot) {
  Field g = energy_gradient(u, params, pot);
  double lambda = -inner(g, u) / mass(u);
  for (std::size_t i = 0; i < g.samples.size(); ++i)
    g.samples[i] += lambda * u.samples[i];
  return g;
}

Field constrained_gradient(const Field& u, const KirchhoffParams& params,
                           const PotentialSpec& spec) {
  return constrained_gradient(u, params, sample_potential(spec, u.grid));
}

}  // namespace kirchhoff
