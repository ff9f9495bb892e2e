#include "kirchhoff/potentials.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kirchhoff/functionals.hpp"
#include "kirchhoff/landscape.hpp"

namespace kirchhoff {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sq_norm(const std::array<double, 3>& x) {
  return x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
}

double sign_factor(const PotentialSpec& spec) {
  return spec.sign == PotentialSign::nonneg ? 1.0 : -1.0;
}

/// Unsigned family shape at x.
double shape(const PotentialSpec& spec, const std::array<double, 3>& x) {
  switch (spec.family) {
    case PotentialFamily::zero:
      return 0.0;
    case PotentialFamily::gaussian:
      return spec.h0 * std::exp(-sq_norm(x) / (spec.width * spec.width));
    case PotentialFamily::rational_decay:
      return spec.h0 * std::pow(1.0 + sq_norm(x), -spec.decay_s);
    case PotentialFamily::multibump: {
      double v = 0.0;
      for (const auto& b : spec.bumps) {
        double r2 = 0.0;
        for (int d = 0; d < 3; ++d) {
          double dx = x[d] - b.center[d];
          r2 += dx * dx;
        }
        double R2 = b.radius * b.radius;
        if (r2 < R2) v += b.height * std::exp(-r2 / (R2 - r2));
      }
      return spec.h0 * v;
    }
  }
  return 0.0;
}

/// Unsigned <grad shape, x>.
double shape_radial(const PotentialSpec& spec, const std::array<double, 3>& x) {
  switch (spec.family) {
    case PotentialFamily::zero:
      return 0.0;
    case PotentialFamily::gaussian:
      return -2.0 * sq_norm(x) / (spec.width * spec.width) * shape(spec, x);
    case PotentialFamily::rational_decay: {
      double r2 = sq_norm(x);
      return -2.0 * spec.decay_s * r2 / (1.0 + r2) * shape(spec, x);
    }
    case PotentialFamily::multibump: {
      double v = 0.0;
      for (const auto& b : spec.bumps) {
        double r2 = 0.0, xdot = 0.0;
        for (int d = 0; d < 3; ++d) {
          double dx = x[d] - b.center[d];
          r2 += dx * dx;
          xdot += x[d] * dx;
        }
        double R2 = b.radius * b.radius;
        if (r2 < R2) {
          double f = b.height * std::exp(-r2 / (R2 - r2));
          double denom = (R2 - r2) * (R2 - r2);
          v += -2.0 * xdot * R2 / denom * f;
        }
      }
      return spec.h0 * v;
    }
  }
  return 0.0;
}

double surface_area(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return 2.0 * std::numbers::pi;
    default: return 4.0 * std::numbers::pi;
  }
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

/// ||shape||_r in closed form; infinity when divergent.
double closed_norm(const PotentialSpec& spec, double r, int dim) {
  switch (spec.family) {
    case PotentialFamily::zero:
      return 0.0;
    case PotentialFamily::gaussian: {
      double w2 = spec.width * spec.width;
      return spec.h0 *
             std::pow(std::numbers::pi * w2 / r, 0.5 * dim / r);
    }
    case PotentialFamily::rational_decay: {
      double s = spec.decay_s;
      if (r * s <= 0.5 * dim) return kInf;
      double integral =
          0.5 * surface_area(dim) * std::exp(log_beta(0.5 * dim, r * s - 0.5 * dim));
      return spec.h0 * std::pow(integral, 1.0 / r);
    }
    default:
      return -1.0;  // no closed form, caller falls back to quadrature
  }
}

/// ||<grad shape, x>||_r in closed form; infinity when divergent.
double closed_radial_norm(const PotentialSpec& spec, double r, int dim) {
  switch (spec.family) {
    case PotentialFamily::zero:
      return 0.0;
    case PotentialFamily::gaussian: {
      double w2 = spec.width * spec.width;
      double alpha = r / w2;
      double log_int = std::log(0.5 * surface_area(dim)) +
                       std::lgamma(r + 0.5 * dim) -
                       (r + 0.5 * dim) * std::log(alpha);
      return 2.0 * spec.h0 / w2 * std::exp(log_int / r);
    }
    case PotentialFamily::rational_decay: {
      double s = spec.decay_s;
      if (r * s <= 0.5 * dim) return kInf;
      double log_int = std::log(0.5 * surface_area(dim)) +
                       log_beta(r + 0.5 * dim, r * s - 0.5 * dim);
      return 2.0 * s * spec.h0 * std::exp(log_int / r);
    }
    default:
      return -1.0;
  }
}

double quadrature_norm(const std::vector<double>& f, double r, const Grid& g) {
  double acc = 0.0;
  for (double v : f) acc += std::pow(std::fabs(v), r);
  return std::pow(acc * g.cell_volume(), 1.0 / r);
}

ConditionCheck not_applicable() { return ConditionCheck{}; }

ConditionCheck compare(double lhs, double rhs) {
  ConditionCheck c;
  c.applicable = true;
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = rhs - lhs;
  c.pass = lhs < rhs;
  return c;
}

ConditionCheck boolean_check(bool pass) {
  ConditionCheck c;
  c.applicable = true;
  c.pass = pass;
  c.margin = pass ? 0.0 : -1.0;
  return c;
}

}  // namespace

double eval_potential(const PotentialSpec& spec, const std::array<double, 3>& x) {
  return sign_factor(spec) * shape(spec, x);
}

double eval_radial_derivative(const PotentialSpec& spec,
                              const std::array<double, 3>& x) {
  return sign_factor(spec) * shape_radial(spec, x);
}

PotentialNorms potential_norms(const PotentialSpec& spec, double q, double p,
                               const Grid& grid) {
  if (!(q >= 1.0 && q < 2.0 && p > 2.0))
    throw std::invalid_argument("potential_norms: need 1 <= q < 2 < p");
  const double r1 = 2.0 / (2.0 - q);
  const double r2 = p / (p - q);

  PotentialNorms out;
  double n1 = closed_norm(spec, r1, grid.dim);
  double n2 = closed_norm(spec, r2, grid.dim);
  double nr = closed_radial_norm(spec, r1, grid.dim);
  if (n1 < 0.0) {  // quadrature fallback (multibump)
    auto sampled = sample_potential(spec, grid);
    if (sampled.zero) {
      n1 = n2 = nr = 0.0;
    } else {
      n1 = quadrature_norm(sampled.h, r1, grid);
      n2 = quadrature_norm(sampled.h, r2, grid);
      nr = quadrature_norm(sampled.hx, r1, grid);
    }
  }
  out.norm_2_over_2mq = n1;
  out.norm_p_over_pmq = n2;
  out.norm_radial = nr;
  out.integrable = std::isfinite(n1) && std::isfinite(n2) && std::isfinite(nr);

  switch (spec.family) {
    case PotentialFamily::zero:
      out.upsilon = 0.0;
      break;
    case PotentialFamily::rational_decay:
      out.upsilon = 2.0 * spec.decay_s;
      break;
    default:
      break;  // gaussian / multibump: ratio unbounded, upsilon absent
  }
  return out;
}

AssumptionReport check_assumptions(const PotentialSpec& spec,
                                   const KirchhoffParams& params, int dim,
                                   const Grid& grid, double m_c) {
  const double p = params.p, q = params.q, c = params.c;
  const double gp = params.gamma_p(dim);
  PotentialNorms norms = potential_norms(spec, q, p, grid);
  const bool zero = spec.is_zero();
  const bool nonneg_side = zero || spec.sign == PotentialSign::nonneg;
  const bool nonpos_side = zero || spec.sign == PotentialSign::nonpos;
  const bool supercritical = params.regime(dim) == Regime::supercritical;
  const bool have_mc = std::isfinite(m_c) && m_c > 0.0;

  AssumptionReport rep;

  // Integrability alone is not enough: the positive-side assumption also
  // demands h > 0 on a set of positive measure, which the zero potential
  // fails.
  rep.h_integrable = nonneg_side ? boolean_check(std::isfinite(norms.norm_2_over_2mq) &&
                                       !zero)
                       : not_applicable();
  rep.h_radial_integrable = nonneg_side ? boolean_check(std::isfinite(norms.norm_p_over_pmq) &&
                                       std::isfinite(norms.norm_radial))
                       : not_applicable();
  rep.hbar_integrable = nonpos_side
               ? boolean_check(std::isfinite(norms.norm_2_over_2mq) &&
                               std::isfinite(norms.norm_radial) &&
                               norms.has_upsilon())
               : not_applicable();

  if (nonneg_side && supercritical) {
    double C = gn_constant(dim, p, grid);
    double base = params.a * p * (2.0 - q * gp) /
                  (2.0 * gp * (p - q) * std::pow(C, p));
    double rhs = params.a * q * (p * gp - 2.0) /
                 (2.0 * std::pow(C, q) * gp * (p - q)) *
                 std::pow(base, (2.0 - q * gp) / (p * gp - 2.0)) *
                 std::pow(c, -(1.0 - gp) * (p - q) / (p * gp - 2.0));
    rep.cond_barrier = compare(norms.norm_p_over_pmq, rhs);
  }

  if (nonneg_side && supercritical && have_mc) {
    double rhs = q * (2.0 * p - dim * p + 2.0 * dim) / (p - 2.0) * m_c *
                 std::pow(c, -0.5 * q);
    rep.cond_radial = compare(norms.norm_radial, rhs);
  }

  if (nonpos_side && supercritical && have_mc && norms.has_upsilon()) {
    double frac = 2.0 * p * (1.0 - gp) /
                  (2.0 * (p - q) + (p - 2.0) * norms.upsilon);
    double rhs = std::min(1.0, frac) * q * m_c * std::pow(c, -0.5 * q);
    rep.cond_hbar = compare(norms.norm_2_over_2mq, rhs);
  }

  return rep;
}

SampledPotential sample_potential(const PotentialSpec& spec, const Grid& grid) {
  SampledPotential out;
  if (spec.is_zero()) return out;
  out.zero = false;
  const std::size_t n = grid.size();
  out.h.resize(n);
  out.hx.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto x = grid.point(i);
    out.h[i] = eval_potential(spec, x);
    out.hx[i] = eval_radial_derivative(spec, x);
  }
  return out;
}

}  // namespace kirchhoff
