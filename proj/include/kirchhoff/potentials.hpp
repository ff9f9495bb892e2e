#pragma once

#include <array>
#include <limits>
#include <vector>

#include "kirchhoff/field.hpp"
#include "kirchhoff/grid.hpp"

namespace kirchhoff {

struct KirchhoffParams;  // functionals.hpp

enum class PotentialFamily { zero, gaussian, rational_decay, multibump };
enum class PotentialSign { nonneg, nonpos };

struct Bump {
  std::array<double, 3> center{0, 0, 0};
  double radius = 1.0;
  double height = 1.0;
};

/// Analytic perturbation family. The family shape is nonnegative; `sign`
/// selects h = +shape (nonneg) or h = -shape (nonpos, with hbar = -h).
struct PotentialSpec {
  PotentialFamily family = PotentialFamily::zero;
  PotentialSign sign = PotentialSign::nonneg;
  double h0 = 0.0;       // amplitude, >= 0
  double width = 1.0;    // gaussian: h0 * exp(-|x|^2 / width^2)
  double decay_s = 1.0;  // rational: h0 * (1 + |x|^2)^{-s}
  std::vector<Bump> bumps;

  bool is_zero() const { return family == PotentialFamily::zero || h0 == 0.0; }
};

/// Signed value of h at x.
double eval_potential(const PotentialSpec& spec, const std::array<double, 3>& x);

/// <grad h, x> from the closed-form radial derivative (signed).
double eval_radial_derivative(const PotentialSpec& spec,
                              const std::array<double, 3>& x);

struct PotentialNorms {
  double norm_2_over_2mq = 0.0;  // ||h||_{2/(2-q)}
  double norm_p_over_pmq = 0.0;  // ||h||_{p/(p-q)}
  double norm_radial = 0.0;      // ||<grad h, x>||_{2/(2-q)}
  double upsilon = std::numeric_limits<double>::quiet_NaN();  // NaN = absent
  bool integrable = true;        // false when a requested norm diverges

  bool has_upsilon() const { return upsilon == upsilon; }
};

/// Norms entering the admissibility conditions. Closed form for the zero,
/// gaussian and rational families; grid quadrature for multibump.
/// Requires 1 <= q < 2 < p. Flags non-integrability instead of throwing.
PotentialNorms potential_norms(const PotentialSpec& spec, double q, double p,
                               const Grid& grid);

struct ConditionCheck {
  bool applicable = false;
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs when applicable
};

struct AssumptionReport {
  ConditionCheck h_integrable, h_radial_integrable, hbar_integrable;
  ConditionCheck cond_barrier, cond_radial, cond_hbar;
};

/// Evaluates the structural assumptions on h and the smallness conditions
/// for the current regime. m_c is the limit-problem min-max level; pass NaN
/// when the supercritical checks are not requested.
AssumptionReport check_assumptions(const PotentialSpec& spec,
                                   const KirchhoffParams& params, int dim,
                                   const Grid& grid, double m_c);

/// h and <grad h, x> sampled on the grid, for the functionals. Empty arrays
/// for the zero potential.
struct SampledPotential {
  std::vector<double> h;
  std::vector<double> hx;
  bool zero = true;
};

SampledPotential sample_potential(const PotentialSpec& spec, const Grid& grid);

}  // namespace kirchhoff
