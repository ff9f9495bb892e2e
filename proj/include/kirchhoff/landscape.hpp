#pragma once

#include <vector>

#include "kirchhoff/functionals.hpp"

namespace kirchhoff {

/// gamma_p = N(p-2)/(2p).
double gamma_exponent(double p, int dim);

struct GnResult {
  double c_np = 0.0;
  Field maximizer;  // interpolation-quotient maximizer, mass 1
  int iterations = 0;
  bool converged = false;
};

/// Best constant of |u|_p <= C |grad u|_2^{gamma} |u|_2^{1-gamma}, computed
/// by maximizing the interpolation quotient from a Gaussian start.
/// Deterministic given the grid.
GnResult gn_constant_full(int dim, double p, const Grid& grid);

/// Cached per (dim, p, grid) within the process.
double gn_constant(int dim, double p, const Grid& grid);

/// Landscape of the gradient-norm lower bound
/// phi(t) = a/2 t^2 - alpha t^{p gp} - beta t^{q gp}
/// with alpha = C^p c^{(p - p gp)/2} / p and
/// beta = C^q c^{q(1-gp)/2} ||h||_{p/(p-q)} / q.
struct LandscapeProfile {
  double gamma_p = 0.0;
  double c_np = 0.0;
  double alpha = 0.0, beta = 0.0;  // coefficients above
  double a = 0.0, p_gp = 0.0, q_gp = 0.0;
  double t_bar = 0.0;     // unique maximum of psi
  double psi_t_bar = 0.0; // its value (closed form)
  double t1 = 0.0;        // local min of phi, negative level
  double t2 = 0.0;        // global max of phi, positive level
  double r1 = 0.0, r2 = 0.0;  // roots of phi; r1 = 0 when beta = 0
  bool positive_region = false;
  // Right sides of the smallness conditions. The level-dependent ones are
  // stored per unit m_c and multiplied out when m_c is supplied.
  double thr_barrier = 0.0;
  double thr_radial = 0.0;  // NaN unless m_c supplied
  double thr_hbar = 0.0;  // NaN unless m_c supplied
  double thr_radial_per_mc = 0.0;
  double thr_hbar_per_mc = 0.0;

  double phi(double t) const;
  double psi(double t) const;
};

/// Requires the supercritical regime. Pass m_c when available to fill the
/// level-dependent thresholds. positive_region = false mirrors the sharp
/// smallness condition failing (phi <= 0 for all t > 0).
LandscapeProfile phi_profile(const KirchhoffParams& params,
                             const PotentialSpec& spec, const Grid& grid,
                             double m_c = std::numeric_limits<double>::quiet_NaN());

/// t -> I(t * u) without materializing the scaled field: closed scaling laws
/// for the kinetic, nonlocal and power terms; exact change of variables for
/// the perturbation quadrature (h evaluated analytically at y/t).
class FiberEnergy {
 public:
  FiberEnergy(const Field& u, const KirchhoffParams& params,
              const PotentialSpec& spec);
  double operator()(double t) const;
  double grad_sq() const { return grad_sq_; }

 private:
  const Grid grid_;
  KirchhoffParams params_;
  PotentialSpec spec_;
  double grad_sq_ = 0.0;
  double power_int_ = 0.0;       // \int |u|^p
  std::vector<double> abs_uq_;   // |u|^q samples (empty when h = 0)
};

double fiber_energy(const Field& u, double t, const KirchhoffParams& params,
                    const PotentialSpec& spec);

/// argmax of FiberEnergy over [t_lo, t_hi] by golden section on log t.
double fiber_argmax(const FiberEnergy& fe, double t_lo = 1e-2,
                    double t_hi = 1e2);

}  // namespace kirchhoff
