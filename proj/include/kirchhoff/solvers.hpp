#pragma once

#include <cstdint>
#include <string>

#include "kirchhoff/landscape.hpp"

namespace kirchhoff {

enum class LevelTag { global_min, limit_ground_state, mountain_pass, linking_candidate };

struct Solution {
  Field field;
  double lambda = 0.0;
  EnergyBreakdown energy;
  double pohozaev_residual = 0.0;
  double el_residual = 0.0;
  LevelTag level_tag = LevelTag::global_min;
  int iterations = 0;
  bool converged = false;
  std::string note;  // failure mode / diagnostics
};

struct LevelBracket {
  double m_c = 0.0;
  double interior_max = 0.0;
  double boundary_max = 0.0;
  double upper_bound_L = 0.0;  // m_c + ||hbar||_{2/(2-q)} c^{q/2} / q
  bool boundary_below_interior = false;
  bool boundary_below_mc_eps = false;  // boundary_max < m_c + eps
  bool interior_below_2mc = false;
  std::array<double, 3> argmax_y{0, 0, 0};
  double argmax_s = 0.0;
};

struct SolverOptions {
  double grad_tol_rel = 1e-7;   // stop descent at |g|_2 <= tol * scale
  double residual_tol = 1e-6;   // convergence gate, relative to a*|grad u|^2
  int max_iters = 20000;
  int newton_max_iters = 50;
  std::uint64_t seed = 20240817;
  int starts = 8;
  // mountain-pass path stage
  int path_nodes = 33;
  double path_stall_tol = 1e-7;
  int path_stall_window = 50;
  int path_max_sweeps = 2000;
  // linking lattice
  int link_radii = 17;
  int link_angles = 16;
  int link_s_values = 25;
  double link_eps = std::numeric_limits<double>::quiet_NaN();  // default 0.1*m_c
};

/// Ground state of the autonomous limit problem. Subcritical: global
/// minimizer on the mass sphere, level < 0. Supercritical: critical point
/// found by minimizing over the fiber-maximized manifold, level m_c > 0.
/// Rejects the L^2-critical exponent p = 2 + 8/N.
Solution solve_limit_ground_state(const KirchhoffParams& params, const Grid& grid,
                                  const SolverOptions& opts = {});

/// Mass-subcritical regime (h >= 0): multi-start projected gradient flow, best minimizer.
Solution minimize_global(const KirchhoffParams& params, const PotentialSpec& spec,
                         const Grid& grid, int starts,
                         const SolverOptions& opts = {});

/// Mass-supercritical regime, h >= 0: path relaxation estimate followed by ridge descent
/// and Newton refinement of the max node.
Solution mountain_pass(const KirchhoffParams& params, const PotentialSpec& spec,
                       const Grid& grid, const SolverOptions& opts = {});

/// Mass-supercritical regime, h <= 0: evaluates the test surface s * v_c(.-y) over the
/// (y, s) lattice on Q = B_R x [s1, s2] and certifies the level bracket.
LevelBracket linking_level(const KirchhoffParams& params, const PotentialSpec& spec,
                           const Grid& grid, double R, double s1, double s2,
                           const SolverOptions& opts = {});

/// Materializes the lattice point (y, s) of the linking surface.
Field linking_surface_point(const Field& v_c, const std::array<double, 3>& y,
                            double s);

/// Newton refinement of the Euler-Lagrange system augmented with the mass
/// constraint, with damped steps and an initial tangent-descent phase.
Solution refine_critical(const Field& u0, const KirchhoffParams& params,
                         const PotentialSpec& spec,
                         const SolverOptions& opts = {},
                         LevelTag tag = LevelTag::linking_candidate);

/// Barycenter via local unit-ball averages of |u|:
/// nu = avg_{B_1} |u|, uhat = (nu - max(nu)/2)^+, beta = \int uhat x / \int uhat.
std::array<double, 3> barycenter(const Field& u);

/// Deterministic smooth random field with Gaussian envelope, mass c.
Field random_smooth_field(const Grid& grid, double c, std::uint64_t seed);

/// Ground-state-shaped start profile (Gaussian bump), mass c.
Field gaussian_start(const Grid& grid, double c, double width = 1.0,
                     const std::array<double, 3>& center = {0, 0, 0});

}  // namespace kirchhoff
