#include "kirchhoff/solvers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <iostream>
#include <numbers>
#include <random>
#include <stdexcept>

namespace kirchhoff {

namespace {

void axpy(Field& y, double alpha, const Field& x) {
  for (std::size_t i = 0; i < y.samples.size(); ++i)
    y.samples[i] += alpha * x.samples[i];
}

PotentialSpec zero_spec() { return PotentialSpec{}; }

struct DescentResult {
  int iterations = 0;
  double grad_norm = 0.0;
};

/// Projected gradient flow on the mass sphere with Barzilai-Borwein step
/// adaptation and a nonmonotone (10-step memory) acceptance test.
DescentResult descend(Field& u, const KirchhoffParams& params,
                      const SampledPotential& pot, const SolverOptions& opts,
                      int max_iters, double max_step = 1e3) {
  const double c = params.c;
  double step = 0.1 * u.grid.spacing * u.grid.spacing / params.a;
  Field u_prev, g_prev;
  std::deque<double> recent;
  DescentResult res;
  for (int it = 0; it < max_iters; ++it) {
    Field g = constrained_gradient(u, params, pot);
    double gn = std::sqrt(mass(g));
    double scale = std::max(1.0, params.a * grad_norm_sq(u));
    res.grad_norm = gn;
    res.iterations = it;
    if (gn <= opts.grad_tol_rel * scale) return res;

    if (it > 0) {
      Field s = u, y = g;
      axpy(s, -1.0, u_prev);
      axpy(y, -1.0, g_prev);
      double sy = inner(s, y);
      if (sy > 0.0) step = inner(s, s) / sy;
    }
    step = std::clamp(step, 1e-12, max_step);

    double e0 = energy(u, params, pot).total;
    recent.push_back(e0);
    if (recent.size() > 10) recent.pop_front();
    double ref = *std::max_element(recent.begin(), recent.end());

    u_prev = u;
    g_prev = g;
    while (true) {
      Field trial = u_prev;
      axpy(trial, -step, g);
      trial = project_mass(trial, c);
      double e1 = energy(trial, params, pot).total;
      if (e1 <= ref + 1e-10 * (1.0 + std::fabs(ref)) || step <= 1e-12) {
        u = std::move(trial);
        break;
      }
      step *= 0.5;
    }
  }
  res.iterations = max_iters;
  return res;
}

/// Min-max dynamics for supercritical levels: pull the iterate back to its
/// fiber maximum, then take a trust-region-capped tangential descent step.
/// At the fiber maximum the scaling derivative vanishes, so the constrained
/// gradient is orthogonal to the unstable fiber direction and descending it
/// lowers the fiber-max level.
int minmax(Field& u, const KirchhoffParams& params, const PotentialSpec& spec,
           const SampledPotential& pot, const SolverOptions& opts,
           int outer_max = 400) {
  int total = 0;
  double prev_level = std::numeric_limits<double>::infinity();
  const double radius = 0.05 * std::sqrt(params.c);
  for (int outer = 0; outer < outer_max; ++outer) {
    FiberEnergy fe(u, params, spec);
    double t = fiber_argmax(fe, 0.25, 4.0);
    if (!(fe(t) > 0.0)) break;  // barrier lost, let the caller diagnose
    if (std::fabs(std::log(t)) > 1e-12)
      u = project_mass(scale_fiber(u, t), params.c);

    Field g = constrained_gradient(u, params, pot);
    double gn = std::sqrt(mass(g));
    double scale = std::max(1.0, params.a * grad_norm_sq(u));
    if (gn <= 10.0 * opts.grad_tol_rel * scale) break;

    double level = energy(u, params, pot).total;
    double step = std::min(0.1 * u.grid.spacing * u.grid.spacing / params.a,
                           radius / gn);
    bool moved = false;
    while (step * gn > 1e-15) {
      Field trial = u;
      axpy(trial, -step, g);
      trial = project_mass(trial, params.c);
      FiberEnergy fet(trial, params, spec);
      double tt = fiber_argmax(fet, 0.25, 4.0);
      if (fet(tt) > 0.0 &&
          energy(trial, params, pot).total < level + 1e-12 * (1.0 + std::fabs(level))) {
        u = std::move(trial);
        moved = true;
        break;
      }
      step *= 0.5;
    }
    ++total;
    if (!moved) break;
    if (outer > 20 &&
        std::fabs(level - prev_level) < 1e-14 * (1.0 + std::fabs(level)))
      break;
    prev_level = level;
  }
  return total;
}

/// Mass-c fiber family through a reference profile: the supercritical limit
/// ground state is the fiber maximum over the dilate family of the
/// interpolation-quotient maximizer (both solve the same autonomous
/// equation up to scaling), so it can be constructed directly.
Field limit_supercritical_start(const KirchhoffParams& params, const Grid& grid) {
  GnResult gn = gn_constant_full(grid.dim, params.p, grid);
  Field u = project_mass(gn.maximizer, params.c);
  FiberEnergy fe(u, params, PotentialSpec{});
  double t = fiber_argmax(fe, 1e-3, 1e3);
  return project_mass(scale_fiber(u, t), params.c);
}

/// Dense matrix of -Delta from its translation kernel (the operator is
/// circulant along each axis).
Eigen::MatrixXd neg_laplacian_matrix(const Grid& g) {
  const std::size_t n = g.size();
  Field delta = make_field(g);
  delta.samples[0] = 1.0;
  Field kcol = neg_laplacian(delta);

  const int m = g.points_per_dim;
  std::vector<std::array<int, 3>> digits(n, {0, 0, 0});
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rem = i;
    for (int d = g.dim - 1; d >= 0; --d) {
      digits[i][d] = static_cast<int>(rem % static_cast<std::size_t>(m));
      rem /= static_cast<std::size_t>(m);
    }
  }
  std::vector<std::size_t> stride(3, 1);
  for (int d = g.dim - 2; d >= 0; --d)
    stride[d] = stride[d + 1] * static_cast<std::size_t>(m);

  Eigen::MatrixXd A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t flat = 0;
      for (int d = 0; d < g.dim; ++d) {
        int diff = digits[i][d] - digits[j][d];
        if (diff < 0) diff += m;
        flat += stride[d] * static_cast<std::size_t>(diff);
      }
      A(i, j) = kcol.samples[flat];
    }
  return A;
}

void fill_solution(Solution& sol, const KirchhoffParams& params,
                   const SampledPotential& pot, const SolverOptions& opts) {
  Field& u = sol.field;
  u = project_mass(u, params.c);
  if (quadrature(u.grid, u.samples) < 0.0)
    for (double& v : u.samples) v = -v;
  sol.lambda = multiplier(u, params, pot);
  sol.energy = energy(u, params, pot);
  sol.pohozaev_residual = std::fabs(pohozaev(u, params, pot));
  sol.el_residual = el_residual(u, params, pot, sol.lambda);
  double gate = opts.residual_tol * params.a * grad_norm_sq(u);
  sol.converged = sol.el_residual <= gate && all_finite(u);
}

}  // namespace

Solution refine_critical(const Field& u0, const KirchhoffParams& params,
                         const PotentialSpec& spec, const SolverOptions& opts,
                         LevelTag tag) {
  const Grid& g = u0.grid;
  params.validate(g.dim);
  if (mass(u0) <= 0.0)
    throw std::invalid_argument("refine_critical: zero start field");
  SampledPotential pot = sample_potential(spec, g);

  Solution sol;
  sol.level_tag = tag;
  sol.field = project_mass(u0, params.c);
  Field& u = sol.field;
  const std::size_t n = g.size();
  const double p = params.p, q = params.q;

  double lambda = multiplier(u, params, pot);
  auto gate = [&]() { return opts.residual_tol * params.a * grad_norm_sq(u); };
  if (el_residual(u, params, pot, lambda) <= gate()) {
    fill_solution(sol, params, pot, opts);
    sol.iterations = 0;
    return sol;
  }

  if (n > 4096) {
    // Too large for the dense Newton system: gradient-only refinement.
    if (params.regime(g.dim) == Regime::supercritical)
      sol.iterations = minmax(u, params, spec, pot, opts);
    else
      sol.iterations = descend(u, params, pot, opts, opts.max_iters).iterations;
    sol.note = "dense Newton skipped (grid too large), gradient refinement only";
    fill_solution(sol, params, pot, opts);
    return sol;
  }

  Eigen::MatrixXd lap = neg_laplacian_matrix(g);
  const double vol = g.cell_volume();

  auto residual_vec = [&](const Field& uu, double ll, Eigen::VectorXd& F,
                          double& C) {
    double G = grad_norm_sq(uu);
    Field nl = neg_laplacian(uu);
    double coef = params.a + params.b * G;
    for (std::size_t i = 0; i < n; ++i) {
      double v = uu.samples[i];
      double rhs = signed_pow(v, p - 1.0);
      if (!pot.zero) rhs += pot.h[i] * signed_pow(v, q - 1.0);
      F(static_cast<Eigen::Index>(i)) = coef * nl.samples[i] + ll * v - rhs;
    }
    C = mass(uu) - params.c;
  };

  Eigen::VectorXd F(n);
  double C = 0.0;
  residual_vec(u, lambda, F, C);
  double merit = F.squaredNorm() * vol + C * C;

  int it = 0;
  for (; it < opts.newton_max_iters; ++it) {
    double r = std::sqrt(F.squaredNorm() * vol);
    if (r <= gate() && std::fabs(C) <= 1e-10 * params.c) break;

    double G = grad_norm_sq(u);
    Field w = neg_laplacian(u);
    double umax = 0.0;
    for (double v : u.samples) umax = std::max(umax, std::fabs(v));

    Eigen::MatrixXd M(n + 1, n + 1);
    M.setZero();
    double coef = params.a + params.b * G;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        M(i, j) = coef * lap(i, j) +
                  2.0 * params.b * vol * w.samples[i] * w.samples[j];
    for (std::size_t i = 0; i < n; ++i) {
      double v = u.samples[i];
      double av = std::fabs(v);
      double diag = lambda - (p - 1.0) * std::pow(av, p - 2.0);
      if (!pot.zero) {
        // Picard slope h |u|^{q-2} for the sublinear term rather than its
        // true derivative (q-1) h |u|^{q-2}: the exact slope makes the
        // iteration chatter across u = 0 in the tail (the term is only
        // 1/2-Holder there), while the Picard slope sends absorption-
        // dominated points to zero monotonically. Floor |u| to keep the
        // diagonal finite; floored points are effectively frozen.
        double clamped = std::max(av, 1e-12 * umax);
        diag -= pot.h[i] * std::pow(clamped, q - 2.0);
      }
      M(i, i) += diag;
      M(i, n) = v;
      M(n, i) = 2.0 * vol * v;
    }

    Eigen::VectorXd rhs(n + 1);
    rhs.head(n) = -F;
    rhs(n) = -C;
    Eigen::VectorXd delta = M.partialPivLu().solve(rhs);
    if (!delta.allFinite()) {
      sol.note = "Newton step not finite";
      break;
    }

    double alpha = 1.0;
    bool accepted = false;
    Field trial = u;
    double trial_lambda = lambda;
    Eigen::VectorXd Ft(n);
    double Ct = 0.0;
    while (alpha > 1e-9) {
      for (std::size_t i = 0; i < n; ++i)
        trial.samples[i] = u.samples[i] + alpha * delta(static_cast<Eigen::Index>(i));
      trial_lambda = lambda + alpha * delta(n);
      if (all_finite(trial)) {
        residual_vec(trial, trial_lambda, Ft, Ct);
        double mt = Ft.squaredNorm() * vol + Ct * Ct;
        if (mt < merit) {
          u = trial;
          lambda = trial_lambda;
          F = Ft;
          C = Ct;
          merit = mt;
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      sol.note = "Newton stalled (no damped step decreased the residual)";
      break;
    }
    double peak = 0.0;
    for (double v : u.samples) peak = std::max(peak, std::fabs(v));
    if (peak < 1e-10) {
      sol.note = "escape to zero field";
      break;
    }
  }

  sol.iterations = it;
  fill_solution(sol, params, pot, opts);
  return sol;
}

Solution solve_limit_ground_state(const KirchhoffParams& params, const Grid& grid,
                                  const SolverOptions& opts) {
  params.validate(grid.dim);
  Regime reg = params.regime(grid.dim);
  if (reg != Regime::subcritical && reg != Regime::supercritical)
    throw std::invalid_argument(
        "limit ground state: exponent in [2+4/N, 2+8/N] is out of scope");

  PotentialSpec spec = zero_spec();
  SampledPotential pot;  // zero
  Field u;
  if (reg == Regime::subcritical) {
    u = gaussian_start(grid, params.c);
    descend(u, params, pot, opts, opts.max_iters);
  } else {
    u = limit_supercritical_start(params, grid);
    minmax(u, params, spec, pot, opts, 50);
  }

  Solution sol = refine_critical(u, params, spec, opts, LevelTag::limit_ground_state);
  return sol;
}

Solution minimize_global(const KirchhoffParams& params, const PotentialSpec& spec,
                         const Grid& grid, int starts, const SolverOptions& opts) {
  params.validate(grid.dim);
  if (params.regime(grid.dim) != Regime::subcritical)
    throw std::invalid_argument("minimize_global: requires p < 2 + 4/N");
  if (starts < 1) throw std::invalid_argument("minimize_global: starts >= 1");

  Solution limit = solve_limit_ground_state(params, grid, opts);
  SampledPotential pot = sample_potential(spec, grid);
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> shift(-0.25 * grid.half_width,
                                               0.25 * grid.half_width);

  Solution best;
  bool have = false;
  int total_iters = 0;
  for (int k = 0; k < starts; ++k) {
    Field u;
    if (k == 0) {
      u = limit.field;
    } else if (k % 2 == 1) {
      std::array<double, 3> y{0, 0, 0};
      for (int d = 0; d < grid.dim; ++d) y[d] = shift(rng);
      u = project_mass(translate(limit.field, y), params.c);
    } else {
      u = random_smooth_field(grid, params.c, opts.seed + static_cast<std::uint64_t>(k));
    }
    total_iters += descend(u, params, pot, opts, opts.max_iters).iterations;
    Solution cand = refine_critical(u, params, spec, opts, LevelTag::global_min);
    total_iters += cand.iterations;
    if (cand.converged &&
        (!have || cand.energy.total < best.energy.total)) {
      best = std::move(cand);
      have = true;
    }
  }
  if (!have) {
    best = refine_critical(limit.field, params, spec, opts, LevelTag::global_min);
    best.converged = false;
    best.note = "no start converged";
  }
  best.iterations = total_iters;
  best.level_tag = LevelTag::global_min;
  return best;
}

Solution mountain_pass(const KirchhoffParams& params, const PotentialSpec& spec,
                       const Grid& grid, const SolverOptions& opts) {
  params.validate(grid.dim);
  if (params.regime(grid.dim) != Regime::supercritical)
    throw std::invalid_argument("mountain_pass: requires p > 2 + 8/N");
  SampledPotential pot = sample_potential(spec, grid);

  // Stage 1: a fiber path through a reference profile, endpoints in the
  // shallow well and past the barrier, relaxed node-wise. The limit-problem
  // profile is the right shape for a small perturbation.
  Field u0 = limit_supercritical_start(params, grid);
  FiberEnergy fe0(u0, params, spec);
  double t_star = fiber_argmax(fe0);
  double peak = fe0(t_star);
  if (!(peak > 0.0))
    throw std::runtime_error("mountain_pass: no fiber barrier from the start profile");

  double t_hi = t_star;
  while (fe0(t_hi) > -0.25 * peak) t_hi *= 1.5;
  double t_lo = t_star;
  while (std::fabs(fe0(t_lo)) > 1e-3 * peak && t_lo > 1e-6) t_lo *= 0.5;

  const int K = std::max(5, opts.path_nodes);
  std::vector<Field> nodes;
  nodes.reserve(K);
  for (int k = 0; k < K; ++k) {
    double lt = std::log(t_lo) +
                (std::log(t_hi) - std::log(t_lo)) * k / static_cast<double>(K - 1);
    nodes.push_back(project_mass(scale_fiber(u0, std::exp(lt)), params.c));
  }

  std::vector<double> node_step(K, 0.1 * grid.spacing * grid.spacing / params.a);
  auto node_energy = [&](const Field& v) { return energy(v, params, pot).total; };

  double running_max = 0.0;
  int max_idx = 0;
  std::deque<double> history;
  int sweeps = 0;
  for (; sweeps < opts.path_max_sweeps; ++sweeps) {
    running_max = -std::numeric_limits<double>::infinity();
    for (int k = 1; k + 1 < K; ++k) {
      Field gk = constrained_gradient(nodes[k], params, pot);
      double e0 = node_energy(nodes[k]);
      double st = node_step[k];
      while (st > 1e-12) {
        Field trial = nodes[k];
        axpy(trial, -st, gk);
        trial = project_mass(trial, params.c);
        if (node_energy(trial) < e0) {
          nodes[k] = std::move(trial);
          node_step[k] = st * 1.2;
          break;
        }
        st *= 0.5;
      }
      double e1 = node_energy(nodes[k]);
      if (e1 > running_max) {
        running_max = e1;
        max_idx = k;
      }
    }
    history.push_back(running_max);
    if (static_cast<int>(history.size()) > opts.path_stall_window) {
      double old = history.front();
      history.pop_front();
      if (std::fabs(running_max - old) <
          opts.path_stall_tol * (1.0 + std::fabs(running_max)))
        break;
    }
  }

  if (max_idx == 1 || max_idx == K - 2) {
    Solution sol;
    sol.field = nodes[max_idx];
    sol.level_tag = LevelTag::mountain_pass;
    sol.converged = false;
    sol.note = "path max at an endpoint: mountain-pass geometry not certified";
    return sol;
  }

  // Stage 2: saddle refinement of the max node.
  Field u = nodes[max_idx];
  int mm_iters = minmax(u, params, spec, pot, opts);
  Solution sol = refine_critical(u, params, spec, opts, LevelTag::mountain_pass);
  sol.iterations += sweeps + mm_iters;
  sol.level_tag = LevelTag::mountain_pass;
  return sol;
}

Field linking_surface_point(const Field& v_c, const std::array<double, 3>& y,
                            double s) {
  return scale_fiber(translate(v_c, y), std::exp(s));
}

LevelBracket linking_level(const KirchhoffParams& params, const PotentialSpec& spec,
                           const Grid& grid, double R, double s1, double s2,
                           const SolverOptions& opts) {
  params.validate(grid.dim);
  if (params.regime(grid.dim) != Regime::supercritical)
    throw std::invalid_argument("linking_level: requires p > 2 + 8/N");
  if (!(R > 0.0 && s1 < s2))
    throw std::invalid_argument("linking_level: need R > 0 and s1 < s2");

  Solution lim = solve_limit_ground_state(params, grid, opts);
  const Field& v = lim.field;
  LevelBracket lb;
  lb.m_c = lim.energy.total;
  double eps = std::isnan(opts.link_eps) ? 0.1 * lb.m_c : opts.link_eps;

  if ((support_radius(v) + R) * std::exp(-s1) > grid.half_width)
    std::cerr << "[kirchhoff] warning: linking surface at s1 exceeds the box, "
                 "tails clipped\n";

  const int dim = grid.dim;
  const double q = params.q;
  double G = grad_norm_sq(v);
  double Pp = lp_norm_p(v, params.p);
  double gp = params.gamma_p(dim);
  std::vector<double> vq(v.samples.size());
  for (std::size_t i = 0; i < vq.size(); ++i)
    vq[i] = std::pow(std::fabs(v.samples[i]), q);

  auto surf_energy = [&](const std::array<double, 3>& y, double s) {
    double t = std::exp(s);
    double val = 0.5 * params.a * G * t * t +
                 0.25 * params.b * G * G * t * t * t * t -
                 Pp * std::pow(t, params.p * gp) / params.p;
    if (!spec.is_zero()) {
      double acc = 0.0;
      for (std::size_t i = 0; i < vq.size(); ++i) {
        if (vq[i] == 0.0) continue;
        auto x = grid.point(i);
        for (int d = 0; d < dim; ++d) x[d] = (x[d] + y[d]) / t;
        acc += eval_potential(spec, x) * vq[i];
      }
      val -= std::pow(t, 0.5 * q * dim - dim) * acc * grid.cell_volume() / q;
    }
    return val;
  };

  // Lattice over Q = B_R x [s1, s2]; dim >= 2 uses a polar lattice in the
  // first two coordinates.
  auto y_lattice = [&](int n_rad, int n_ang) {
    std::vector<std::array<double, 3>> ys;
    if (dim == 1) {
      for (int i = 0; i < n_rad; ++i)
        ys.push_back({-R + 2.0 * R * i / (n_rad - 1.0), 0.0, 0.0});
    } else {
      ys.push_back({0, 0, 0});
      for (int i = 1; i < n_rad; ++i) {
        double r = R * i / (n_rad - 1.0);
        for (int j = 0; j < n_ang; ++j) {
          double th = 2.0 * std::numbers::pi * j / n_ang;
          ys.push_back({r * std::cos(th), r * std::sin(th), 0.0});
        }
      }
    }
    return ys;
  };
  auto s_lattice = [&](int n_s) {
    std::vector<double> ss(n_s);
    for (int i = 0; i < n_s; ++i) ss[i] = s1 + (s2 - s1) * i / (n_s - 1.0);
    return ss;
  };

  lb.interior_max = -std::numeric_limits<double>::infinity();
  for (const auto& y : y_lattice(opts.link_radii, opts.link_angles))
    for (double s : s_lattice(opts.link_s_values)) {
      double e = surf_energy(y, s);
      if (e > lb.interior_max) {
        lb.interior_max = e;
        lb.argmax_y = y;
        lb.argmax_s = s;
      }
    }

  // Boundary faces, lattice refined 2x: the s end caps and |y| = R.
  lb.boundary_max = -std::numeric_limits<double>::infinity();
  for (const auto& y : y_lattice(2 * opts.link_radii, 2 * opts.link_angles))
    for (double s : {s1, s2})
      lb.boundary_max = std::max(lb.boundary_max, surf_energy(y, s));
  {
    std::vector<std::array<double, 3>> rim;
    if (dim == 1) {
      rim.push_back({-R, 0, 0});
      rim.push_back({R, 0, 0});
    } else {
      for (int j = 0; j < 2 * opts.link_angles; ++j) {
        double th = 2.0 * std::numbers::pi * j / (2 * opts.link_angles);
        rim.push_back({R * std::cos(th), R * std::sin(th), 0.0});
      }
    }
    for (const auto& y : rim)
      for (double s : s_lattice(2 * opts.link_s_values))
        lb.boundary_max = std::max(lb.boundary_max, surf_energy(y, s));
  }

  PotentialNorms norms = potential_norms(spec, q, params.p, grid);
  lb.upper_bound_L =
      lb.m_c + norms.norm_2_over_2mq * std::pow(params.c, 0.5 * q) / q;
  lb.boundary_below_interior = lb.boundary_max < lb.interior_max;
  lb.boundary_below_mc_eps = lb.boundary_max < lb.m_c + eps;
  lb.interior_below_2mc = lb.interior_max < 2.0 * lb.m_c;
  return lb;
}

std::array<double, 3> barycenter(const Field& u) {
  if (mass(u) <= 0.0) throw std::invalid_argument("barycenter: zero field");
  Field nu = unit_ball_average(u);
  double mx = 0.0;
  for (double v : nu.samples) mx = std::max(mx, v);
  double den = 0.0;
  std::array<double, 3> num{0, 0, 0};
  for (std::size_t i = 0; i < nu.samples.size(); ++i) {
    double w = nu.samples[i] - 0.5 * mx;
    if (w <= 0.0) continue;
    den += w;
    auto x = u.grid.point(i);
    for (int d = 0; d < u.grid.dim; ++d) num[d] += w * x[d];
  }
  std::array<double, 3> beta{0, 0, 0};
  for (int d = 0; d < u.grid.dim; ++d) beta[d] = num[d] / den;
  return beta;
}

Field random_smooth_field(const Grid& grid, double c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double L = grid.half_width;
  std::uniform_real_distribution<double> center(-0.15 * L, 0.15 * L);
  std::uniform_real_distribution<double> width(0.02 * L, 0.07 * L);
  std::normal_distribution<double> amp(0.0, 1.0);

  struct BumpP {
    std::array<double, 3> c{0, 0, 0};
    double w = 1.0, a = 0.0;
  };
  std::vector<BumpP> bumps(8);
  for (auto& b : bumps) {
    for (int d = 0; d < grid.dim; ++d) b.c[d] = center(rng);
    b.w = width(rng);
    b.a = amp(rng);
  }

  Field u = make_field(grid);
  for (std::size_t i = 0; i < u.samples.size(); ++i) {
    auto x = grid.point(i);
    double v = 0.0;
    for (const auto& b : bumps) {
      double r2 = 0.0;
      for (int d = 0; d < grid.dim; ++d) {
        double dx = x[d] - b.c[d];
        r2 += dx * dx;
      }
      v += b.a * std::exp(-r2 / (2.0 * b.w * b.w));
    }
    u.samples[i] = v;
  }
  return project_mass(u, c);
}

Field gaussian_start(const Grid& grid, double c, double width,
                     const std::array<double, 3>& center) {
  Field u = make_field(grid);
  for (std::size_t i = 0; i < u.samples.size(); ++i) {
    auto x = grid.point(i);
    double r2 = 0.0;
    for (int d = 0; d < grid.dim; ++d) {
      double dx = x[d] - center[d];
      r2 += dx * dx;
    }
    u.samples[i] = std::exp(-0.5 * r2 / (width * width));
  }
  return project_mass(u, c);
}

}  // namespace kirchhoff
