// End-to-end acceptance gate. Each numbered criterion prints exactly one
// pass/fail line; the exit code is the number of failures.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "kirchhoff/landscape.hpp"
#include "kirchhoff/solvers.hpp"

using namespace kirchhoff;

namespace {

int g_failures = 0;

void report(int number, const std::string& title, bool pass,
            const std::string& detail) {
  std::printf("criterion %d (%s): %s  [%s]\n", number, title.c_str(),
              pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

Field unit_gaussian(const Grid& g) {
  Field u = make_field(g);
  for (std::size_t i = 0; i < u.samples.size(); ++i) {
    double x = g.coord(static_cast<int>(i));
    u.samples[i] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  }
  return u;
}

PotentialSpec gaussian_pot(double h0) {
  PotentialSpec s;
  s.family = PotentialFamily::gaussian;
  s.h0 = h0;
  return s;
}

// --- criterion 1: fiber scaling identities --------------------------------

void criterion_scaling() {
  Grid g = make_grid(1, 20.0, 1024);
  const double p = 3.0;
  const double gp = gamma_exponent(p, 1);
  double worst_m = 0.0, worst_g = 0.0, worst_p = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Field u = random_smooth_field(g, 1.0, seed);
    double m0 = mass(u), g0 = grad_norm_sq(u), p0 = lp_norm_p(u, p);
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
      Field ut = scale_fiber(u, t);
      worst_m = std::max(worst_m, std::fabs(mass(ut) - m0) / m0);
      worst_g = std::max(worst_g, std::fabs(grad_norm_sq(ut) - t * t * g0) /
                                      (t * t * g0));
      double want = std::pow(t, p * gp) * p0;
      worst_p = std::max(worst_p, std::fabs(lp_norm_p(ut, p) - want) / want);
    }
  }
  bool pass = worst_m <= 1e-6 && worst_g <= 1e-4 && worst_p <= 1e-4;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "mass err %.2e <= 1e-6, grad err %.2e <= 1e-4, power err "
                "%.2e <= 1e-4",
                worst_m, worst_g, worst_p);
  report(1, "fiber scaling identities", pass, buf);
}

// --- criterion 2: closed-form gaussian oracle -----------------------------

struct OracleResult {
  double mass_err = 0.0, grad_err = 0.0, quartic_err = 0.0, level = 0.0;
};

OracleResult gaussian_oracle(int points) {
  Grid g = make_grid(1, 20.0, points);
  Field u = unit_gaussian(g);
  KirchhoffParams P;
  P.p = 4.0;
  OracleResult r;
  r.mass_err = std::fabs(mass(u) - 1.0);
  r.grad_err = std::fabs(grad_norm_sq(u) - 0.5);
  r.quartic_err =
      std::fabs(lp_norm_p(u, 4.0) - 1.0 / std::sqrt(2.0 * std::numbers::pi));
  r.level = energy_limit(u, P);
  return r;
}

void criterion_oracle() {
  OracleResult r = gaussian_oracle(1024);
  bool pass = r.mass_err <= 1e-10 && r.grad_err <= 1e-8 &&
              r.quartic_err <= 1e-8 && std::fabs(r.level - 0.212764) <= 1e-6;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "mass %.1e, grad %.1e, quartic %.1e, level %.9f vs 0.212764",
                r.mass_err, r.grad_err, r.quartic_err, r.level);
  report(2, "gaussian closed-form oracle", pass, buf);
}

// --- criterion 3: best interpolation constant -----------------------------

void criterion_gn() {
  Grid g = make_grid(1, 20.0, 1024);
  const double p = 4.0;
  const double gamma = gamma_exponent(p, 1);
  double C = gn_constant(1, p, g);

  // soliton w = sqrt(2) sech: |w|_2^2 = 4, |w'|_2^2 = 4/3, int w^4 = 16/3
  double exact = std::pow(16.0 / 3.0, 0.25) /
                 (std::pow(4.0 / 3.0, 0.5 * gamma) *
                  std::pow(4.0, 0.5 * (1.0 - gamma)));
  double rel = std::fabs(C - exact) / exact;

  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Field u = random_smooth_field(g, 0.4 + 0.05 * double(seed % 13), seed);
    double lhs = std::pow(lp_norm_p(u, p), 1.0 / p);
    double rhs = C * std::pow(grad_norm_sq(u), 0.5 * gamma) *
                 std::pow(mass(u), 0.5 * (1.0 - gamma));
    worst = std::max(worst, lhs / rhs - 1.0);
  }
  bool pass = rel <= 1e-3 && worst <= 1e-8;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "constant rel err %.2e <= 1e-3, worst violation %.2e <= 1e-8",
                rel, worst);
  report(3, "sharp interpolation constant", pass, buf);
}

// --- criterion 4: scaling-derivative identity -----------------------------

void criterion_pohozaev() {
  Grid g = make_grid(1, 20.0, 1024);
  KirchhoffParams P;  // p = 3, q = 1.5
  PotentialSpec plus = gaussian_pot(0.5);
  PotentialSpec minus = gaussian_pot(0.5);
  minus.sign = PotentialSign::nonpos;
  const double e = 1e-5;
  double worst = 0.0;
  for (const PotentialSpec& spec : {plus, minus}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Field u = random_smooth_field(g, 1.0, 100 + seed);
      FiberEnergy fe(u, P, spec);
      double fd = (fe(1.0 + e) - fe(1.0 - e)) / (2.0 * e);
      double pz = pohozaev(u, P, spec);
      worst = std::max(worst, std::fabs(pz - fd) /
                                  std::max(std::fabs(fd), 1e-12));
    }
  }
  bool pass = worst <= 2e-3;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "worst rel mismatch %.2e <= 2e-3 over both sign families",
                worst);
  report(4, "scaling derivative identity", pass, buf);
}

// --- criterion 5: global minimization regime ------------------------------

struct MinLevels {
  double l_c = 0.0, l_inf = 0.0, l_half = 0.0;
  double residual_rel = 0.0, min_sample = 0.0;
  bool converged = false;
};

MinLevels min_levels(int points) {
  Grid g = make_grid(1, 20.0, points);
  KirchhoffParams P;
  P.p = 3.0;
  MinLevels out;
  Solution sol = minimize_global(P, gaussian_pot(0.1), g, 4);
  Solution lim = solve_limit_ground_state(P, g);
  KirchhoffParams Ph = P;
  Ph.c = 0.5;
  Solution half = solve_limit_ground_state(Ph, g);
  out.converged = sol.converged && lim.converged && half.converged;
  out.l_c = sol.energy.total;
  out.l_inf = lim.energy.total;
  out.l_half = half.energy.total;
  out.residual_rel =
      sol.el_residual / (P.a * grad_norm_sq(sol.field));
  out.min_sample = 0.0;
  for (double v : sol.field.samples)
    out.min_sample = std::min(out.min_sample, v);
  return out;
}

void criterion_minimization(MinLevels* cache) {
  MinLevels r = min_levels(1024);
  *cache = r;
  bool pass = r.converged && r.residual_rel <= 1e-6 &&
              r.min_sample >= -1e-8 && r.l_c < r.l_inf - 1e-4 &&
              r.l_inf < -1e-4 && r.l_inf < 2.0 * r.l_half - 1e-4;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "l_c %.6f < l_inf %.6f < 0, subadd margin %.2e, residual "
                "%.1e, min sample %.1e",
                r.l_c, r.l_inf, 2.0 * r.l_half - r.l_inf, r.residual_rel,
                r.min_sample);
  report(5, "constrained minimization regime", pass, buf);
}

// --- criterion 6: mountain-pass regime ------------------------------------

struct MpLevels {
  double m_hc = 0.0, m_c = 0.0, zero_match_rel = 0.0;
  double pohozaev_rel = 0.0, lambda = 0.0;
  bool profile_ok = false, converged = false;
};

MpLevels mp_levels(int points) {
  Grid g = make_grid(1, 1.25, points);
  KirchhoffParams P;
  P.p = 12.0;
  PotentialSpec zero;
  LandscapeProfile prof0 = phi_profile(P, zero, g);
  PotentialSpec sp = gaussian_pot(1.0);
  PotentialNorms unit = potential_norms(sp, P.q, P.p, g);
  sp.h0 = 0.1 * prof0.thr_barrier / unit.norm_p_over_pmq;

  MpLevels out;
  LandscapeProfile prof = phi_profile(P, sp, g);
  out.profile_ok = prof.positive_region && 0.0 < prof.t1 &&
                   prof.t1 < prof.r1 && prof.r1 < prof.t2 &&
                   prof.t2 < prof.r2 &&
                   std::fabs(prof.phi(prof.r1)) <= 1e-8 &&
                   std::fabs(prof.phi(prof.r2)) <= 1e-8;

  Solution lim = solve_limit_ground_state(P, g);
  Solution mp = mountain_pass(P, sp, g);
  Solution mp0 = mountain_pass(P, zero, g);
  out.converged = lim.converged && mp.converged && mp0.converged;
  out.m_hc = mp.energy.total;
  out.m_c = lim.energy.total;
  out.lambda = mp.lambda;
  out.pohozaev_rel =
      std::fabs(mp.pohozaev_residual) / (P.a * grad_norm_sq(mp.field));
  out.zero_match_rel =
      std::fabs(mp0.energy.total - lim.energy.total) / lim.energy.total;
  return out;
}

void criterion_mountain_pass(MpLevels* cache) {
  MpLevels r = mp_levels(1024);
  *cache = r;
  bool pass = r.profile_ok && r.converged && r.pohozaev_rel <= 1e-4 &&
              r.lambda > 0.0 && r.m_hc < r.m_c - 1e-5 &&
              r.zero_match_rel <= 1e-4;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "profile %s, m_hc %.6f < m_c %.6f, |P| rel %.1e, lambda "
                "%.2f, zero-h match %.1e",
                r.profile_ok ? "ordered" : "BROKEN", r.m_hc, r.m_c,
                r.pohozaev_rel, r.lambda, r.zero_match_rel);
  report(6, "mountain-pass regime", pass, buf);
}

// --- criterion 7: linking regime ------------------------------------------

void criterion_linking() {
  Grid g = make_grid(1, 1.25, 1024);
  KirchhoffParams P;
  P.p = 12.0;
  Solution lim = solve_limit_ground_state(P, g);
  double m_c = lim.energy.total;

  PotentialSpec sp;
  sp.family = PotentialFamily::rational_decay;
  sp.sign = PotentialSign::nonpos;
  sp.decay_s = 1.0;
  sp.h0 = 1.0;
  PotentialNorms unit = potential_norms(sp, P.q, P.p, g);
  sp.h0 = 0.5 * m_c * P.q /
          (unit.norm_2_over_2mq * std::pow(P.c, 0.5 * P.q));
  PotentialNorms norms = potential_norms(sp, P.q, P.p, g);

  LevelBracket lb = linking_level(P, sp, g, 0.5, -0.5, 0.5);
  Field u0 = linking_surface_point(lim.field, lb.argmax_y, lb.argmax_s);
  Solution cand = refine_critical(u0, P, sp, {}, LevelTag::linking_candidate);

  // multiplier lower bound from the constrained identities:
  // lambda c >= 2/(N(p-2)-4) (2p(1-gp) m_c
  //             - (2(p-q) + (p-2) Upsilon)/q |hbar| c^{q/2})
  const double gp = P.gamma_p(1);
  const double denom = 1.0 * (P.p - 2.0) - 4.0;
  double hbar = norms.norm_2_over_2mq * std::pow(P.c, 0.5 * P.q);
  double bound = (2.0 / denom) *
                 (2.0 * P.p * (1.0 - gp) * m_c -
                  (2.0 * (P.p - P.q) + (P.p - 2.0) * norms.upsilon) / P.q *
                      hbar) /
                 P.c;

  bool pass = lim.converged && cand.converged &&
              lb.boundary_below_interior && lb.interior_max > m_c &&
              lb.interior_max < 2.0 * m_c && cand.lambda > 0.0 &&
              cand.lambda >= bound - 1e-6;
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "boundary %.4f < interior %.4f, m_c %.4f < interior < 2 m_c "
                "%.4f, lambda %.2f >= bound %.2f",
                lb.boundary_max, lb.interior_max, m_c, 2.0 * m_c, cand.lambda,
                bound);
  report(7, "linking regime", pass, buf);
}

// --- criterion 8: barycenter ----------------------------------------------

void criterion_barycenter() {
  Grid g = make_grid(1, 20.0, 1024);
  const double h = g.spacing;
  Field u = gaussian_start(g, 1.0);

  double radial_err = std::fabs(barycenter(u)[0]);

  double shift_err = 0.0;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> z(-5.0, 5.0);
  for (int k = 0; k < 10; ++k) {
    double zk = z(rng);
    Field v = translate(u, {zk, 0, 0});
    shift_err = std::max(shift_err,
                         std::fabs(barycenter(v)[0] - barycenter(u)[0] - zk));
  }

  Field base = translate(u, {1.3, 0, 0});
  std::array<double, 3> b0 = barycenter(base);
  Field m2 = base, p3 = base;
  for (double& s : m2.samples) s *= -2.0;
  for (double& s : p3.samples) s *= 3.0;
  bool exact_m2 = barycenter(m2)[0] == b0[0];  // power of two: bitwise
  double err_p3 = std::fabs(barycenter(p3)[0] - b0[0]);

  bool pass = radial_err <= 0.5 * h && shift_err <= h && exact_m2 &&
              err_p3 <= 1e-12;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "radial %.1e <= %.3f, shift %.1e <= %.3f, t=-2 %s, t=3 err "
                "%.1e",
                radial_err, 0.5 * h, shift_err, h,
                exact_m2 ? "bitwise" : "DIFFERS", err_p3);
  report(8, "barycenter invariances", pass, buf);
}

// --- criterion 9: refinement stability ------------------------------------

void criterion_refinement(const MinLevels& min_coarse,
                          const MpLevels& mp_coarse) {
  OracleResult oc = gaussian_oracle(1024);
  OracleResult of = gaussian_oracle(2048);
  double d_oracle = std::fabs(of.level - oc.level);

  MinLevels mf = min_levels(2048);
  double d_lc = std::fabs(mf.l_c - min_coarse.l_c) / std::fabs(min_coarse.l_c);
  double d_linf =
      std::fabs(mf.l_inf - min_coarse.l_inf) / std::fabs(min_coarse.l_inf);

  MpLevels pf = mp_levels(2048);
  double d_mhc = std::fabs(pf.m_hc - mp_coarse.m_hc) / mp_coarse.m_hc;
  double d_mc = std::fabs(pf.m_c - mp_coarse.m_c) / mp_coarse.m_c;

  bool pass = mf.converged && pf.converged && d_oracle <= 1e-6 &&
              d_lc <= 1e-4 && d_linf <= 1e-4 && d_mhc <= 1e-4 && d_mc <= 1e-4;
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "oracle drift %.1e <= 1e-6; level drifts l_c %.1e, l_inf "
                "%.1e, m_hc %.1e, m_c %.1e <= 1e-4",
                d_oracle, d_lc, d_linf, d_mhc, d_mc);
  report(9, "refinement stability", pass, buf);
}

}  // namespace

int main() {
  criterion_scaling();
  criterion_oracle();
  criterion_gn();
  criterion_pohozaev();
  MinLevels min_coarse;
  criterion_minimization(&min_coarse);
  MpLevels mp_coarse;
  criterion_mountain_pass(&mp_coarse);
  criterion_linking();
  criterion_barycenter();
  criterion_refinement(min_coarse, mp_coarse);
  std::printf("%d of 9 criteria passed\n", 9 - g_failures);
  return g_failures;
}
