#include <doctest.h>

#include <cmath>

#include "kirchhoff/landscape.hpp"
#include "kirchhoff/solvers.hpp"

using namespace kirchhoff;

namespace {

PotentialSpec gaussian_pot(double h0, double w = 1.0) {
  PotentialSpec s;
  s.family = PotentialFamily::gaussian;
  s.h0 = h0;
  s.width = w;
  return s;
}

KirchhoffParams supercritical_params() {
  KirchhoffParams P;
  P.p = 12.0;  // > 2 + 8/N for N = 1
  return P;
}

}  // namespace

TEST_CASE("interpolation exponent") {
  CHECK(gamma_exponent(4.0, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(gamma_exponent(3.0, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(gamma_exponent(4.0, 2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(gamma_exponent(6.0, 3) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("best interpolation constant") {
  Grid g = make_grid(1, 20.0, 1024);
  GnResult r = gn_constant_full(1, 4.0, g);
  CHECK(r.converged);
  // 1d, p = 4: sharp constant attained by the soliton profile
  CHECK(r.c_np == doctest::Approx(0.87168554).epsilon(1e-3));
  CHECK(mass(r.maximizer) == doctest::Approx(1.0).epsilon(1e-8));

  SUBCASE("maximizer is a local maximum of the scale-free quotient") {
    const double gamma = gamma_exponent(4.0, 1);
    auto quotient = [&](const Field& u) {
      double G = grad_norm_sq(u), m = mass(u);
      return std::pow(lp_norm_p(u, 4.0), 0.25) /
             (std::pow(G, 0.5 * gamma) * std::pow(m, 0.5 * (1.0 - gamma)));
    };
    double q0 = quotient(r.maximizer);
    CHECK(q0 == doctest::Approx(r.c_np).epsilon(1e-10));
    for (std::uint64_t seed : {21u, 22u, 23u}) {
      Field d = random_smooth_field(g, 1.0, seed);
      Field v = r.maximizer;
      for (std::size_t i = 0; i < v.samples.size(); ++i)
        v.samples[i] += 1e-2 * d.samples[i];
      CHECK(quotient(v) <= q0 + 1e-5);
    }
  }

  SUBCASE("cached lookup agrees") {
    CHECK(gn_constant(1, 4.0, g) == doctest::Approx(r.c_np).epsilon(1e-12));
    CHECK(gn_constant(1, 4.0, g) == gn_constant(1, 4.0, g));
  }

  SUBCASE("the inequality holds on random fields") {
    const double p = 4.0;
    const double gamma = gamma_exponent(p, 1);
    double C = gn_constant(1, p, g);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      Field u = random_smooth_field(g, 0.5 + 0.1 * double(seed % 7), seed);
      double lhs = std::pow(lp_norm_p(u, p), 1.0 / p);
      double rhs = C * std::pow(grad_norm_sq(u), 0.5 * gamma) *
                   std::pow(mass(u), 0.5 * (1.0 - gamma));
      CHECK(lhs <= rhs * (1.0 + 1e-8));
    }
  }
}

TEST_CASE("energy landscape profile") {
  Grid g = make_grid(1, 20.0, 1024);
  KirchhoffParams P = supercritical_params();

  SUBCASE("zero perturbation closed forms") {
    PotentialSpec zero;
    LandscapeProfile prof = phi_profile(P, zero, g);
    CHECK(prof.beta == 0.0);
    CHECK(prof.r1 == 0.0);
    CHECK(prof.positive_region);
    // phi(t) = a/2 t^2 - alpha t^{p gp}; stationarity at t2
    double expected_t2 = std::pow(
        P.a / (prof.p_gp * prof.alpha), 1.0 / (prof.p_gp - 2.0));
    CHECK(prof.t2 == doctest::Approx(expected_t2).epsilon(1e-8));
    CHECK(prof.phi(prof.t2) > 0.0);
    // phi(t) = t^{q gp} (psi(t) - beta)
    for (double t : {0.3, 1.0, 2.5})
      CHECK(prof.phi(t) ==
            doctest::Approx(std::pow(t, prof.q_gp) * (prof.psi(t) - prof.beta))
                .epsilon(1e-12));
  }

  SUBCASE("psi maximum matches a dense scan") {
    LandscapeProfile prof = phi_profile(P, gaussian_pot(0.05), g);
    double best = -1e300, t_best = 0.0;
    for (int k = 0; k <= 400000; ++k) {
      double t = std::exp(-6.0 + 12.0 * k / 400000.0);
      if (prof.psi(t) > best) { best = prof.psi(t); t_best = t; }
    }
    CHECK(prof.psi_t_bar == doctest::Approx(best).epsilon(1e-8));
    CHECK(prof.t_bar == doctest::Approx(t_best).epsilon(1e-4));
  }

  SUBCASE("stationary points and roots are ordered and consistent") {
    LandscapeProfile prof = phi_profile(P, gaussian_pot(0.05), g);
    REQUIRE(prof.positive_region);
    CHECK(prof.t1 < prof.r1);
    CHECK(prof.r1 < prof.t2);
    CHECK(prof.t2 < prof.r2);
    CHECK(prof.phi(prof.t1) < 0.0);
    CHECK(prof.phi(prof.t2) > 0.0);
    CHECK(std::fabs(prof.phi(prof.r1)) <= 1e-10 * prof.phi(prof.t2));
    CHECK(std::fabs(prof.phi(prof.r2)) <= 1e-10 * prof.phi(prof.t2));
  }

  SUBCASE("the smallness threshold is sharp up to quadrature error") {
    LandscapeProfile prof = phi_profile(P, gaussian_pot(0.05), g);
    REQUIRE(prof.thr_barrier > 0.0);
    // amplitude h0 maps linearly onto ||h||_{p/(p-q)}
    PotentialNorms unit = potential_norms(gaussian_pot(1.0), P.q, P.p, g);
    double h0_at_threshold = prof.thr_barrier / unit.norm_p_over_pmq;
    CHECK(phi_profile(P, gaussian_pot(0.99 * h0_at_threshold), g).positive_region);
    CHECK_FALSE(
        phi_profile(P, gaussian_pot(1.01 * h0_at_threshold), g).positive_region);
  }

  SUBCASE("phi bounds the energy from below on the mass sphere") {
    PotentialSpec spec = gaussian_pot(0.05);
    LandscapeProfile prof = phi_profile(P, spec, g);
    for (std::uint64_t seed : {31u, 32u, 33u, 34u}) {
      Field u = random_smooth_field(g, 1.0, seed);
      double t = std::sqrt(grad_norm_sq(u));
      CHECK(energy(u, P, spec).total >= prof.phi(t) - 1e-9);
    }
  }

  SUBCASE("rejects non-supercritical exponents") {
    KirchhoffParams sub;
    sub.p = 3.0;
    CHECK_THROWS(phi_profile(sub, gaussian_pot(0.05), g));
  }
}

TEST_CASE("fiber energy") {
  Grid g = make_grid(1, 20.0, 1024);
  KirchhoffParams P = supercritical_params();
  PotentialSpec spec = gaussian_pot(0.05);
  Field u = gaussian_start(g, 1.0);
  FiberEnergy fe(u, P, spec);

  SUBCASE("t = 1 reproduces the energy") {
    CHECK(fe(1.0) == doctest::Approx(energy(u, P, spec).total).epsilon(1e-10));
    CHECK(fe(1.0) ==
          doctest::Approx(fiber_energy(u, 1.0, P, spec)).epsilon(1e-12));
  }

  SUBCASE("matches materialized scaling where the box permits") {
    for (double t : {0.5, 2.0}) {
      Field ut = scale_fiber(u, t);
      CHECK(fe(t) == doctest::Approx(energy(ut, P, spec).total).epsilon(1e-3));
    }
  }

  SUBCASE("supercritical decay for large t") {
    CHECK(fe(16.0) > fe(32.0));
    CHECK(fe(32.0) > fe(64.0));
    CHECK(fe(64.0) < 0.0);
  }

  SUBCASE("argmax by golden section") {
    double t_star = fiber_argmax(fe);
    double best = -1e300, t_best = 0.0;
    for (int k = 0; k <= 200000; ++k) {
      double t = std::exp(std::log(1e-2) +
                          std::log(1e4) * k / 200000.0);
      if (fe(t) > best) { best = fe(t); t_best = t; }
    }
    CHECK(t_star == doctest::Approx(t_best).epsilon(1e-4));
    CHECK(fe(t_star) >= best - 1e-9 * std::fabs(best));
    CHECK(fe(t_star) >= fe(1.02 * t_star));
    CHECK(fe(t_star) >= fe(0.98 * t_star));
  }
}
