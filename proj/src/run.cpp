#include "kirchhoff/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

namespace kirchhoff {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

json params_json(const KirchhoffParams& p) {
  return json{{"a", p.a}, {"b", p.b}, {"c", p.c}, {"p", p.p}, {"q", p.q}};
}

std::string family_name(PotentialFamily f) {
  switch (f) {
    case PotentialFamily::zero: return "zero";
    case PotentialFamily::gaussian: return "gaussian";
    case PotentialFamily::rational_decay: return "rational_decay";
    case PotentialFamily::multibump: return "multibump";
  }
  return "?";
}

json spec_json(const PotentialSpec& s) {
  json bumps = json::array();
  for (const auto& b : s.bumps)
    bumps.push_back(json{{"center", {b.center[0], b.center[1], b.center[2]}},
                         {"radius", b.radius},
                         {"height", b.height}});
  return json{{"family", family_name(s.family)},
              {"sign", s.sign == PotentialSign::nonneg ? "nonneg" : "nonpos"},
              {"h0", s.h0},
              {"width", s.width},
              {"decay_s", s.decay_s},
              {"bumps", bumps}};
}

json energy_json(const EnergyBreakdown& e) {
  return json{{"kinetic", e.kinetic},
              {"nonlocal", e.nonlocal},
              {"power", e.power},
              {"perturbation", e.perturbation},
              {"total", e.total}};
}

std::string tag_name(LevelTag t) {
  switch (t) {
    case LevelTag::global_min: return "global_min";
    case LevelTag::limit_ground_state: return "limit_ground_state";
    case LevelTag::mountain_pass: return "mountain_pass";
    case LevelTag::linking_candidate: return "linking_candidate";
  }
  return "?";
}

json solution_json(const Solution& s, const RunConfig& cfg) {
  return json{{"lambda", s.lambda},
              {"energy", energy_json(s.energy)},
              {"pohozaev_residual", s.pohozaev_residual},
              {"el_residual", s.el_residual},
              {"level_tag", tag_name(s.level_tag)},
              {"iterations", s.iterations},
              {"converged", s.converged},
              {"note", s.note},
              {"params", params_json(cfg.params)},
              {"spec", spec_json(cfg.potential)},
              {"seed", cfg.solver.seed}};
}

json config_json(const RunConfig& cfg) {
  return json{
      {"grid", {{"dim", cfg.dim},
                {"half_width", cfg.half_width},
                {"points_per_dim", cfg.points_per_dim}}},
      {"params", params_json(cfg.params)},
      {"potential", spec_json(cfg.potential)},
      {"solver", {{"mode", cfg.mode},
                  {"grad_tol_rel", cfg.solver.grad_tol_rel},
                  {"residual_tol", cfg.solver.residual_tol},
                  {"max_iters", cfg.solver.max_iters},
                  {"newton_max_iters", cfg.solver.newton_max_iters},
                  {"seed", cfg.solver.seed},
                  {"starts", cfg.solver.starts},
                  {"link_R", cfg.link_R},
                  {"link_s1", cfg.link_s1},
                  {"link_s2", cfg.link_s2},
                  {"threads", cfg.threads}}},
      {"output", {{"directory", cfg.out_dir}}}};
}

json check_json(const CheckResult& c) {
  return json{{"name", c.name},     {"lhs", c.lhs},
              {"rhs", c.rhs},       {"relation", c.relation},
              {"pass", c.pass},     {"tolerance", c.tolerance},
              {"anchor", c.anchor}};
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << j.dump(2) << "\n";
}

CheckResult less_than(std::string name, double lhs, double rhs, double tol,
                      std::string anchor, bool gate = true) {
  CheckResult c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.relation = "<";
  c.tolerance = tol;
  c.anchor = std::move(anchor);
  c.pass = gate && lhs < rhs + tol;
  return c;
}

CheckResult flag(std::string name, bool ok, std::string anchor) {
  CheckResult c;
  c.name = std::move(name);
  c.lhs = ok ? 1.0 : 0.0;
  c.rhs = 1.0;
  c.relation = "boolean";
  c.pass = ok;
  c.anchor = std::move(anchor);
  return c;
}

/// Group parameter substitution: canonical exponents when the config regime
/// does not match the requested group.
KirchhoffParams subcritical_params(const RunConfig& cfg) {
  KirchhoffParams p = cfg.params;
  if (p.regime(cfg.dim) != Regime::subcritical) p.p = 2.0 + 2.0 / cfg.dim;
  return p;
}

KirchhoffParams supercritical_params(const RunConfig& cfg) {
  KirchhoffParams p = cfg.params;
  if (p.regime(cfg.dim) != Regime::supercritical) {
    double pb = KirchhoffParams::p_bar(cfg.dim);
    p.p = std::min(pb + 2.0, 0.5 * (pb + p.p_star(cfg.dim)));
  }
  return p;
}

PotentialSpec positive_potential(const RunConfig& cfg) {
  PotentialSpec s = cfg.potential;
  s.sign = PotentialSign::nonneg;
  if (s.is_zero()) {
    s.family = PotentialFamily::gaussian;
    s.h0 = 0.1;
    s.width = 1.0;
  }
  return s;
}

PotentialSpec negative_potential(const RunConfig& cfg) {
  PotentialSpec s = cfg.potential;
  s.sign = PotentialSign::nonpos;
  if (s.is_zero()) {
    s.family = PotentialFamily::rational_decay;
    s.h0 = 0.1;
    s.decay_s = 1.0;
  }
  return s;
}

void identities_group(const RunConfig& cfg, VerificationReport& rep) {
  Grid grid = cfg.grid();
  const KirchhoffParams& P = cfg.params;
  double gp = P.gamma_p(cfg.dim);

  double worst_mass = 0.0, worst_grad = 0.0, worst_pow = 0.0;
  for (int i = 0; i < 5; ++i) {
    Field u = random_smooth_field(grid, P.c, cfg.solver.seed + 100 + i);
    for (double t : {0.5, 2.0}) {
      Field v = scale_fiber(u, t);
      worst_mass = std::max(worst_mass, std::fabs(mass(v) / mass(u) - 1.0));
      worst_grad = std::max(
          worst_grad, std::fabs(grad_norm_sq(v) / (t * t * grad_norm_sq(u)) - 1.0));
      worst_pow = std::max(
          worst_pow, std::fabs(lp_norm_p(v, P.p) /
                                   (std::pow(t, P.p * gp) * lp_norm_p(u, P.p)) -
                               1.0));
    }
  }
  rep.add(less_than("scaling_mass_invariance", worst_mass, 1e-6, 0.0,
                    "fiber scaling preserves the constraint mass"));
  rep.add(less_than("scaling_gradient_law", worst_grad, 1e-4, 0.0,
                    "gradient norm scales as t^2 along the fiber"));
  rep.add(less_than("scaling_power_law", worst_pow, 1e-4, 0.0,
                    "p-th power integral scales as t^{p gamma_p}"));

  double C = gn_constant(cfg.dim, P.p, grid);
  double worst_ratio = 0.0;
  for (int i = 0; i < 50; ++i) {
    Field u = random_smooth_field(grid, P.c, cfg.solver.seed + 200 + i);
    double lhs = std::pow(lp_norm_p(u, P.p), 1.0 / P.p);
    double rhs = C * std::pow(grad_norm_sq(u), 0.5 * gp) *
                 std::pow(mass(u), 0.5 * (1.0 - gp));
    worst_ratio = std::max(worst_ratio, lhs / rhs);
  }
  rep.add(less_than("interpolation_bound", worst_ratio, 1.0, 1e-8,
                    "interpolation inequality with the computed best constant"));

  double worst_fd = 0.0;
  PotentialSpec specs[2] = {positive_potential(cfg), negative_potential(cfg)};
  for (const auto& sp : specs) {
    SampledPotential pot = sample_potential(sp, grid);
    for (int i = 0; i < 5; ++i) {
      Field u = random_smooth_field(grid, P.c, cfg.solver.seed + 300 + i);
      FiberEnergy fe(u, P, sp);
      double h = 1e-5;
      double fd = (fe(1.0 + h) - fe(1.0 - h)) / (2.0 * h);
      double pv = pohozaev(u, P, pot);
      worst_fd = std::max(worst_fd, std::fabs(fd - pv) /
                                        std::max(1.0, std::fabs(pv)));
    }
  }
  rep.add(less_than("scaling_derivative_identity", worst_fd, 2e-3, 0.0,
                    "constraint functional equals the fiber energy derivative"));
}

void subcritical_group(const RunConfig& cfg, VerificationReport& rep) {
  Grid grid = cfg.grid();
  KirchhoffParams P = subcritical_params(cfg);
  PotentialSpec sp = positive_potential(cfg);

  Solution lim = solve_limit_ground_state(P, grid, cfg.solver);
  Solution sol = minimize_global(P, sp, grid, cfg.solver.starts, cfg.solver);
  bool gate = lim.converged && sol.converged;
  rep.add(flag("subcritical_converged", gate,
               "global minimization and limit problem both converged"));
  rep.add(less_than("level_below_limit_level", sol.energy.total,
                    lim.energy.total, 0.0,
                    "perturbed minimum lies strictly below the limit minimum",
                    gate));
  rep.add(less_than("limit_level_negative", lim.energy.total, 0.0, 0.0,
                    "limit minimization level is negative", gate));
}

void supercritical_positive_group(const RunConfig& cfg, VerificationReport& rep) {
  Grid grid = cfg.grid();
  KirchhoffParams P = supercritical_params(cfg);
  PotentialSpec sp = positive_potential(cfg);

  AssumptionReport ar = check_assumptions(sp, P, cfg.dim, grid,
                                          std::numeric_limits<double>::quiet_NaN());
  rep.add(flag("h_integrability", !ar.h_radial_integrable.applicable || ar.h_radial_integrable.pass,
               "perturbation norms finite"));
  if (ar.cond_barrier.applicable)
    rep.add(less_than("cond_barrier", ar.cond_barrier.lhs, ar.cond_barrier.rhs, 0.0,
                      "perturbation below the barrier-preserving threshold"));

  Solution lim = solve_limit_ground_state(P, grid, cfg.solver);
  Solution sol = mountain_pass(P, sp, grid, cfg.solver);
  bool gate = lim.converged && sol.converged;
  rep.add(flag("mp_converged", gate, "saddle refinement converged"));
  rep.add(less_than("mp_level_below_limit", sol.energy.total, lim.energy.total,
                    0.0, "perturbed min-max level below the limit level", gate));
  rep.add(less_than("mp_multiplier_positive", 0.0, sol.lambda, 0.0,
                    "multiplier strictly positive", gate));
  double scale = 2.0 * sol.energy.kinetic;  // a |grad u|^2
  rep.add(less_than("mp_constraint_residual", sol.pohozaev_residual,
                    1e-4 * std::max(1.0, scale), 0.0,
                    "scaling-derivative functional vanishes at the solution",
                    gate));
}

void supercritical_negative_group(const RunConfig& cfg, VerificationReport& rep) {
  Grid grid = cfg.grid();
  KirchhoffParams P = supercritical_params(cfg);
  PotentialSpec sp = negative_potential(cfg);

  Solution lim = solve_limit_ground_state(P, grid, cfg.solver);
  double m_c = lim.energy.total;
  AssumptionReport ar = check_assumptions(sp, P, cfg.dim, grid, m_c);
  rep.add(flag("hbar_admissible", !ar.hbar_integrable.applicable || ar.hbar_integrable.pass,
               "sign-reversed perturbation norms finite with pointwise bound"));
  if (ar.cond_hbar.applicable)
    rep.add(less_than("cond_hbar", ar.cond_hbar.lhs, ar.cond_hbar.rhs, 0.0,
                      "perturbation below the linking threshold"));

  LevelBracket lb = linking_level(P, sp, grid, cfg.link_R, cfg.link_s1,
                                  cfg.link_s2, cfg.solver);
  bool gate = lim.converged;
  rep.add(less_than("link_boundary_below_interior", lb.boundary_max,
                    lb.interior_max, 0.0,
                    "surface boundary level below the interior maximum", gate));
  rep.add(less_than("link_interior_above_mc", lb.m_c, lb.interior_max, 0.0,
                    "interior maximum exceeds the limit level", gate));
  rep.add(less_than("link_interior_below_2mc", lb.interior_max, 2.0 * lb.m_c,
                    0.0, "interior maximum below twice the limit level", gate));

  Field u0 = linking_surface_point(lim.field, lb.argmax_y, lb.argmax_s);
  Solution cand = refine_critical(u0, P, sp, cfg.solver,
                                  LevelTag::linking_candidate);
  bool cgate = gate && cand.converged;
  rep.add(flag("link_candidate_converged", cgate,
               "bound-state refinement converged"));
  PotentialNorms norms = potential_norms(sp, P.q, P.p, grid);
  double gp = P.gamma_p(cfg.dim);
  double denom = cfg.dim * (P.p - 2.0) - 4.0;
  double bound = (2.0 / denom) *
                 (2.0 * P.p * (1.0 - gp) * m_c -
                  (2.0 * (P.p - P.q) + (P.p - 2.0) * norms.upsilon) / P.q *
                      norms.norm_2_over_2mq * std::pow(P.c, 0.5 * P.q));
  rep.add(less_than("link_multiplier_lower_bound", bound,
                    cand.lambda * P.c, 1e-6,
                    "multiplier above its quantitative lower bound", cgate));
  rep.add(less_than("link_multiplier_positive", 0.0, cand.lambda, 0.0,
                    "multiplier strictly positive", cgate));
}

json phi_scan_json(const LandscapeProfile& prof) {
  json t = json::array(), phi = json::array(), psi = json::array();
  double lo = std::log(prof.t_bar) - 3.0, hi = std::log(prof.t_bar) + 3.0;
  for (int i = 0; i <= 200; ++i) {
    double tv = std::exp(lo + (hi - lo) * i / 200.0);
    t.push_back(tv);
    phi.push_back(prof.phi(tv));
    psi.push_back(prof.psi(tv));
  }
  return json{{"type", "phi_scan"}, {"t", t}, {"phi", phi}, {"psi", psi}};
}

json fiber_scan_json(const Field& u, const KirchhoffParams& P,
                     const PotentialSpec& sp) {
  FiberEnergy fe(u, P, sp);
  json t = json::array(), e = json::array();
  for (int i = 0; i <= 100; ++i) {
    double tv = std::pow(10.0, -1.0 + 2.0 * i / 100.0);
    t.push_back(tv);
    e.push_back(fe(tv));
  }
  return json{{"type", "fiber_scan"}, {"t", t}, {"energy", e}};
}

json profile_json(const LandscapeProfile& prof) {
  return json{{"gamma_p", prof.gamma_p},
              {"c_np", prof.c_np},
              {"alpha", prof.alpha},
              {"beta", prof.beta},
              {"t_bar", prof.t_bar},
              {"psi_t_bar", prof.psi_t_bar},
              {"t1", prof.t1},
              {"t2", prof.t2},
              {"r1", prof.r1},
              {"r2", prof.r2},
              {"positive_region", prof.positive_region},
              {"thr_barrier", prof.thr_barrier},
              {"thr_radial", prof.thr_radial},
              {"thr_hbar", prof.thr_hbar}};
}

json bracket_json(const LevelBracket& lb) {
  return json{{"m_c", lb.m_c},
              {"interior_max", lb.interior_max},
              {"boundary_max", lb.boundary_max},
              {"upper_bound_L", lb.upper_bound_L},
              {"boundary_below_interior", lb.boundary_below_interior},
              {"boundary_below_mc_eps", lb.boundary_below_mc_eps},
              {"interior_below_2mc", lb.interior_below_2mc},
              {"argmax_y", {lb.argmax_y[0], lb.argmax_y[1], lb.argmax_y[2]}},
              {"argmax_s", lb.argmax_s}};
}

void write_solution(const fs::path& dir, const Solution& sol,
                    const RunConfig& cfg) {
  write_kfld(sol.field, (dir / "solution.kfld").string());
  write_json(dir / "solution.json", solution_json(sol, cfg));
}

}  // namespace

void VerificationReport::finalize() {
  pass = true;
  for (const auto& c : checks) pass = pass && c.pass;
}

VerificationReport verify(const RunConfig& cfg) {
  VerificationReport rep;
  auto wants = [&](const std::string& g) {
    return cfg.verify_groups.empty() ||
           std::find(cfg.verify_groups.begin(), cfg.verify_groups.end(), g) !=
               cfg.verify_groups.end();
  };
  auto guarded = [&](const std::string& g, auto&& fn) {
    if (!wants(g)) return;
    try {
      fn();
    } catch (const std::exception& e) {
      rep.add(flag("group_" + g, false, std::string("group aborted: ") + e.what()));
    }
  };
  guarded("identities", [&] { identities_group(cfg, rep); });
  guarded("subcritical", [&] { subcritical_group(cfg, rep); });
  guarded("supercritical-positive",
          [&] { supercritical_positive_group(cfg, rep); });
  guarded("supercritical-negative",
          [&] { supercritical_negative_group(cfg, rep); });
  rep.finalize();
  return rep;
}

int run(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);

  json manifest{{"version", kVersion},
                {"config", config_json(cfg)},
                {"mode", cfg.mode},
                {"seed", cfg.solver.seed}};
  int code = 0;

  try {
    validate_config(cfg);
    Grid grid = cfg.grid();

    if (cfg.mode == "gn") {
      GnResult gn = gn_constant_full(cfg.dim, cfg.params.p, grid);
      write_json(dir / "gn.json",
                 json{{"c_np", gn.c_np},
                      {"gamma_p", gamma_exponent(cfg.params.p, cfg.dim)},
                      {"iterations", gn.iterations},
                      {"converged", gn.converged}});
      manifest["c_np"] = gn.c_np;
    } else if (cfg.mode == "limit") {
      Solution sol = solve_limit_ground_state(cfg.params, grid, cfg.solver);
      write_solution(dir, sol, cfg);
      write_json(dir / "fiber_scan.json",
                 fiber_scan_json(sol.field, cfg.params, PotentialSpec{}));
      manifest["level"] = sol.energy.total;
      manifest["lambda"] = sol.lambda;
      if (!sol.converged) code = 1;
    } else if (cfg.mode == "min") {
      AssumptionReport ar =
          check_assumptions(cfg.potential, cfg.params, cfg.dim, grid,
                            std::numeric_limits<double>::quiet_NaN());
      if (ar.h_integrable.applicable && !ar.h_integrable.pass) {
        write_json(dir / "error.json",
                   json{{"error", "perturbation norm diverges (admissibility)"},
                        {"field", "potential"}});
        code = 3;
      } else {
        Solution sol = minimize_global(cfg.params, cfg.potential, grid,
                                       cfg.solver.starts, cfg.solver);
        write_solution(dir, sol, cfg);
        manifest["level"] = sol.energy.total;
        manifest["lambda"] = sol.lambda;
        if (!sol.converged) code = 1;
      }
    } else if (cfg.mode == "mp") {
      AssumptionReport ar =
          check_assumptions(cfg.potential, cfg.params, cfg.dim, grid,
                            std::numeric_limits<double>::quiet_NaN());
      bool h_ok = !ar.h_radial_integrable.applicable || ar.h_radial_integrable.pass;
      bool thr_ok = !ar.cond_barrier.applicable || ar.cond_barrier.pass;
      if (!h_ok || !thr_ok) {
        write_json(dir / "error.json",
                   json{{"error", !h_ok ? "perturbation norms diverge"
                                        : "perturbation above the barrier "
                                          "threshold"},
                        {"lhs", ar.cond_barrier.lhs},
                        {"rhs", ar.cond_barrier.rhs}});
        code = 3;
      } else {
        LandscapeProfile prof = phi_profile(cfg.params, cfg.potential, grid);
        write_json(dir / "profile.json", profile_json(prof));
        write_json(dir / "phi_scan.json", phi_scan_json(prof));
        Solution sol = mountain_pass(cfg.params, cfg.potential, grid, cfg.solver);
        write_solution(dir, sol, cfg);
        write_json(dir / "fiber_scan.json",
                   fiber_scan_json(sol.field, cfg.params, cfg.potential));
        manifest["level"] = sol.energy.total;
        manifest["lambda"] = sol.lambda;
        if (!sol.converged) code = 1;
      }
    } else if (cfg.mode == "link") {
      Solution lim = solve_limit_ground_state(cfg.params, grid, cfg.solver);
      double m_c = lim.energy.total;
      AssumptionReport ar =
          check_assumptions(cfg.potential, cfg.params, cfg.dim, grid, m_c);
      if (ar.hbar_integrable.applicable && !ar.hbar_integrable.pass) {
        write_json(dir / "error.json",
                   json{{"error", "perturbation fails the pointwise-bound "
                                  "admissibility"}});
        code = 3;
      } else {
        LevelBracket lb = linking_level(cfg.params, cfg.potential, grid,
                                        cfg.link_R, cfg.link_s1, cfg.link_s2,
                                        cfg.solver);
        write_json(dir / "bracket.json", bracket_json(lb));
        // Coarse lattice scan over the surface for plotting.
        {
          json rows = json::array();
          int ny = 9, ns = 9;
          for (int i = 0; i < ny; ++i) {
            std::array<double, 3> y{0, 0, 0};
            y[0] = -cfg.link_R + 2.0 * cfg.link_R * i / (ny - 1.0);
            for (int j = 0; j < ns; ++j) {
              double s = cfg.link_s1 +
                         (cfg.link_s2 - cfg.link_s1) * j / (ns - 1.0);
              Field pt = linking_surface_point(lim.field, y, s);
              double e = energy(pt, cfg.params, cfg.potential).total;
              rows.push_back(json{{"y", {y[0], y[1], y[2]}},
                                  {"s", s},
                                  {"energy", e}});
            }
          }
          write_json(dir / "q_lattice.json",
                     json{{"type", "q_lattice"}, {"rows", rows}});
        }
        Field u0 = linking_surface_point(lim.field, lb.argmax_y, lb.argmax_s);
        Solution cand = refine_critical(u0, cfg.params, cfg.potential,
                                        cfg.solver, LevelTag::linking_candidate);
        write_solution(dir, cand, cfg);
        manifest["m_c"] = lb.m_c;
        manifest["interior_max"] = lb.interior_max;
        manifest["boundary_max"] = lb.boundary_max;
        manifest["lambda"] = cand.lambda;
        if (!lb.boundary_below_interior || !lb.interior_below_2mc) {
          write_json(dir / "error.json",
                     json{{"error", "linking bracket certification failed"},
                          {"argmax_y", {lb.argmax_y[0], lb.argmax_y[1],
                                        lb.argmax_y[2]}},
                          {"argmax_s", lb.argmax_s}});
          code = 3;
        } else if (!cand.converged) {
          code = 1;
        }
      }
    } else if (cfg.mode == "verify") {
      VerificationReport rep = verify(cfg);
      json checks = json::array();
      for (const auto& c : rep.checks) checks.push_back(check_json(c));
      write_json(dir / "report.json",
                 json{{"pass", rep.pass}, {"checks", checks}});
      manifest["pass"] = rep.pass;
      if (!rep.pass) {
        bool conv_failure = false;
        for (const auto& c : rep.checks)
          if (!c.pass && c.name.find("converged") != std::string::npos)
            conv_failure = true;
        code = conv_failure ? 1 : 3;
      }
    }
  } catch (const ConfigError& e) {
    write_json(dir / "error.json", json{{"error", e.what()}, {"kind", "config"}});
    std::cerr << e.what() << "\n";
    code = 2;
  } catch (const std::invalid_argument& e) {
    write_json(dir / "error.json", json{{"error", e.what()}, {"kind", "config"}});
    std::cerr << e.what() << "\n";
    code = 2;
  } catch (const std::exception& e) {
    write_json(dir / "error.json", json{{"error", e.what()}, {"kind", "runtime"}});
    std::cerr << e.what() << "\n";
    code = 1;
  }

  auto t1 = std::chrono::steady_clock::now();
  manifest["wall_time_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  manifest["exit_code"] = code;
  write_json(dir / "manifest.json", manifest);
  return code;
}

std::string export_scan(const std::string& artifact, const std::string& format) {
  std::ifstream is(artifact);
  if (!is) throw std::runtime_error("export: cannot open " + artifact);
  json j;
  try {
    is >> j;
  } catch (const std::exception&) {
    throw std::runtime_error("export: not a JSON artifact: " + artifact);
  }
  if (!j.contains("type"))
    throw std::runtime_error("export: unknown artifact type in " + artifact);
  std::string type = j["type"];

  fs::path in(artifact);
  fs::path out = in.parent_path() / (in.stem().string() + "." + format);
  if (format == "json") {
    write_json(out, j);
    return out.string();
  }
  if (format != "csv")
    throw std::runtime_error("export: unsupported format " + format);

  std::ofstream os(out);
  if (!os) throw std::runtime_error("export: cannot write " + out.string());
  if (type == "phi_scan") {
    os << "t,phi,psi\n";
    for (std::size_t i = 0; i < j["t"].size(); ++i)
      os << j["t"][i].get<double>() << "," << j["phi"][i].get<double>() << ","
         << j["psi"][i].get<double>() << "\n";
  } else if (type == "fiber_scan") {
    os << "t,energy\n";
    for (std::size_t i = 0; i < j["t"].size(); ++i)
      os << j["t"][i].get<double>() << "," << j["energy"][i].get<double>()
         << "\n";
  } else if (type == "q_lattice") {
    os << "y1,y2,y3,s,energy\n";
    for (const auto& row : j["rows"])
      os << row["y"][0].get<double>() << "," << row["y"][1].get<double>() << ","
         << row["y"][2].get<double>() << "," << row["s"].get<double>() << ","
         << row["energy"].get<double>() << "\n";
  } else {
    throw std::runtime_error("export: unknown artifact type '" + type + "'");
  }
  return out.string();
}

}  // namespace kirchhoff
