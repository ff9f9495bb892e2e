#include "kirchhoff/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace kirchhoff {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_real(int line, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (...) {
    fail(line, "field '" + key + "': expected a number, got '" + v + "'");
  }
}

long parse_int(int line, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (...) {
    fail(line, "field '" + key + "': expected an integer, got '" + v + "'");
  }
}

std::vector<std::string> split(const std::string& v, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string block;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    std::size_t hash = s.find('#');
    if (hash != std::string::npos) s = trim(s.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated block header");
      block = trim(s.substr(1, s.size() - 2));
      if (block != "grid" && block != "params" && block != "potential" &&
          block != "solver" && block != "output")
        fail(line, "unknown block [" + block + "]");
      continue;
    }
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value, got '" + s + "'");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (block.empty()) fail(line, "key '" + key + "' outside any block");

    if (block == "grid") {
      if (key == "dim")
        cfg.dim = static_cast<int>(parse_int(line, key, val));
      else if (key == "half_width")
        cfg.half_width = parse_real(line, key, val);
      else if (key == "points_per_dim")
        cfg.points_per_dim = static_cast<int>(parse_int(line, key, val));
      else
        fail(line, "unknown key '" + key + "' in [grid]");
    } else if (block == "params") {
      if (key == "a")
        cfg.params.a = parse_real(line, key, val);
      else if (key == "b")
        cfg.params.b = parse_real(line, key, val);
      else if (key == "c")
        cfg.params.c = parse_real(line, key, val);
      else if (key == "p")
        cfg.params.p = parse_real(line, key, val);
      else if (key == "q")
        cfg.params.q = parse_real(line, key, val);
      else
        fail(line, "unknown key '" + key + "' in [params]");
    } else if (block == "potential") {
      if (key == "family") {
        if (val == "zero")
          cfg.potential.family = PotentialFamily::zero;
        else if (val == "gaussian")
          cfg.potential.family = PotentialFamily::gaussian;
        else if (val == "rational_decay")
          cfg.potential.family = PotentialFamily::rational_decay;
        else if (val == "multibump")
          cfg.potential.family = PotentialFamily::multibump;
        else
          fail(line, "field 'family': expected zero|gaussian|rational_decay|"
                     "multibump, got '" + val + "'");
      } else if (key == "sign") {
        if (val == "nonneg")
          cfg.potential.sign = PotentialSign::nonneg;
        else if (val == "nonpos")
          cfg.potential.sign = PotentialSign::nonpos;
        else
          fail(line, "field 'sign': expected nonneg|nonpos, got '" + val + "'");
      } else if (key == "h0") {
        cfg.potential.h0 = parse_real(line, key, val);
      } else if (key == "width") {
        cfg.potential.width = parse_real(line, key, val);
      } else if (key == "decay_s") {
        cfg.potential.decay_s = parse_real(line, key, val);
      } else if (key == "bump") {
        auto parts = split(val, ',');
        if (parts.size() != 5)
          fail(line, "field 'bump': expected cx,cy,cz,radius,height");
        Bump b;
        for (int d = 0; d < 3; ++d)
          b.center[d] = parse_real(line, key, parts[d]);
        b.radius = parse_real(line, key, parts[3]);
        b.height = parse_real(line, key, parts[4]);
        cfg.potential.bumps.push_back(b);
      } else {
        fail(line, "unknown key '" + key + "' in [potential]");
      }
    } else if (block == "solver") {
      if (key == "mode")
        cfg.mode = val;
      else if (key == "grad_tol_rel")
        cfg.solver.grad_tol_rel = parse_real(line, key, val);
      else if (key == "residual_tol")
        cfg.solver.residual_tol = parse_real(line, key, val);
      else if (key == "max_iters")
        cfg.solver.max_iters = static_cast<int>(parse_int(line, key, val));
      else if (key == "newton_max_iters")
        cfg.solver.newton_max_iters = static_cast<int>(parse_int(line, key, val));
      else if (key == "seed")
        cfg.solver.seed = static_cast<std::uint64_t>(parse_int(line, key, val));
      else if (key == "starts")
        cfg.solver.starts = static_cast<int>(parse_int(line, key, val));
      else if (key == "path_nodes")
        cfg.solver.path_nodes = static_cast<int>(parse_int(line, key, val));
      else if (key == "path_stall_tol")
        cfg.solver.path_stall_tol = parse_real(line, key, val);
      else if (key == "path_stall_window")
        cfg.solver.path_stall_window = static_cast<int>(parse_int(line, key, val));
      else if (key == "path_max_sweeps")
        cfg.solver.path_max_sweeps = static_cast<int>(parse_int(line, key, val));
      else if (key == "link_radii")
        cfg.solver.link_radii = static_cast<int>(parse_int(line, key, val));
      else if (key == "link_angles")
        cfg.solver.link_angles = static_cast<int>(parse_int(line, key, val));
      else if (key == "link_s_values")
        cfg.solver.link_s_values = static_cast<int>(parse_int(line, key, val));
      else if (key == "link_eps")
        cfg.solver.link_eps = parse_real(line, key, val);
      else if (key == "link_R")
        cfg.link_R = parse_real(line, key, val);
      else if (key == "link_s1")
        cfg.link_s1 = parse_real(line, key, val);
      else if (key == "link_s2")
        cfg.link_s2 = parse_real(line, key, val);
      else if (key == "threads")
        cfg.threads = static_cast<int>(parse_int(line, key, val));
      else if (key == "groups")
        cfg.verify_groups = split(val, ',');
      else
        fail(line, "unknown key '" + key + "' in [solver]");
    } else {  // output
      if (key == "directory")
        cfg.out_dir = val;
      else
        fail(line, "unknown key '" + key + "' in [output]");
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

void validate_config(const RunConfig& cfg) {
  auto bad = [](const std::string& field, const std::string& constraint) {
    throw ConfigError("config field '" + field + "': " + constraint);
  };
  if (cfg.dim < 1 || cfg.dim > 3) bad("dim", "must be 1, 2 or 3");
  if (!(cfg.half_width > 0)) bad("half_width", "must be positive");
  if (cfg.points_per_dim < 16 || cfg.points_per_dim % 2 != 0)
    bad("points_per_dim", "must be even and >= 16");
  if (!(cfg.params.a > 0)) bad("a", "must satisfy a > 0");
  if (!(cfg.params.b > 0)) bad("b", "must satisfy b > 0");
  if (!(cfg.params.c > 0)) bad("c", "must satisfy c > 0");
  if (!(cfg.params.p > 2 && cfg.params.p < cfg.params.p_star(cfg.dim)))
    bad("p", "must satisfy 2 < p < p*");
  if (!(cfg.params.q >= 1 && cfg.params.q < 2))
    bad("q", "must satisfy 1 <= q < 2");
  if (cfg.potential.h0 < 0) bad("h0", "must satisfy h0 >= 0");
  if (!(cfg.potential.width > 0)) bad("width", "must be positive");

  static const char* modes[] = {"min", "mp", "link", "limit", "gn", "verify"};
  if (std::find_if(std::begin(modes), std::end(modes), [&](const char* m) {
        return cfg.mode == m;
      }) == std::end(modes))
    bad("mode", "must be one of min|mp|link|limit|gn|verify");

  Regime reg = cfg.params.regime(cfg.dim);
  if (cfg.mode == "min" && reg != Regime::subcritical)
    bad("mode", "min requires the subcritical regime p < 2 + 4/N");
  if ((cfg.mode == "mp" || cfg.mode == "link") && reg != Regime::supercritical)
    bad("mode", cfg.mode + " requires the supercritical regime p > 2 + 8/N");
  if (cfg.mode == "limit" && reg != Regime::subcritical &&
      reg != Regime::supercritical)
    bad("p", "limit mode needs p outside [2+4/N, 2+8/N]");
  if (cfg.mode == "link" && !(cfg.link_s1 < cfg.link_s2))
    bad("link_s1", "must satisfy link_s1 < link_s2");
  if (cfg.threads < 1) bad("threads", "must be >= 1");
  for (const auto& gname : cfg.verify_groups)
    if (gname != "identities" && gname != "subcritical" &&
        gname != "supercritical-positive" && gname != "supercritical-negative")
      bad("groups", "unknown verify group '" + gname + "'");
}

}  // namespace kirchhoff
