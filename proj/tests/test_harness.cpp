#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "kirchhoff/config.hpp"
#include "kirchhoff/field.hpp"
#include "kirchhoff/run.hpp"

using namespace kirchhoff;
namespace fs = std::filesystem;

namespace {

std::string scratch_dir(const std::string& leaf) {
  fs::path p = fs::temp_directory_path() / "kirchhoff_tests" / leaf;
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

std::vector<char> slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  return std::vector<char>(std::istreambuf_iterator<char>(is), {});
}

const char* kSubcriticalCfg = R"(
[grid]
dim = 1
half_width = 20.0
points_per_dim = 512

[params]
p = 3.0

[solver]
mode = limit
)";

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("empty text yields the documented defaults") {
    RunConfig cfg = parse_config("");
    CHECK(cfg.dim == 1);
    CHECK(cfg.half_width == 20.0);
    CHECK(cfg.points_per_dim == 1024);
    CHECK(cfg.params.p == 3.0);
    CHECK(cfg.params.q == 1.5);
    CHECK(cfg.mode == "limit");
    CHECK(cfg.potential.is_zero());
    CHECK(cfg.out_dir == "out");
    CHECK_NOTHROW(validate_config(cfg));
  }

  SUBCASE("all blocks round-trip") {
    RunConfig cfg = parse_config(R"(
[grid]
dim = 1
half_width = 1.25
points_per_dim = 1024

[params]
a = 2.0
b = 0.5
c = 3.0
p = 12.0
q = 1.2

[potential]
family = rational_decay
sign = nonpos
h0 = 4.5
decay_s = 1.5

[solver]
mode = link
link_R = 0.5
link_s1 = -0.5
link_s2 = 0.5
seed = 99

[output]
directory = somewhere
)");
    CHECK(cfg.half_width == 1.25);
    CHECK(cfg.params.a == 2.0);
    CHECK(cfg.params.p == 12.0);
    CHECK(cfg.potential.family == PotentialFamily::rational_decay);
    CHECK(cfg.potential.sign == PotentialSign::nonpos);
    CHECK(cfg.potential.h0 == 4.5);
    CHECK(cfg.mode == "link");
    CHECK(cfg.link_R == 0.5);
    CHECK(cfg.solver.seed == 99);
    CHECK(cfg.out_dir == "somewhere");
    CHECK_NOTHROW(validate_config(cfg));
  }

  SUBCASE("unknown keys are rejected with a line diagnostic") {
    std::string msg = message_of(
        [] { parse_config("[grid]\ndim = 1\nwobble = 3\n"); });
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("wobble") != std::string::npos);
    CHECK_THROWS_AS(parse_config("[nosuch]\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid]\ndim = banana\n"), ConfigError);
  }

  SUBCASE("semantic validation names the offending field") {
    RunConfig cfg = parse_config("[params]\nq = 2.5\n");
    std::string msg = message_of([&] { validate_config(cfg); });
    CHECK(msg.find("'q'") != std::string::npos);
    CHECK(msg.find("1 <= q < 2") != std::string::npos);

    RunConfig bad_mode = parse_config("[solver]\nmode = limit\n");
    bad_mode.mode = "wander";
    CHECK_THROWS_AS(validate_config(bad_mode), ConfigError);
  }

  SUBCASE("mode/regime consistency") {
    // ridge search needs the mass-supercritical exponent
    RunConfig cfg = parse_config("[params]\np = 3.0\n[solver]\nmode = mp\n");
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
    // minimization needs the mass-subcritical one
    RunConfig cfg2 = parse_config("[params]\np = 12.0\n[solver]\nmode = min\n");
    CHECK_THROWS_AS(validate_config(cfg2), ConfigError);
  }

  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), ConfigError);
  }
}

TEST_CASE("interpolation-constant mode writes its artifact") {
  RunConfig cfg = parse_config(
      "[grid]\npoints_per_dim = 512\n[params]\np = 4.0\n[solver]\nmode = gn\n");
  cfg.out_dir = scratch_dir("gn");
  CHECK(run(cfg) == 0);
  CHECK(fs::exists(fs::path(cfg.out_dir) / "gn.json"));
  CHECK(fs::exists(fs::path(cfg.out_dir) / "manifest.json"));

  std::stringstream ss;
  ss << std::ifstream(fs::path(cfg.out_dir) / "gn.json").rdbuf();
  std::string text = ss.str();
  CHECK(text.find("\"gamma_p\": 0.25") != std::string::npos);
  CHECK(text.find("0.8716") != std::string::npos);
}

TEST_CASE("ground-state mode end to end") {
  RunConfig cfg = parse_config(kSubcriticalCfg);
  cfg.out_dir = scratch_dir("limit_a");
  CHECK(run(cfg) == 0);

  fs::path dir(cfg.out_dir);
  CHECK(fs::exists(dir / "solution.json"));
  CHECK(fs::exists(dir / "fiber_scan.json"));
  Field u = read_kfld((dir / "solution.kfld").string());
  CHECK(mass(u) == doctest::Approx(cfg.params.c).epsilon(1e-10));

  SUBCASE("repeat runs are byte-identical") {
    RunConfig cfg2 = parse_config(kSubcriticalCfg);
    cfg2.out_dir = scratch_dir("limit_b");
    CHECK(run(cfg2) == 0);
    CHECK(slurp(dir / "solution.kfld") ==
          slurp(fs::path(cfg2.out_dir) / "solution.kfld"));
  }

  SUBCASE("unreachable tolerance is reported as non-convergence") {
    RunConfig cfg2 = parse_config(kSubcriticalCfg);
    cfg2.solver.residual_tol = 1e-18;
    cfg2.solver.newton_max_iters = 3;
    cfg2.out_dir = scratch_dir("limit_c");
    CHECK(run(cfg2) == 1);
  }
}

TEST_CASE("failure exit codes") {
  SUBCASE("semantic config error") {
    RunConfig cfg = parse_config(kSubcriticalCfg);
    cfg.mode = "mp";  // regime mismatch caught inside run
    cfg.out_dir = scratch_dir("code2");
    CHECK(run(cfg) == 2);
  }

  SUBCASE("structural assumption violated") {
    // minimization demands a nontrivial nonnegative perturbation
    RunConfig cfg = parse_config(kSubcriticalCfg);
    cfg.mode = "min";
    cfg.out_dir = scratch_dir("code3");
    CHECK(run(cfg) == 3);
  }
}

TEST_CASE("verification report") {
  RunConfig cfg = parse_config(
      "[grid]\npoints_per_dim = 512\n[params]\np = 3.0\n"
      "[potential]\nfamily = gaussian\nh0 = 0.1\n"
      "[solver]\nmode = verify\ngroups = identities\n");
  cfg.out_dir = scratch_dir("verify");
  VerificationReport rep = verify(cfg);
  REQUIRE(!rep.checks.empty());
  CHECK(rep.pass);
  for (const CheckResult& c : rep.checks) {
    CHECK(!c.name.empty());
    CHECK(!c.anchor.empty());
    CHECK(c.pass);
  }

  SUBCASE("unknown group is rejected at validation") {
    RunConfig bad = parse_config("[solver]\nmode = verify\ngroups = nonsense\n");
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
  }
}

TEST_CASE("scan export") {
  RunConfig cfg = parse_config(kSubcriticalCfg);
  cfg.out_dir = scratch_dir("export");
  REQUIRE(run(cfg) == 0);
  fs::path scan = fs::path(cfg.out_dir) / "fiber_scan.json";

  std::string out = export_scan(scan.string(), "csv");
  std::ifstream is(out);
  std::string header;
  std::getline(is, header);
  CHECK(header == "t,energy");
  int rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  CHECK(rows > 10);

  CHECK_THROWS(export_scan("/nonexistent/scan.json", "csv"));
  CHECK_THROWS(export_scan(scan.string(), "yaml"));
}
