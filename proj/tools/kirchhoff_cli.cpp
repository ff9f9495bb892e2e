#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kirchhoff/run.hpp"

namespace {

struct CommonArgs {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config, "Config file path");
  cmd->add_option("--out", args.out, "Output directory (overrides config)");
  cmd->add_option("--seed", args.seed, "PRNG seed (overrides config)")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--threads", args.threads, "Worker threads (overrides config)");
}

int dispatch(const CommonArgs& args, const std::string& mode) {
  kirchhoff::RunConfig cfg;
  try {
    if (!args.config.empty()) cfg = kirchhoff::load_config(args.config);
    cfg.mode = mode;
    if (!args.out.empty()) cfg.out_dir = args.out;
    if (args.seed_set) cfg.solver.seed = args.seed;
    if (args.threads > 0) cfg.threads = args.threads;
  } catch (const kirchhoff::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return kirchhoff::run(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normalized-solution solver for the mass-constrained Kirchhoff "
               "equation with a decaying lower-order perturbation"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    const char* mode;
  };
  const Sub subs[] = {
      {"solve-min", "Subcritical global minimization", "min"},
      {"solve-mp", "Supercritical mountain-pass solve", "mp"},
      {"linking", "Supercritical linking level bracket", "link"},
      {"limit", "Autonomous limit-problem ground state", "limit"},
      {"gn", "Interpolation best-constant computation", "gn"},
      {"verify", "Replay the checkable inequalities", "verify"},
  };

  CommonArgs args[7];
  std::string modes[7];
  int idx = 0;
  for (const auto& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_common(cmd, args[idx]);
    modes[idx] = s.mode;
    ++idx;
  }

  std::string export_artifact, export_format = "csv";
  CLI::App* exp = app.add_subcommand("export", "Convert a scan artifact");
  exp->add_option("artifact", export_artifact, "Scan artifact path")->required();
  exp->add_option("--format", export_format, "csv or json");

  CLI11_PARSE(app, argc, argv);

  if (exp->parsed()) {
    try {
      std::cout << kirchhoff::export_scan(export_artifact, export_format)
                << "\n";
      return 0;
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 1;
    }
  }

  idx = 0;
  for (const auto& s : subs) {
    if (app.get_subcommand(s.name)->parsed()) return dispatch(args[idx], modes[idx]);
    ++idx;
  }
  return 2;
}
