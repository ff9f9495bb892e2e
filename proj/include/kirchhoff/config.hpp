#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kirchhoff/solvers.hpp"

namespace kirchhoff {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat block config: [grid] / [params] / [potential] / [solver] / [output]
/// with key = value lines. Every field has a default; unknown keys and
/// malformed values fail with a line/field diagnostic.
struct RunConfig {
  // [grid]
  int dim = 1;
  double half_width = 20.0;
  int points_per_dim = 1024;
  // [params]
  KirchhoffParams params;
  // [potential]
  PotentialSpec potential;
  // [solver]
  std::string mode = "limit";  // min | mp | link | limit | gn | verify
  SolverOptions solver;
  double link_R = 5.0;
  double link_s1 = -1.0;
  double link_s2 = 1.0;
  int threads = 1;
  std::vector<std::string> verify_groups;  // empty = all
  // [output]
  std::string out_dir = "out";

  Grid grid() const { return make_grid(dim, half_width, points_per_dim); }
};

/// Parses config text. Throws ConfigError with a line/field diagnostic.
RunConfig parse_config(const std::string& text);

/// Reads and parses a config file.
RunConfig load_config(const std::string& path);

/// Semantic validation (parameter ranges, mode names, regime/mode
/// consistency). Throws ConfigError naming the offending field.
void validate_config(const RunConfig& cfg);

}  // namespace kirchhoff
