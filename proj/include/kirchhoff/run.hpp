#pragma once

#include <string>
#include <vector>

#include "kirchhoff/config.hpp"

namespace kirchhoff {

struct CheckResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string relation;  // "<", "<=", "|lhs-rhs|<=tol"
  bool pass = false;
  double tolerance = 0.0;
  std::string anchor;  // which structural claim the check exercises
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool pass = false;  // conjunction of all checks

  void add(CheckResult c) { checks.push_back(std::move(c)); }
  void finalize();
};

/// Executes cfg.mode, writes artifacts (KFLD fields, JSON sidecars, scan
/// files, manifest.json) under cfg.out_dir.
/// Exit codes: 0 success, 1 solver non-convergence, 2 config error,
/// 3 assumption/threshold violation.
int run(const RunConfig& cfg);

/// Replays the checkable inequalities, grouped as identities / subcritical /
/// supercritical-positive / supercritical-negative. Groups whose regime does
/// not match the config parameters substitute documented canonical
/// parameters. Individual check failures never abort the suite.
VerificationReport verify(const RunConfig& cfg);

/// Converts a stored scan artifact (phi_scan / fiber_scan / q_lattice JSON)
/// to csv or json next to the input; returns the output path.
std::string export_scan(const std::string& artifact, const std::string& format);

}  // namespace kirchhoff
