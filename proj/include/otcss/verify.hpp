#pragma once

// Closed forms checked against the truncated Fock-space oracle.

#include <string>
#include <utility>
#include <vector>

namespace otcss {

struct CheckResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  /// Set when the check could not run (for example, a cutoff that is too small).
  std::string error;
};

struct VerifyOptions {
  int cutoff = 40;
  std::vector<std::pair<double, double>> points;  // (lambda, gamma)
  int samples = 8;                                 // phase-space points per parameter pair
};

/// Parameter grid used by the "coarse" and "fine" presets.
std::vector<std::pair<double, double>> verify_grid(const std::string& preset);

/// Runs state overlap, covariance, Wigner, CF, E_N and Bell comparisons over
/// every point and reports the worst deviation per check.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace otcss
