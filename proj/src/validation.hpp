#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "model.hpp"

namespace magcav {

struct OracleOutcome {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // worst observed deviation (oracle-specific)
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationOptions {
  /// Replaces every oracle's tolerance when set.
  std::optional<double> tolerance_override;
  /// Applied to every model drift matrix the battery builds; lets tests
  /// inject a deliberate error.
  std::function<void(Matrix6d&)> drift_mutation;
  std::uint64_t seed = 0x5eed5eedULL;
  int random_lyapunov_systems = 200;
  int random_mean_field_draws = 1000;
  int random_model_points = 200;
};

/// Independent-oracle battery: two-mode squeezed vacuum log-negativity,
/// algebraic vs. time-integrated Lyapunov solutions, closed-form vs. linear
/// mean fields, passive vacuum covariance, single-mode instability threshold,
/// symplectic physicality and contangle monogamy.
std::vector<OracleOutcome> run_validation(const ValidationOptions& opts = {});

/// Analytic two-mode squeezed vacuum covariance with squeeze parameter r.
Eigen::MatrixXd two_mode_squeezed_vacuum(double r);

/// Gain at which the drift matrix first becomes unstable, by bisection on
/// [lo, hi] (rad/s) to absolute precision `precision`.
double bisect_instability_gain(SystemParams p, double lo, double hi,
                               double precision);

}  // namespace magcav
