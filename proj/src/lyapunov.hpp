#pragma once

#include "gaussian.hpp"
#include "model.hpp"

namespace magcav {

struct LyapunovSolution {
  CovarianceMatrix v;
  double residual = 0.0;  // ||A V + V A^T + D||_F / ||D||_F
};

/// Solves A V + V A^T = -D through the 36-unknown Kronecker-sum system
/// (I (x) A + A (x) I) vec(V) = -vec(D). Throws Error(kNoUniqueSolution) when
/// the system is singular, i.e. A has eigenvalues summing to zero.
LyapunovSolution solve_lyapunov(const DriftMatrix& drift,
                                const DiffusionMatrix& diffusion);

struct IntegrationOptions {
  double rtol = 1e-11;
  long max_steps = 2'000'000;
};

/// Integrates dV/dt = A V + V A^T + D from V(0) = I/2 with adaptive
/// Dormand-Prince 5(4) steps until ||dV/dt||_F <= tol ||D||_F. Validation
/// oracle for solve_lyapunov; throws Error(kBudgetExceeded) on divergence or
/// when the step budget runs out.
CovarianceMatrix integrate_to_steady_state(const DriftMatrix& drift,
                                           const DiffusionMatrix& diffusion,
                                           double tol,
                                           const IntegrationOptions& opts = {});

}  // namespace magcav
