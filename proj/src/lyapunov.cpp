#include "lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>

#include "error.hpp"

namespace magcav {

namespace {

constexpr double kSymmetryDrift = 1e-10;
constexpr double kSingularRcond = 1e-14;

Matrix6d lyapunov_rhs(const Matrix6d& a, const Matrix6d& d, const Matrix6d& v) {
  return a * v + v * a.transpose() + d;
}

}  // namespace

LyapunovSolution solve_lyapunov(const DriftMatrix& drift,
                                const DiffusionMatrix& diffusion) {
  using Matrix36d = Eigen::Matrix<double, 36, 36>;
  using Vector36d = Eigen::Matrix<double, 36, 1>;
  const Matrix6d& a = drift.a;
  const Matrix6d& d = diffusion.d;

  // Column-major vec: vec(A V) = (I (x) A) vec V, vec(V A^T) = (A (x) I) vec V.
  Matrix36d op = Matrix36d::Zero();
  for (int i = 0; i < 6; ++i) {
    op.block<6, 6>(6 * i, 6 * i) += a;
    for (int j = 0; j < 6; ++j) {
      op.block<6, 6>(6 * i, 6 * j).diagonal().array() += a(i, j);
    }
  }
  const Vector36d rhs = -Eigen::Map<const Vector36d>(d.data());

  Eigen::PartialPivLU<Matrix36d> lu(op);
  const double rcond = lu.rcond();
  if (!(rcond > kSingularRcond)) {
    throw Error(ErrorKind::kNoUniqueSolution,
                "Lyapunov operator is singular (rcond " +
                    std::to_string(rcond) + "); drift matrix is marginal");
  }
  const Vector36d x = lu.solve(rhs);
  Matrix6d v = Eigen::Map<const Matrix6d>(x.data());
  if (!v.allFinite()) {
    throw Error(ErrorKind::kNumerical, "Lyapunov solution is not finite");
  }

  const double scale = std::max(v.norm(), std::numeric_limits<double>::min());
  const double drift_sym = (v - v.transpose()).norm() / scale;
  if (drift_sym > kSymmetryDrift) {
    throw Error(ErrorKind::kNumerical,
                "Lyapunov solution asymmetric beyond tolerance (" +
                    std::to_string(drift_sym) + ")");
  }
  v = 0.5 * (v + v.transpose());

  LyapunovSolution out{CovarianceMatrix(v), 0.0};
  const double dnorm = d.norm();
  out.residual = lyapunov_rhs(a, d, v).norm() / (dnorm > 0.0 ? dnorm : 1.0);
  return out;
}

CovarianceMatrix integrate_to_steady_state(const DriftMatrix& drift,
                                           const DiffusionMatrix& diffusion,
                                           double tol,
                                           const IntegrationOptions& opts) {
  // Dormand-Prince 5(4) tableau; the system is autonomous so the nodes c_i
  // are not needed.
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                   a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const Matrix6d& a = drift.a;
  const Matrix6d& d = diffusion.d;
  const double dnorm = d.norm();
  const double target = tol * (dnorm > 0.0 ? dnorm : 1.0);
  const auto f = [&](const Matrix6d& v) { return lyapunov_rhs(a, d, v); };

  Matrix6d v = 0.5 * Matrix6d::Identity();
  Matrix6d k1 = f(v);
  const double a_norm = std::max(a.norm(), std::numeric_limits<double>::min());
  const double h_max = 0.75 / a_norm;
  double h = 0.01 / a_norm;

  for (long step = 0; step < opts.max_steps; ++step) {
    if (k1.norm() <= target) return CovarianceMatrix(v);

    const Matrix6d k2 = f(v + h * (a21 * k1));
    const Matrix6d k3 = f(v + h * (a31 * k1 + a32 * k2));
    const Matrix6d k4 = f(v + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Matrix6d k5 = f(v + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Matrix6d k6 =
        f(v + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Matrix6d next =
        v + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Matrix6d k7 = f(next);
    const Matrix6d err =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    if (!next.allFinite()) {
      throw Error(ErrorKind::kBudgetExceeded,
                  "covariance integration diverged (unstable drift matrix)");
    }
    const double scale = opts.rtol * std::max(next.cwiseAbs().maxCoeff(),
                                              v.cwiseAbs().maxCoeff());
    const double ratio =
        err.cwiseAbs().maxCoeff() / std::max(scale, opts.rtol * 1e-300);
    if (ratio <= 1.0) {
      v = next;
      k1 = k7;  // first-same-as-last
    }
    const double factor =
        ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
    // Near the fixed point the local error is tiny and would let h grow to
    // the explicit stability limit, where the iterate jitters instead of
    // settling. The Lyapunov operator's eigenvalues are bounded by 2 ||A||.
    h = std::min(h * factor, h_max);
  }
  throw Error(ErrorKind::kBudgetExceeded,
              "covariance integration exceeded " +
                  std::to_string(opts.max_steps) + " steps");
}

}  // namespace magcav
