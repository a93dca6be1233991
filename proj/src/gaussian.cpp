#include "gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "error.hpp"

namespace magcav {

namespace {

constexpr double kPairingTolerance = 1e-8;

void check_mode(int modes, int mode) {
  if (mode < 0 || mode >= modes) {
    throw Error(ErrorKind::kInvalidParameters,
                "mode index " + std::to_string(mode) + " out of range for " +
                    std::to_string(modes) + "-mode state");
  }
}

void require_modes(const CovarianceMatrix& v, int modes) {
  if (v.modes() != modes) {
    throw Error(ErrorKind::kInvalidParameters,
                "expected a " + std::to_string(modes) +
                    "-mode covariance matrix");
  }
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(const Eigen::MatrixXd& v) {
  if (v.rows() != v.cols() || v.rows() % 2 != 0 || v.rows() < 2 ||
      v.rows() > 6) {
    throw Error(ErrorKind::kInvalidParameters,
                "covariance matrix must be 2n x 2n with n in {1, 2, 3}");
  }
  if (!v.allFinite()) {
    throw Error(ErrorKind::kNumerical, "covariance matrix is not finite");
  }
  v_ = 0.5 * (v + v.transpose());
}

CovarianceMatrix CovarianceMatrix::vacuum(int modes) {
  return CovarianceMatrix(0.5 * Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
}

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

CovarianceMatrix reduce(const CovarianceMatrix& v, int first, int second) {
  require_modes(v, 3);
  check_mode(3, first);
  check_mode(3, second);
  if (first == second) {
    throw Error(ErrorKind::kInvalidParameters,
                "reduce needs two distinct modes");
  }
  const int a = std::min(first, second);
  const int b = std::max(first, second);
  const std::array<int, 4> idx{2 * a, 2 * a + 1, 2 * b, 2 * b + 1};
  Eigen::MatrixXd out(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) out(r, c) = v(idx[r], idx[c]);
  }
  return CovarianceMatrix(out);
}

Eigen::MatrixXd partial_transpose(const CovarianceMatrix& v, int mode) {
  check_mode(v.modes(), mode);
  Eigen::MatrixXd out = v.matrix();
  const int y = 2 * mode + 1;
  out.row(y) *= -1.0;
  out.col(y) *= -1.0;
  return out;
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    throw Error(ErrorKind::kInvalidParameters,
                "symplectic spectrum needs a 2n x 2n matrix");
  }
  const int n = static_cast<int>(m.rows() / 2);
  Eigen::EigenSolver<Eigen::MatrixXd> es(symplectic_form(n) * m, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::kNumerical,
                "eigenvalue iteration for the symplectic spectrum failed");
  }
  std::vector<double> mags(2 * n);
  for (int k = 0; k < 2 * n; ++k) mags[k] = std::abs(es.eigenvalues()(k).imag());
  std::sort(mags.begin(), mags.end());

  Eigen::VectorXd nu(n);
  for (int k = 0; k < n; ++k) {
    const double lo = mags[2 * k], hi = mags[2 * k + 1];
    if (hi - lo > kPairingTolerance * std::max(1.0, hi)) {
      throw Error(ErrorKind::kNumerical,
                  "symplectic eigenvalues do not pair: " + std::to_string(lo) +
                      " vs " + std::to_string(hi));
    }
    nu(k) = 0.5 * (lo + hi);
  }
  return nu;
}

double log_negativity_from_transpose(const Eigen::MatrixXd& pt) {
  const double nu_min = symplectic_eigenvalues(pt).minCoeff();
  return std::max(0.0, -std::log(2.0 * nu_min));
}

double log_negativity(const CovarianceMatrix& v) {
  require_modes(v, 2);
  return log_negativity_from_transpose(partial_transpose(v, 0));
}

double one_vs_two_log_negativity(const CovarianceMatrix& v, int mode) {
  require_modes(v, 3);
  return log_negativity_from_transpose(partial_transpose(v, mode));
}

double residual_contangle(const CovarianceMatrix& v, int mode) {
  require_modes(v, 3);
  check_mode(3, mode);
  const int j = (mode + 1) % 3;
  const int k = (mode + 2) % 3;
  const double e_split = one_vs_two_log_negativity(v, mode);
  const double e_ij = log_negativity(reduce(v, mode, j));
  const double e_ik = log_negativity(reduce(v, mode, k));
  return e_split * e_split - e_ij * e_ij - e_ik * e_ik;
}

MinResidualContangle min_residual_contangle(const CovarianceMatrix& v) {
  MinResidualContangle out;
  out.value = residual_contangle(v, 0);
  for (int i = 1; i < 3; ++i) {
    const double r = residual_contangle(v, i);
    if (r < out.value) {
      out.value = r;
      out.mode = i;
    }
  }
  return out;
}

EntanglementResult entanglement_measures(const CovarianceMatrix& v) {
  require_modes(v, 3);
  EntanglementResult r;
  r.e_a1m = log_negativity(reduce(v, 0, 2));
  r.e_a2m = log_negativity(reduce(v, 1, 2));
  r.e_a1a2 = log_negativity(reduce(v, 0, 1));
  r.e1_23 = one_vs_two_log_negativity(v, 0);
  r.e2_13 = one_vs_two_log_negativity(v, 1);
  r.e3_12 = one_vs_two_log_negativity(v, 2);

  const auto sq = [](double x) { return x * x; };
  r.residuals[0] = sq(r.e1_23) - sq(r.e_a1a2) - sq(r.e_a1m);
  r.residuals[1] = sq(r.e2_13) - sq(r.e_a1a2) - sq(r.e_a2m);
  r.residuals[2] = sq(r.e3_12) - sq(r.e_a1m) - sq(r.e_a2m);
  r.r_tau_min_mode = 0;
  for (int i = 1; i < 3; ++i) {
    if (r.residuals[i] < r.residuals[r.r_tau_min_mode]) r.r_tau_min_mode = i;
  }
  r.r_tau_min = std::max(0.0, r.residuals[r.r_tau_min_mode]);
  return r;
}

double quadrature_variance(const CovarianceMatrix& v, int quadrature) {
  if (quadrature < 0 || quadrature >= 2 * v.modes()) {
    throw Error(ErrorKind::kInvalidParameters,
                "quadrature index " + std::to_string(quadrature) +
                    " out of range");
  }
  return v(quadrature, quadrature);
}

double squeezing_db(double variance) {
  if (!(variance > 0.0)) {
    throw Error(ErrorKind::kInvalidParameters,
                "squeezing needs a positive variance");
  }
  return -10.0 * std::log10(variance / 0.5);
}

}  // namespace magcav
