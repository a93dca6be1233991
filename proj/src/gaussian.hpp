#pragma once

#include <array>

#include <Eigen/Core>

namespace magcav {

/// Covariance matrix of an n-mode Gaussian state, n in {1, 2, 3}, quadrature
/// order (X1, Y1, ..., Xn, Yn), vacuum variance 1/2. Symmetrized on
/// construction. Mode indices throughout this header are zero-based.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(const Eigen::MatrixXd& v);

  static CovarianceMatrix vacuum(int modes);

  int modes() const { return static_cast<int>(v_.rows() / 2); }
  const Eigen::MatrixXd& matrix() const { return v_; }
  double operator()(int i, int j) const { return v_(i, j); }

 private:
  Eigen::MatrixXd v_;
};

/// Direct sum of [[0, 1], [-1, 0]] blocks.
Eigen::MatrixXd symplectic_form(int modes);

/// Two-mode marginal of a three-mode state; mode order is preserved.
CovarianceMatrix reduce(const CovarianceMatrix& v, int first, int second);

/// P V P with P = identity except -1 on the Y quadrature of `mode`.
Eigen::MatrixXd partial_transpose(const CovarianceMatrix& v, int mode);

/// Ascending symplectic spectrum of a symmetric 2n x 2n matrix: the |Im| of
/// the +-i nu eigenvalue pairs of (symplectic_form * m). Throws
/// Error(kNumerical) if the pairs do not match within 1e-8.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& m);

/// max(0, -ln(2 nu)) for the smallest symplectic eigenvalue of `pt`.
double log_negativity_from_transpose(const Eigen::MatrixXd& pt);

/// Two-mode logarithmic negativity.
double log_negativity(const CovarianceMatrix& v);

/// E_{i|jk} for a three-mode state.
double one_vs_two_log_negativity(const CovarianceMatrix& v, int mode);

/// C_{i|jk} - C_{i|j} - C_{i|k} with contangle C = E_N^2. Not clamped.
double residual_contangle(const CovarianceMatrix& v, int mode);

struct MinResidualContangle {
  double value = 0.0;  // raw minimum; may be -1e-9-ish from rounding
  int mode = 0;        // splitting i|jk that attains it (first on ties)
};

MinResidualContangle min_residual_contangle(const CovarianceMatrix& v);

/// All entanglement measures of the (a1, a2, m) system, modes 0, 1, 2.
struct EntanglementResult {
  double e_a1m = 0.0;
  double e_a2m = 0.0;
  double e_a1a2 = 0.0;
  double e1_23 = 0.0;
  double e2_13 = 0.0;
  double e3_12 = 0.0;
  std::array<double, 3> residuals{};  // raw R_tau^{i|jk}, i = 0, 1, 2
  double r_tau_min = 0.0;             // min of residuals, floored at 0
  int r_tau_min_mode = 0;
};

EntanglementResult entanglement_measures(const CovarianceMatrix& v);

double quadrature_variance(const CovarianceMatrix& v, int quadrature);

/// -10 log10(variance / (1/2)); positive below vacuum noise.
double squeezing_db(double variance);

}  // namespace magcav
