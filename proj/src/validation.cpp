#include "validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "error.hpp"
#include "gaussian.hpp"
#include "lyapunov.hpp"

namespace magcav {

namespace {

using Rng = std::mt19937_64;

double bisect(SystemParams p, double lo, double hi, double precision,
              const std::function<void(Matrix6d&)>& mutation) {
  const auto unstable = [&](double gain) {
    p.gain = gain;
    DriftMatrix a = build_drift_matrix(p);
    if (mutation) mutation(a.a);
    return stability_check(a, 0.0).max_real_part >= 0.0;
  };
  if (unstable(lo) || !unstable(hi)) {
    throw Error(ErrorKind::kNumerical, "instability threshold not bracketed");
  }
  while (hi - lo > precision) {
    const double mid = 0.5 * (lo + hi);
    (unstable(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

class Battery {
 public:
  explicit Battery(const ValidationOptions& opts)
      : opts_(opts), rng_(opts.seed) {}

  std::vector<OracleOutcome> run() {
    guarded("tmsv_log_negativity", 1e-9, [this] { return tmsv(); });
    guarded("lyapunov_vs_ode", 1e-6, [this] { return lyapunov_vs_ode(); });
    guarded("mean_field_closed_form", 1e-10, [this] { return mean_fields(); });
    guarded("passive_vacuum", 1e-10, [this] { return passive_vacuum(); });
    guarded("instability_threshold", 1e-6, [this] { return threshold(); });
    guarded("symplectic_physicality", 1e-9, [this] { return physicality(); });
    guarded("monogamy", 1e-9, [this] { return monogamy(); });
    return std::move(out_);
  }

 private:
  struct Measured {
    double worst;
    std::string detail;
  };

  template <typename F>
  void guarded(std::string name, double tol, F&& body) {
    OracleOutcome o;
    o.name = std::move(name);
    o.tolerance = opts_.tolerance_override.value_or(tol);
    try {
      Measured m = body();
      o.worst = m.worst;
      o.detail = std::move(m.detail);
      o.passed = m.worst <= o.tolerance;
    } catch (const Error& e) {
      o.worst = std::numeric_limits<double>::infinity();
      o.detail = std::string(to_string(e.kind())) + ": " + e.what();
      o.passed = false;
    }
    out_.push_back(std::move(o));
  }

  DriftMatrix drift(const SystemParams& p) const {
    DriftMatrix a = build_drift_matrix(p);
    if (opts_.drift_mutation) opts_.drift_mutation(a.a);
    return a;
  }

  SystemParams random_params(bool passive) {
    SystemParams p = SystemParams::working_point();
    const double km = p.kappa_m;
    p.delta1 = uniform(rng_, -60, 60) * km;
    p.delta2 = uniform(rng_, -60, 60) * km;
    p.delta_m = uniform(rng_, -60, 60) * km;
    p.kappa1 = uniform(rng_, 1, 10) * km;
    p.kappa2 = uniform(rng_, 1, 10) * km;
    p.g1 = uniform(rng_, 0, 40) * km;
    p.g2 = uniform(rng_, 0, 40) * km;
    p.eps_p = uniform(rng_, 0, 20) * km;
    p.gain = passive ? 0.0 : uniform(rng_, 0, 10) * km;
    p.temperature = passive ? 0.0 : uniform(rng_, 0, 0.3);
    return p;
  }

  /// Draws until the (possibly mutated) drift matrix is stable.
  std::pair<SystemParams, DriftMatrix> random_stable(bool passive) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
      SystemParams p = random_params(passive);
      DriftMatrix a = drift(p);
      if (stability_check(a, kDefaultStabilityMarginFactor * p.kappa_m).stable) {
        return {p, a};
      }
    }
    throw Error(ErrorKind::kNumerical, "no stable parameter draw found");
  }

  Measured tmsv() {
    double worst = 0.0;
    for (double r : {0.5, 1.0, 2.0}) {
      const double e = log_negativity(CovarianceMatrix(two_mode_squeezed_vacuum(r)));
      worst = std::max(worst, std::abs(e - 2.0 * r));
    }
    return {worst, "|E_N - 2r| for r in {0.5, 1, 2}"};
  }

  Measured lyapunov_vs_ode() {
    double worst = 0.0;
    const auto compare = [&](const DriftMatrix& a, const DiffusionMatrix& d) {
      const Matrix6d alg = solve_lyapunov(a, d).v.matrix();
      const Matrix6d ode = integrate_to_steady_state(a, d, 1e-11).matrix();
      worst = std::max(worst, (alg - ode).norm() / alg.norm());
    };
    std::normal_distribution<double> normal;
    for (int k = 0; k < opts_.random_lyapunov_systems; ++k) {
      DriftMatrix a;
      for (int i = 0; i < 36; ++i) a.a(i) = normal(rng_);
      const double shift = stability_check(a, 0.0).max_real_part;
      a.a.diagonal().array() -= shift + uniform(rng_, 0.2, 1.0);
      DiffusionMatrix d;
      for (int i = 0; i < 6; ++i) d.d(i, i) = uniform(rng_, 0.5, 3.0);
      compare(a, d);
    }
    const SystemParams wp = SystemParams::working_point();
    compare(drift(wp), build_diffusion_matrix(wp));
    return {worst, std::to_string(opts_.random_lyapunov_systems) +
                       " random systems + working point, relative Frobenius"};
  }

  Measured mean_fields() {
    double worst = 0.0;
    for (int k = 0; k < opts_.random_mean_field_draws; ++k) {
      SystemParams p;
      for (;;) {
        p = random_params(false);
        if (stability_check(build_drift_matrix(p),
                            kDefaultStabilityMarginFactor * p.kappa_m)
                .stable) {
          break;
        }
      }
      const MeanFields lin = steady_state_mean_fields(p);
      const MeanFields cf = closed_form_mean_fields(p);
      const double scale =
          std::sqrt(lin.n1 + lin.n2 + lin.nm) + std::numeric_limits<double>::min();
      const double diff = std::sqrt(std::norm(lin.a1 - cf.a1) +
                                    std::norm(lin.a2 - cf.a2) +
                                    std::norm(lin.m - cf.m));
      worst = std::max(worst, diff / scale);
    }
    return {worst, std::to_string(opts_.random_mean_field_draws) +
                       " stable draws, relative amplitude error"};
  }

  Measured passive_vacuum() {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const auto [p, a] = random_stable(true);
      const Matrix6d v = solve_lyapunov(a, build_diffusion_matrix(p)).v.matrix();
      worst = std::max(worst, (v - 0.5 * Matrix6d::Identity()).cwiseAbs().maxCoeff());
    }
    return {worst, "gain = 0, T = 0: max |V - I/2|"};
  }

  Measured threshold() {
    double worst = 0.0;
    SystemParams p = SystemParams::working_point();
    const double km = p.kappa_m;
    p.g1 = p.g2 = 0.0;
    for (double d1 : {-20.0, 0.0, 7.5, 35.0}) {
      for (double k1 : {5.0, 2.0}) {
        p.delta1 = d1 * km;
        p.kappa1 = k1 * km;
        const double analytic = 0.5 * std::hypot(p.delta1, p.kappa1);
        double found = std::numeric_limits<double>::infinity();
        try {
          found = bisect(p, 0.0, 100.0 * km, 1e-10 * km, opts_.drift_mutation);
        } catch (const Error&) {
        }
        worst = std::max(worst, std::abs(found - analytic) / km);
      }
    }
    return {worst, "|bisected - sqrt(delta1^2 + kappa1^2)/2| in kappa_m"};
  }

  Measured physicality() {
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < opts_.random_model_points; ++k) {
      const auto [p, a] = random_stable(false);
      const CovarianceMatrix v = solve_lyapunov(a, build_diffusion_matrix(p)).v;
      worst = std::max(worst, 0.5 - symplectic_eigenvalues(v.matrix()).minCoeff());
    }
    return {worst, "1/2 - min symplectic eigenvalue over stable model points"};
  }

  Measured monogamy() {
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < opts_.random_model_points; ++k) {
      const auto [p, a] = random_stable(false);
      const CovarianceMatrix v = solve_lyapunov(a, build_diffusion_matrix(p)).v;
      for (double r : entanglement_measures(v).residuals) worst = std::max(worst, -r);
    }
    return {worst, "-min residual contangle over stable model points"};
  }

  const ValidationOptions& opts_;
  Rng rng_;
  std::vector<OracleOutcome> out_;
};

}  // namespace

Eigen::MatrixXd two_mode_squeezed_vacuum(double r) {
  const double c = std::cosh(2.0 * r), s = std::sinh(2.0 * r);
  Eigen::MatrixXd v(4, 4);
  // clang-format off
  v << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  // clang-format on
  return 0.5 * v;
}

double bisect_instability_gain(SystemParams p, double lo, double hi,
                               double precision) {
  return bisect(p, lo, hi, precision, {});
}

std::vector<OracleOutcome> run_validation(const ValidationOptions& opts) {
  return Battery(opts).run();
}

}  // namespace magcav
