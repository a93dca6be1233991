#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "error.hpp"

namespace magcav {

namespace {

using cd = std::complex<double>;

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::kInvalidParameters, what);
}

bool finite_all(const SystemParams& p) {
  for (double v : {p.omega1, p.delta1, p.delta2, p.delta_m, p.kappa1, p.kappa2,
                   p.kappa_m, p.g1, p.g2, p.eps_p, p.gain, p.temperature}) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

double SphereSpec::total_spins() const {
  return spin_density * (std::numbers::pi / 6.0) * diameter * diameter *
         diameter;
}

void SphereSpec::validate() const {
  if (!(diameter > 0.0) || !(spin_density > 0.0) || !(spin_number > 0.0) ||
      !std::isfinite(diameter) || !std::isfinite(spin_density) ||
      !std::isfinite(spin_number)) {
    invalid("sphere diameter, spin density and spin number must be positive");
  }
  if (!(total_spins() > 0.0)) invalid("sphere holds no spins");
}

void SystemParams::validate() const {
  if (!finite_all(*this)) invalid("parameters must be finite");
  if (!(kappa1 > 0.0) || !(kappa2 > 0.0) || !(kappa_m > 0.0)) {
    invalid("dissipation rates kappa1, kappa2, kappa_m must be positive");
  }
  if (g1 < 0.0 || g2 < 0.0) invalid("couplings g1, g2 must be non-negative");
  if (gain < 0.0) invalid("gain must be non-negative");
  if (eps_p < 0.0) invalid("eps_p must be non-negative");
  if (temperature < 0.0) invalid("temperature must be non-negative");
  if (!(omega1 > 0.0)) invalid("omega1 must be positive");
  sphere.validate();
  derive_frequencies(*this);
}

SystemParams SystemParams::working_point() {
  SystemParams p;
  const double km = constants::kTwoPi * 1e6;
  p.omega1 = constants::kTwoPi * 10e9;
  p.kappa_m = km;
  p.kappa1 = 5.0 * km;
  p.kappa2 = 5.0 * km;
  p.g1 = 20.0 * km;
  p.g2 = 20.0 * km;
  p.eps_p = 10.0 * km;
  p.gain = 2.5 * km;
  p.delta1 = -20.0 * km;
  p.delta2 = 35.0 * km;
  p.delta_m = 45.0 * km;
  p.temperature = 10e-3;
  return p;
}

Frequencies derive_frequencies(const SystemParams& p) {
  Frequencies f;
  f.omega0 = p.omega1 - p.delta1;
  f.omega2 = f.omega0 + p.delta2;
  f.omega_m = f.omega0 + p.delta_m;
  if (!(f.omega0 > 0.0) || !(f.omega2 > 0.0) || !(f.omega_m > 0.0)) {
    invalid("derived absolute frequencies (drive, cavity 2, magnon) must be "
            "positive");
  }
  return f;
}

double thermal_occupation(double omega, double temperature) {
  if (temperature == 0.0) return 0.0;
  const double x =
      constants::kHbar * omega / (constants::kBoltzmann * temperature);
  return 1.0 / std::expm1(x);
}

MeanFields MeanFields::from_amplitudes(cd a1, cd a2, cd m) {
  MeanFields mf;
  mf.a1 = a1;
  mf.a2 = a2;
  mf.m = m;
  mf.n1 = std::norm(a1);
  mf.n2 = std::norm(a2);
  mf.nm = std::norm(m);
  return mf;
}

MeanFields steady_state_mean_fields(const SystemParams& p) {
  // Unknowns (Re a1, Im a1, Re a2, Im a2, Re m, Im m); complex equation k
  // occupies rows 2k (real part) and 2k+1 (imaginary part).
  Matrix6d lhs = Matrix6d::Zero();
  Eigen::Matrix<double, 6, 1> rhs = Eigen::Matrix<double, 6, 1>::Zero();

  auto add = [&lhs](int eq, cd coef, int unknown) {
    lhs(2 * eq, 2 * unknown) += coef.real();
    lhs(2 * eq, 2 * unknown + 1) += -coef.imag();
    lhs(2 * eq + 1, 2 * unknown) += coef.imag();
    lhs(2 * eq + 1, 2 * unknown + 1) += coef.real();
  };
  const cd i{0.0, 1.0};

  // -(i d1 + k1) a1 - i g1 m - i eps - 2 i gain conj(a1) = 0
  add(0, -(i * p.delta1 + p.kappa1), 0);
  add(0, -i * p.g1, 2);
  // -2 i gain (x - i y) = -2 gain y - 2 i gain x
  lhs(0, 1) += -2.0 * p.gain;
  lhs(1, 0) += -2.0 * p.gain;
  rhs(1) = p.eps_p;

  // -(i d2 + k2) a2 - i g2 m = 0
  add(1, -(i * p.delta2 + p.kappa2), 1);
  add(1, -i * p.g2, 2);

  // -(i dm + km) m - i g1 a1 - i g2 a2 = 0
  add(2, -(i * p.delta_m + p.kappa_m), 2);
  add(2, -i * p.g1, 0);
  add(2, -i * p.g2, 1);

  Eigen::PartialPivLU<Matrix6d> lu(lhs);
  if (!(lu.rcond() > 1e-14)) {
    throw Error(ErrorKind::kSingularSteadyState,
                "mean-field fixed-point system is singular (rcond " +
                    std::to_string(lu.rcond()) + ")");
  }
  const Eigen::Matrix<double, 6, 1> x = lu.solve(rhs);
  return MeanFields::from_amplitudes({x(0), x(1)}, {x(2), x(3)},
                                     {x(4), x(5)});
}

MeanFields closed_form_mean_fields(const SystemParams& p) {
  const cd i{0.0, 1.0};
  const cd den = (p.delta_m - i * p.kappa_m) * (p.delta2 - i * p.kappa2) -
                 p.g2 * p.g2;
  const cd den_conj = (p.delta_m + i * p.kappa_m) * (p.delta2 + i * p.kappa2) -
                      p.g2 * p.g2;
  if (den == 0.0) {
    throw Error(ErrorKind::kSingularSteadyState,
                "closed form: magnon/cavity-2 denominator vanishes");
  }
  const cd big_p =
      p.delta1 + i * p.kappa1 - p.g1 * p.g1 * (p.delta2 + i * p.kappa2) /
                                    den_conj;
  cd numerator = -p.eps_p;
  cd effective = p.delta1 - i * p.kappa1 -
                 p.g1 * p.g1 * (p.delta2 - i * p.kappa2) / den;
  if (p.gain != 0.0) {
    numerator += 2.0 * p.gain * p.eps_p / big_p;
    effective -= 4.0 * p.gain * p.gain / big_p;
  }
  if (effective == 0.0) {
    throw Error(ErrorKind::kSingularSteadyState,
                "closed form: effective cavity-1 denominator vanishes");
  }
  const cd a1 = numerator / effective;
  const cd a2 = p.g1 * p.g2 * a1 / den;
  const cd m = -p.g1 * (p.delta2 - i * p.kappa2) * a1 / den;
  return MeanFields::from_amplitudes(a1, a2, m);
}

LowExcitation low_excitation_check(const MeanFields& mf,
                                   const SphereSpec& sphere,
                                   double threshold) {
  LowExcitation out;
  out.ratio = mf.nm / (2.0 * sphere.total_spins() * sphere.spin_number);
  out.ok = out.ratio < threshold;
  return out;
}

DriftMatrix build_drift_matrix(const SystemParams& p) {
  const double k1 = p.kappa1, k2 = p.kappa2, km = p.kappa_m;
  const double d1 = p.delta1, d2 = p.delta2, dm = p.delta_m;
  const double g1 = p.g1, g2 = p.g2, s = 2.0 * p.gain;
  DriftMatrix out;
  // clang-format off
  out.a <<
      -k1,      d1 - s,  0.0,  0.0,  0.0,  g1,
      -d1 - s,  -k1,     0.0,  0.0,  -g1,  0.0,
      0.0,      0.0,     -k2,  d2,   0.0,  g2,
      0.0,      0.0,     -d2,  -k2,  -g2,  0.0,
      0.0,      g1,      0.0,  g2,   -km,  dm,
      -g1,      0.0,     -g2,  0.0,  -dm,  -km;
  // clang-format on
  return out;
}

DiffusionMatrix build_diffusion_matrix(const SystemParams& p) {
  const Frequencies f = derive_frequencies(p);
  const double n1 = thermal_occupation(p.omega1, p.temperature);
  const double n2 = thermal_occupation(f.omega2, p.temperature);
  const double nm = thermal_occupation(f.omega_m, p.temperature);
  DiffusionMatrix out;
  out.d.diagonal() << p.kappa1 * (2.0 * n1 + 1.0), p.kappa1 * (2.0 * n1 + 1.0),
      p.kappa2 * (2.0 * n2 + 1.0), p.kappa2 * (2.0 * n2 + 1.0),
      p.kappa_m * (2.0 * nm + 1.0), p.kappa_m * (2.0 * nm + 1.0);
  return out;
}

StabilityReport stability_check(const DriftMatrix& drift, double margin) {
  Eigen::EigenSolver<Matrix6d> es(drift.a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::kNumerical,
                "eigenvalue iteration for the drift matrix did not converge");
  }
  StabilityReport r;
  r.max_real_part = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 6; ++k) {
    r.eigenvalues[k] = es.eigenvalues()(k);
    r.max_real_part = std::max(r.max_real_part, r.eigenvalues[k].real());
  }
  if (!std::isfinite(r.max_real_part)) {
    throw Error(ErrorKind::kNumerical, "non-finite drift eigenvalue");
  }
  r.stable = r.max_real_part < -margin;
  r.marginal = std::abs(r.max_real_part) < margin;
  return r;
}

double resonance_locus(const SystemParams& p) {
  const double den = p.delta1 * p.delta2;
  if (den == 0.0) {
    throw Error(ErrorKind::kUndefinedLocus,
                "resonance locus needs non-zero delta1 and delta2");
  }
  return (p.delta1 * p.g2 * p.g2 + p.delta2 * p.g1 * p.g1) / den;
}

}  // namespace magcav
