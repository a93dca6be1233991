#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

namespace magcav {

using Matrix6d = Eigen::Matrix<double, 6, 6>;

namespace constants {
// CODATA 2018 exact/recommended values.
inline constexpr double kHbar = 1.054571817e-34;      // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J/K
inline constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace constants

/// Ferrimagnetic sphere hosting the magnon mode.
struct SphereSpec {
  double diameter = 250e-6;       // m
  double spin_density = 4.22e27;  // m^-3
  double spin_number = 2.5;       // Fe3+ ground state

  /// N = rho * (pi/6) * d^3
  double total_spins() const;
  void validate() const;
};

/// Physical parameters of the two-cavity/one-magnon system. All rates and
/// frequencies are angular (rad/s); detunings are measured from the drive.
struct SystemParams {
  double omega1 = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double delta_m = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double kappa_m = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double eps_p = 0.0;
  double gain = 0.0;         // parametric gain of the squeezed drive
  double temperature = 0.0;  // K
  SphereSpec sphere;

  /// Throws Error(kInvalidParameters) on any violated invariant, including
  /// non-positive derived absolute frequencies.
  void validate() const;

  /// Working point: omega1/2pi = 10 GHz, kappa_m/2pi = 1 MHz,
  /// kappa1 = kappa2 = 5 kappa_m, g1 = g2 = 20 kappa_m, eps_p = 10 kappa_m,
  /// gain = 2.5 kappa_m, delta1 = -20, delta2 = 35, delta_m = 45 (kappa_m),
  /// T = 10 mK.
  static SystemParams working_point();
};

struct Frequencies {
  double omega0 = 0.0;  // drive
  double omega2 = 0.0;
  double omega_m = 0.0;
};

Frequencies derive_frequencies(const SystemParams& p);

/// Bose-Einstein occupation at angular frequency `omega` and temperature `t`.
/// Exactly zero at t == 0.
double thermal_occupation(double omega, double temperature);

struct MeanFields {
  std::complex<double> a1;
  std::complex<double> a2;
  std::complex<double> m;
  double n1 = 0.0;
  double n2 = 0.0;
  double nm = 0.0;

  static MeanFields from_amplitudes(std::complex<double> a1,
                                    std::complex<double> a2,
                                    std::complex<double> m);
};

/// Semiclassical steady state from a real 6x6 solve of the fixed-point
/// equations in (Re, Im) of <a1>, <a2>, <m>. The conjugate term of the
/// squeezed drive rules out a 3x3 complex solve.
MeanFields steady_state_mean_fields(const SystemParams& p);

/// Closed-form amplitudes obtained by eliminating <m>, <a2> and <a1*>.
/// Kept as a cross-check of steady_state_mean_fields.
MeanFields closed_form_mean_fields(const SystemParams& p);

struct LowExcitation {
  double ratio = 0.0;  // Nm / (2 N s)
  bool ok = true;
};

inline constexpr double kDefaultLowExcitationThreshold = 1e-3;

LowExcitation low_excitation_check(
    const MeanFields& mf, const SphereSpec& sphere,
    double threshold = kDefaultLowExcitationThreshold);

/// Drift matrix of the quadrature fluctuations (X1, Y1, X2, Y2, x, y).
struct DriftMatrix {
  Matrix6d a = Matrix6d::Zero();
};

struct DiffusionMatrix {
  Matrix6d d = Matrix6d::Zero();
};

DriftMatrix build_drift_matrix(const SystemParams& p);

/// Occupations are evaluated at the absolute frequencies omega1, omega2,
/// omega_m.
DiffusionMatrix build_diffusion_matrix(const SystemParams& p);

struct StabilityReport {
  double max_real_part = 0.0;
  bool stable = false;
  /// |max Re| below the margin; always reported as not stable.
  bool marginal = false;
  std::array<std::complex<double>, 6> eigenvalues{};
};

inline constexpr double kDefaultStabilityMarginFactor = 1e-9;

/// stable <=> max Re(lambda) < -margin. Throws Error(kNumerical) when the
/// eigenvalue iteration does not converge.
StabilityReport stability_check(const DriftMatrix& drift, double margin);

/// Detuning of the magnon mode along which the undamped mean-field
/// denominator vanishes: (delta1 g2^2 + delta2 g1^2) / (delta1 delta2).
double resonance_locus(const SystemParams& p);

}  // namespace magcav
