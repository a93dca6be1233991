#include <cmath>
#include <random>

#include <doctest.h>

#include "error.hpp"
#include "model.hpp"
#include "validation.hpp"

using namespace magcav;

namespace {

constexpr double kKm = constants::kTwoPi * 1e6;

SystemParams random_params(std::mt19937_64& rng, double max_gain) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SystemParams p = SystemParams::working_point();
  p.delta1 = (120 * u(rng) - 60) * kKm;
  p.delta2 = (120 * u(rng) - 60) * kKm;
  p.delta_m = (120 * u(rng) - 60) * kKm;
  p.kappa1 = (1 + 9 * u(rng)) * kKm;
  p.kappa2 = (1 + 9 * u(rng)) * kKm;
  p.kappa_m = (0.5 + u(rng)) * kKm;
  p.g1 = 40 * u(rng) * kKm;
  p.g2 = 40 * u(rng) * kKm;
  p.eps_p = 20 * u(rng) * kKm;
  p.gain = max_gain * u(rng) * kKm;
  return p;
}

}  // namespace

TEST_CASE("derive_frequencies inverts the detuning definitions") {
  SystemParams p = SystemParams::working_point();
  p.delta1 = p.delta2 = p.delta_m = 0.0;
  Frequencies f = derive_frequencies(p);
  CHECK(f.omega0 == p.omega1);
  CHECK(f.omega2 == p.omega1);
  CHECK(f.omega_m == p.omega1);

  p.delta1 = -20 * kKm;
  f = derive_frequencies(p);
  CHECK(f.omega0 / constants::kTwoPi == doctest::Approx(10.020e9).epsilon(1e-14));

  p.delta1 = constants::kTwoPi * 10e9 + kKm;
  CHECK_THROWS_AS(derive_frequencies(p), Error);
  try {
    p.validate();
    FAIL("validate accepted a negative drive frequency");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidParameters);
  }
}

TEST_CASE("parameter invariants are enforced") {
  SystemParams p = SystemParams::working_point();
  CHECK_NOTHROW(p.validate());
  for (auto mutate : std::initializer_list<void (*)(SystemParams&)>{
           [](SystemParams& q) { q.kappa1 = 0.0; },
           [](SystemParams& q) { q.kappa_m = -1.0; },
           [](SystemParams& q) { q.g2 = -1.0; },
           [](SystemParams& q) { q.gain = -1.0; },
           [](SystemParams& q) { q.eps_p = -1.0; },
           [](SystemParams& q) { q.temperature = -1e-3; },
           [](SystemParams& q) { q.omega1 = 0.0; },
           [](SystemParams& q) { q.sphere.diameter = 0.0; },
           [](SystemParams& q) { q.delta2 = NAN; }}) {
    SystemParams q = p;
    mutate(q);
    CHECK_THROWS_AS(q.validate(), Error);
  }
}

TEST_CASE("thermal_occupation matches high-precision Bose-Einstein values") {
  const double w = constants::kTwoPi * 10e9;
  CHECK(thermal_occupation(w, 0.0) == 0.0);
  // Reference values evaluated with 40-digit arithmetic and CODATA 2018
  // constants.
  CHECK(thermal_occupation(w, 10e-3) ==
        doctest::Approx(1.435992501216949794e-21).epsilon(1e-11));
  CHECK(thermal_occupation(w, 200e-3) ==
        doctest::Approx(0.09981030765677504387).epsilon(1e-12));
}

TEST_CASE("thermal_occupation is monotone and has the classical limit") {
  const double w = constants::kTwoPi * 10e9;
  double prev = 0.0;
  for (double t = 1e-3; t < 10.0; t *= 1.3) {
    const double n = thermal_occupation(w, t);
    CHECK(n > prev);
    CHECK(thermal_occupation(1.1 * w, t) < n);
    prev = n;
  }
  // hbar w / kB T < 1e-3
  const double t_hot = constants::kHbar * w / constants::kBoltzmann / 5e-4;
  const double x = constants::kHbar * w / (constants::kBoltzmann * t_hot);
  CHECK(thermal_occupation(w, t_hot) * x == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("mean fields: trivial limits") {
  SystemParams p = SystemParams::working_point();
  p.eps_p = 0.0;
  p.gain = 0.0;
  MeanFields mf = steady_state_mean_fields(p);
  CHECK(mf.a1 == std::complex<double>(0.0));
  CHECK(mf.a2 == std::complex<double>(0.0));
  CHECK(mf.m == std::complex<double>(0.0));
  CHECK(mf.n1 == 0.0);

  p = SystemParams::working_point();
  p.g1 = p.g2 = p.gain = p.delta1 = 0.0;
  mf = steady_state_mean_fields(p);
  const std::complex<double> expected(0.0, -p.eps_p / p.kappa1);
  CHECK(std::abs(mf.a1 - expected) <= 1e-14 * std::abs(expected));
  CHECK(std::abs(mf.a2) == 0.0);
  CHECK(std::abs(mf.m) == 0.0);
  const MeanFields cf = closed_form_mean_fields(p);
  CHECK(std::abs(cf.a1 - expected) <= 1e-14 * std::abs(expected));
}

TEST_CASE("mean fields: closed form agrees with the real linear solve") {
  std::mt19937_64 rng(7);
  int checked = 0;
  double worst = 0.0;
  while (checked < 1000) {
    const SystemParams p = random_params(rng, 10.0);
    if (!stability_check(build_drift_matrix(p), 1e-9 * p.kappa_m).stable) continue;
    const MeanFields a = steady_state_mean_fields(p);
    const MeanFields b = closed_form_mean_fields(p);
    const double scale = std::sqrt(a.n1 + a.n2 + a.nm);
    const double diff = std::sqrt(std::norm(a.a1 - b.a1) + std::norm(a.a2 - b.a2) +
                                  std::norm(a.m - b.m));
    worst = std::max(worst, diff / scale);
    ++checked;
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("low_excitation_check with the default sphere") {
  const SphereSpec sphere;
  CHECK(sphere.total_spins() == doctest::Approx(3.4524794266012832e16).epsilon(1e-12));
  const double two_ns = 2.0 * sphere.total_spins() * sphere.spin_number;
  CHECK(two_ns == doctest::Approx(1.7262397133006416e17).epsilon(1e-12));

  MeanFields mf;
  LowExcitation le = low_excitation_check(mf, sphere);
  CHECK(le.ratio == 0.0);
  CHECK(le.ok);

  mf.nm = 1e3;
  CHECK(low_excitation_check(mf, sphere).ok);
  mf.nm = two_ns;
  le = low_excitation_check(mf, sphere);
  CHECK(le.ratio == doctest::Approx(1.0));
  CHECK_FALSE(le.ok);
}

TEST_CASE("drift matrix layout") {
  SystemParams p = SystemParams::working_point();
  const Matrix6d a = build_drift_matrix(p).a;
  CHECK(a(0, 1) == p.delta1 - 2 * p.gain);
  CHECK(a(1, 0) == -p.delta1 - 2 * p.gain);
  CHECK(a(0, 5) == p.g1);
  CHECK(a(1, 4) == -p.g1);
  CHECK(a(4, 1) == p.g1);
  CHECK(a(5, 0) == -p.g1);
  CHECK(a(2, 3) == p.delta2);
  CHECK(a(4, 5) == p.delta_m);

  p.g1 = p.g2 = 0.0;
  const Matrix6d decoupled = build_drift_matrix(p).a;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (i / 2 != j / 2) CHECK(decoupled(i, j) == 0.0);
    }
  }
}

TEST_CASE("drift matrix structure holds for random parameters") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    SystemParams p = random_params(rng, 10.0);
    Matrix6d a = build_drift_matrix(p).a;
    for (auto [i, j] : {std::pair{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 0}, {2, 1},
                        {3, 0}, {3, 1}}) {
      CHECK(a(i, j) == 0.0);
    }
    p.gain = 0.0;
    a = build_drift_matrix(p).a;
    Matrix6d expected = Matrix6d::Zero();
    expected.diagonal() << p.kappa1, p.kappa1, p.kappa2, p.kappa2, p.kappa_m,
        p.kappa_m;
    CHECK((a + a.transpose() + 2.0 * expected).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("diffusion matrix") {
  SystemParams p = SystemParams::working_point();
  p.temperature = 0.0;
  Matrix6d d = build_diffusion_matrix(p).d;
  Matrix6d expected = Matrix6d::Zero();
  expected.diagonal() << 5, 5, 5, 5, 1, 1;
  CHECK((d / kKm - expected).cwiseAbs().maxCoeff() <= 1e-15);

  p.temperature = 0.2;
  p.delta1 = p.delta2 = p.delta_m = 0.0;
  d = build_diffusion_matrix(p).d;
  for (int i = 0; i < 6; ++i) {
    const double kappa = i < 2 ? p.kappa1 : i < 4 ? p.kappa2 : p.kappa_m;
    CHECK(d(i, i) / kappa == doctest::Approx(1.199620615313550088).epsilon(1e-12));
  }
  CHECK((d - Matrix6d(d.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("stability_check examples") {
  SystemParams p = SystemParams::working_point();
  const double margin = 1e-9 * p.kappa_m;
  CHECK(stability_check(build_drift_matrix(p), margin).stable);

  p.g1 = p.g2 = 0.0;
  p.delta1 = 0.0;
  p.gain = 3 * kKm;
  const StabilityReport r = stability_check(build_drift_matrix(p), margin);
  CHECK_FALSE(r.stable);
  // Cavity-1 block: -kappa1 +- 2 gain = +1 kappa_m.
  CHECK(r.max_real_part / kKm == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937_64 rng(3);
  for (int k = 0; k < 300; ++k) {
    SystemParams q = random_params(rng, 0.0);
    CHECK(stability_check(build_drift_matrix(q), 1e-9 * q.kappa_m).stable);
  }
}

TEST_CASE("marginal points are flagged and not stable") {
  SystemParams p = SystemParams::working_point();
  p.g1 = p.g2 = 0.0;
  p.delta1 = 0.0;
  p.gain = p.kappa1 / 2.0;
  const StabilityReport r = stability_check(build_drift_matrix(p), 1e-9 * p.kappa_m);
  CHECK(r.marginal);
  CHECK_FALSE(r.stable);
}

TEST_CASE("single-mode instability threshold by bisection") {
  SystemParams p = SystemParams::working_point();
  p.g1 = p.g2 = 0.0;
  for (double d1 : {-20.0, -3.0, 0.0, 12.5}) {
    p.delta1 = d1 * kKm;
    const double analytic = 0.5 * std::hypot(p.delta1, p.kappa1);
    const double found = bisect_instability_gain(p, 0.0, 100 * kKm, 1e-10 * kKm);
    CHECK(std::abs(found - analytic) / kKm <= 1e-6);
  }
}

TEST_CASE("resonance_locus") {
  SystemParams p = SystemParams::working_point();
  p.g2 = 0.0;
  CHECK(resonance_locus(p) == doctest::Approx(p.g1 * p.g1 / p.delta1).epsilon(1e-15));

  p.g2 = p.g1 = 20 * kKm;
  p.delta1 = -20 * kKm;
  p.delta2 = 35 * kKm;
  CHECK(resonance_locus(p) / kKm ==
        doctest::Approx(-8.571428571428571429).epsilon(1e-14));

  p.delta2 = 0.0;
  try {
    resonance_locus(p);
    FAIL("expected an undefined-locus error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUndefinedLocus);
  }
}
