// Acceptance suite: one PASS/FAIL line per criterion, measured values below
// each. Exit status is the number of failed criteria.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "gaussian.hpp"
#include "sweep.hpp"
#include "validation.hpp"

using namespace magcav;

namespace {

unsigned g_workers = std::max(1u, std::thread::hardware_concurrency());
int g_failed = 0;

struct Verdict {
  bool pass = true;
  std::vector<std::string> lines;

  void check(bool ok, const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    lines.push_back(std::string(ok ? "ok    " : "FAIL  ") + buf);
    pass = pass && ok;
  }
  void note(const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    lines.push_back(std::string("      ") + buf);
  }
};

void report(int id, const char* title, const Verdict& v) {
  std::printf("[%s] %d. %s\n", v.pass ? "PASS" : "FAIL", id, title);
  for (const std::string& l : v.lines) std::printf("         %s\n", l.c_str());
  std::fflush(stdout);
  if (!v.pass) ++g_failed;
}

const GridResult& preset_grid(const std::string& name) {
  static std::map<std::string, GridResult> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, run_grid(figure_preset(name), g_workers)).first;
  return it->second;
}

double kappa_units(const GridResult& g, double rate) { return rate / g.spec.base.kappa_m; }

void criterion1() {
  Verdict v;
  const GridResult& g = preset_grid("fig2");
  v.note("grid %d x %d over delta1, deltaM in [%g, %g] kappa_m, %zu stable", g.spec.axis1.count,
         g.spec.axis2->count, g.spec.axis1.min, g.spec.axis1.max, g.stable_count);
  const SummaryEntry& e = g.max_of(Quantity::kEA1M);
  v.check(e.found && std::abs(e.value - 0.30) <= 0.05,
          "max E_a1m = %.6f at (delta1, deltaM) = (%g, %g), want 0.30 +- 0.05", e.value, e.axis1,
          e.axis2);
  const SummaryEntry& n1 = g.max_of(Quantity::kN1);
  v.check(n1.found && n1.value > 10 && n1.value < 1e3,
          "peak N1 = %.6g at (%g, %g), want in (10, 1e3)", n1.value, n1.axis1, n1.axis2);
  const SummaryEntry& nm = g.max_of(Quantity::kNm);
  v.check(nm.found && nm.value > 10 && nm.value < 1e3,
          "peak Nm = %.6g at (%g, %g), want in (10, 1e3)", nm.value, nm.axis1, nm.axis2);
  double min_var = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < g.points.size(); ++k) {
    const double x = g.value(k, Quantity::kVarX);
    if (!std::isnan(x)) min_var = std::min(min_var, x);
  }
  v.check(min_var < 0.5, "min <dx^2> = %.6f, want < 1/2", min_var);
  if (!(n1.value < 1e3)) {
    // How far the N1 bound holds as the detuning window shrinks.
    for (double w : {40.0, 50.0}) {
      double peak = 0.0;
      for (std::size_t k = 0; k < g.points.size(); ++k) {
        if (std::abs(g.axis1_values[k]) <= w && std::abs(g.axis2_values[k]) <= w) {
          const double x = g.value(k, Quantity::kN1);
          if (!std::isnan(x)) peak = std::max(peak, x);
        }
      }
      v.note("peak N1 restricted to |delta1|, |deltaM| <= %g kappa_m: %.6g", w, peak);
    }
  }
  report(1, "fig2 detuning map (g2 = 0)", v);
}

void criterion2() {
  Verdict v;
  for (const char* name : {"fig2", "fig3"}) {
    GridSpec spec = figure_preset(name);
    spec.base.gain = 0.0;
    spec.base.temperature = 0.0;
    const GridResult g = run_grid(spec, g_workers);
    double dv = 0.0, de = 0.0, dvar = 0.0;
    for (const PointResult& r : g.points) {
      if (!r.stable()) continue;
      dv = std::max(dv, (r.covariance->matrix() - 0.5 * Eigen::MatrixXd::Identity(6, 6))
                            .cwiseAbs()
                            .maxCoeff());
      const EntanglementResult& e = *r.entanglement;
      de = std::max({de, std::abs(e.e_a1m), std::abs(e.e_a2m), std::abs(e.e_a1a2),
                     std::abs(e.r_tau_min)});
      for (double x : *r.variances) dvar = std::max(dvar, std::abs(x - 0.5));
    }
    v.note("%s grid with gain = 0, T = 0: %zu of %zu points stable", name, g.stable_count,
           g.points.size());
    v.check(g.stable_count > 0 && dv <= 1e-10, "max |V - I/2| = %.3g, want <= 1e-10", dv);
    v.check(de <= 1e-10, "max |E|, |R_tau_min| = %.3g, want <= 1e-10", de);
    v.check(dvar <= 1e-10, "max |variance - 1/2| = %.3g, want <= 1e-10", dvar);
  }
  report(2, "no squeezed drive gives vacuum fluctuations", v);
}

void criterion3() {
  Verdict v;
  const GridResult& g = preset_grid("fig3");
  for (Quantity q : {Quantity::kEA1M, Quantity::kEA2M, Quantity::kEA1A2}) {
    const SummaryEntry& e = g.max_of(q);
    v.check(e.found && e.value > 0.0, "max %s = %.6f at (delta2, deltaM) = (%g, %g)",
            std::string(quantity_name(q)).c_str(), e.value, e.axis1, e.axis2);
  }
  const double d1 = kappa_units(g, g.spec.base.delta1);
  const double g1 = kappa_units(g, g.spec.base.g1);
  const double g2 = kappa_units(g, g.spec.base.g2);
  double best = -1.0, at2 = 0.0, atm = 0.0;
  std::size_t near = 0;
  for (std::size_t k = 0; k < g.points.size(); ++k) {
    const double d2 = g.axis1_values[k];
    if (d2 == 0.0 || !g.points[k].stable()) continue;
    const double locus = (d1 * g2 * g2 + d2 * g1 * g1) / (d1 * d2);
    if (std::abs(g.axis2_values[k] - locus) > 5.0) continue;
    ++near;
    const double r = g.value(k, Quantity::kRTauMin);
    if (r > best) best = r, at2 = d2, atm = g.axis2_values[k];
  }
  v.note("%zu stable nodes within 5 kappa_m of the resonance locus", near);
  v.check(best > 0.0, "max R_tau_min near the locus = %.6g at (%g, %g), want > 0", best, at2,
          atm);
  report(3, "entanglement transfer (fig3-5 preset)", v);
}

void criterion4() {
  Verdict v;
  const GridResult& g = preset_grid("fig5c");
  SystemParams p = g.spec.base;
  p.temperature = 0.010;
  const PointResult at10 = run_point(p, g.spec.options);
  const double e10 = at10.stable() ? at10.entanglement->e_a1a2 : std::nan("");
  v.check(e10 > 0.0, "E_a1a2(10 mK) = %.6f, want > 0", e10);

  double worst_rise = 0.0;
  double crossing = std::nan("");
  bool all_stable = true;
  for (std::size_t k = 0; k < g.points.size(); ++k) {
    all_stable = all_stable && g.points[k].stable();
    const double e = g.value(k, Quantity::kEA1A2);
    if (k > 0) worst_rise = std::max(worst_rise, e - g.value(k - 1, Quantity::kEA1A2));
    if (std::isnan(crossing) && e <= 0.0) crossing = g.axis1_values[k];
  }
  v.check(all_stable, "all %zu temperature nodes stable", g.points.size());
  v.check(worst_rise <= 1e-6, "largest step-to-step increase = %.3g, want <= 1e-6", worst_rise);
  v.check(crossing >= 100.0 && crossing <= 300.0,
          "first temperature with E_a1a2 = 0: %.4g mK, want in [100, 300]", crossing);
  report(4, "temperature robustness (fig5c preset)", v);
}

void criterion5() {
  Verdict v;
  const GridResult& g = preset_grid("fig6");
  const SummaryEntry& x = g.max_of(Quantity::kSqXdB);
  v.check(x.found && std::abs(x.axis1 - 8.0) <= 2.0,
          "max sq_x_dB = %.4f dB at gain %g kappa_m (deltaM %g), want gain 8 +- 2", x.value,
          x.axis1, x.axis2);
  const SummaryEntry& y = g.max_of(Quantity::kSqYdB);
  v.check(y.found && std::abs(y.axis1 - 2.0) <= 1.0,
          "max sq_y_dB = %.4f dB at gain %g kappa_m (deltaM %g), want gain 2 +- 1", y.value,
          y.axis1, y.axis2);
  report(5, "squeezing optima versus gain (fig6 preset)", v);
}

void criterion6() {
  Verdict v;
  const GridResult& a = preset_grid("fig7a");
  const SummaryEntry& e = a.max_of(Quantity::kEA1A2);
  v.check(e.found && e.axis2 >= 0.8 && e.axis2 <= 1.2,
          "fig7a: max E_a1a2 = %.6f at g2/g1 = %g (gain %g), want in [0.8, 1.2]", e.value,
          e.axis2, e.axis1);
  const GridResult& b = preset_grid("fig7b");
  const SummaryEntry& s = b.max_of(Quantity::kSqXdB);
  v.check(s.found && s.axis2 >= 0.8 && s.axis2 <= 1.2,
          "fig7b: max sq_x_dB = %.4f dB at g2/g1 = %g (gain %g), want in [0.8, 1.2]", s.value,
          s.axis2, s.axis1);
  report(6, "coupling-ratio optimum (fig7a, fig7b presets)", v);
}

void criterion7() {
  Verdict v;
  for (const OracleOutcome& o : run_validation()) {
    v.check(o.passed, "oracle %s: worst %.3g, tolerance %.3g (%s)", o.name.c_str(), o.worst,
            o.tolerance, o.detail.c_str());
  }
  for (const std::string& name : figure_preset_names()) {
    const GridResult& g = preset_grid(name);
    double min_r = std::numeric_limits<double>::infinity();
    double min_nu = std::numeric_limits<double>::infinity();
    std::size_t violations = 0, worst_k = 0;
    for (std::size_t k = 0; k < g.points.size(); ++k) {
      const PointResult& r = g.points[k];
      if (!r.stable()) continue;
      for (double x : r.entanglement->residuals) {
        if (x < -1e-9) ++violations;
        if (x < min_r) min_r = x, worst_k = k;
      }
      min_nu = std::min(min_nu, symplectic_eigenvalues(r.covariance->matrix()).minCoeff());
    }
    v.check(min_r >= -1e-9,
            "%s monogamy: min residual contangle %.3g at (%g, %g), %zu splittings below -1e-9",
            name.c_str(), min_r, g.axis1_values[worst_k], g.axis2_values[worst_k], violations);
    v.check(min_nu >= 0.5 - 1e-9, "%s physicality: min symplectic eigenvalue %.12f",
            name.c_str(), min_nu);
  }
  report(7, "oracle battery and per-point invariants", v);
}

void criterion8() {
  Verdict v;
  for (const std::string& name : figure_preset_names()) {
    const GridResult& g = preset_grid(name);
    const SummaryEntry& e = g.max_of(Quantity::kLowExcRatio);
    v.check(e.found && e.value < 1e-3, "%s: max Nm/(2Ns) = %.3g, want < 1e-3", name.c_str(),
            e.value);
  }
  report(8, "low-excitation audit", v);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_workers = static_cast<unsigned>(std::max(1, std::atoi(argv[1])));
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  std::printf("%d of 8 criteria failed\n", g_failed);
  return g_failed;
}
