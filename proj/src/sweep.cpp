#include "sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "error.hpp"
#include "lyapunov.hpp"

namespace magcav {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr std::array<std::string_view, kQuantityCount> kQuantityNames{
    "axis1",  "axis2",  "stable",  "N1",      "N2",      "Nm",
    "E_a1m",  "E_a2m",  "E_a1a2",  "R_tau_min", "var_X1", "var_Y1",
    "var_X2", "var_Y2", "var_x",   "var_y",   "sq_x_dB", "sq_y_dB",
    "sq_Y2_dB", "low_exc_ratio", "max_re_eig", "lyapunov_residual"};

constexpr std::array<std::string_view, 7> kAxisNames{
    "delta1", "delta2", "deltaM", "gain", "g2_over_g1", "temperature", "epsP"};

PointResult evaluate_point(const SystemParams& p, const PointOptions& opts) {
  PointResult r;
  r.params = p;
  r.status = PointStatus::kOk;

  try {
    r.mean_fields = steady_state_mean_fields(p);
    r.low_excitation = low_excitation_check(*r.mean_fields, p.sphere,
                                            opts.low_excitation_threshold);
  } catch (const Error& e) {
    r.status = PointStatus::kError;
    r.error = e.what();
  }

  const DriftMatrix drift = build_drift_matrix(p);
  try {
    r.stability = stability_check(drift, opts.stability_margin_factor * p.kappa_m);
  } catch (const Error& e) {
    r.status = PointStatus::kError;
    r.error = e.what();
    return r;
  }
  if (r.status == PointStatus::kError) return r;
  if (!r.stability->stable) {
    r.status = PointStatus::kUnstable;
    return r;
  }

  try {
    const LyapunovSolution sol = solve_lyapunov(drift, build_diffusion_matrix(p));
    EntanglementResult ent = entanglement_measures(sol.v);
    std::array<double, 6> var{};
    std::array<double, 6> db{};
    for (int q = 0; q < 6; ++q) {
      var[q] = quadrature_variance(sol.v, q);
      db[q] = squeezing_db(var[q]);
    }
    r.covariance = sol.v;
    r.lyapunov_residual = sol.residual;
    r.entanglement = ent;
    r.variances = var;
    r.squeezing_db = db;
  } catch (const Error& e) {
    r.status = PointStatus::kError;
    r.error = e.what();
  }
  return r;
}

}  // namespace

const char* to_string(PointStatus status) noexcept {
  switch (status) {
    case PointStatus::kOk: return "ok";
    case PointStatus::kUnstable: return "unstable";
    case PointStatus::kError: return "error";
  }
  return "unknown";
}

bool PointResult::above_vacuum(int q) const {
  return variances && (*variances)[q] > 0.5;
}

PointResult run_point(const SystemParams& p, const PointOptions& opts) {
  p.validate();
  return evaluate_point(p, opts);
}

std::string_view quantity_name(Quantity q) {
  return kQuantityNames[static_cast<int>(q)];
}

std::optional<Quantity> parse_quantity(std::string_view name) {
  for (int i = 0; i < kQuantityCount; ++i) {
    if (kQuantityNames[i] == name) return static_cast<Quantity>(i);
  }
  return std::nullopt;
}

double point_quantity(const PointResult& r, Quantity q) {
  const auto mf = [&](double MeanFields::*field) {
    return r.mean_fields ? (*r.mean_fields).*field : kNaN;
  };
  const auto ent = [&](double EntanglementResult::*field) {
    return r.entanglement ? (*r.entanglement).*field : kNaN;
  };
  const auto var = [&](int k) { return r.variances ? (*r.variances)[k] : kNaN; };
  const auto db = [&](int k) {
    return r.squeezing_db ? (*r.squeezing_db)[k] : kNaN;
  };
  switch (q) {
    case Quantity::kAxis1:
    case Quantity::kAxis2: return kNaN;
    case Quantity::kStable: return r.stable() ? 1.0 : 0.0;
    case Quantity::kN1: return mf(&MeanFields::n1);
    case Quantity::kN2: return mf(&MeanFields::n2);
    case Quantity::kNm: return mf(&MeanFields::nm);
    case Quantity::kEA1M: return ent(&EntanglementResult::e_a1m);
    case Quantity::kEA2M: return ent(&EntanglementResult::e_a2m);
    case Quantity::kEA1A2: return ent(&EntanglementResult::e_a1a2);
    case Quantity::kRTauMin: return ent(&EntanglementResult::r_tau_min);
    case Quantity::kVarX1: return var(0);
    case Quantity::kVarY1: return var(1);
    case Quantity::kVarX2: return var(2);
    case Quantity::kVarY2: return var(3);
    case Quantity::kVarX: return var(4);
    case Quantity::kVarY: return var(5);
    case Quantity::kSqXdB: return db(4);
    case Quantity::kSqYdB: return db(5);
    case Quantity::kSqY2dB: return db(3);
    case Quantity::kLowExcRatio:
      return r.low_excitation ? r.low_excitation->ratio : kNaN;
    case Quantity::kMaxRealEig:
      return r.stability ? r.stability->max_real_part : kNaN;
    case Quantity::kLyapunovResidual:
      return r.covariance ? r.lyapunov_residual : kNaN;
  }
  return kNaN;
}

std::string_view axis_name(Axis axis) {
  return kAxisNames[static_cast<int>(axis)];
}

std::optional<Axis> parse_axis(std::string_view name) {
  for (std::size_t i = 0; i < kAxisNames.size(); ++i) {
    if (kAxisNames[i] == name) return static_cast<Axis>(i);
  }
  return std::nullopt;
}

std::vector<double> AxisRange::values() const {
  std::vector<double> out(count);
  for (int k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) / (count - 1);
    out[k] = scale == AxisScale::kLinear
                 ? min + (max - min) * t
                 : min * std::pow(max / min, t);
  }
  out.back() = max;
  return out;
}

void apply_axis(SystemParams& p, Axis axis, double value) {
  const double km = p.kappa_m;
  switch (axis) {
    case Axis::kDelta1: p.delta1 = value * km; break;
    case Axis::kDelta2: p.delta2 = value * km; break;
    case Axis::kDeltaM: p.delta_m = value * km; break;
    case Axis::kGain: p.gain = value * km; break;
    case Axis::kG2OverG1: p.g2 = value * p.g1; break;
    case Axis::kTemperature: p.temperature = value * 1e-3; break;
    case Axis::kEpsP: p.eps_p = value * km; break;
  }
}

std::size_t GridSpec::size() const {
  return static_cast<std::size_t>(axis1.count) *
         static_cast<std::size_t>(axis2 ? axis2->count : 1);
}

void GridSpec::validate() const {
  const auto check = [](const AxisRange& r, const char* which) {
    const std::string w(which);
    if (r.count < 2) {
      throw Error(ErrorKind::kInvalidConfig, w + " needs at least 2 points");
    }
    if (!std::isfinite(r.min) || !std::isfinite(r.max)) {
      throw Error(ErrorKind::kInvalidConfig, w + " range must be finite");
    }
    if (r.scale == AxisScale::kLog && !(r.min > 0.0 && r.max > 0.0)) {
      throw Error(ErrorKind::kInvalidConfig,
                  w + " log range must be strictly positive");
    }
  };
  check(axis1, "axis1");
  if (axis2) {
    check(*axis2, "axis2");
    if (axis2->axis == axis1.axis) {
      throw Error(ErrorKind::kInvalidConfig, "axis1 and axis2 must differ");
    }
  }
  try {
    base.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::kInvalidConfig,
                std::string("base parameters: ") + e.what());
  }
}

double GridResult::value(std::size_t index, Quantity q) const {
  if (q == Quantity::kAxis1) return axis1_values[index];
  if (q == Quantity::kAxis2) return axis2_values[index];
  return point_quantity(points[index], q);
}

GridResult run_grid(const GridSpec& spec, unsigned workers) {
  spec.validate();
  GridResult out;
  out.spec = spec;

  const std::vector<double> v1 = spec.axis1.values();
  const std::vector<double> v2 =
      spec.axis2 ? spec.axis2->values() : std::vector<double>{kNaN};
  const std::size_t n = v1.size() * v2.size();
  out.axis1_values.resize(n);
  out.axis2_values.resize(n);
  for (std::size_t i = 0; i < v1.size(); ++i) {
    for (std::size_t j = 0; j < v2.size(); ++j) {
      out.axis1_values[i * v2.size() + j] = v1[i];
      out.axis2_values[i * v2.size() + j] = v2[j];
    }
  }
  out.points.resize(n);

  const auto work = [&](std::size_t idx) {
    SystemParams p = spec.base;
    apply_axis(p, spec.axis1.axis, out.axis1_values[idx]);
    if (spec.axis2) apply_axis(p, spec.axis2->axis, out.axis2_values[idx]);
    try {
      p.validate();
      out.points[idx] = evaluate_point(p, spec.options);
    } catch (const Error& e) {
      PointResult r;
      r.params = p;
      r.status = PointStatus::kError;
      r.error = e.what();
      out.points[idx] = std::move(r);
    }
  };

  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) work(i);
      });
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const PointResult& r = out.points[i];
    switch (r.status) {
      case PointStatus::kOk: ++out.stable_count; break;
      case PointStatus::kUnstable: ++out.unstable_count; break;
      case PointStatus::kError: ++out.error_count; break;
    }
    if (!r.stable()) continue;
    for (int q = static_cast<int>(Quantity::kN1); q < kQuantityCount; ++q) {
      const double v = point_quantity(r, static_cast<Quantity>(q));
      SummaryEntry& s = out.summary[q];
      if (std::isnan(v) || (s.found && !(v > s.value))) continue;
      s = SummaryEntry{true, v, i, out.axis1_values[i], out.axis2_values[i]};
    }
  }
  return out;
}

std::vector<std::string> figure_preset_names() {
  return {"fig2", "fig3", "fig4", "fig5ab", "fig5c", "fig5d",
          "fig6", "fig7a", "fig7b"};
}

GridSpec figure_preset(std::string_view name) {
  GridSpec spec;
  spec.name = std::string(name);
  spec.base = SystemParams::working_point();
  SystemParams& p = spec.base;
  const double km = p.kappa_m;

  const AxisRange detuning_axis = [] {
    AxisRange r;
    r.min = -60.0;
    r.max = 60.0;
    r.count = 201;
    return r;
  }();
  auto detuning = [&](Axis axis) {
    AxisRange r = detuning_axis;
    r.axis = axis;
    return r;
  };
  // (0, 10] kappa_m in steps of 0.05.
  AxisRange gain_axis{Axis::kGain, 0.05, 10.0, 200, AxisScale::kLinear};

  if (name == "fig2") {
    p.g2 = 0.0;
    p.delta2 = 0.0;
    spec.axis1 = detuning(Axis::kDelta1);
    spec.axis2 = detuning(Axis::kDeltaM);
  } else if (name == "fig3" || name == "fig4" || name == "fig5ab" ||
             name == "fig5d") {
    p.delta1 = -20.0 * km;
    p.g2 = p.g1;
    spec.axis1 = detuning(Axis::kDelta2);
    spec.axis2 = detuning(Axis::kDeltaM);
  } else if (name == "fig5c") {
    p.delta1 = -20.0 * km;
    p.delta2 = 35.0 * km;
    p.delta_m = 45.0 * km;
    p.g2 = p.g1;
    spec.axis1 = AxisRange{Axis::kTemperature, 1.0, 300.0, 200, AxisScale::kLog};
  } else if (name == "fig6") {
    p.delta1 = -20.0 * km;
    p.delta2 = 0.0;
    p.g2 = p.g1;
    spec.axis1 = gain_axis;
    spec.axis2 = detuning(Axis::kDeltaM);
  } else if (name == "fig7a" || name == "fig7b") {
    p.delta1 = -20.0 * km;
    p.delta2 = (name == "fig7a" ? 35.0 : -45.0) * km;
    p.delta_m = (name == "fig7a" ? 45.0 : -15.0) * km;
    spec.axis1 = gain_axis;
    spec.axis2 = AxisRange{Axis::kG2OverG1, 0.0, 2.0, 201, AxisScale::kLinear};
  } else {
    throw Error(ErrorKind::kUnknownPreset,
                "unknown figure preset '" + std::string(name) + "'");
  }
  return spec;
}

}  // namespace magcav
