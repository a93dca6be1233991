#include "config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "error.hpp"

namespace magcav {

namespace {

// clang-format off
constexpr std::array<ConfigKey, 32> kKeys{{
  {"omega1", ValueKind::kFrequency, "10 GHz", "cavity-1 frequency omega1/2pi"},
  {"kappaM", ValueKind::kFrequency, "1 MHz", "magnon damping kappa_m/2pi; unit of every 'kappaM' value"},
  {"kappa1", ValueKind::kRate, "5 kappaM", "cavity-1 damping"},
  {"kappa2", ValueKind::kRate, "5 kappaM", "cavity-2 damping"},
  {"g1", ValueKind::kRate, "20 kappaM", "magnon-cavity-1 coupling"},
  {"g2", ValueKind::kRate, "20 kappaM", "magnon-cavity-2 coupling"},
  {"g2_over_g1", ValueKind::kDimensionless, "", "if set, g2 = ratio * g1 (wins over g2)"},
  {"delta1", ValueKind::kRate, "-20 kappaM", "cavity-1 detuning from the drive"},
  {"delta2", ValueKind::kRate, "35 kappaM", "cavity-2 detuning from the drive"},
  {"deltaM", ValueKind::kRate, "45 kappaM", "magnon detuning from the drive"},
  {"epsP", ValueKind::kRate, "10 kappaM", "drive Rabi frequency"},
  {"gain", ValueKind::kRate, "2.5 kappaM", "parametric gain of the squeezed drive"},
  {"temperature", ValueKind::kTemperature, "10 mK", "bath temperature"},
  {"sphere_diameter", ValueKind::kLength, "250 um", "YIG sphere diameter"},
  {"spin_density", ValueKind::kDensity, "4.22e27 m^-3", "spin density"},
  {"spin_number", ValueKind::kDimensionless, "2.5", "spin of the magnetic ion"},
  {"stability_margin", ValueKind::kRate, "1e-9 kappaM", "max Re(eig A) must lie below minus this"},
  {"low_excitation_threshold", ValueKind::kDimensionless, "1e-3", "Nm/(2Ns) bound"},
  {"preset", ValueKind::kText, "", "figure preset: fig2 fig3 fig4 fig5ab fig5c fig5d fig6 fig7a fig7b"},
  {"axis1", ValueKind::kText, "", "sweep axis: delta1 delta2 deltaM gain g2_over_g1 temperature epsP"},
  {"axis1_min", ValueKind::kAxisValue, "", "axis1 lower bound"},
  {"axis1_max", ValueKind::kAxisValue, "", "axis1 upper bound"},
  {"axis1_count", ValueKind::kCount, "", "axis1 node count"},
  {"axis1_scale", ValueKind::kText, "", "linear or log"},
  {"axis2", ValueKind::kText, "", "second sweep axis, or none"},
  {"axis2_min", ValueKind::kAxisValue, "", "axis2 lower bound"},
  {"axis2_max", ValueKind::kAxisValue, "", "axis2 upper bound"},
  {"axis2_count", ValueKind::kCount, "", "axis2 node count"},
  {"axis2_scale", ValueKind::kText, "", "linear or log"},
  {"csv", ValueKind::kText, "", "sweep CSV output path"},
  {"json", ValueKind::kText, "", "JSON output path (point report or sweep summary)"},
  {"workers", ValueKind::kCount, "", "sweep threads (default: hardware concurrency)"},
}};
// clang-format on

struct Unit {
  std::string_view name;
  double factor;
};

constexpr std::array<Unit, 4> kHertz{{{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}}};
constexpr std::array<Unit, 3> kKelvin{{{"K", 1.0}, {"mK", 1e-3}, {"uK", 1e-6}}};
constexpr std::array<Unit, 3> kMetre{{{"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}}};

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorKind::kInvalidConfig, what);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

struct NumberWithUnit {
  double number;
  std::string_view unit;
};

NumberWithUnit split_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr == text.data()) {
    bad("'" + std::string(text) + "' is not a number");
  }
  if (!std::isfinite(value)) bad("'" + std::string(text) + "' is not finite");
  return {value, trim(text.substr(ptr - text.data()))};
}

template <std::size_t N>
std::optional<double> lookup(const std::array<Unit, N>& units,
                             std::string_view unit) {
  for (const Unit& u : units) {
    if (u.name == unit) return u.factor;
  }
  return std::nullopt;
}

const ConfigKey* find_key(std::string_view name) {
  for (const ConfigKey& k : kKeys) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

std::string unit_error(std::string_view text, std::string_view expected) {
  return "'" + std::string(text) + "' needs a unit (" + std::string(expected) +
         ")";
}

int parse_count(std::string_view text) {
  text = trim(text);
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 1) {
    bad("'" + std::string(text) + "' is not a positive integer");
  }
  return value;
}

AxisScale parse_scale(std::string_view text) {
  if (text == "linear") return AxisScale::kLinear;
  if (text == "log") return AxisScale::kLog;
  bad("axis scale must be 'linear' or 'log', got '" + std::string(text) + "'");
}

/// Axis bound converted to the axis's user unit (kappa_m multiples, mK, or a
/// bare ratio).
double parse_axis_value(std::string_view text, Axis axis, double kappa_m) {
  const NumberWithUnit nu = split_number(text);
  switch (axis) {
    case Axis::kG2OverG1:
      if (!nu.unit.empty()) bad("g2_over_g1 bounds are dimensionless");
      return nu.number;
    case Axis::kTemperature:
      return parse_quantity_value(text, ValueKind::kTemperature, kappa_m) * 1e3;
    default:
      return parse_quantity_value(text, ValueKind::kRate, kappa_m) / kappa_m;
  }
}

AxisRange default_range(Axis axis) {
  switch (axis) {
    case Axis::kGain: return {axis, 0.05, 10.0, 200, AxisScale::kLinear};
    case Axis::kG2OverG1: return {axis, 0.0, 2.0, 201, AxisScale::kLinear};
    case Axis::kTemperature: return {axis, 1.0, 300.0, 200, AxisScale::kLog};
    case Axis::kEpsP: return {axis, 0.0, 20.0, 201, AxisScale::kLinear};
    default: return {axis, -60.0, 60.0, 201, AxisScale::kLinear};
  }
}

void scale_rates(SystemParams& p, double factor) {
  for (double* r : {&p.delta1, &p.delta2, &p.delta_m, &p.kappa1, &p.kappa2,
                    &p.kappa_m, &p.g1, &p.g2, &p.eps_p, &p.gain}) {
    *r *= factor;
  }
}

}  // namespace

std::span<const ConfigKey> config_keys() { return kKeys; }

double parse_quantity_value(std::string_view text, ValueKind kind,
                            double kappa_m) {
  const NumberWithUnit nu = split_number(text);
  // Zero is the same in every unit.
  if (nu.unit.empty() && nu.number == 0.0 && kind != ValueKind::kText &&
      kind != ValueKind::kCount) {
    return 0.0;
  }
  switch (kind) {
    case ValueKind::kFrequency:
    case ValueKind::kRate: {
      if (auto f = lookup(kHertz, nu.unit)) {
        return constants::kTwoPi * nu.number * *f;
      }
      if (kind == ValueKind::kRate && nu.unit == "kappaM") {
        return nu.number * kappa_m;
      }
      bad(unit_error(text, kind == ValueKind::kRate
                               ? "kappaM, Hz, kHz, MHz or GHz"
                               : "Hz, kHz, MHz or GHz"));
    }
    case ValueKind::kTemperature:
      if (auto f = lookup(kKelvin, nu.unit)) return nu.number * *f;
      bad(unit_error(text, "K, mK or uK"));
    case ValueKind::kLength:
      if (auto f = lookup(kMetre, nu.unit)) return nu.number * *f;
      bad(unit_error(text, "m, mm or um"));
    case ValueKind::kDensity:
      if (nu.unit == "m^-3") return nu.number;
      bad(unit_error(text, "m^-3"));
    case ValueKind::kDimensionless:
      if (!nu.unit.empty()) {
        bad("'" + std::string(text) + "' must be a bare number");
      }
      return nu.number;
    case ValueKind::kAxisValue:
      if (nu.unit.empty() || nu.unit == "kappaM" || lookup(kHertz, nu.unit) ||
          lookup(kKelvin, nu.unit)) {
        return nu.number;
      }
      bad("'" + std::string(text) + "' has an unknown unit");
    case ValueKind::kCount:
      return parse_count(text);
    case ValueKind::kText:
      break;
  }
  bad("'" + std::string(text) + "' is not a quantity");
}

void RunConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  const ConfigKey* k = find_key(key);
  if (k == nullptr) bad("unknown configuration key '" + std::string(key) + "'");
  if (value.empty()) bad("empty value for '" + std::string(key) + "'");

  try {
    if (k->kind == ValueKind::kText) {
      if (key == "preset") {
        figure_preset(value);
      } else if (key == "axis1" && !parse_axis(value)) {
        bad("unknown axis '" + std::string(value) + "'");
      } else if (key == "axis2" && value != "none" && !parse_axis(value)) {
        bad("unknown axis '" + std::string(value) + "'");
      } else if (key == "axis1_scale" || key == "axis2_scale") {
        parse_scale(value);
      }
    } else {
      // kappa_m placeholder: only syntax and unit are checked here.
      parse_quantity_value(value, k->kind, 1.0);
    }
  } catch (const Error& e) {
    throw Error(ErrorKind::kInvalidConfig,
                std::string(key) + ": " + e.what());
  }
  values_.insert_or_assign(std::string(key), std::string(value));
}

void RunConfig::load_text(std::string_view text, std::string_view origin) {
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = std::string(origin) + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) bad(where + ": expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    if (!seen.emplace(key).second) {
      bad(where + ": duplicate key '" + std::string(key) + "'");
    }
    try {
      set(key, line.substr(eq + 1));
    } catch (const Error& e) {
      bad(where + ": " + e.what());
    }
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  load_text(ss.str(), path);
}

bool RunConfig::has(std::string_view key) const {
  return values_.find(key) != values_.end();
}

std::optional<std::string> RunConfig::get(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void RunConfig::apply_params(SystemParams& p) const {
  if (auto v = get("kappaM")) {
    const double km = parse_quantity_value(*v, ValueKind::kFrequency, 1.0);
    if (!(km > 0.0)) bad("kappaM must be positive");
    scale_rates(p, km / p.kappa_m);
  }
  const double km = p.kappa_m;
  const auto assign = [&](std::string_view key, ValueKind kind, double& field) {
    if (auto v = get(key)) field = parse_quantity_value(*v, kind, km);
  };
  assign("omega1", ValueKind::kFrequency, p.omega1);
  assign("kappa1", ValueKind::kRate, p.kappa1);
  assign("kappa2", ValueKind::kRate, p.kappa2);
  assign("g1", ValueKind::kRate, p.g1);
  assign("g2", ValueKind::kRate, p.g2);
  assign("delta1", ValueKind::kRate, p.delta1);
  assign("delta2", ValueKind::kRate, p.delta2);
  assign("deltaM", ValueKind::kRate, p.delta_m);
  assign("epsP", ValueKind::kRate, p.eps_p);
  assign("gain", ValueKind::kRate, p.gain);
  assign("temperature", ValueKind::kTemperature, p.temperature);
  assign("sphere_diameter", ValueKind::kLength, p.sphere.diameter);
  assign("spin_density", ValueKind::kDensity, p.sphere.spin_density);
  assign("spin_number", ValueKind::kDimensionless, p.sphere.spin_number);
  if (auto v = get("g2_over_g1")) {
    p.g2 = parse_quantity_value(*v, ValueKind::kDimensionless, km) * p.g1;
  }
}

SystemParams RunConfig::params() const {
  SystemParams p = SystemParams::working_point();
  apply_params(p);
  try {
    p.validate();
  } catch (const Error& e) {
    bad(e.what());
  }
  return p;
}

PointOptions RunConfig::point_options() const {
  PointOptions opts;
  if (auto v = get("stability_margin")) {
    opts.stability_margin_factor =
        parse_quantity_value(*v, ValueKind::kRate, params().kappa_m) /
        params().kappa_m;
    if (opts.stability_margin_factor < 0.0) {
      bad("stability_margin must be non-negative");
    }
  }
  if (auto v = get("low_excitation_threshold")) {
    opts.low_excitation_threshold =
        parse_quantity_value(*v, ValueKind::kDimensionless, 1.0);
  }
  return opts;
}

GridSpec RunConfig::grid() const {
  GridSpec spec;
  const auto preset = get("preset");
  if (preset) {
    spec = figure_preset(*preset);
  } else {
    if (!has("axis1")) bad("a sweep needs 'preset' or 'axis1'");
    spec.base = SystemParams::working_point();
  }
  apply_params(spec.base);
  spec.options = point_options();
  const double km = spec.base.kappa_m;

  const auto configure = [&](std::string_view prefix,
                             std::optional<AxisRange> current)
      -> std::optional<AxisRange> {
    const std::string pre(prefix);
    std::optional<AxisRange> range = current;
    if (auto name = get(pre)) {
      if (*name == "none") {
        range.reset();
      } else {
        const Axis axis = *parse_axis(*name);
        if (!range || range->axis != axis) range = default_range(axis);
      }
    }
    const bool tuned = has(pre + "_min") || has(pre + "_max") ||
                       has(pre + "_count") || has(pre + "_scale");
    if (!range) {
      if (tuned) bad(pre + " bounds given without an " + pre + " axis");
      return range;
    }
    if (auto v = get(pre + "_min")) range->min = parse_axis_value(*v, range->axis, km);
    if (auto v = get(pre + "_max")) range->max = parse_axis_value(*v, range->axis, km);
    if (auto v = get(pre + "_count")) range->count = parse_count(*v);
    if (auto v = get(pre + "_scale")) range->scale = parse_scale(*v);
    return range;
  };

  spec.axis1 = *configure("axis1", preset ? std::optional(spec.axis1)
                                          : std::optional<AxisRange>{});
  spec.axis2 = configure("axis2", spec.axis2);
  if (!preset) spec.name = "custom";
  spec.validate();
  return spec;
}

unsigned RunConfig::workers() const {
  if (auto v = get("workers")) return static_cast<unsigned>(parse_count(*v));
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace magcav
