#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "model.hpp"
#include "sweep.hpp"

namespace magcav {

/// What a configuration value measures, and so which unit suffixes it takes.
enum class ValueKind {
  kFrequency,      // Hz, kHz, MHz, GHz (the value is omega / 2 pi)
  kRate,           // as kFrequency, or a multiple of kappaM
  kTemperature,    // K, mK, uK
  kLength,         // m, mm, um
  kDensity,        // m^-3
  kDimensionless,  // bare number
  kAxisValue,      // unit depends on the axis it bounds
  kCount,          // positive integer
  kText,
};

struct ConfigKey {
  std::string_view name;
  ValueKind kind;
  std::string_view default_value;  // empty: unset by default
  std::string_view help;
};

std::span<const ConfigKey> config_keys();

/// A run configuration in user units. Values are checked when set (unknown
/// keys, malformed numbers and missing or wrong units are rejected) and
/// resolved into internal units on demand. Explicit keys always win over a
/// figure preset.
class RunConfig {
 public:
  /// Throws Error(kInvalidConfig).
  void set(std::string_view key, std::string_view value);

  /// `key = value` lines; `#` starts a comment. A key may appear once per
  /// file.
  void load_text(std::string_view text, std::string_view origin = "<config>");
  void load_file(const std::string& path);

  bool has(std::string_view key) const;
  std::optional<std::string> get(std::string_view key) const;

  SystemParams params() const;
  PointOptions point_options() const;
  /// Needs `preset` or `axis1`.
  GridSpec grid() const;
  unsigned workers() const;

 private:
  void apply_params(SystemParams& p) const;

  std::map<std::string, std::string, std::less<>> values_;
};

/// Parses "<number> [unit]" for the given kind and converts to internal
/// units (rad/s, K, m, m^-3). `kappa_m` resolves kappaM multiples. Exposed
/// for tests.
double parse_quantity_value(std::string_view text, ValueKind kind,
                            double kappa_m);

}  // namespace magcav
