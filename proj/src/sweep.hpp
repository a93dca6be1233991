#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gaussian.hpp"
#include "model.hpp"

namespace magcav {

enum class PointStatus { kOk, kUnstable, kError };

const char* to_string(PointStatus status) noexcept;

struct PointOptions {
  /// Stability margin in units of kappa_m.
  double stability_margin_factor = kDefaultStabilityMarginFactor;
  double low_excitation_threshold = kDefaultLowExcitationThreshold;
};

/// Everything computed at one parameter point. Covariance-derived members are
/// empty unless the drift matrix is stable.
struct PointResult {
  SystemParams params;
  PointStatus status = PointStatus::kError;
  std::string error;

  std::optional<MeanFields> mean_fields;
  std::optional<LowExcitation> low_excitation;
  std::optional<StabilityReport> stability;

  std::optional<CovarianceMatrix> covariance;
  double lyapunov_residual = 0.0;
  std::optional<EntanglementResult> entanglement;
  /// <dX1^2>, <dY1^2>, <dX2^2>, <dY2^2>, <dx^2>, <dy^2>
  std::optional<std::array<double, 6>> variances;
  std::optional<std::array<double, 6>> squeezing_db;

  bool stable() const { return status == PointStatus::kOk; }
  /// Variance of quadrature q exceeds the vacuum value 1/2 (blank plot area).
  bool above_vacuum(int q) const;
};

/// Full pipeline at one point. Never throws for numerical trouble; failures
/// land in `status`/`error`. Invalid parameters do throw.
PointResult run_point(const SystemParams& p, const PointOptions& opts = {});

/// Columns shared by the CSV writer, the grid summary and the C API.
enum class Quantity {
  kAxis1,
  kAxis2,
  kStable,
  kN1,
  kN2,
  kNm,
  kEA1M,
  kEA2M,
  kEA1A2,
  kRTauMin,
  kVarX1,
  kVarY1,
  kVarX2,
  kVarY2,
  kVarX,
  kVarY,
  kSqXdB,
  kSqYdB,
  kSqY2dB,
  kLowExcRatio,
  kMaxRealEig,
  kLyapunovResidual,
};

inline constexpr int kCsvColumnCount = 20;  // kAxis1 .. kLowExcRatio
inline constexpr int kQuantityCount = 22;

std::string_view quantity_name(Quantity q);
std::optional<Quantity> parse_quantity(std::string_view name);

/// Value of a point quantity; NaN when absent (masked). Axis quantities are
/// not point-local and return NaN here.
double point_quantity(const PointResult& r, Quantity q);

enum class Axis { kDelta1, kDelta2, kDeltaM, kGain, kG2OverG1, kTemperature, kEpsP };
enum class AxisScale { kLinear, kLog };

std::string_view axis_name(Axis axis);
std::optional<Axis> parse_axis(std::string_view name);

/// Axis values are in user units: multiples of kappa_m for detunings, gain
/// and eps_p; millikelvin for temperature; a plain number for g2/g1.
struct AxisRange {
  Axis axis = Axis::kDelta1;
  double min = 0.0;
  double max = 0.0;
  int count = 2;
  AxisScale scale = AxisScale::kLinear;

  std::vector<double> values() const;
};

/// Sets the parameter addressed by `axis` from a user-unit value.
void apply_axis(SystemParams& p, Axis axis, double value);

struct GridSpec {
  std::string name = "custom";
  SystemParams base;
  AxisRange axis1;
  std::optional<AxisRange> axis2;  // absent for a 1-D sweep
  PointOptions options;

  std::size_t size() const;
  /// Throws Error(kInvalidConfig) for counts < 2, non-finite ranges, a
  /// non-positive log range or axis1 == axis2.
  void validate() const;
};

struct SummaryEntry {
  bool found = false;
  double value = 0.0;
  std::size_t index = 0;
  double axis1 = 0.0;
  double axis2 = 0.0;
};

struct GridResult {
  GridSpec spec;
  std::vector<double> axis1_values;  // per point, row-major
  std::vector<double> axis2_values;  // NaN for a 1-D sweep
  std::vector<PointResult> points;
  std::size_t stable_count = 0;
  std::size_t unstable_count = 0;
  std::size_t error_count = 0;
  /// Max over stable points for every quantity from kN1 to kLyapunovResidual,
  /// indexed by Quantity; first index in row-major order wins ties.
  std::array<SummaryEntry, kQuantityCount> summary{};

  double value(std::size_t index, Quantity q) const;
  const SummaryEntry& max_of(Quantity q) const {
    return summary[static_cast<int>(q)];
  }
};

/// Evaluates every grid node, row-major with axis2 fastest. The output does
/// not depend on `workers`.
GridResult run_grid(const GridSpec& spec, unsigned workers = 1);

std::vector<std::string> figure_preset_names();

/// Named grid definitions (see figure_preset_names). Throws
/// Error(kUnknownPreset).
GridSpec figure_preset(std::string_view name);

}  // namespace magcav
