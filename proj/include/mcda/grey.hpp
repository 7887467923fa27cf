#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mcda {

/// Equally spaced observations starting at `start_period` (e.g. a year).
struct TimeSeries {
  std::string label;
  int start_period = 0;
  std::vector<double> values;

  int end_period() const { return start_period + static_cast<int>(values.size()) - 1; }
};

inline constexpr std::size_t kMinGreyLength = 4;

/// How the least-squares coefficients (a, b) of the midpoint difference equation
/// X⁰(k) + a·z¹(k) = b become the (α, μ) of the continuous response
/// X̂¹(k+1) = (X⁰(1) − μ/α)·e^{−αk} + μ/α.
enum class GreyParameterMapping {
  /// α = 2·atanh(a/2), μ = b·α/a: the response reproduces the discrete model exactly,
  /// so geometric sequences are fitted without error.
  Exact,
  /// α = a, μ = b (textbook plug-in; biased by O(a³) per step).
  Classic,
};

struct GreyDiagnostics {
  std::vector<double> class_ratios;  // σ(k) = X⁰(k−1)/X⁰(k), k = 2..n
  double ratio_lower = 0.0;          // e^{−2/(n+1)}
  double ratio_upper = 0.0;          // e^{2/(n+1)}
  bool ratios_admissible = true;
  std::vector<double> relative_residuals;  // |X⁰ − X̂⁰| / X⁰ per observation
  double mean_relative_residual = 0.0;
  double posterior_variance_ratio = 0.0;  // std(residual) / std(X⁰)
  std::vector<std::string> warnings;
};

struct GreyModel {
  double a = 0.0;      // least-squares development coefficient
  double b = 0.0;      // least-squares grey input
  double alpha = 0.0;  // developing grey degree
  double mu = 0.0;     // internal control grey degree
  GreyParameterMapping mapping = GreyParameterMapping::Exact;
  TimeSeries source;
  std::vector<double> fitted_cumulative;  // X̂¹(1..n)
  std::vector<double> fitted;             // X̂⁰(1..n)
  GreyDiagnostics diagnostics;
};

/// Fits GM(1,1). Requires at least four strictly positive values.
GreyModel fit_gm11(const TimeSeries& s, GreyParameterMapping mapping = GreyParameterMapping::Exact);

/// Cumulative response X̂¹(k+1) for k = 0..count-1.
std::vector<double> predict_cumulative(const GreyModel& m, std::size_t count);

/// In-sample fitted values followed by `horizon` forecasts, on the original scale.
std::vector<double> predict(const GreyModel& m, std::size_t horizon);

/// Only the `horizon` out-of-sample forecasts.
std::vector<double> forecast(const GreyModel& m, std::size_t horizon);

struct ForecastSeries {
  TimeSeries series;  // history followed by forecasts
  std::size_t history_length = 0;
  double shift = 0.0;  // offset added before fitting (0 when the history is positive)
  GreyModel model;     // fitted on the shifted history
};

/// History concatenated with GM(1,1) forecasts through `until`. Nonpositive histories
/// are shifted by (1 − min) before fitting and shifted back afterwards.
ForecastSeries extend_series(const TimeSeries& history, int until,
                             GreyParameterMapping mapping = GreyParameterMapping::Exact);

/// extend_series over many histories; parallel with OpenMP, order-preserving.
std::vector<ForecastSeries> extend_all(std::span<const TimeSeries> histories, int until,
                                       GreyParameterMapping mapping = GreyParameterMapping::Exact);

namespace serial {
std::vector<ForecastSeries> extend_all(std::span<const TimeSeries> histories, int until,
                                       GreyParameterMapping mapping = GreyParameterMapping::Exact);
}  // namespace serial

}  // namespace mcda
