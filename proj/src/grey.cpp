#include "mcda/grey.hpp"

#include "mcda/error.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <sstream>

namespace mcda {

namespace {

constexpr double kAlphaFloor = 1e-12;

void fill_diagnostics(GreyModel& m) {
  auto& d = m.diagnostics;
  const auto& x = m.source.values;
  const std::size_t n = x.size();
  d.ratio_lower = std::exp(-2.0 / static_cast<double>(n + 1));
  d.ratio_upper = std::exp(2.0 / static_cast<double>(n + 1));
  for (std::size_t k = 1; k < n; ++k) {
    const double sigma = x[k - 1] / x[k];
    d.class_ratios.push_back(sigma);
    if (!(sigma > d.ratio_lower && sigma < d.ratio_upper)) d.ratios_admissible = false;
  }
  if (!d.ratios_admissible) {
    d.warnings.push_back("class ratios of '" + m.source.label + "' fall outside the admissible band");
  }

  double mean_x = 0.0;
  double mean_e = 0.0;
  std::vector<double> resid(n);
  for (std::size_t k = 0; k < n; ++k) {
    resid[k] = x[k] - m.fitted[k];
    d.relative_residuals.push_back(std::abs(resid[k]) / x[k]);
    mean_x += x[k];
    mean_e += resid[k];
  }
  mean_x /= static_cast<double>(n);
  mean_e /= static_cast<double>(n);
  d.mean_relative_residual =
      std::accumulate(d.relative_residuals.begin(), d.relative_residuals.end(), 0.0) / static_cast<double>(n);
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    s1 += (x[k] - mean_x) * (x[k] - mean_x);
    s2 += (resid[k] - mean_e) * (resid[k] - mean_e);
  }
  d.posterior_variance_ratio = s1 > 0.0 ? std::sqrt(s2 / s1) : 0.0;
}

}  // namespace

GreyModel fit_gm11(const TimeSeries& s, GreyParameterMapping mapping) {
  const auto& x = s.values;
  const std::size_t n = x.size();
  if (n < kMinGreyLength) {
    throw ValidationError("series '" + s.label + "' has " + std::to_string(n) +
                          " observations; GM(1,1) needs at least 4");
  }
  for (double v : x) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw ValidationError("series '" + s.label + "' must be strictly positive for GM(1,1)");
    }
  }

  GreyModel m;
  m.source = s;
  m.mapping = mapping;

  const bool constant = std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
  if (constant) {
    // Closed form of the normal equations; avoids rounding noise in a = 0.
    m.a = 0.0;
    m.b = x.front();
  } else {
    // Least squares for  X⁰(k) = −a·z¹(k) + b,  k = 2..n,  z¹(k) = (X¹(k) + X¹(k−1))/2,
    // solved in centered form.
    std::vector<double> z(n - 1);
    double cum = x[0];
    for (std::size_t k = 1; k < n; ++k) {
      const double prev = cum;
      cum += x[k];
      z[k - 1] = 0.5 * (cum + prev);
    }
    const double cnt = static_cast<double>(n - 1);
    const double z_mean = std::accumulate(z.begin(), z.end(), 0.0) / cnt;
    const double y_mean = std::accumulate(x.begin() + 1, x.end(), 0.0) / cnt;
    double szz = 0.0, szy = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      const double dz = z[k - 1] - z_mean;
      szz += dz * dz;
      szy += dz * (x[k] - y_mean);
    }
    if (!(szz > 0.0)) throw NumericError("GM(1,1) normal equations are singular");
    const double slope = szy / szz;  // coefficient on z¹
    m.a = -slope;
    m.b = y_mean - slope * z_mean;
  }

  if (mapping == GreyParameterMapping::Exact && std::abs(m.a) < 2.0) {
    if (std::abs(m.a) < kAlphaFloor) {
      m.alpha = m.a;
      m.mu = m.b;
    } else {
      m.alpha = 2.0 * std::atanh(m.a / 2.0);
      m.mu = m.b * m.alpha / m.a;
    }
  } else {
    if (mapping == GreyParameterMapping::Exact) {
      m.diagnostics.warnings.push_back("development coefficient outside (-2, 2); using the plug-in mapping");
    }
    m.alpha = m.a;
    m.mu = m.b;
  }

  m.fitted_cumulative = predict_cumulative(m, n);
  m.fitted.resize(n);
  m.fitted[0] = m.fitted_cumulative[0];
  for (std::size_t k = 1; k < n; ++k) m.fitted[k] = m.fitted_cumulative[k] - m.fitted_cumulative[k - 1];
  fill_diagnostics(m);
  return m;
}

std::vector<double> predict_cumulative(const GreyModel& m, std::size_t count) {
  const double x1 = m.source.values.at(0);
  std::vector<double> out(count);
  if (std::abs(m.alpha) < kAlphaFloor) {
    // α → 0 limit: linear cumulative growth at rate μ.
    for (std::size_t k = 0; k < count; ++k) out[k] = x1 + m.mu * static_cast<double>(k);
    return out;
  }
  const double ratio = m.mu / m.alpha;
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = (x1 - ratio) * std::exp(-m.alpha * static_cast<double>(k)) + ratio;
  }
  return out;
}

std::vector<double> predict(const GreyModel& m, std::size_t horizon) {
  const std::size_t total = m.source.values.size() + horizon;
  const auto cum = predict_cumulative(m, total);
  std::vector<double> out(total);
  out[0] = cum[0];
  if (std::abs(m.alpha) < kAlphaFloor) {
    for (std::size_t k = 1; k < total; ++k) out[k] = m.mu;
    return out;
  }
  // Inverse accumulation in closed form: X̂¹(k+1) − X̂¹(k) = (X⁰(1) − μ/α)(e^{−αk} − e^{−α(k−1)}).
  const double c = m.source.values[0] - m.mu / m.alpha;
  const double step = -std::expm1(m.alpha);
  for (std::size_t k = 1; k < total; ++k) out[k] = c * step * std::exp(-m.alpha * static_cast<double>(k));
  return out;
}

std::vector<double> forecast(const GreyModel& m, std::size_t horizon) {
  auto all = predict(m, horizon);
  return {all.end() - static_cast<std::ptrdiff_t>(horizon), all.end()};
}

ForecastSeries extend_series(const TimeSeries& history, int until, GreyParameterMapping mapping) {
  if (history.values.size() < kMinGreyLength) {
    throw ValidationError("series '" + history.label + "' needs at least 4 observations to forecast");
  }
  const double lo = *std::min_element(history.values.begin(), history.values.end());
  ForecastSeries out;
  out.history_length = history.values.size();
  out.shift = lo > 0.0 ? 0.0 : 1.0 - lo;
  TimeSeries shifted = history;
  for (double& v : shifted.values) v += out.shift;
  out.model = fit_gm11(shifted, mapping);
  const int last = history.end_period();
  const std::size_t horizon = until > last ? static_cast<std::size_t>(until - last) : 0;
  out.series = history;
  for (double v : forecast(out.model, horizon)) out.series.values.push_back(v - out.shift);
  return out;
}

std::vector<ForecastSeries> extend_all(std::span<const TimeSeries> histories, int until,
                                       GreyParameterMapping mapping) {
  std::vector<ForecastSeries> out(histories.size());
  std::vector<std::exception_ptr> errors(histories.size());
  const auto count = static_cast<std::ptrdiff_t>(histories.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = extend_series(histories[k], until, mapping);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

namespace serial {

std::vector<ForecastSeries> extend_all(std::span<const TimeSeries> histories, int until,
                                       GreyParameterMapping mapping) {
  std::vector<ForecastSeries> out;
  out.reserve(histories.size());
  for (const auto& h : histories) out.push_back(extend_series(h, until, mapping));
  return out;
}

}  // namespace serial

}  // namespace mcda
