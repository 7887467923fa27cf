#include "mcda/entropy.hpp"

#include "mcda/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mcda {

std::vector<double> interval_normalize(std::span<const double> x, double a, double b) {
  if (!(a <= b)) throw ValidationError("ideal interval requires a <= b");
  if (x.empty()) return {};
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  const double spread = std::max(a - *lo, *hi - b);
  std::vector<double> out(x.size(), 1.0);
  if (spread <= 0.0) return out;  // every value lies inside [a, b]
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < a) {
      out[i] = 1.0 - (a - x[i]) / spread;
    } else if (x[i] > b) {
      out[i] = 1.0 - (x[i] - b) / spread;
    }
  }
  return out;
}

DecisionMatrix positivize(const DecisionMatrix& x) {
  std::vector<double> vals(x.values().begin(), x.values().end());
  const std::size_t n = x.n_rows();
  const std::size_t m = x.n_cols();
  for (std::size_t j = 0; j < m; ++j) {
    auto col = x.column(j);
    std::vector<double> out;
    if (const auto& iv = x.ideal_intervals()[j]) {
      out = interval_normalize(col, iv->lower, iv->upper);
    } else if (x.polarity()[j] == Polarity::Negative) {
      const double hi = *std::max_element(col.begin(), col.end());
      out.resize(n);
      bool all_zero = true;
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = hi - col[i];
        all_zero = all_zero && out[i] == 0.0;
      }
      if (all_zero) std::fill(out.begin(), out.end(), 1.0);
    } else {
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) vals[i * m + j] = out[i];
  }
  std::vector<Polarity> pol(m, Polarity::Positive);
  return DecisionMatrix(x.row_labels(), x.col_ids(), std::move(vals), std::move(pol), {}, x.units());
}

NormalizedMatrix vector_normalize(const DecisionMatrix& x) {
  NormalizedMatrix z{x.n_rows(), x.n_cols(), std::vector<double>(x.values().begin(), x.values().end()),
                     NormalizationMethod::VectorNorm};
  for (std::size_t j = 0; j < z.m; ++j) {
    double ss = 0.0;
    for (std::size_t i = 0; i < z.n; ++i) ss += z(i, j) * z(i, j);
    if (ss == 0.0) throw NumericError("column " + x.col_ids()[j].str() + " is all zeros");
    const double norm = std::sqrt(ss);
    for (std::size_t i = 0; i < z.n; ++i) z(i, j) /= norm;
  }
  return z;
}

NormalizedMatrix normalize_for_entropy(const DecisionMatrix& x) { return vector_normalize(positivize(x)); }

namespace {

void check_shape(const NormalizedMatrix& z) {
  if (z.n < 2) throw NumericError("entropy weights need at least two samples");
  if (z.m < 1) throw NumericError("entropy weights need at least one indicator");
  if (z.values.size() != z.n * z.m) throw ValidationError("normalized matrix has inconsistent shape");
}

// Fills p(:, j) and returns e_j. Kept free of shared state so columns can run concurrently.
double column_entropy(const NormalizedMatrix& z, std::size_t j, bool shift_negative, double inv_log_n,
                      std::vector<double>& p) {
  double lo = 0.0;
  for (std::size_t i = 0; i < z.n; ++i) lo = std::min(lo, z(i, j));
  if (lo < 0.0 && !shift_negative) throw NumericError("negative normalized score in entropy input");
  const double shift = lo < 0.0 ? -lo : 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < z.n; ++i) sum += z(i, j) + shift;
  if (!(sum > 0.0)) throw NumericError("entropy column has zero sum");
  bool constant = true;
  for (std::size_t i = 1; i < z.n && constant; ++i) constant = z(i, j) == z(0, j);
  if (constant) {
    // Uniform distribution; pin e_j to exactly 1 so the weight is exactly 0.
    for (std::size_t i = 0; i < z.n; ++i) p[i * z.m + j] = 1.0 / static_cast<double>(z.n);
    return 1.0;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < z.n; ++i) {
    const double pij = (z(i, j) + shift) / sum;
    p[i * z.m + j] = pij;
    if (pij > 0.0) acc += pij * std::log(pij);  // 0·ln 0 := 0
  }
  return std::clamp(-acc * inv_log_n, 0.0, 1.0);
}

void finish_weights(EntropyResult& r) {
  double sum_e = 0.0;
  for (double e : r.entropies) sum_e += e;
  const double denom = static_cast<double>(r.m) - sum_e;
  if (!(denom > 0.0)) throw NumericError("every indicator column is constant; entropy weights undefined");
  r.weights.resize(r.m);
  for (std::size_t j = 0; j < r.m; ++j) r.weights[j] = (1.0 - r.entropies[j]) / denom;
}

}  // namespace

EntropyResult entropy_weights(const NormalizedMatrix& z, const EntropyOptions& opts) {
  check_shape(z);
  EntropyResult r{z.n, z.m, std::vector<double>(z.n * z.m), std::vector<double>(z.m), {}};
  const double inv_log_n = 1.0 / std::log(static_cast<double>(z.n));
  const auto m = static_cast<std::ptrdiff_t>(z.m);
  bool failed = false;
#pragma omp parallel for schedule(static) reduction(|| : failed)
  for (std::ptrdiff_t j = 0; j < m; ++j) {
    try {
      r.entropies[static_cast<std::size_t>(j)] =
          column_entropy(z, static_cast<std::size_t>(j), opts.shift_negative, inv_log_n, r.probabilities);
    } catch (const NumericError&) {
      failed = true;
    }
  }
  // Rerun serially to surface the first error with its message.
  if (failed) return serial::entropy_weights(z, opts);
  finish_weights(r);
  return r;
}

namespace serial {

EntropyResult entropy_weights(const NormalizedMatrix& z, const EntropyOptions& opts) {
  check_shape(z);
  EntropyResult r{z.n, z.m, std::vector<double>(z.n * z.m), std::vector<double>(z.m), {}};
  const double inv_log_n = 1.0 / std::log(static_cast<double>(z.n));
  for (std::size_t j = 0; j < z.m; ++j) {
    r.entropies[j] = column_entropy(z, j, opts.shift_negative, inv_log_n, r.probabilities);
  }
  finish_weights(r);
  return r;
}

}  // namespace serial

}  // namespace mcda
