#include "mcda/combined.hpp"

#include "mcda/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mcda {

DispersionVector dispersion(const NormalizedMatrix& x, std::span<const double> entropy_w,
                            std::span<const double> ahp_w) {
  if (entropy_w.size() != x.m || ahp_w.size() != x.m) {
    throw ValidationError("dispersion: weight vectors do not match the column count");
  }
  if (x.n == 0) throw ValidationError("dispersion: no samples");
  DispersionVector out{std::vector<double>(x.m)};
  for (std::size_t j = 0; j < x.m; ++j) {
    const double h = entropy_w[j];
    const double v = ahp_w[j];
    if (!(h > 0.0) || !(v > 0.0)) {
      throw NumericError("dispersion: entropy and AHP weights must be positive (column " +
                         std::to_string(j + 1) + ")");
    }
    double mean = 0.0;
    for (std::size_t i = 0; i < x.n; ++i) mean += x(i, j);
    mean /= static_cast<double>(x.n);
    const double ref = mean * (h + v) / (h * v);
    double ss = 0.0;
    for (std::size_t i = 0; i < x.n; ++i) ss += (x(i, j) - ref) * (x(i, j) - ref);
    out.values[j] = std::sqrt(ss / static_cast<double>(x.n));
  }
  return out;
}

std::vector<std::size_t> descending_order(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return idx;
}

ImportanceRatios importance_ratios(const DispersionVector& s, std::span<const std::size_t> ordering) {
  if (ordering.size() != s.values.size()) throw ValidationError("ordering length does not match dispersion");
  ImportanceRatios r{{ordering.begin(), ordering.end()}, {}, {}};
  for (std::size_t k = 1; k < ordering.size(); ++k) {
    const double prev = s.values[ordering[k - 1]];
    const double cur = s.values[ordering[k]];
    if (prev < 0.0 || cur < 0.0 || !std::isfinite(prev) || !std::isfinite(cur)) {
      throw ValidationError("dispersion values must be finite and nonnegative");
    }
    double rk = 1.0;
    if (prev >= cur) {
      if (cur == 0.0) {
        if (prev > 0.0) {
          rk = 2.0;
          r.warnings.push_back("zero dispersion at position " + std::to_string(k + 1) +
                               " after a positive one; ratio clamped to 2");
        }
      } else {
        rk = std::min(2.0, prev / cur);
      }
    }
    r.ratios.push_back(rk);
  }
  return r;
}

CombinedWeights order_weights(const ImportanceRatios& r) {
  const std::size_t m = r.ratios.size() + 1;
  if (m > kMaxOrderedIndicators) throw ValidationError("ordered weighting supports at most 64 indicators");
  if (!r.ordering.empty() && r.ordering.size() != m)
    throw ValidationError("ordering length does not match ratios");
  for (double rk : r.ratios) {
    if (!(rk >= 1.0 && rk <= 2.0)) throw ValidationError("importance ratios must lie in [1, 2]");
  }
  // Σ_{k=2}^m Π_{j=k}^m r_j, accumulated from the tail.
  double tail = 1.0;
  double sum = 0.0;
  for (std::size_t k = m; k >= 2; --k) {
    tail *= r.ratios[k - 2];
    sum += tail;
  }
  CombinedWeights w;
  w.ordering = r.ordering.empty() ? std::vector<std::size_t>(m) : r.ordering;
  if (r.ordering.empty()) std::iota(w.ordering.begin(), w.ordering.end(), std::size_t{0});
  w.ordered.assign(m, 0.0);
  w.ordered[m - 1] = 1.0 / (1.0 + sum);
  for (std::size_t j = m - 1; j >= 1; --j) w.ordered[j - 1] = r.ratios[j - 1] * w.ordered[j];
  w.weights.assign(m, 0.0);
  for (std::size_t p = 0; p < m; ++p) w.weights[w.ordering[p]] = w.ordered[p];
  return w;
}

CombinedWeights combine_weights(const NormalizedMatrix& z, std::span<const IndicatorId> ids,
                                std::span<const double> entropy_w, std::span<const double> ahp_w) {
  if (ids.size() != z.m) throw ValidationError("combine_weights: id count does not match columns");
  if (z.m == 1) return {{0}, {1.0}, {1.0}, {ids.begin(), ids.end()}};
  auto s = dispersion(z, entropy_w, ahp_w);
  auto order = descending_order(s.values);
  auto w = order_weights(importance_ratios(s, order));
  w.ids.assign(ids.begin(), ids.end());
  return w;
}

double TotalWeights::at(const IndicatorId& id) const {
  auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) throw ValidationError("no total weight for " + id.str());
  return omega[static_cast<std::size_t>(it - ids.begin())];
}

double TotalWeights::sum() const { return std::accumulate(omega.begin(), omega.end(), 0.0); }

TotalWeights total_weights(const IndicatorHierarchy& h, const std::map<Category, double>& category_weights,
                           const std::map<Category, CombinedWeights>& per_category) {
  TotalWeights out;
  for (auto c : h.categories()) {
    auto cw = per_category.find(c);
    auto u = category_weights.find(c);
    if (cw == per_category.end() || u == category_weights.end()) {
      throw ValidationError(std::string("no weights for category ") + category_letter(c));
    }
    const auto ids = h.ids_in(c);
    for (const auto& id : ids) {
      auto it = std::find(cw->second.ids.begin(), cw->second.ids.end(), id);
      if (it == cw->second.ids.end()) throw ValidationError("no combined weight for " + id.str());
      out.ids.push_back(id);
      out.omega.push_back(u->second *
                          cw->second.weights[static_cast<std::size_t>(it - cw->second.ids.begin())]);
    }
  }
  return out;
}

namespace {

std::vector<std::size_t> rank_by_omega(const TotalWeights& omega) {
  std::vector<std::size_t> idx(omega.ids.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (omega.omega[a] != omega.omega[b]) return omega.omega[a] > omega.omega[b];
    return omega.ids[a] < omega.ids[b];
  });
  return idx;
}

FeatureSelection take(const TotalWeights& omega, const std::vector<std::size_t>& ranked, std::size_t k) {
  FeatureSelection sel;
  double picked = 0.0;
  for (std::size_t p = 0; p < k; ++p) {
    sel.ids.push_back(omega.ids[ranked[p]]);
    sel.gamma.push_back(omega.omega[ranked[p]]);
    picked += omega.omega[ranked[p]];
  }
  if (!(picked > 0.0)) throw NumericError("selected features carry no weight");
  for (double& g : sel.gamma) g /= picked;
  sel.coverage = picked / omega.sum();
  return sel;
}

}  // namespace

FeatureSelection select_features(const TotalWeights& omega, std::size_t k) {
  if (omega.ids.size() != omega.omega.size()) throw ValidationError("total weights are malformed");
  if (k == 0 || k > omega.ids.size()) {
    throw ValidationError("feature count " + std::to_string(k) + " outside 1.." +
                          std::to_string(omega.ids.size()));
  }
  return take(omega, rank_by_omega(omega), k);
}

FeatureSelection select_features_by_coverage(const TotalWeights& omega, double target) {
  if (omega.ids.empty()) throw ValidationError("no total weights to select from");
  const auto ranked = rank_by_omega(omega);
  const double total = omega.sum();
  double acc = 0.0;
  std::size_t k = 0;
  while (k < ranked.size()) {
    acc += omega.omega[ranked[k++]];
    if (acc / total >= target) break;
  }
  return take(omega, ranked, k);
}

double evaluate_chi(const FeatureSelection& sel, std::span<const double> xi) {
  if (xi.size() != sel.gamma.size()) {
    throw ValidationError("expected " + std::to_string(sel.gamma.size()) + " feature values, got " +
                          std::to_string(xi.size()));
  }
  double chi = 0.0;
  for (std::size_t j = 0; j < xi.size(); ++j) {
    if (!(xi[j] >= 0.0 && xi[j] <= 1.0)) throw ValidationError("feature value outside [0, 1]");
    chi += sel.gamma[j] * xi[j];
  }
  return chi;
}

std::vector<std::vector<double>> scale_features(const DecisionMatrix& x, std::span<const IndicatorId> ids) {
  const auto oriented = positivize(x.select_columns(ids));
  std::vector<std::vector<double>> out(oriented.n_rows(), std::vector<double>(ids.size()));
  for (std::size_t j = 0; j < ids.size(); ++j) {
    auto col = oriented.column(j);
    const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
    const double span = *hi - *lo;
    for (std::size_t i = 0; i < col.size(); ++i) out[i][j] = span > 0.0 ? (col[i] - *lo) / span : 1.0;
  }
  return out;
}

WeightingResult run_weighting(const IndicatorHierarchy& h,
                              const std::map<std::string, JudgmentMatrix>& judgments, const DecisionMatrix& x,
                              WeightingMode mode) {
  WeightingResult r;
  r.mode = mode;
  r.ids = h.ids();
  if (x.n_rows() < 2) throw ValidationError("weighting needs at least two samples");
  if (r.ids.size() < 2) throw ValidationError("weighting needs at least two indicators");
  r.ahp_detail = ahp_weights(h, judgments);
  r.category_weights = r.ahp_detail.category;
  const std::size_t m = r.ids.size();
  r.ahp.assign(m, 0.0);
  r.entropy.assign(m, 0.0);
  r.entropy_e.assign(m, 0.0);
  r.dispersion.assign(m, 0.0);
  r.combined.assign(m, 0.0);
  auto position = [&](const IndicatorId& id) {
    return static_cast<std::size_t>(std::find(r.ids.begin(), r.ids.end(), id) - r.ids.begin());
  };

  auto run_block = [&](const std::vector<IndicatorId>& ids, const std::vector<double>& v) {
    const auto sub = x.select_columns(ids);
    const auto z = normalize_for_entropy(sub);
    const auto e = entropy_weights(z);
    CombinedWeights cw;
    if (ids.size() == 1) {
      cw = {{0}, {1.0}, {1.0}, ids};
    } else {
      const auto s = dispersion(z, e.weights, v);
      cw = order_weights(importance_ratios(s, descending_order(s.values)));
      cw.ids = ids;
      for (std::size_t j = 0; j < ids.size(); ++j) r.dispersion[position(ids[j])] = s.values[j];
    }
    for (std::size_t j = 0; j < ids.size(); ++j) {
      const auto p = position(ids[j]);
      r.ahp[p] = v[j];
      r.entropy[p] = e.weights[j];
      r.entropy_e[p] = e.entropies[j];
      r.combined[p] = cw.weights[j];
    }
    return cw;
  };

  if (mode == WeightingMode::PerCategory) {
    std::map<Category, CombinedWeights> per_category;
    for (auto c : h.categories()) {
      const auto ids = h.ids_in(c);
      std::vector<double> v;
      for (const auto& id : ids) v.push_back(r.ahp_detail.local.at(id));
      per_category[c] = run_block(ids, v);
    }
    r.total = total_weights(h, r.category_weights, per_category);
  } else {
    const auto global = r.ahp_detail.global();
    std::vector<double> v;
    for (const auto& id : r.ids) v.push_back(global.at(id));
    const auto cw = run_block(r.ids, v);
    r.total = {r.ids, cw.weights};
  }
  return r;
}

}  // namespace mcda
