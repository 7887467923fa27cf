#pragma once

#include "mcda/ahp.hpp"
#include "mcda/entropy.hpp"
#include "mcda/indicator.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace mcda {

/// Per-column dispersion s̆_j, aligned with the matrix columns.
struct DispersionVector {
  std::vector<double> values;
};

/// Ratios r_2..r_m between adjacent indicators along `ordering`.
struct ImportanceRatios {
  std::vector<std::size_t> ordering;  // column indices, most important first
  std::vector<double> ratios;         // ratios[k-2] = r_k, size m-1
  std::vector<std::string> warnings;
};

struct CombinedWeights {
  std::vector<std::size_t> ordering;
  std::vector<double> ordered;   // W along the ordering, non-increasing
  std::vector<double> weights;   // W by original column index
  std::vector<IndicatorId> ids;  // column ids, when known
};

inline constexpr std::size_t kMaxOrderedIndicators = 64;

/// s̆_j = sqrt(mean_i (x_ij − x̄_j·(H_j+V_j)/(H_j·V_j))²). The harmonic factor is applied
/// as written, so the reference point usually lies outside the data range.
DispersionVector dispersion(const NormalizedMatrix& x, std::span<const double> entropy_w,
                            std::span<const double> ahp_w);

/// Column indices sorted by descending value; ties keep the lower index first.
std::vector<std::size_t> descending_order(std::span<const double> values);

/// r_k = min{2, s̆_{k−1}/s̆_k} when s̆_{k−1} ≥ s̆_k, else 1.
ImportanceRatios importance_ratios(const DispersionVector& s, std::span<const std::size_t> ordering);

/// W_m = (1 + Σ_{k=2}^m Π_{j=k}^m r_j)^{-1}, then W_{j−1} = r_j·W_j.
CombinedWeights order_weights(const ImportanceRatios& r);

/// dispersion -> descending order -> ratios -> weights, for one block of columns.
CombinedWeights combine_weights(const NormalizedMatrix& z, std::span<const IndicatorId> ids,
                                std::span<const double> entropy_w, std::span<const double> ahp_w);

struct TotalWeights {
  std::vector<IndicatorId> ids;
  std::vector<double> omega;

  double at(const IndicatorId& id) const;
  double sum() const;
};

/// Ω_ij = U_i·u_j. Throws when a populated category has no weights.
TotalWeights total_weights(const IndicatorHierarchy& h, const std::map<Category, double>& category_weights,
                           const std::map<Category, CombinedWeights>& per_category);

struct FeatureSelection {
  std::vector<IndicatorId> ids;  // ξ_1..ξ_k
  std::vector<double> gamma;
  /// Share of the total Ω mass held by the selected indicators.
  double coverage = 0.0;
};

/// Top-k indicators by Ω (ties by id), with γ_j = Ω_j / Σ_selected Ω.
FeatureSelection select_features(const TotalWeights& omega, std::size_t k);

/// Smallest top-k group whose coverage reaches `target`.
FeatureSelection select_features_by_coverage(const TotalWeights& omega, double target);

/// χ = Σ γ_j·ξ_j. Each ξ_j must lie in [0, 1].
double evaluate_chi(const FeatureSelection& sel, std::span<const double> xi);

/// Min-max scales the selected feature columns across the rows (alternatives) of `x`,
/// after orienting each column in the benefit direction. A constant column scales to 1.
/// Returns one ξ vector per row, in selection order.
std::vector<std::vector<double>> scale_features(const DecisionMatrix& x, std::span<const IndicatorId> ids);

enum class WeightingMode { PerCategory, Global };

struct WeightingResult {
  WeightingMode mode = WeightingMode::PerCategory;
  std::vector<IndicatorId> ids;    // hierarchy order
  std::vector<double> ahp;         // V_j (local within category, or U·V in global mode)
  std::vector<double> entropy;     // H_j
  std::vector<double> entropy_e;   // e_j
  std::vector<double> dispersion;  // s̆_j
  std::vector<double> combined;    // W_j (u_j in per-category mode)
  std::map<Category, double> category_weights;
  AhpWeights ahp_detail;
  TotalWeights total;
};

/// AHP + entropy + ordered combination + total weights over a decision matrix
/// whose columns cover the hierarchy.
WeightingResult run_weighting(const IndicatorHierarchy& h,
                              const std::map<std::string, JudgmentMatrix>& judgments, const DecisionMatrix& x,
                              WeightingMode mode = WeightingMode::PerCategory);

}  // namespace mcda
