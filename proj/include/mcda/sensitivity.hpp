#pragma once

#include "mcda/combined.hpp"
#include "mcda/indicator.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mcda {

struct PerturbationConfig {
  std::uint64_t seed = 0;
  std::size_t n_swap = 5;
  std::size_t trials = 1;
};

struct SubstitutionTrial {
  std::vector<std::size_t> positions;  // replaced feature positions (0-based), ascending
  std::vector<IndicatorId> removed;
  std::vector<IndicatorId> inserted;  // inserted[i] takes positions[i]
  std::vector<double> chi;            // per alternative
  std::vector<double> abs_deviation;  // chi − baseline
  std::vector<double> rel_deviation;  // (chi − baseline)/|baseline|
};

struct DeviationSummary {
  double mean_abs = 0.0;
  double max_abs = 0.0;
  double std_abs = 0.0;
  double mean_rel = 0.0;
  double max_rel = 0.0;
};

struct SensitivityReport {
  std::uint64_t seed = 0;
  std::size_t n_swap = 0;
  std::vector<std::string> alternatives;
  std::vector<double> baseline_chi;
  std::vector<SubstitutionTrial> trials;
  DeviationSummary summary;  // over |deviation| across trials and alternatives
};

/// Replaces the features at `positions` by `replacements` (same length) and
/// renormalizes γ over the new group from its Ω values.
FeatureSelection substitute(const FeatureSelection& sel, const TotalWeights& omega,
                            std::span<const std::size_t> positions,
                            std::span<const IndicatorId> replacements);

/// Random feature substitution. Trial t draws from its own stream derived from
/// (seed, t), so the result does not depend on thread scheduling. Trials run in parallel.
SensitivityReport factor_substitution(const FeatureSelection& sel, const TotalWeights& omega,
                                      const DecisionMatrix& data, const PerturbationConfig& cfg);

namespace serial {
SensitivityReport factor_substitution(const FeatureSelection& sel, const TotalWeights& omega,
                                      const DecisionMatrix& data, const PerturbationConfig& cfg);
}  // namespace serial

/// Box-Behnken design in coded levels {−1, 0, +1}.
struct BBDesign {
  std::size_t factors = 0;
  std::size_t center_replicates = 0;
  std::vector<std::vector<double>> points;
};

/// k ≥ 3: every factor pair at (±1, ±1) with the rest at 0, then the center runs.
/// k = 2: the 3×3 factorial's eight non-center points, then the center runs.
BBDesign bbd_design(std::size_t k, std::size_t center_replicates);

/// Full second-order polynomial. Coefficient layout: intercept, linear x_1..x_k,
/// interactions x_i·x_j (i < j, lexicographic), squares x_1²..x_k².
struct QuadraticSurface {
  std::size_t factors = 0;
  std::vector<double> coefficients;
  double r_squared = 0.0;
  double residual_norm = 0.0;

  double evaluate(std::span<const double> x) const;
  static std::size_t coefficient_count(std::size_t k) { return 1 + k + k * (k - 1) / 2 + k; }
};

/// Least-squares fit of the full quadratic. Throws NumericError on rank deficiency.
QuadraticSurface fit_response_surface(const BBDesign& design, std::span<const double> responses);

struct FactorRange {
  double absolute = 0.0;
  double relative = 0.0;  // NaN when the baseline response is 0
};

struct SurfaceExtrema {
  std::vector<double> min_point;
  double min_value = 0.0;
  std::vector<double> max_point;
  double max_value = 0.0;
  double baseline_value = 0.0;
  FactorRange joint;
  std::vector<FactorRange> per_factor;  // only factor f moves, others at the baseline
};

/// Exact extrema of a quadratic over a box: interior and face stationary points plus vertices.
/// The baseline defaults to the box center.
SurfaceExtrema surface_extrema(const QuadraticSurface& s, std::span<const std::pair<double, double>> box,
                               std::span<const double> baseline = {});

/// χ of one alternative with γ at `factors` scaled by (1 + delta·level); the other γ stay fixed.
/// With `renormalize`, γ is rescaled to sum to 1 after the perturbation.
double perturbed_chi(const FeatureSelection& sel, std::span<const double> xi,
                     std::span<const std::size_t> factors, std::span<const double> levels, double delta,
                     bool renormalize = false);

}  // namespace mcda
