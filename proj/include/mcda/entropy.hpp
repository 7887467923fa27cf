#pragma once

#include "mcda/indicator.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mcda {

enum class NormalizationMethod { IntervalPositive, VectorNorm };

/// Column-major friendly n x m matrix of normalized scores.
struct NormalizedMatrix {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> values;  // row-major
  NormalizationMethod method = NormalizationMethod::VectorNorm;

  double operator()(std::size_t i, std::size_t j) const { return values[i * m + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values[i * m + j]; }
};

/// Maps a column onto [0,1] with respect to the ideal interval [a, b]:
/// values inside map to 1, values outside fall off linearly with distance
/// scaled by M = max{a − min x, max x − b}.
std::vector<double> interval_normalize(std::span<const double> x, double a, double b);

/// Turns every column into a benefit-direction column: ideal-interval columns via
/// interval_normalize, negative columns via (max − x), the rest unchanged.
/// A column that collapses to all zeros (a constant cost column) becomes all ones.
DecisionMatrix positivize(const DecisionMatrix& x);

/// Divides every column by its Euclidean norm. Throws on an all-zero column.
NormalizedMatrix vector_normalize(const DecisionMatrix& x);

/// positivize followed by vector_normalize.
NormalizedMatrix normalize_for_entropy(const DecisionMatrix& x);

struct EntropyOptions {
  /// Shift columns holding negative scores up by their minimum before forming probabilities.
  bool shift_negative = true;
};

struct EntropyResult {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> probabilities;  // n x m, row-major
  std::vector<double> entropies;      // e_j
  std::vector<double> weights;        // H_j

  double p(std::size_t i, std::size_t j) const { return probabilities[i * m + j]; }
};

/// Entropy weights; columns are processed in parallel with OpenMP. The result
/// is bit-identical to serial::entropy_weights.
EntropyResult entropy_weights(const NormalizedMatrix& z, const EntropyOptions& opts = {});

namespace serial {
/// Single-threaded reference for entropy_weights.
EntropyResult entropy_weights(const NormalizedMatrix& z, const EntropyOptions& opts = {});
}  // namespace serial

}  // namespace mcda
