#pragma once

#include "mcda/indicator.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace mcda {

/// Dense square matrix, row-major.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t order) : n(order), a(order * order, 0.0) {}
  SquareMatrix(std::initializer_list<std::initializer_list<double>> rows);

  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
};

/// Positive reciprocal pairwise-comparison matrix on the 1/9..9 scale.
/// Only obtainable through validate_judgment, so every instance satisfies
/// b_ii = 1 and b_ij * b_ji = 1.
class JudgmentMatrix {
 public:
  std::size_t order() const noexcept { return m_.n; }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const SquareMatrix& matrix() const noexcept { return m_; }

 private:
  explicit JudgmentMatrix(SquareMatrix m) : m_(std::move(m)) {}
  friend JudgmentMatrix validate_judgment(const SquareMatrix& m);
  SquareMatrix m_;
};

inline constexpr std::size_t kMaxJudgmentOrder = 15;
inline constexpr double kReciprocityTolerance = 1e-9;
inline constexpr double kConsistencyThreshold = 0.1;

/// Throws ValidationError naming the first offending cell pair (1-based).
JudgmentMatrix validate_judgment(const SquareMatrix& m);

struct EigenResult {
  double lambda_max;
  std::vector<double> weights;  // L1-normalized
  int iterations;
};

struct PowerIterationOptions {
  double tolerance = 1e-12;  // max-norm change between successive iterates
  int max_iterations = 10000;
};

/// Perron eigenpair by power iteration with L1 renormalization. λ_max is the
/// mean of (M·w)_i / w_i at convergence. Throws NumericError on non-convergence.
EigenResult principal_eigen(const JudgmentMatrix& m, const PowerIterationOptions& opts = {});
EigenResult principal_eigen(const JudgmentMatrix& m, std::span<const double> start,
                            const PowerIterationOptions& opts = {});

/// Saaty's average random consistency index for orders 1..15.
double random_index(std::size_t n);

struct ConsistencyReport {
  double lambda_max;
  double ci;
  double ri;
  double cr;
  bool pass;
};

/// CI = (λ_max − n)/(n − 1), CR = CI/RI. Orders ≤ 2 always pass with CR = 0.
ConsistencyReport consistency(const JudgmentMatrix& m, double lambda_max);

/// Level key for the category comparison matrix; per-category matrices are keyed by letter "A".."E".
inline constexpr const char* kCriteriaLevel = "criteria";

struct AhpLevelResult {
  std::string level;
  EigenResult eigen;
  ConsistencyReport consistency;
};

struct AhpWeights {
  std::map<IndicatorId, double> local;  // V_j, sums to 1 within each category
  std::map<Category, double> category;  // U_i, sums to 1
  std::vector<AhpLevelResult> levels;

  /// U_i * V_j for every indicator.
  std::map<IndicatorId, double> global() const;
};

/// Weights for a hierarchy from one judgment matrix per level. When no
/// "criteria" matrix is supplied, U comes from the hierarchy's primary_weights.
/// Throws ValidationError if any matrix fails the consistency gate.
AhpWeights ahp_weights(const IndicatorHierarchy& h, const std::map<std::string, JudgmentMatrix>& judgments);

}  // namespace mcda
