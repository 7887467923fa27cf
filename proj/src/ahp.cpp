#include "mcda/ahp.hpp"

#include "mcda/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mcda {

namespace {

// Saaty (1980), orders 1..15.
constexpr std::array<double, 15> kRandomIndex{0.0,  0.0,  0.58, 0.90, 1.12, 1.24, 1.32, 1.41,
                                              1.45, 1.49, 1.51, 1.48, 1.56, 1.57, 1.59};

std::string cell(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

SquareMatrix::SquareMatrix(std::initializer_list<std::initializer_list<double>> rows) : n(rows.size()) {
  a.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw ValidationError("judgment matrix is not square");
    a.insert(a.end(), r.begin(), r.end());
  }
}

JudgmentMatrix validate_judgment(const SquareMatrix& m) {
  if (m.n == 0 || m.a.size() != m.n * m.n) throw ValidationError("judgment matrix is not square");
  if (m.n > kMaxJudgmentOrder) {
    throw ValidationError("judgment matrix order " + std::to_string(m.n) + " exceeds 15");
  }
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v) || v <= 0.0) {
        throw ValidationError("judgment entry " + cell(i, j) + " must be positive");
      }
    }
  }
  constexpr double lo = 1.0 / 9.0 - 1e-9;
  constexpr double hi = 9.0 + 1e-9;
  for (std::size_t i = 0; i < m.n; ++i) {
    if (std::abs(m(i, i) - 1.0) > kReciprocityTolerance) {
      throw ValidationError("judgment diagonal " + cell(i, i) + " must equal 1");
    }
    for (std::size_t j = i + 1; j < m.n; ++j) {
      if (std::abs(m(i, j) * m(j, i) - 1.0) > kReciprocityTolerance) {
        throw ValidationError("reciprocity violated at " + cell(i, j) + "/" + cell(j, i));
      }
      if (m(i, j) < lo || m(i, j) > hi) {
        throw ValidationError("judgment entry " + cell(i, j) + " outside the 1/9..9 scale");
      }
    }
  }
  return JudgmentMatrix(m);
}

EigenResult principal_eigen(const JudgmentMatrix& m, const PowerIterationOptions& opts) {
  std::vector<double> start(m.order(), 1.0);
  return principal_eigen(m, start, opts);
}

EigenResult principal_eigen(const JudgmentMatrix& m, std::span<const double> start,
                            const PowerIterationOptions& opts) {
  const std::size_t n = m.order();
  if (start.size() != n) throw ValidationError("power iteration start vector has wrong length");
  std::vector<double> w(start.begin(), start.end());
  double s = 0.0;
  for (double v : w) {
    if (!(v > 0.0)) throw ValidationError("power iteration start vector must be positive");
    s += v;
  }
  for (double& v : w) v /= s;

  std::vector<double> next(n);
  for (int it = 1; it <= opts.max_iterations; ++it) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * w[j];
      next[i] = acc;
      total += acc;
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= total;
      change = std::max(change, std::abs(next[i] - w[i]));
    }
    w.swap(next);
    if (change < opts.tolerance) {
      double lambda = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * w[j];
        lambda += acc / w[i];
      }
      return {lambda / static_cast<double>(n), std::move(w), it};
    }
  }
  throw NumericError("power iteration did not converge within " + std::to_string(opts.max_iterations) +
                     " iterations");
}

double random_index(std::size_t n) {
  if (n < 1 || n > kRandomIndex.size()) {
    throw ValidationError("no random index for order " + std::to_string(n));
  }
  return kRandomIndex[n - 1];
}

ConsistencyReport consistency(const JudgmentMatrix& m, double lambda_max) {
  const std::size_t n = m.order();
  const double ri = random_index(n);
  if (n <= 2) return {lambda_max, 0.0, ri, 0.0, true};
  const double ci = (lambda_max - static_cast<double>(n)) / static_cast<double>(n - 1);
  const double cr = ci / ri;
  return {lambda_max, ci, ri, cr, cr < kConsistencyThreshold};
}

std::map<IndicatorId, double> AhpWeights::global() const {
  std::map<IndicatorId, double> out;
  for (const auto& [id, v] : local) out[id] = category.at(id.category()) * v;
  return out;
}

AhpWeights ahp_weights(const IndicatorHierarchy& h, const std::map<std::string, JudgmentMatrix>& judgments) {
  AhpWeights out;
  auto solve = [&](const std::string& level, std::size_t expected) {
    auto it = judgments.find(level);
    if (it == judgments.end()) {
      if (expected == 1) {
        // A single element needs no comparison.
        return std::vector<double>{1.0};
      }
      throw ValidationError("no judgment matrix for level '" + level + "'");
    }
    const auto& jm = it->second;
    if (jm.order() != expected) {
      throw ValidationError("judgment matrix '" + level + "' has order " + std::to_string(jm.order()) +
                            ", expected " + std::to_string(expected));
    }
    auto eig = principal_eigen(jm);
    auto rep = consistency(jm, eig.lambda_max);
    if (!rep.pass) {
      std::ostringstream os;
      os << "judgment matrix '" << level << "' fails the consistency check (CR = " << rep.cr << ")";
      throw ValidationError(os.str());
    }
    auto w = eig.weights;
    out.levels.push_back({level, std::move(eig), rep});
    return w;
  };

  const auto cats = h.categories();
  if (cats.empty()) throw ValidationError("hierarchy has no indicators");
  if (judgments.count(kCriteriaLevel) || cats.size() == 1) {
    auto u = solve(kCriteriaLevel, cats.size());
    for (std::size_t i = 0; i < cats.size(); ++i) out.category[cats[i]] = u[i];
  } else {
    double sum = 0.0;
    for (auto c : cats) {
      auto it = h.primary_weights.find(c);
      if (it == h.primary_weights.end()) {
        throw ValidationError(std::string("no criteria matrix and no primary weight for category ") +
                              category_letter(c));
      }
      out.category[c] = it->second;
      sum += it->second;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("primary weights do not sum to 1");
  }

  for (auto c : cats) {
    const auto ids = h.ids_in(c);
    auto v = solve(std::string(1, category_letter(c)), ids.size());
    for (std::size_t j = 0; j < ids.size(); ++j) out.local[ids[j]] = v[j];
  }
  return out;
}

}  // namespace mcda
