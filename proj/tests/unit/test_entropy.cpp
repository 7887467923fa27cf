#include "mcda/entropy.hpp"
#include "mcda/error.hpp"

#include "../support/generators.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace mcda;
using mcda::testing::Gen;

namespace {

// Straight transcription of the entropy weight formulas, used as an oracle.
std::vector<double> reference_weights(const NormalizedMatrix& z) {
  const double k = 1.0 / std::log(static_cast<double>(z.n));
  std::vector<double> e(z.m);
  for (std::size_t j = 0; j < z.m; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < z.n; ++i) s += z(i, j);
    double acc = 0.0;
    for (std::size_t i = 0; i < z.n; ++i) {
      const double p = z(i, j) / s;
      if (p > 0.0) acc += p * std::log(p);
    }
    e[j] = -k * acc;
  }
  const double denom = static_cast<double>(z.m) - std::accumulate(e.begin(), e.end(), 0.0);
  std::vector<double> h(z.m);
  for (std::size_t j = 0; j < z.m; ++j) h[j] = (1.0 - e[j]) / denom;
  return h;
}

DecisionMatrix two_by_two(double a, double b, double c, double d) {
  return DecisionMatrix({"x", "y"}, {IndicatorId::parse("A1"), IndicatorId::parse("A2")}, {a, b, c, d});
}

}  // namespace

TEST_CASE("interval normalization") {
  const std::vector<double> x{0.0, 0.5, 1.0, 0.4};
  const auto y = interval_normalize(x, 0.4, 0.6);
  CHECK(y[0] == doctest::Approx(0.0));
  CHECK(y[1] == 1.0);
  CHECK(y[2] == doctest::Approx(0.0));
  CHECK(y[3] == 1.0);
  const auto z = interval_normalize(std::vector<double>{0.2, 0.3}, 0.1, 0.9);
  CHECK(z == std::vector<double>{1.0, 1.0});
  CHECK_THROWS_AS(interval_normalize(x, 0.6, 0.4), ValidationError);
}

TEST_CASE("vector normalization hand example") {
  const auto z = vector_normalize(two_by_two(1, 1, 1, 3));
  CHECK(z(0, 0) == doctest::Approx(std::sqrt(0.5)));
  CHECK(z(1, 1) == doctest::Approx(3.0 / std::sqrt(10.0)));
  CHECK_THROWS_AS(vector_normalize(two_by_two(0, 1, 0, 2)), NumericError);
}

TEST_CASE("positivize") {
  DecisionMatrix m({"x", "y", "z"},
                   {IndicatorId::parse("A1"), IndicatorId::parse("A2"), IndicatorId::parse("A3")},
                   {1, 5, 7, 2, 5, 8, 4, 5, 9}, {Polarity::Positive, Polarity::Negative, Polarity::Negative});
  const auto p = positivize(m);
  CHECK(p(0, 0) == 1.0);
  CHECK(p(0, 1) == 1.0);  // constant cost column collapses to zeros, then ones
  CHECK(p(2, 1) == 1.0);
  CHECK(p(0, 2) == 2.0);
  CHECK(p(2, 2) == 0.0);
  CHECK(p.polarity()[2] == Polarity::Positive);
}

TEST_CASE("entropy weights hand example") {
  const auto r = entropy_weights(vector_normalize(two_by_two(1, 1, 1, 3)));
  CHECK(r.p(0, 0) == doctest::Approx(0.5));
  CHECK(r.p(1, 1) == doctest::Approx(0.75));
  CHECK(r.entropies[0] == 1.0);
  CHECK(r.entropies[1] == doctest::Approx(0.8112781244591328).epsilon(1e-12));
  CHECK(r.weights[0] == 0.0);
  CHECK(r.weights[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("entropy error cases") {
  CHECK_THROWS_AS(entropy_weights(vector_normalize(DecisionMatrix({"x"}, {IndicatorId::parse("A1")}, {1.0}))),
                  NumericError);
  CHECK_THROWS_AS(entropy_weights(vector_normalize(two_by_two(1, 2, 1, 2))), NumericError);
  NormalizedMatrix neg{2, 1, {-1.0, 1.0}, NormalizationMethod::VectorNorm};
  EntropyOptions strict;
  strict.shift_negative = false;
  CHECK_THROWS_AS(entropy_weights(neg, strict), NumericError);
  NormalizedMatrix zero{2, 2, {0.0, 1.0, 0.0, 2.0}, NormalizationMethod::VectorNorm};
  CHECK_THROWS_AS(entropy_weights(zero), NumericError);
}

TEST_CASE("zero scores follow 0·ln 0 = 0") {
  NormalizedMatrix z{3, 2, {0.0, 1.0, 0.0, 2.0, 1.0, 3.0}, NormalizationMethod::VectorNorm};
  const auto r = entropy_weights(z);
  CHECK(r.entropies[0] == doctest::Approx(0.0));
  for (double h : r.weights) CHECK(std::isfinite(h));
}

TEST_CASE("property: entropy weights against the oracle") {
  Gen g(21);
  for (int t = 0; t < 300; ++t) {
    const auto x = g.matrix(g.index(2, 40), g.index(2, 12));
    const auto z = normalize_for_entropy(x);
    const auto r = entropy_weights(z);
    const auto ref = reference_weights(z);
    double sum = 0.0;
    for (std::size_t j = 0; j < r.m; ++j) {
      CHECK(r.weights[j] == doctest::Approx(ref[j]).epsilon(1e-10));
      CHECK(r.entropies[j] >= -1e-12);
      CHECK(r.entropies[j] <= 1.0 + 1e-12);
      sum += r.weights[j];
    }
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("property: constant columns get zero weight") {
  Gen g(22);
  int seen = 0;
  for (int t = 0; t < 300; ++t) {
    const auto x = g.matrix(g.index(2, 30), g.index(2, 10), true);
    bool all_constant = true;
    std::vector<bool> constant(x.n_cols());
    for (std::size_t j = 0; j < x.n_cols(); ++j) {
      const auto c = x.column(j);
      constant[j] = std::all_of(c.begin(), c.end(), [&](double v) { return v == c[0]; });
      all_constant = all_constant && constant[j];
    }
    if (all_constant) continue;
    const auto r = entropy_weights(normalize_for_entropy(x));
    for (std::size_t j = 0; j < x.n_cols(); ++j) {
      if (!constant[j]) continue;
      ++seen;
      CHECK(r.weights[j] == 0.0);
      CHECK(r.entropies[j] == 1.0);
    }
  }
  CHECK(seen > 50);
}

TEST_CASE("property: column scaling invariance") {
  Gen g(23);
  for (int t = 0; t < 200; ++t) {
    auto x = g.matrix(g.index(2, 30), g.index(2, 10));
    const auto base = entropy_weights(normalize_for_entropy(x));
    for (std::size_t j = 0; j < x.n_cols(); ++j) {
      const double c = std::pow(10.0, g.uniform(-3.0, 3.0));
      for (std::size_t i = 0; i < x.n_rows(); ++i) x(i, j) *= c;
    }
    const auto scaled = entropy_weights(normalize_for_entropy(x));
    for (std::size_t j = 0; j < x.n_cols(); ++j) CHECK(std::abs(scaled.weights[j] - base.weights[j]) < 1e-12);
  }
}

TEST_CASE("parallel entropy matches the serial reference bit for bit") {
  Gen g(24);
  for (int t = 0; t < 50; ++t) {
    const auto z = normalize_for_entropy(g.matrix(g.index(2, 200), g.index(1, 30)));
    if (z.m == 1) continue;
    const auto a = entropy_weights(z);
    const auto b = serial::entropy_weights(z);
    CHECK(a.weights == b.weights);
    CHECK(a.entropies == b.entropies);
    CHECK(a.probabilities == b.probabilities);
  }
}
