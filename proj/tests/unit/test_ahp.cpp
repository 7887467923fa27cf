#include "mcda/ahp.hpp"
#include "mcda/error.hpp"

#include "../support/generators.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

using namespace mcda;
using mcda::testing::Gen;

namespace {

std::string error_of(const SquareMatrix& m) {
  try {
    validate_judgment(m);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("judgment validation") {
  CHECK(error_of({{1, 3}, {1.0 / 3, 1}}).empty());
  CHECK(error_of({{1, 3}, {0.5, 1}}).find("reciprocity violated at (1,2)/(2,1)") != std::string::npos);
  CHECK(error_of({{1, 3}, {1.0 / 3, 2}}).find("diagonal") != std::string::npos);
  CHECK(error_of({{1, -3}, {-1.0 / 3, 1}}).find("positive") != std::string::npos);
  CHECK(error_of({{1, 11}, {1.0 / 11, 1}}).find("scale") != std::string::npos);
  CHECK(error_of(SquareMatrix(16)).find("exceeds 15") != std::string::npos);
  SquareMatrix ragged;
  ragged.n = 2;
  ragged.a = {1, 2, 3};
  CHECK(error_of(ragged).find("square") != std::string::npos);
  CHECK_THROWS_AS(SquareMatrix({{1, 2}, {1}}), ValidationError);
}

TEST_CASE("principal eigenpair, hand examples") {
  // Consistent: w = (4, 2, 1)/7.
  const auto c = validate_judgment({{1, 2, 4}, {0.5, 1, 2}, {0.25, 0.5, 1}});
  const auto e = principal_eigen(c);
  CHECK(e.lambda_max == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(e.weights[0] == doctest::Approx(4.0 / 7).epsilon(1e-12));
  CHECK(e.weights[2] == doctest::Approx(1.0 / 7).epsilon(1e-12));
  const auto rep = consistency(c, e.lambda_max);
  CHECK(std::abs(rep.cr) < 1e-12);
  CHECK(rep.pass);

  // Cyclic judgments; reference values from a dense eigensolver.
  const auto bad = validate_judgment({{1, 3, 1.0 / 5}, {1.0 / 3, 1, 5}, {5, 1.0 / 5, 1}});
  const auto eb = principal_eigen(bad);
  CHECK(eb.lambda_max == doctest::Approx(5.454289546808075).epsilon(1e-10));
  CHECK(eb.weights[0] == doctest::Approx(0.2784466522450315).epsilon(1e-9));
  CHECK(eb.weights[1] == doctest::Approx(0.3914183367456268).epsilon(1e-9));
  CHECK(eb.weights[2] == doctest::Approx(0.33013501100934173).epsilon(1e-9));
  const auto rb = consistency(bad, eb.lambda_max);
  CHECK(rb.ci == doctest::Approx((5.454289546808075 - 3) / 2).epsilon(1e-10));
  CHECK(rb.ri == 0.58);
  CHECK(rb.cr == doctest::Approx(2.1157668507).epsilon(1e-8));
  CHECK_FALSE(rb.pass);
}

TEST_CASE("random index table") {
  CHECK(random_index(1) == 0.0);
  CHECK(random_index(2) == 0.0);
  CHECK(random_index(3) == 0.58);
  CHECK(random_index(9) == 1.45);
  CHECK(random_index(15) == 1.59);
  CHECK_THROWS_AS(random_index(16), ValidationError);
  CHECK_THROWS_AS(random_index(0), ValidationError);
}

TEST_CASE("orders one and two are trivially consistent") {
  const auto one = validate_judgment({{1}});
  const auto e1 = principal_eigen(one);
  CHECK(e1.weights == std::vector<double>{1.0});
  CHECK(consistency(one, e1.lambda_max).cr == 0.0);

  const auto two = validate_judgment({{1, 9}, {1.0 / 9, 1}});
  const auto e2 = principal_eigen(two);
  CHECK(e2.weights[0] == doctest::Approx(0.9));
  const auto r2 = consistency(two, e2.lambda_max);
  CHECK(r2.cr == 0.0);
  CHECK(r2.pass);
}

TEST_CASE("power iteration start vector") {
  const auto c = validate_judgment({{1, 2, 4}, {0.5, 1, 2}, {0.25, 0.5, 1}});
  const std::vector<double> start{0.1, 0.1, 0.8};
  CHECK(principal_eigen(c, start).weights[0] == doctest::Approx(4.0 / 7).epsilon(1e-12));
  CHECK_THROWS_AS(principal_eigen(c, std::vector<double>{1, 1}), ValidationError);
  CHECK_THROWS_AS(principal_eigen(c, std::vector<double>{1, 0, 1}), ValidationError);
  PowerIterationOptions tight;
  tight.max_iterations = 1;
  const auto bad = validate_judgment({{1, 3, 1.0 / 5}, {1.0 / 3, 1, 5}, {5, 1.0 / 5, 1}});
  CHECK_THROWS_AS(principal_eigen(bad, tight), NumericError);
}

TEST_CASE("property: consistent matrices recover their generator") {
  Gen g(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = g.index(3, 12);
    std::vector<double> w;
    const auto jm = validate_judgment(g.consistent(n, &w));
    const auto e = principal_eigen(jm);
    const auto rep = consistency(jm, e.lambda_max);
    CHECK(rep.cr < 1e-9);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(e.weights[i] - w[i]));
    CHECK(err < 1e-8);
  }
}

TEST_CASE("property: weights are a positive simplex point and λ ≥ n") {
  Gen g(12);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = g.index(3, 9);
    const auto jm = validate_judgment(g.reciprocal(n));
    const auto e = principal_eigen(jm);
    double s = std::accumulate(e.weights.begin(), e.weights.end(), 0.0);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    for (double w : e.weights) CHECK(w > 0.0);
    CHECK(e.lambda_max >= static_cast<double>(n) - 1e-9);
  }
}

TEST_CASE("property: permuting alternatives permutes weights") {
  Gen g(13);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = g.index(3, 8);
    const auto m = g.reciprocal(n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), g.engine());
    SquareMatrix p(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) p(i, j) = m(perm[i], perm[j]);
    }
    const auto a = principal_eigen(validate_judgment(m));
    const auto b = principal_eigen(validate_judgment(p));
    for (std::size_t i = 0; i < n; ++i)
      CHECK(b.weights[i] == doctest::Approx(a.weights[perm[i]]).epsilon(1e-9));
    CHECK(b.lambda_max == doctest::Approx(a.lambda_max).epsilon(1e-10));
  }
}

TEST_CASE("hierarchy weights") {
  IndicatorHierarchy h;
  h.reduced = true;
  for (const char* id : {"A1", "A2", "B1"})
    h.specs.push_back({IndicatorId::parse(id), id, Polarity::Positive, {}});
  h.primary_weights = {{Category::Economy, 0.25}, {Category::Human, 0.75}};

  std::map<std::string, JudgmentMatrix> j;
  j.emplace("A", validate_judgment({{1, 3}, {1.0 / 3, 1}}));

  SUBCASE("without a criteria matrix U comes from the hierarchy") {
    const auto w = ahp_weights(h, j);
    CHECK(w.local.at(IndicatorId::parse("A1")) == doctest::Approx(0.75));
    CHECK(w.local.at(IndicatorId::parse("B1")) == 1.0);
    CHECK(w.category.at(Category::Human) == 0.75);
    double s = 0.0;
    for (const auto& [id, v] : w.global()) s += v;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("criteria matrix overrides") {
    j.emplace(kCriteriaLevel, validate_judgment({{1, 1}, {1, 1}}));
    const auto w = ahp_weights(h, j);
    CHECK(w.category.at(Category::Economy) == doctest::Approx(0.5));
    CHECK(w.global().at(IndicatorId::parse("A2")) == doctest::Approx(0.125));
  }
  SUBCASE("inconsistent level is rejected and named") {
    h.specs.push_back({IndicatorId::parse("A3"), "A3", Polarity::Positive, {}});
    j.erase("A");
    j.emplace("A", validate_judgment({{1, 3, 1.0 / 5}, {1.0 / 3, 1, 5}, {5, 1.0 / 5, 1}}));
    try {
      ahp_weights(h, j);
      FAIL("expected a consistency failure");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("'A'") != std::string::npos);
    }
  }
  SUBCASE("missing matrix and wrong order") {
    h.specs.push_back({IndicatorId::parse("B2"), "B2", Polarity::Positive, {}});
    CHECK_THROWS_AS(ahp_weights(h, j), ValidationError);
    j.emplace("B", validate_judgment({{1, 2, 2}, {0.5, 1, 1}, {0.5, 1, 1}}));
    CHECK_THROWS_AS(ahp_weights(h, j), ValidationError);
  }
}
