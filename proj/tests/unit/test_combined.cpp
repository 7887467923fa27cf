#include "mcda/combined.hpp"
#include "mcda/error.hpp"

#include "../support/generators.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace mcda;
using mcda::testing::Gen;

namespace {

// Unnormalized back-products from the least important indicator, then scaled to sum 1.
std::vector<double> reference_order_weights(const std::vector<double>& r) {
  const std::size_t m = r.size() + 1;
  std::vector<double> w(m, 1.0);
  for (std::size_t k = m - 1; k-- > 0;) w[k] = w[k + 1] * r[k];
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= s;
  return w;
}

ImportanceRatios ratios(std::vector<double> r) {
  ImportanceRatios out;
  out.ordering.resize(r.size() + 1);
  std::iota(out.ordering.begin(), out.ordering.end(), 0);
  out.ratios = std::move(r);
  return out;
}

NormalizedMatrix column_matrix(std::size_t n, std::size_t m, std::vector<double> v) {
  return NormalizedMatrix{n, m, std::move(v), NormalizationMethod::VectorNorm};
}

TotalWeights omega_of(std::vector<std::pair<const char*, double>> items) {
  TotalWeights t;
  for (auto& [id, w] : items) {
    t.ids.push_back(IndicatorId::parse(id));
    t.omega.push_back(w);
  }
  return t;
}

}  // namespace

TEST_CASE("dispersion") {
  SUBCASE("constant column with unit weights is |c|") {
    const auto z = column_matrix(3, 1, {0.7, 0.7, 0.7});
    const std::vector<double> one{1.0};
    CHECK(dispersion(z, one, one).values[0] == doctest::Approx(0.7));
  }
  SUBCASE("three samples, direct arithmetic") {
    // column (1, 2, 3), H = 0.5, V = 0.25: factor 6, reference point 12.
    const auto z = column_matrix(3, 1, {1, 2, 3});
    const std::vector<double> h{0.5}, v{0.25};
    const double expect = std::sqrt((11.0 * 11.0 + 10.0 * 10.0 + 9.0 * 9.0) / 3.0);
    CHECK(dispersion(z, h, v).values[0] == doctest::Approx(expect).epsilon(1e-14));
  }
  SUBCASE("centered data gives the RMS") {
    const auto z = column_matrix(4, 1, {-1, 1, -3, 3});
    const std::vector<double> w{0.3};
    CHECK(dispersion(z, w, w).values[0] == doctest::Approx(std::sqrt(5.0)));
  }
  SUBCASE("nonpositive weights are rejected") {
    const auto z = column_matrix(2, 1, {1, 2});
    CHECK_THROWS_AS(dispersion(z, std::vector<double>{0.0}, std::vector<double>{1.0}), NumericError);
    CHECK_THROWS_AS(dispersion(z, std::vector<double>{1.0, 1.0}, std::vector<double>{1.0}), ValidationError);
  }
}

TEST_CASE("descending order is stable") {
  const std::vector<double> v{0.2, 0.5, 0.2, 0.9};
  CHECK(descending_order(v) == std::vector<std::size_t>{3, 1, 0, 2});
}

TEST_CASE("importance ratios") {
  auto r_of = [](std::vector<double> s) {
    DispersionVector d{s};
    std::vector<std::size_t> ord(s.size());
    std::iota(ord.begin(), ord.end(), 0);
    return importance_ratios(d, ord);
  };
  CHECK(r_of({4, 2, 1}).ratios == std::vector<double>{2, 2});
  CHECK(r_of({1, 1, 1}).ratios == std::vector<double>{1, 1});
  const auto r = r_of({3, 2, 1.6});
  CHECK(r.ratios[0] == doctest::Approx(1.5));
  CHECK(r.ratios[1] == doctest::Approx(1.25));
  CHECK(r_of({10, 1}).ratios[0] == 2.0);
  CHECK(r_of({1, 2}).ratios[0] == 1.0);  // out-of-order pair
  const auto z = r_of({1, 0});
  CHECK(z.ratios[0] == 2.0);
  CHECK(z.warnings.size() == 1);
  CHECK(r_of({0, 0}).ratios[0] == 1.0);
  CHECK_THROWS_AS(r_of({1, -1}), ValidationError);
}

TEST_CASE("ordered weights, hand examples") {
  auto w = order_weights(ratios({1, 1, 1}));
  for (double x : w.ordered) CHECK(x == doctest::Approx(0.25));
  w = order_weights(ratios({2}));
  CHECK(w.ordered[0] == doctest::Approx(2.0 / 3));
  CHECK(w.ordered[1] == doctest::Approx(1.0 / 3));
  // r = (1.5, 1.25): W_3 = 1/(1 + 1.25 + 1.875) = 8/33.
  w = order_weights(ratios({1.5, 1.25}));
  CHECK(w.ordered[0] == doctest::Approx(15.0 / 33).epsilon(1e-14));
  CHECK(w.ordered[1] == doctest::Approx(10.0 / 33).epsilon(1e-14));
  CHECK(w.ordered[2] == doctest::Approx(8.0 / 33).epsilon(1e-14));
  CHECK(order_weights(ratios({})).ordered == std::vector<double>{1.0});

  CHECK_THROWS_AS(order_weights(ratios({2.5})), ValidationError);
  CHECK_THROWS_AS(order_weights(ratios({0.5})), ValidationError);
  CHECK_THROWS_AS(order_weights(ratios(std::vector<double>(64, 1.0))), ValidationError);
}

TEST_CASE("ordered weights map back to original columns") {
  ImportanceRatios r;
  r.ordering = {2, 0, 1};
  r.ratios = {2.0, 1.0};
  const auto w = order_weights(r);
  CHECK(w.weights[2] == doctest::Approx(0.5));
  CHECK(w.weights[0] == doctest::Approx(0.25));
  CHECK(w.weights[1] == doctest::Approx(0.25));
}

TEST_CASE("property: ordered weights sum to one and match the oracle") {
  Gen g(31);
  for (int t = 0; t < 500; ++t) {
    const std::size_t m = g.index(1, 64);
    std::vector<double> r(m - 1);
    for (auto& x : r) x = g.uniform(1.0, 2.0);
    const auto w = order_weights(ratios(r));
    const auto ref = reference_order_weights(r);
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      CHECK(w.ordered[k] == doctest::Approx(ref[k]).epsilon(1e-12));
      if (k > 0) CHECK(w.ordered[k - 1] >= w.ordered[k]);
      if (k > 0) CHECK(w.ordered[k - 1] / w.ordered[k] == doctest::Approx(r[k - 1]).epsilon(1e-12));
      s += w.ordered[k];
    }
    CHECK(std::abs(s - 1.0) < 1e-9);
  }
}

TEST_CASE("total weights") {
  IndicatorHierarchy h;
  h.reduced = true;
  for (const char* id : {"A1", "A2", "B1"})
    h.specs.push_back({IndicatorId::parse(id), id, Polarity::Positive, {}});
  std::map<Category, CombinedWeights> per;
  per[Category::Economy] =
      CombinedWeights{{0, 1}, {0.6, 0.4}, {0.6, 0.4}, {IndicatorId::parse("A1"), IndicatorId::parse("A2")}};
  per[Category::Human] = CombinedWeights{{0}, {1.0}, {1.0}, {IndicatorId::parse("B1")}};
  const auto t = total_weights(h, {{Category::Economy, 0.5}, {Category::Human, 0.5}}, per);
  CHECK(t.at(IndicatorId::parse("A1")) == doctest::Approx(0.3));
  CHECK(t.at(IndicatorId::parse("B1")) == doctest::Approx(0.5));
  CHECK(t.sum() == doctest::Approx(1.0));
  CHECK_THROWS_AS(t.at(IndicatorId::parse("E1")), ValidationError);
  per.erase(Category::Human);
  CHECK_THROWS_AS(total_weights(h, {{Category::Economy, 0.5}, {Category::Human, 0.5}}, per), ValidationError);
}

TEST_CASE("feature selection") {
  const auto t = omega_of({{"A1", 0.1}, {"A2", 0.4}, {"B1", 0.2}, {"B2", 0.2}, {"C1", 0.1}});
  auto sel = select_features(t, 3);
  REQUIRE(sel.ids.size() == 3);
  CHECK(sel.ids[0].str() == "A2");
  CHECK(sel.ids[1].str() == "B1");  // tie with B2 resolved by id
  CHECK(sel.ids[2].str() == "B2");
  CHECK(sel.gamma[0] == doctest::Approx(0.5));
  CHECK(sel.coverage == doctest::Approx(0.8));

  sel = select_features(t, 5);
  CHECK(sel.coverage == doctest::Approx(1.0));
  CHECK(sel.gamma[4] == doctest::Approx(0.1));
  sel = select_features(t, 1);
  CHECK(sel.gamma == std::vector<double>{1.0});

  CHECK_THROWS_AS(select_features(t, 0), ValidationError);
  CHECK_THROWS_AS(select_features(t, 6), ValidationError);

  CHECK(select_features_by_coverage(t, 0.6).ids.size() == 2);
  CHECK(select_features_by_coverage(t, 0.61).ids.size() == 3);
  CHECK(select_features_by_coverage(t, 1.0).ids.size() == 5);
}

TEST_CASE("property: feature selection") {
  Gen g(32);
  for (int t = 0; t < 200; ++t) {
    const auto om = mcda::testing::random_omega(g);
    const std::size_t k = g.index(1, 30);
    const auto sel = select_features(om, k);
    CHECK(std::abs(std::accumulate(sel.gamma.begin(), sel.gamma.end(), 0.0) - 1.0) < 1e-12);
    CHECK(std::is_sorted(sel.gamma.rbegin(), sel.gamma.rend()));
    // every unselected Ω is at most the smallest selected Ω
    const double smallest = om.at(sel.ids.back());
    for (std::size_t j = 0; j < om.ids.size(); ++j) {
      if (std::find(sel.ids.begin(), sel.ids.end(), om.ids[j]) == sel.ids.end())
        CHECK(om.omega[j] <= smallest);
    }
    if (k < 30) CHECK(select_features(om, k + 1).coverage >= sel.coverage);
  }
}

TEST_CASE("evaluation function") {
  const auto t = omega_of({{"A1", 0.75}, {"A2", 0.25}});
  const auto sel = select_features(t, 2);
  CHECK(evaluate_chi(sel, std::vector<double>{1.0, 1.0}) == doctest::Approx(1.0));
  CHECK(evaluate_chi(sel, std::vector<double>{0.0, 0.0}) == 0.0);
  CHECK(evaluate_chi(sel, std::vector<double>{0.5, 1.0}) == doctest::Approx(0.625));
  CHECK_THROWS_AS(evaluate_chi(sel, std::vector<double>{0.5}), ValidationError);
  CHECK_THROWS_AS(evaluate_chi(sel, std::vector<double>{1.5, 0.0}), ValidationError);
}

TEST_CASE("property: χ is linear and bounded") {
  Gen g(33);
  for (int t = 0; t < 200; ++t) {
    const auto om = mcda::testing::random_omega(g);
    const auto sel = select_features(om, g.index(1, 12));
    const auto a = g.positive(sel.ids.size(), 0.0, 1.0);
    const auto b = g.positive(sel.ids.size(), 0.0, 1.0);
    const double lam = g.uniform(0.0, 1.0);
    std::vector<double> mix(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) mix[j] = lam * a[j] + (1 - lam) * b[j];
    const double ca = evaluate_chi(sel, a), cb = evaluate_chi(sel, b);
    CHECK(evaluate_chi(sel, mix) == doctest::Approx(lam * ca + (1 - lam) * cb).epsilon(1e-12));
    CHECK(ca >= 0.0);
    CHECK(ca <= 1.0 + 1e-12);
  }
}

TEST_CASE("feature scaling") {
  DecisionMatrix m(
      {"x", "y", "z"}, {IndicatorId::parse("A1"), IndicatorId::parse("A2"), IndicatorId::parse("A3")},
      {1, 10, 4, 2, 20, 4, 3, 30, 4}, {Polarity::Positive, Polarity::Negative, Polarity::Positive});
  const std::vector<IndicatorId> ids{IndicatorId::parse("A2"), IndicatorId::parse("A1"),
                                     IndicatorId::parse("A3")};
  const auto xi = scale_features(m, ids);
  CHECK(xi[0] == std::vector<double>{1.0, 0.0, 1.0});
  CHECK(xi[1] == std::vector<double>{0.5, 0.5, 1.0});
  CHECK(xi[2] == std::vector<double>{0.0, 1.0, 1.0});
}

TEST_CASE("weighting pipeline") {
  Gen g(34);
  const auto h = default_hierarchy();
  const auto x = g.matrix(25, 30);
  std::map<std::string, JudgmentMatrix> j;
  for (auto c : kAllCategories) {
    j.emplace(std::string(1, category_letter(c)), validate_judgment(g.consistent(category_size(c))));
  }
  for (auto mode : {WeightingMode::PerCategory, WeightingMode::Global}) {
    const auto r = run_weighting(h, j, x, mode);
    REQUIRE(r.ids.size() == 30);
    CHECK(std::abs(r.total.sum() - 1.0) < 1e-9);
    CHECK(std::abs(std::accumulate(r.entropy.begin(), r.entropy.end(), 0.0) -
                   (mode == WeightingMode::Global ? 1.0 : 5.0)) < 1e-9);
    double u = 0.0;
    for (const auto& [c, w] : r.category_weights) u += w;
    CHECK(std::abs(u - 1.0) < 1e-9);
    for (std::size_t k = 0; k < r.ids.size(); ++k) {
      const double expect = mode == WeightingMode::Global
                                ? r.combined[k]
                                : r.category_weights.at(r.ids[k].category()) * r.combined[k];
      CHECK(r.total.omega[k] == doctest::Approx(expect).epsilon(1e-14));
    }
  }
}

TEST_CASE("weighting pipeline rejects a constant column inside a category") {
  Gen g(35);
  const auto h = default_hierarchy();
  auto x = g.matrix(10, 30);
  for (std::size_t i = 0; i < x.n_rows(); ++i) x(i, 2) = 4.0;
  std::map<std::string, JudgmentMatrix> j;
  for (auto c : kAllCategories) {
    j.emplace(std::string(1, category_letter(c)), validate_judgment(g.consistent(category_size(c))));
  }
  CHECK_THROWS_AS(run_weighting(h, j, x), NumericError);
}
