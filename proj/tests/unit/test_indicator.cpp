#include "mcda/error.hpp"
#include "mcda/indicator.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace mcda;

TEST_CASE("indicator ids") {
  CHECK(IndicatorId::parse("A5").str() == "A5");
  CHECK(IndicatorId::parse("E5").category() == Category::Environmental);
  CHECK_THROWS_AS(IndicatorId::parse("A7"), ValidationError);
  CHECK_THROWS_AS(IndicatorId::parse("F1"), ValidationError);
  CHECK_THROWS_AS(IndicatorId::parse("A0"), ValidationError);
  CHECK_FALSE(IndicatorId::try_parse("B").has_value());
  CHECK(IndicatorId::parse("A6") < IndicatorId::parse("B1"));

  const auto all = all_indicator_ids();
  REQUIRE(all.size() == 30);
  CHECK(all.front().str() == "A1");
  CHECK(all.back().str() == "E5");
  CHECK(std::is_sorted(all.begin(), all.end()));
  int total = 0;
  for (auto c : kAllCategories) total += category_size(c);
  CHECK(total == 30);
}

TEST_CASE("hierarchy validation") {
  auto h = default_hierarchy();
  CHECK(validate_hierarchy(h).empty());

  SUBCASE("duplicate ids") {
    h.specs.push_back(h.specs.front());
    auto v = validate_hierarchy(h);
    REQUIRE_FALSE(v.empty());
    CHECK(v.front().rule == "unique");
  }
  SUBCASE("missing indicator in a full hierarchy") {
    h.specs.pop_back();
    auto v = validate_hierarchy(h);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == "coverage");
    CHECK(v[0].detail.find("E5") != std::string::npos);
  }
  SUBCASE("reduced hierarchy may omit indicators") {
    h.specs.pop_back();
    h.reduced = true;
    CHECK(validate_hierarchy(h).empty());
  }
  SUBCASE("primary weights must sum to one") {
    h.primary_weights[Category::Economy] = 0.3;
    auto v = validate_hierarchy(h);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == "weight-sum");
  }
  SUBCASE("negative primary weight") {
    h.primary_weights[Category::Economy] = -0.2;
    h.primary_weights[Category::Human] = 0.6;
    auto v = validate_hierarchy(h);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].rule == "nonnegative");
  }
  SUBCASE("inverted ideal interval") {
    h.specs[3].ideal_interval = IdealInterval{0.9, 0.1};
    auto v = validate_hierarchy(h);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == "ordered");
  }
}

TEST_CASE("hierarchy JSON") {
  const auto h = load_hierarchy_json(R"({
    "reduced": true,
    "indicators": [
      {"id": "B2", "name": "Audience", "polarity": "+"},
      {"id": "A3", "name": "Cost", "polarity": "negative"},
      {"id": "A1", "ideal_interval": [0.2, 0.4]}
    ],
    "primary_weights": {"A": 0.7, "B": 0.3}
  })");
  REQUIRE(h.specs.size() == 3);
  CHECK(h.specs[0].id.str() == "A1");
  CHECK(h.specs[0].ideal_interval->upper == 0.4);
  CHECK(h.specs[1].polarity == Polarity::Negative);
  CHECK(h.categories().size() == 2);
  CHECK(validate_hierarchy(h).empty());

  CHECK_THROWS_AS(load_hierarchy_json("{"), ValidationError);
  CHECK_THROWS_AS(load_hierarchy_json(R"({"indicators":[{"id":"Q1"}]})"), ValidationError);
  CHECK_THROWS_AS(load_hierarchy_json(R"({"indicators":[{"id":"A1","polarity":"?"}]})"), ValidationError);
}

namespace {

IndicatorHierarchy small() {
  auto h = load_hierarchy_json(R"({"reduced": true, "indicators": [
    {"id": "A1"}, {"id": "A2", "polarity": "-"}, {"id": "B1"}], "primary_weights": {"A": 0.5, "B": 0.5}})");
  return h;
}

}  // namespace

TEST_CASE("decision matrix CSV") {
  const auto h = small();
  std::istringstream in(
      "label,B1,A1,A2\n"
      "#units,score,%,USD\n"
      "\"Paris, FR\",1,2,3\n"
      "Oslo,4,5,6\n");
  const auto m = load_decision_matrix(in, h);
  REQUIRE(m.n_rows() == 2);
  REQUIRE(m.n_cols() == 3);
  CHECK(m.col_ids()[0].str() == "A1");  // reordered to hierarchy order
  CHECK(m.row_labels()[0] == "Paris, FR");
  CHECK(m(0, 0) == 2.0);
  CHECK(m(1, 2) == 4.0);
  CHECK(m.units()[2] == "score");
  CHECK(m.polarity()[1] == Polarity::Negative);

  std::ostringstream out;
  write_decision_matrix(out, m);
  std::istringstream back(out.str());
  const auto m2 = load_decision_matrix(back, h);
  CHECK(std::equal(m.values().begin(), m.values().end(), m2.values().begin(), m2.values().end()));
  CHECK(m2.row_labels() == m.row_labels());
}

TEST_CASE("decision matrix CSV errors") {
  const auto h = small();
  auto load = [&](const std::string& text, LoadOptions o = {}) {
    std::istringstream in(text);
    return load_decision_matrix(in, h, o);
  };
  auto message = [&](const std::string& text) {
    try {
      load(text);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("label,A1,Z9\nx,1,2\n").find("unknown indicator 'Z9'") != std::string::npos);
  CHECK(message("label,A1,A1\nx,1,2\n").find("duplicate indicator column") != std::string::npos);
  CHECK(message("label,A1\nx,1\nx,2\n").find("duplicate sample label") != std::string::npos);
  const auto bad = message("label,A1,B1\nx,1,abc\n");
  CHECK(bad.find("row 'x'") != std::string::npos);
  CHECK(bad.find("B1") != std::string::npos);
  CHECK(message("label,A1,B1\nx,1\n").find("line 2") != std::string::npos);
  CHECK(message("label,A1,B1\nx,1,\ny,2,3\n").find("missing value") != std::string::npos);
  CHECK(message("label,A1\n").find("no sample rows") != std::string::npos);

  LoadOptions impute;
  impute.impute_missing = true;
  const auto m = load("label,A1,B1\nx,1,\ny,2,3\nz,3,5\n", impute);
  CHECK(m(0, 1) == doctest::Approx(4.0));
}

TEST_CASE("decision matrix JSON") {
  const auto h = small();
  const auto m = load_decision_matrix_json(
      R"({"columns": ["A2", "A1"], "rows": [{"label": "p", "values": [1, 2]}, {"label": "q", "values": [null, 4]}]})",
      h, LoadOptions{',', true});
  REQUIRE(m.n_cols() == 2);
  CHECK(m.col_ids()[0].str() == "A1");
  CHECK(m(1, 1) == 1.0);  // imputed mean of the single present value
  CHECK_THROWS_AS(
      load_decision_matrix_json(R"({"columns": ["A1"], "rows": [{"label": "p", "values": [1, 2]}]})", h),
      ValidationError);
  CHECK_THROWS_AS(load_decision_matrix_json(R"({"rows": []})", h), ValidationError);
}

TEST_CASE("decision matrix accessors") {
  const auto h = small();
  std::istringstream in("label,A1,A2,B1\nx,1,2,3\ny,4,5,6\n");
  const auto m = load_decision_matrix(in, h);
  CHECK(m.column(1) == std::vector<double>{2, 5});
  CHECK(*m.row_index("y") == 1);
  CHECK_FALSE(m.row_index("z").has_value());
  const std::vector<IndicatorId> pick{IndicatorId::parse("B1"), IndicatorId::parse("A1")};
  const auto s = m.select_columns(pick);
  CHECK(s.col_ids() == pick);
  CHECK(s(1, 0) == 6.0);
  CHECK_THROWS_AS(m.select_columns(std::vector<IndicatorId>{IndicatorId::parse("E1")}), ValidationError);
  CHECK_THROWS_AS(DecisionMatrix({"a"}, {IndicatorId::parse("A1")}, {std::nan("")}), ValidationError);
}
