#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mcda {

/// Primary indicator categories, in hierarchy order.
enum class Category { Economy = 0, Human, Sociocultural, Political, Environmental };

inline constexpr std::array<Category, 5> kAllCategories{Category::Economy, Category::Human,
                                                        Category::Sociocultural, Category::Political,
                                                        Category::Environmental};

char category_letter(Category c);
std::string_view category_name(Category c);
std::optional<Category> category_from_letter(char letter);

/// Number of secondary indicators defined for a category (A:6, B:7, C:7, D:5, E:5).
int category_size(Category c);

/// Secondary indicator identifier such as "A5" or "E4".
class IndicatorId {
 public:
  IndicatorId(Category category, int index);

  /// Parses "A5" style ids. Throws ValidationError on unknown ids.
  static IndicatorId parse(std::string_view text);
  static std::optional<IndicatorId> try_parse(std::string_view text);

  Category category() const noexcept { return category_; }
  int index() const noexcept { return index_; }
  std::string str() const;

  friend auto operator<=>(const IndicatorId&, const IndicatorId&) = default;

 private:
  Category category_;
  int index_;
};

std::ostream& operator<<(std::ostream& os, const IndicatorId& id);

/// All 30 ids in canonical order A1..A6, B1..B7, C1..C7, D1..D5, E1..E5.
std::vector<IndicatorId> all_indicator_ids();

enum class Polarity { Positive, Negative };

struct IdealInterval {
  double lower;
  double upper;
};

struct IndicatorSpec {
  IndicatorId id;
  std::string name;
  Polarity polarity = Polarity::Positive;
  std::optional<IdealInterval> ideal_interval;
};

/// Two-level indicator tree plus the primary-category weights U_i.
struct IndicatorHierarchy {
  std::vector<IndicatorSpec> specs;
  std::map<Category, double> primary_weights;
  /// A reduced hierarchy may cover any subset of the 30 indicators.
  bool reduced = false;

  const IndicatorSpec* find(const IndicatorId& id) const;
  std::vector<IndicatorId> ids() const;
  std::vector<IndicatorId> ids_in(Category c) const;
  /// Categories that own at least one spec, in canonical order.
  std::vector<Category> categories() const;
};

/// Full 30-indicator hierarchy with positive polarity, generic names and uniform U.
IndicatorHierarchy default_hierarchy();

struct Violation {
  std::string field;
  std::string rule;
  std::string detail;
};

/// Returns an empty list iff every hierarchy invariant holds.
std::vector<Violation> validate_hierarchy(const IndicatorHierarchy& h);

/// Samples x indicators, row-major, columns in hierarchy order.
class DecisionMatrix {
 public:
  DecisionMatrix() = default;
  DecisionMatrix(std::vector<std::string> rows, std::vector<IndicatorId> cols, std::vector<double> values,
                 std::vector<Polarity> polarity = {}, std::vector<std::optional<IdealInterval>> ideal = {},
                 std::vector<std::string> units = {});

  std::size_t n_rows() const noexcept { return rows_.size(); }
  std::size_t n_cols() const noexcept { return cols_.size(); }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_.size() + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_.size() + j]; }

  const std::vector<std::string>& row_labels() const noexcept { return rows_; }
  const std::vector<IndicatorId>& col_ids() const noexcept { return cols_; }
  const std::vector<Polarity>& polarity() const noexcept { return polarity_; }
  const std::vector<std::optional<IdealInterval>>& ideal_intervals() const noexcept { return ideal_; }
  const std::vector<std::string>& units() const noexcept { return units_; }
  std::span<const double> values() const noexcept { return values_; }

  std::vector<double> column(std::size_t j) const;
  std::optional<std::size_t> column_index(const IndicatorId& id) const;
  std::optional<std::size_t> row_index(std::string_view label) const;

  /// Restricts to the given columns, in the given order.
  DecisionMatrix select_columns(std::span<const IndicatorId> ids) const;

 private:
  std::vector<std::string> rows_;
  std::vector<IndicatorId> cols_;
  std::vector<double> values_;
  std::vector<Polarity> polarity_;
  std::vector<std::optional<IdealInterval>> ideal_;
  std::vector<std::string> units_;
};

struct LoadOptions {
  char delimiter = ',';
  /// Replace empty cells with the column mean instead of rejecting them.
  bool impute_missing = false;
};

/// Reads a delimiter-separated table: header "label,<id>,<id>,...", one sample per row.
DecisionMatrix load_decision_matrix(std::istream& in, const IndicatorHierarchy& h,
                                    const LoadOptions& opts = {});

/// JSON form: {"columns": ["A1", ...], "units": [...]?, "rows": [{"label": "x", "values": [...]}]}
DecisionMatrix load_decision_matrix_json(std::string_view json_text, const IndicatorHierarchy& h,
                                         const LoadOptions& opts = {});

/// Writes the delimiter-separated form with round-trip precision.
void write_decision_matrix(std::ostream& out, const DecisionMatrix& m, char delimiter = ',');

IndicatorHierarchy load_hierarchy_json(std::string_view json_text);

}  // namespace mcda
