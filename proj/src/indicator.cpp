#include "mcda/indicator.hpp"

#include "mcda/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mcda {

namespace {

constexpr std::array<char, 5> kLetters{'A', 'B', 'C', 'D', 'E'};
constexpr std::array<int, 5> kSizes{6, 7, 7, 5, 5};
constexpr std::array<std::string_view, 5> kNames{"Economy", "Human", "Sociocultural", "Political",
                                                 "Environmental"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_fields(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      out.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.emplace_back(trim(cur));
  return out;
}

std::optional<double> parse_finite(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Shared tail of both loaders: impute/reject missing cells, reorder to hierarchy order.
DecisionMatrix assemble(const IndicatorHierarchy& h, std::vector<std::string> labels,
                        const std::vector<IndicatorId>& file_cols,
                        std::vector<std::vector<std::optional<double>>> cells,
                        std::vector<std::string> file_units, const LoadOptions& opts) {
  if (labels.empty()) throw ValidationError("decision matrix has no sample rows");
  const std::size_t m = file_cols.size();
  for (std::size_t j = 0; j < m; ++j) {
    double sum = 0.0;
    std::size_t present = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (cells[i][j]) {
        sum += *cells[i][j];
        ++present;
      }
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (cells[i][j]) continue;
      if (!opts.impute_missing) {
        throw ValidationError("missing value at row '" + labels[i] + "', column '" + file_cols[j].str() +
                              "'");
      }
      if (present == 0) {
        throw ValidationError("column '" + file_cols[j].str() + "' has no values to impute from");
      }
      cells[i][j] = sum / static_cast<double>(present);
    }
  }

  std::vector<IndicatorId> cols;
  std::vector<std::size_t> source;
  for (const auto& spec : h.specs) {
    auto it = std::find(file_cols.begin(), file_cols.end(), spec.id);
    if (it == file_cols.end()) continue;
    cols.push_back(spec.id);
    source.push_back(static_cast<std::size_t>(it - file_cols.begin()));
  }

  std::vector<double> values(labels.size() * cols.size());
  std::vector<Polarity> pol;
  std::vector<std::optional<IdealInterval>> ideal;
  std::vector<std::string> units;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto* spec = h.find(cols[j]);
    pol.push_back(spec->polarity);
    ideal.push_back(spec->ideal_interval);
    units.push_back(file_units.empty() ? std::string{} : file_units[source[j]]);
    for (std::size_t i = 0; i < labels.size(); ++i) values[i * cols.size() + j] = *cells[i][source[j]];
  }
  return DecisionMatrix(std::move(labels), std::move(cols), std::move(values), std::move(pol),
                        std::move(ideal), std::move(units));
}

IndicatorId resolve_column(const IndicatorHierarchy& h, std::string_view text) {
  auto id = IndicatorId::try_parse(text);
  if (!id || !h.find(*id)) throw ValidationError("unknown indicator '" + std::string(text) + "'");
  return *id;
}

}  // namespace

char category_letter(Category c) { return kLetters[static_cast<std::size_t>(c)]; }
std::string_view category_name(Category c) { return kNames[static_cast<std::size_t>(c)]; }
int category_size(Category c) { return kSizes[static_cast<std::size_t>(c)]; }

std::optional<Category> category_from_letter(char letter) {
  for (std::size_t i = 0; i < kLetters.size(); ++i) {
    if (kLetters[i] == letter) return static_cast<Category>(i);
  }
  return std::nullopt;
}

IndicatorId::IndicatorId(Category category, int index) : category_(category), index_(index) {
  if (index < 1 || index > category_size(category)) {
    throw ValidationError("indicator index " + std::to_string(index) + " out of range for category " +
                          std::string(1, category_letter(category)));
  }
}

std::optional<IndicatorId> IndicatorId::try_parse(std::string_view text) {
  text = trim(text);
  if (text.size() < 2) return std::nullopt;
  auto cat = category_from_letter(text.front());
  if (!cat) return std::nullopt;
  int index = 0;
  auto digits = text.substr(1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  if (index < 1 || index > category_size(*cat)) return std::nullopt;
  return IndicatorId(*cat, index);
}

IndicatorId IndicatorId::parse(std::string_view text) {
  auto id = try_parse(text);
  if (!id) throw ValidationError("unknown indicator '" + std::string(text) + "'");
  return *id;
}

std::string IndicatorId::str() const { return category_letter(category_) + std::to_string(index_); }

std::ostream& operator<<(std::ostream& os, const IndicatorId& id) { return os << id.str(); }

std::vector<IndicatorId> all_indicator_ids() {
  std::vector<IndicatorId> ids;
  for (auto c : kAllCategories) {
    for (int i = 1; i <= category_size(c); ++i) ids.emplace_back(c, i);
  }
  return ids;
}

const IndicatorSpec* IndicatorHierarchy::find(const IndicatorId& id) const {
  for (const auto& s : specs) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::vector<IndicatorId> IndicatorHierarchy::ids() const {
  std::vector<IndicatorId> out;
  out.reserve(specs.size());
  for (const auto& s : specs) out.push_back(s.id);
  return out;
}

std::vector<IndicatorId> IndicatorHierarchy::ids_in(Category c) const {
  std::vector<IndicatorId> out;
  for (const auto& s : specs) {
    if (s.id.category() == c) out.push_back(s.id);
  }
  return out;
}

std::vector<Category> IndicatorHierarchy::categories() const {
  std::vector<Category> out;
  for (auto c : kAllCategories) {
    if (!ids_in(c).empty()) out.push_back(c);
  }
  return out;
}

IndicatorHierarchy default_hierarchy() {
  IndicatorHierarchy h;
  for (const auto& id : all_indicator_ids()) {
    h.specs.push_back(
        {id, std::string(category_name(id.category())) + " " + id.str(), Polarity::Positive, std::nullopt});
  }
  for (auto c : kAllCategories) h.primary_weights[c] = 0.2;
  return h;
}

std::vector<Violation> validate_hierarchy(const IndicatorHierarchy& h) {
  std::vector<Violation> out;
  std::set<IndicatorId> seen;
  for (const auto& s : h.specs) {
    if (!seen.insert(s.id).second) out.push_back({"specs", "unique", "duplicate spec " + s.id.str()});
    if (s.ideal_interval && s.ideal_interval->lower > s.ideal_interval->upper) {
      out.push_back({"specs." + s.id.str() + ".ideal_interval", "ordered", "lower bound exceeds upper"});
    }
  }
  if (!h.reduced) {
    std::string missing;
    for (const auto& id : all_indicator_ids()) {
      if (!seen.count(id)) missing += (missing.empty() ? "" : ",") + id.str();
    }
    if (!missing.empty()) out.push_back({"specs", "coverage", "missing " + missing});
  }

  double sum = 0.0;
  bool negative = false;
  for (const auto& [cat, u] : h.primary_weights) {
    if (!(u >= 0.0) || !std::isfinite(u)) {
      negative = true;
      out.push_back({std::string("primary_weights.") + category_letter(cat), "nonnegative",
                     "weight must be a finite value >= 0"});
    }
    sum += u;
  }
  if (!negative && std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "weights sum to " << sum;
    out.push_back({"primary_weights", "weight-sum", os.str()});
  }
  for (auto c : h.categories()) {
    if (!h.primary_weights.count(c)) {
      out.push_back({std::string("primary_weights.") + category_letter(c), "coverage",
                     "no weight for a populated category"});
    }
  }
  return out;
}

DecisionMatrix::DecisionMatrix(std::vector<std::string> rows, std::vector<IndicatorId> cols,
                               std::vector<double> values, std::vector<Polarity> polarity,
                               std::vector<std::optional<IdealInterval>> ideal,
                               std::vector<std::string> units)
    : rows_(std::move(rows)),
      cols_(std::move(cols)),
      values_(std::move(values)),
      polarity_(std::move(polarity)),
      ideal_(std::move(ideal)),
      units_(std::move(units)) {
  if (values_.size() != rows_.size() * cols_.size()) {
    throw ValidationError("decision matrix value count does not match its shape");
  }
  if (polarity_.empty()) polarity_.assign(cols_.size(), Polarity::Positive);
  if (ideal_.empty()) ideal_.assign(cols_.size(), std::nullopt);
  if (units_.empty()) units_.assign(cols_.size(), std::string{});
  if (polarity_.size() != cols_.size() || ideal_.size() != cols_.size() || units_.size() != cols_.size()) {
    throw ValidationError("decision matrix column metadata does not match column count");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("decision matrix contains a non-finite value");
  }
}

std::vector<double> DecisionMatrix::column(std::size_t j) const {
  std::vector<double> out(n_rows());
  for (std::size_t i = 0; i < n_rows(); ++i) out[i] = (*this)(i, j);
  return out;
}

std::optional<std::size_t> DecisionMatrix::column_index(const IndicatorId& id) const {
  auto it = std::find(cols_.begin(), cols_.end(), id);
  if (it == cols_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - cols_.begin());
}

std::optional<std::size_t> DecisionMatrix::row_index(std::string_view label) const {
  auto it = std::find(rows_.begin(), rows_.end(), label);
  if (it == rows_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - rows_.begin());
}

DecisionMatrix DecisionMatrix::select_columns(std::span<const IndicatorId> ids) const {
  std::vector<std::size_t> src;
  for (const auto& id : ids) {
    auto j = column_index(id);
    if (!j) throw ValidationError("decision matrix has no column " + id.str());
    src.push_back(*j);
  }
  std::vector<double> vals(n_rows() * src.size());
  std::vector<Polarity> pol;
  std::vector<std::optional<IdealInterval>> ideal;
  std::vector<std::string> units;
  for (std::size_t k = 0; k < src.size(); ++k) {
    pol.push_back(polarity_[src[k]]);
    ideal.push_back(ideal_[src[k]]);
    units.push_back(units_[src[k]]);
    for (std::size_t i = 0; i < n_rows(); ++i) vals[i * src.size() + k] = (*this)(i, src[k]);
  }
  return DecisionMatrix(rows_, {ids.begin(), ids.end()}, std::move(vals), std::move(pol), std::move(ideal),
                        std::move(units));
}

DecisionMatrix load_decision_matrix(std::istream& in, const IndicatorHierarchy& h, const LoadOptions& opts) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_fields(line, opts.delimiter);
      break;
    }
  }
  if (header.size() < 2) throw ValidationError("decision matrix header must name at least one indicator");

  std::vector<IndicatorId> cols;
  for (std::size_t j = 1; j < header.size(); ++j) {
    auto id = resolve_column(h, header[j]);
    if (std::find(cols.begin(), cols.end(), id) != cols.end()) {
      throw ValidationError("duplicate indicator column '" + header[j] + "'");
    }
    cols.push_back(id);
  }

  std::vector<std::string> labels;
  std::vector<std::string> units;
  std::vector<std::vector<std::optional<double>>> cells;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line, opts.delimiter);
    if (fields.size() != header.size()) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields, found " +
                            std::to_string(fields.size()));
    }
    if (fields[0] == "#units") {
      units.assign(fields.begin() + 1, fields.end());
      continue;
    }
    if (!seen.insert(fields[0]).second) throw ValidationError("duplicate sample label '" + fields[0] + "'");
    std::vector<std::optional<double>> row;
    for (std::size_t j = 1; j < fields.size(); ++j) {
      if (fields[j].empty()) {
        row.emplace_back(std::nullopt);
        continue;
      }
      auto v = parse_finite(fields[j]);
      if (!v) {
        throw ValidationError("non-numeric cell '" + fields[j] + "' at row '" + fields[0] + "', column '" +
                              header[j] + "'");
      }
      row.emplace_back(*v);
    }
    labels.push_back(fields[0]);
    cells.push_back(std::move(row));
  }
  return assemble(h, std::move(labels), cols, std::move(cells), std::move(units), opts);
}

DecisionMatrix load_decision_matrix_json(std::string_view json_text, const IndicatorHierarchy& h,
                                         const LoadOptions& opts) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("decision matrix JSON: ") + e.what());
  }
  if (!doc.contains("columns") || !doc.contains("rows")) {
    throw ValidationError("decision matrix JSON needs 'columns' and 'rows'");
  }
  std::vector<IndicatorId> cols;
  for (const auto& c : doc["columns"]) {
    auto id = resolve_column(h, c.get<std::string>());
    if (std::find(cols.begin(), cols.end(), id) != cols.end()) {
      throw ValidationError("duplicate indicator column '" + id.str() + "'");
    }
    cols.push_back(id);
  }
  std::vector<std::string> units;
  if (doc.contains("units")) units = doc["units"].get<std::vector<std::string>>();
  if (!units.empty() && units.size() != cols.size()) throw ValidationError("units length mismatch");

  std::vector<std::string> labels;
  std::vector<std::vector<std::optional<double>>> cells;
  std::set<std::string> seen;
  for (const auto& r : doc["rows"]) {
    auto label = r.at("label").get<std::string>();
    if (!seen.insert(label).second) throw ValidationError("duplicate sample label '" + label + "'");
    const auto& vals = r.at("values");
    if (vals.size() != cols.size()) {
      throw ValidationError("row '" + label + "': expected " + std::to_string(cols.size()) +
                            " values, found " + std::to_string(vals.size()));
    }
    std::vector<std::optional<double>> row;
    for (std::size_t j = 0; j < vals.size(); ++j) {
      if (vals[j].is_null()) {
        row.emplace_back(std::nullopt);
      } else if (vals[j].is_number()) {
        row.emplace_back(vals[j].get<double>());
      } else {
        throw ValidationError("non-numeric cell at row '" + label + "', column '" + cols[j].str() + "'");
      }
    }
    labels.push_back(std::move(label));
    cells.push_back(std::move(row));
  }
  return assemble(h, std::move(labels), cols, std::move(cells), std::move(units), opts);
}

void write_decision_matrix(std::ostream& out, const DecisionMatrix& m, char delimiter) {
  auto field = [delimiter](const std::string& s) {
    if (s.find(delimiter) == std::string::npos && s.find('"') == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  out << "label";
  for (const auto& id : m.col_ids()) out << delimiter << id.str();
  out << '\n';
  if (std::any_of(m.units().begin(), m.units().end(), [](const auto& u) { return !u.empty(); })) {
    out << "#units";
    for (const auto& u : m.units()) out << delimiter << field(u);
    out << '\n';
  }
  std::array<char, 32> buf{};
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    out << field(m.row_labels()[i]);
    for (std::size_t j = 0; j < m.n_cols(); ++j) {
      auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), m(i, j));
      out << delimiter << std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data()));
    }
    out << '\n';
  }
}

IndicatorHierarchy load_hierarchy_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("hierarchy JSON: ") + e.what());
  }
  IndicatorHierarchy h;
  try {
    h.reduced = doc.value("reduced", false);
    for (const auto& item : doc.at("indicators")) {
      IndicatorSpec spec{IndicatorId::parse(item.at("id").get<std::string>()), item.value("name", ""),
                         Polarity::Positive, std::nullopt};
      const auto pol = item.value("polarity", std::string("+"));
      if (pol == "-" || pol == "negative") {
        spec.polarity = Polarity::Negative;
      } else if (pol != "+" && pol != "positive") {
        throw ValidationError("indicator " + spec.id.str() + ": unknown polarity '" + pol + "'");
      }
      if (item.contains("ideal_interval")) {
        const auto& iv = item["ideal_interval"];
        if (!iv.is_array() || iv.size() != 2) {
          throw ValidationError("indicator " + spec.id.str() + ": ideal_interval must be [a, b]");
        }
        spec.ideal_interval = IdealInterval{iv[0].get<double>(), iv[1].get<double>()};
      }
      if (spec.name.empty()) spec.name = std::string(category_name(spec.id.category())) + " " + spec.id.str();
      h.specs.push_back(std::move(spec));
    }
    if (doc.contains("primary_weights")) {
      for (const auto& [key, value] : doc["primary_weights"].items()) {
        auto cat = key.size() == 1 ? category_from_letter(key[0]) : std::nullopt;
        if (!cat) throw ValidationError("unknown category '" + key + "'");
        h.primary_weights[*cat] = value.get<double>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("hierarchy JSON: ") + e.what());
  }
  std::stable_sort(h.specs.begin(), h.specs.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return h;
}

}  // namespace mcda
