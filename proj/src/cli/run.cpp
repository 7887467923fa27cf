#include "mcda/cli.hpp"

#include "mcda/entropy.hpp"
#include "mcda/error.hpp"
#include "mcda/format.hpp"
#include "mcda/grey.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace mcda::cli {

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + p.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

template <typename F>
auto stage(const char* name, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + ": " + e.what());
  }
}

const std::filesystem::path& require(const std::optional<std::filesystem::path>& p, const char* key) {
  if (!p) throw ConfigError(std::string("config has no '") + key + "' entry");
  return *p;
}

std::string num(double v) { return format_number(v); }

class Session {
 public:
  Session(const RunConfig& cfg, const Command& cmd) : cfg_(cfg), cmd_(cmd) {
    preamble_ = {std::string("mcda ") + kVersion, "command=" + describe(cmd), "config_hash=" + cfg.hash,
                 "seed=" + std::to_string(effective_seed())};
  }

  std::uint64_t effective_seed() const { return cmd_.seed.value_or(cfg_.seed); }

  void emit(const std::string& name, const Table& t) { report_.files.push_back({name, t.render(preamble_)}); }
  void emit_text(const std::string& name, const std::string& body) {
    std::string out;
    for (const auto& line : preamble_) out += "# " + line + "\n";
    report_.files.push_back({name, out + body});
  }
  std::ostringstream& summary() { return summary_; }
  RunReport finish() {
    report_.summary = summary_.str();
    return std::move(report_);
  }

  const IndicatorHierarchy& hierarchy() {
    if (!hierarchy_) {
      hierarchy_ = stage("hierarchy", [&] {
        auto h = load_hierarchy_json(read_file(require(cfg_.hierarchy, "hierarchy")));
        auto violations = validate_hierarchy(h);
        if (!violations.empty()) {
          std::string msg = "invalid hierarchy:";
          for (const auto& v : violations) msg += " [" + v.field + " " + v.rule + ": " + v.detail + "]";
          throw ValidationError(msg);
        }
        return h;
      });
    }
    return *hierarchy_;
  }

  const std::map<std::string, JudgmentMatrix>& judgments() {
    if (!judgments_) {
      judgments_ = stage(
          "judgments", [&] { return load_judgments_json(read_file(require(cfg_.judgments, "judgments"))); });
    }
    return *judgments_;
  }

  const DecisionMatrix& matrix() {
    if (!matrix_) {
      const auto& h = hierarchy();
      matrix_ = stage("decision matrix", [&] {
        const auto& path = require(cfg_.decision_matrix, "decision_matrix");
        LoadOptions opts;
        opts.impute_missing = cfg_.impute_missing;
        if (path.extension() == ".json") return load_decision_matrix_json(read_file(path), h, opts);
        if (path.extension() == ".tsv") opts.delimiter = '\t';
        std::ifstream in(path);
        return load_decision_matrix(in, h, opts);
      });
    }
    return *matrix_;
  }

  const WeightingResult& weighting() {
    if (!weighting_) {
      const auto& h = hierarchy();
      const auto& j = judgments();
      const auto& x = matrix();
      weighting_ = stage("weighting", [&] { return run_weighting(h, j, x, cfg_.mode); });
    }
    return *weighting_;
  }

  FeatureSelection features(std::optional<std::size_t> k = std::nullopt) {
    if (cfg_.features && !k) return *cfg_.features;
    const auto& w = weighting();
    return stage("feature selection", [&] {
      if (!k && cfg_.feature_coverage) return select_features_by_coverage(w.total, *cfg_.feature_coverage);
      return select_features(w.total, k.value_or(cfg_.feature_count));
    });
  }

  std::vector<CityProfile> pool() {
    auto cities = stage("pool", [&] { return load_pool_json(read_file(require(cfg_.pool, "pool"))); });
    // Cities without inline indicator values borrow the decision-matrix row of the same label.
    if (cfg_.decision_matrix) {
      const auto& x = matrix();
      for (auto& c : cities) {
        if (!c.indicators.empty()) continue;
        if (auto i = x.row_index(c.name)) {
          for (std::size_t j = 0; j < x.n_cols(); ++j) c.indicators[x.col_ids()[j]] = x(*i, j);
        }
      }
    }
    return cities;
  }

  Table feature_table(const FeatureSelection& sel) {
    Table t({"position", "id", "gamma"});
    for (std::size_t j = 0; j < sel.ids.size(); ++j) {
      t.row({"xi" + std::to_string(j + 1), sel.ids[j].str(), num(sel.gamma[j])});
    }
    return t;
  }

  const RunConfig& cfg_;
  const Command& cmd_;

 private:
  static std::string describe(const Command& c) {
    std::string s = c.name;
    if (!c.season.empty()) s += " " + c.season;
    return s;
  }

  std::vector<std::string> preamble_;
  RunReport report_;
  std::ostringstream summary_;
  std::optional<IndicatorHierarchy> hierarchy_;
  std::optional<std::map<std::string, JudgmentMatrix>> judgments_;
  std::optional<DecisionMatrix> matrix_;
  std::optional<WeightingResult> weighting_;
};

Table consistency_table(const AhpWeights& a) {
  Table t({"level", "order", "lambda_max", "CI", "RI", "CR", "pass"});
  for (const auto& l : a.levels) {
    t.row({l.level, std::to_string(l.eigen.weights.size()), num(l.consistency.lambda_max),
           num(l.consistency.ci), num(l.consistency.ri), num(l.consistency.cr),
           l.consistency.pass ? "1" : "0"});
  }
  return t;
}

void cmd_weights(Session& s) {
  const auto& method = s.cmd_.method;
  if (method == "ahp") {
    const auto& h = s.hierarchy();
    const auto a = stage("ahp", [&] { return ahp_weights(h, s.judgments()); });
    Table t({"id", "category", "V", "U", "global"});
    const auto global = a.global();
    double sum = 0.0;
    for (const auto& [id, v] : a.local) {
      t.row({id.str(), std::string(1, category_letter(id.category())), num(v),
             num(a.category.at(id.category())), num(global.at(id))});
      sum += global.at(id);
    }
    s.emit("ahp_weights.csv", t);
    s.emit("consistency.csv", consistency_table(a));
    s.summary() << "AHP weights for " << a.local.size() << " indicators; sum of U*V = " << num(sum) << "\n";
  } else if (method == "entropy") {
    const auto& x = s.matrix();
    const auto r = stage("entropy", [&] { return entropy_weights(normalize_for_entropy(x)); });
    Table t({"id", "e", "H"});
    for (std::size_t j = 0; j < r.m; ++j)
      t.row({x.col_ids()[j].str(), num(r.entropies[j]), num(r.weights[j])});
    s.emit("entropy_weights.csv", t);
    s.summary() << "entropy weights for " << r.m << " indicators over " << r.n
                << " samples; sum H = " << num(std::accumulate(r.weights.begin(), r.weights.end(), 0.0))
                << "\n";
  } else if (method == "combined") {
    const auto& w = s.weighting();
    Table t({"id", "category", "V", "e", "H", "dispersion", "W", "U", "omega"});
    for (std::size_t j = 0; j < w.ids.size(); ++j) {
      const auto c = w.ids[j].category();
      t.row({w.ids[j].str(), std::string(1, category_letter(c)), num(w.ahp[j]), num(w.entropy_e[j]),
             num(w.entropy[j]), num(w.dispersion[j]), num(w.combined[j]), num(w.category_weights.at(c)),
             num(w.total.omega[j])});
    }
    s.emit("weights.csv", t);
    Table cats({"category", "name", "U"});
    for (const auto& [c, u] : w.category_weights) {
      cats.row({std::string(1, category_letter(c)), std::string(category_name(c)), num(u)});
    }
    s.emit("category_weights.csv", cats);
    s.emit("consistency.csv", consistency_table(w.ahp_detail));
    const auto sel = s.features(s.cfg_.feature_count);
    s.emit("features.csv", s.feature_table(sel));
    s.summary() << "combined weights (" << (w.mode == WeightingMode::Global ? "global" : "per-category")
                << "): sum omega = " << num(w.total.sum()) << "\n";
    s.summary() << "feature group:";
    for (std::size_t j = 0; j < sel.ids.size(); ++j)
      s.summary() << " " << sel.ids[j] << "(" << num(sel.gamma[j]) << ")";
    s.summary() << "\ncoverage = " << num(sel.coverage) << "\n";
  } else {
    throw ConfigError("unknown weighting method '" + method + "'");
  }
}

void cmd_evaluate(Session& s) {
  const auto sel = s.features(s.cmd_.features);
  const auto& x = s.matrix();
  const auto xi = stage("evaluate", [&] { return scale_features(x, sel.ids); });
  std::vector<std::pair<std::string, double>> rows;
  for (std::size_t i = 0; i < xi.size(); ++i) rows.emplace_back(x.row_labels()[i], evaluate_chi(sel, xi[i]));
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  Table t({"rank", "alternative", "chi"});
  for (std::size_t i = 0; i < rows.size(); ++i)
    t.row({std::to_string(i + 1), rows[i].first, num(rows[i].second)});
  s.emit("chi.csv", t);
  s.emit("features.csv", s.feature_table(sel));
  s.summary() << "evaluated " << rows.size() << " alternatives on " << sel.ids.size()
              << " features; best: " << rows.front().first << " (chi = " << num(rows.front().second) << ")\n";
}

void cmd_forecast(Session& s) {
  if (s.cmd_.indicator.empty()) throw ConfigError("forecast needs --indicator");
  if (!s.cmd_.until) throw ConfigError("forecast needs --until");
  const auto cities = s.pool();
  std::vector<TimeSeries> histories;
  std::vector<std::string> names;
  for (const auto& c : cities) {
    if (!s.cmd_.city.empty() && c.name != s.cmd_.city) continue;
    auto it = c.climate.find(s.cmd_.indicator);
    if (it == c.climate.end()) continue;
    histories.push_back(it->second);
    names.push_back(c.name);
  }
  if (histories.empty()) throw ValidationError("no city has a '" + s.cmd_.indicator + "' series");
  const auto fits = stage("forecast", [&] { return extend_all(histories, *s.cmd_.until); });
  Table t({"city", "period", "value", "forecast"});
  Table params({"city", "a", "b", "alpha", "mu", "shift", "mean_relative_residual",
                "posterior_variance_ratio", "ratios_admissible"});
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const auto& f = fits[i];
    for (std::size_t k = 0; k < f.series.values.size(); ++k) {
      t.row({names[i], std::to_string(f.series.start_period + static_cast<int>(k)), num(f.series.values[k]),
             k < f.history_length ? "0" : "1"});
    }
    const auto& m = f.model;
    params.row({names[i], num(m.a), num(m.b), num(m.alpha), num(m.mu), num(f.shift),
                num(m.diagnostics.mean_relative_residual), num(m.diagnostics.posterior_variance_ratio),
                m.diagnostics.ratios_admissible ? "1" : "0"});
    for (const auto& w : m.diagnostics.warnings) s.summary() << "warning: " << w << "\n";
  }
  s.emit("forecast_" + s.cmd_.indicator + ".csv", t);
  s.emit("forecast_" + s.cmd_.indicator + "_models.csv", params);
  s.summary() << "forecast " << s.cmd_.indicator << " for " << fits.size() << " series through "
              << *s.cmd_.until << "\n";
}

Table ranking_table(const std::vector<std::pair<std::string, SuitabilityScore>>& ranking) {
  Table t({"rank", "city", "s_base", "s_evaluate", "total"});
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    const auto& [name, sc] = ranking[i];
    t.row({std::to_string(i + 1), name, num(sc.s_base), num(sc.s_evaluate), num(sc.total)});
  }
  return t;
}

void cmd_screen(Session& s) {
  const auto cities = s.pool();
  const auto sel = s.features();
  const auto& h = s.hierarchy();
  if (s.cmd_.season == "winter") {
    const auto r = stage("winter screen", [&] { return winter_screen(cities, s.cfg_.winter, sel, h); });
    Table climate({"city", "temperature", "snowfall", "temperature_ok", "snowfall_ok", "pass", "ideal"});
    Table series({"city", "series", "period", "value", "forecast"});
    for (const auto& a : r.climate) {
      const auto& v = a.verdict;
      climate.row({v.city, num(v.temperature), num(v.snowfall), v.temperature_ok ? "1" : "0",
                   v.snowfall_ok ? "1" : "0", v.pass ? "1" : "0", v.ideal ? "1" : "0"});
      for (const auto* f : {&a.temperature, &a.snowfall}) {
        const auto key = f == &a.temperature ? kFebTemperature : kFebSnowfall;
        for (std::size_t k = 0; k < f->series.values.size(); ++k) {
          series.row({v.city, key, std::to_string(f->series.start_period + static_cast<int>(k)),
                      num(f->series.values[k]), k < f->history_length ? "0" : "1"});
        }
      }
    }
    s.emit("winter_climate.csv", climate);
    s.emit("winter_forecasts.csv", series);
    s.emit("winter_ranking.csv", ranking_table(r.ranking));
    s.summary() << "winter screen: " << cities.size() << " in pool, " << r.after_exclusion.size()
                << " after exclusion, " << r.ranking.size() << " pass the climate rules\n";
    for (std::size_t i = 0; i < r.ranking.size(); ++i) {
      s.summary() << "  " << i + 1 << ". " << r.ranking[i].first << "  S = " << num(r.ranking[i].second.total)
                  << " (base " << num(r.ranking[i].second.s_base) << ", evaluate "
                  << num(r.ranking[i].second.s_evaluate) << ")\n";
    }
  } else if (s.cmd_.season == "summer") {
    const auto r = stage("summer screen", [&] { return summer_screen(cities, s.cfg_.summer, sel, h); });
    Table stage1({"city"});
    for (const auto& c : r.stage1) stage1.row({c});
    s.emit("summer_stage1.csv", stage1);
    Table medals({"city", "medal_points"});
    for (const auto& [c, p] : r.medal_screen) medals.row({c, num(p)});
    s.emit("summer_medals.csv", medals);
    s.emit("summer_ranking.csv", ranking_table(r.ranking));
    std::vector<SwotRecord> records;
    if (s.cfg_.swot) {
      for (auto& rec : load_swot_json(read_file(*s.cfg_.swot))) {
        if (std::find(r.finalists.begin(), r.finalists.end(), rec.city) != r.finalists.end()) {
          records.push_back(std::move(rec));
        }
      }
    }
    s.emit_text("summer_swot.txt", swot_report(records));
    for (const auto& w : r.warnings) s.summary() << "warning: " << w << "\n";
    s.summary() << "summer screen: " << r.stage1.size() << " after stage 1, " << r.medal_screen.size()
                << " after the medal screen; finalists:";
    for (const auto& f : r.finalists) s.summary() << " " << f;
    s.summary() << "\n";
  } else {
    throw ConfigError("screen needs 'winter' or 'summer'");
  }
}

void cmd_compare(Session& s) {
  const auto plans =
      stage("plans", [&] { return load_plans_json(read_file(require(s.cfg_.plans, "plans"))); });
  const auto sel = s.features();
  const auto scores = stage("compare-schemes", [&] { return compare_schemes(plans, sel); });
  Table t({"rank", "plan", "aggregate"});
  Table breakdown({"plan", "position", "feature", "gamma", "impact", "contribution"});
  for (std::size_t i = 0; i < scores.size(); ++i) {
    t.row({std::to_string(i + 1), scheme_name(scores[i].id), num(scores[i].aggregate)});
  }
  for (const auto& plan : plans) {
    const auto& sc =
        *std::find_if(scores.begin(), scores.end(), [&](const auto& x) { return x.id == plan.id; });
    for (std::size_t j = 0; j < sel.ids.size(); ++j) {
      breakdown.row({scheme_name(plan.id), "xi" + std::to_string(j + 1), sel.ids[j].str(), num(sel.gamma[j]),
                     std::to_string(plan.impacts.at(sel.ids[j]).value()), num(sc.contributions[j])});
    }
  }
  s.emit("schemes.csv", t);
  s.emit("scheme_breakdown.csv", breakdown);
  s.summary() << "scheme comparison:";
  for (const auto& sc : scores) s.summary() << " " << scheme_name(sc.id) << "=" << num(sc.aggregate);
  s.summary() << "\n";
}

void cmd_sensitivity(Session& s) {
  const auto sel = s.features();
  const auto& w = s.weighting();
  const auto& x = s.matrix();
  PerturbationConfig pc{s.effective_seed(), s.cfg_.n_swap, s.cmd_.trials.value_or(s.cfg_.trials)};
  const auto r = stage("sensitivity", [&] { return factor_substitution(sel, w.total, x, pc); });
  Table t(
      {"trial", "alternative", "chi", "baseline", "abs_deviation", "rel_deviation", "removed", "inserted"});
  for (std::size_t k = 0; k < r.trials.size(); ++k) {
    const auto& tr = r.trials[k];
    std::string removed, inserted;
    for (std::size_t i = 0; i < tr.removed.size(); ++i) {
      removed += (i ? " " : "") + tr.removed[i].str();
      inserted += (i ? " " : "") + tr.inserted[i].str();
    }
    for (std::size_t a = 0; a < r.alternatives.size(); ++a) {
      t.row({std::to_string(k + 1), r.alternatives[a], num(tr.chi[a]), num(r.baseline_chi[a]),
             num(tr.abs_deviation[a]), num(tr.rel_deviation[a]), removed, inserted});
    }
  }
  Table summary({"trials", "n_swap", "mean_abs", "max_abs", "std_abs", "mean_rel", "max_rel"});
  summary.row({std::to_string(r.trials.size()), std::to_string(r.n_swap), num(r.summary.mean_abs),
               num(r.summary.max_abs), num(r.summary.std_abs), num(r.summary.mean_rel),
               num(r.summary.max_rel)});
  s.emit("sensitivity.csv", t);
  s.emit("sensitivity_summary.csv", summary);
  s.summary() << "sensitivity: " << r.trials.size() << " trials, " << r.n_swap
              << " swaps each; mean |dev| = " << num(r.summary.mean_abs)
              << ", max |dev| = " << num(r.summary.max_abs) << "\n";
}

std::size_t parse_factor(const std::string& text, std::size_t k) {
  std::string digits = text;
  for (const char* prefix : {"ξ", "xi", "x"}) {
    if (digits.rfind(prefix, 0) == 0) {
      digits = digits.substr(std::string(prefix).size());
      break;
    }
  }
  std::size_t pos = 0;
  std::size_t value = 0;
  try {
    value = std::stoul(digits, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != digits.size() || value < 1 || value > k) throw ConfigError("unknown factor '" + text + "'");
  return value - 1;
}

void cmd_rsm(Session& s) {
  const auto sel = s.features();
  const auto& x = s.matrix();
  if (s.cmd_.factors.size() < 2) throw ConfigError("rsm needs at least two --factors");
  if (s.cmd_.grid < 2) throw ConfigError("rsm --grid needs at least 2 points per axis");
  std::vector<std::size_t> factors;
  for (const auto& f : s.cmd_.factors) factors.push_back(parse_factor(f, sel.ids.size()));
  if (factors.size() > 3) throw ConfigError("rsm grids support at most three factors");
  std::size_t row = 0;
  if (!s.cfg_.rsm_alternative.empty()) {
    auto r = x.row_index(s.cfg_.rsm_alternative);
    if (!r)
      throw ValidationError("rsm alternative '" + s.cfg_.rsm_alternative + "' is not in the decision matrix");
    row = *r;
  }
  const auto xi = scale_features(x, sel.ids)[row];
  const double delta = s.cfg_.rsm_delta;
  const bool renorm = s.cfg_.rsm_renormalize;

  const auto design = bbd_design(factors.size(), s.cfg_.rsm_centers);
  std::vector<double> responses;
  for (const auto& p : design.points) responses.push_back(perturbed_chi(sel, xi, factors, p, delta, renorm));
  const auto surface = stage("rsm", [&] { return fit_response_surface(design, responses); });

  std::vector<std::string> level_cols;
  for (std::size_t f : factors) level_cols.push_back("xi" + std::to_string(f + 1));
  auto header = level_cols;
  header.push_back("response");
  Table dt(header);
  for (std::size_t r = 0; r < design.points.size(); ++r) {
    std::vector<std::string> cells;
    for (double v : design.points[r]) cells.push_back(num(v));
    cells.push_back(num(responses[r]));
    dt.row(cells);
  }
  s.emit("rsm_design.csv", dt);

  Table coef({"term", "coefficient"});
  {
    const std::size_t k = factors.size();
    std::size_t c = 0;
    coef.row({"1", num(surface.coefficients[c++])});
    for (std::size_t i = 0; i < k; ++i) coef.row({level_cols[i], num(surface.coefficients[c++])});
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j)
        coef.row({level_cols[i] + "*" + level_cols[j], num(surface.coefficients[c++])});
    }
    for (std::size_t i = 0; i < k; ++i) coef.row({level_cols[i] + "^2", num(surface.coefficients[c++])});
    coef.row({"r_squared", num(surface.r_squared)});
    coef.row({"residual_norm", num(surface.residual_norm)});
  }
  s.emit("rsm_surface.csv", coef);

  auto gheader = level_cols;
  for (std::size_t f : factors) gheader.push_back("gamma" + std::to_string(f + 1));
  gheader.push_back("fitted");
  gheader.push_back("chi");
  Table grid(gheader);
  const std::size_t n = s.cmd_.grid;
  std::size_t total = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) total *= n;
  std::vector<double> level(factors.size());
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (std::size_t i = factors.size(); i-- > 0;) {
      level[i] = -1.0 + 2.0 * static_cast<double>(rest % n) / static_cast<double>(n - 1);
      rest /= n;
    }
    std::vector<std::string> cells;
    for (double v : level) cells.push_back(num(v));
    for (std::size_t i = 0; i < factors.size(); ++i)
      cells.push_back(num(sel.gamma[factors[i]] * (1.0 + delta * level[i])));
    cells.push_back(num(surface.evaluate(level)));
    cells.push_back(num(perturbed_chi(sel, xi, factors, level, delta, renorm)));
    grid.row(cells);
  }
  s.emit("rsm_grid.csv", grid);

  std::vector<std::pair<double, double>> box(factors.size(), {-1.0, 1.0});
  const auto ext = surface_extrema(surface, box);
  Table et({"scope", "absolute_range", "relative_range"});
  for (std::size_t i = 0; i < factors.size(); ++i) {
    et.row({level_cols[i], num(ext.per_factor[i].absolute), num(ext.per_factor[i].relative)});
  }
  et.row({"joint", num(ext.joint.absolute), num(ext.joint.relative)});
  s.emit("rsm_extrema.csv", et);
  s.summary() << "response surface over " << factors.size() << " factors for '" << x.row_labels()[row]
              << "': R^2 = " << num(surface.r_squared)
              << ", joint relative range = " << num(ext.joint.relative) << "\n";
}

}  // namespace

RunReport run(const RunConfig& config, const Command& command) {
  Session s(config, command);
  if (command.name == "weights") {
    cmd_weights(s);
  } else if (command.name == "evaluate") {
    cmd_evaluate(s);
  } else if (command.name == "forecast") {
    cmd_forecast(s);
  } else if (command.name == "screen") {
    cmd_screen(s);
  } else if (command.name == "compare-schemes") {
    cmd_compare(s);
  } else if (command.name == "sensitivity") {
    cmd_sensitivity(s);
  } else if (command.name == "rsm") {
    cmd_rsm(s);
  } else {
    throw ConfigError("unknown subcommand '" + command.name + "'");
  }
  return s.finish();
}

void write_outputs(const RunReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  for (const auto& f : report.files) {
    std::ofstream out(dir / f.name, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + (dir / f.name).string() + "'");
    out << f.content;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Multi-criteria host-city evaluation toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  app.add_option("-c,--config", config_path, "Run configuration (JSON)")->required();
  app.add_option("-o,--out", out_dir, "Output directory");

  Command cmd;
  std::string pool_override, plans_override;

  auto* weights = app.add_subcommand("weights", "AHP, entropy or combined indicator weights");
  weights->add_option("--method", cmd.method, "ahp | entropy | combined")
      ->check(CLI::IsMember({"ahp", "entropy", "combined"}));

  auto* evaluate = app.add_subcommand("evaluate", "Evaluation-function score per alternative");
  evaluate->add_option("--features", cmd.features, "Number of feature indicators");

  auto* forecast_cmd = app.add_subcommand("forecast", "GM(1,1) forecasts of a pool series");
  forecast_cmd->add_option("--indicator", cmd.indicator, "Series key, e.g. feb_temp")->required();
  forecast_cmd->add_option("--until", cmd.until, "Last period to forecast")->required();
  forecast_cmd->add_option("--city", cmd.city, "Restrict to one city");
  forecast_cmd->add_option("--pool", pool_override, "City pool file");

  auto* screen = app.add_subcommand("screen", "Host-city screening pipeline");
  screen->add_option("season", cmd.season, "winter | summer")
      ->required()
      ->check(CLI::IsMember({"winter", "summer"}));
  screen->add_option("--pool", pool_override, "City pool file");

  auto* compare = app.add_subcommand("compare-schemes", "Aggregate impact of hosting schemes");
  compare->add_option("--plans", plans_override, "Scheme plan file");

  auto* sens = app.add_subcommand("sensitivity", "Random feature-substitution analysis");
  sens->add_option("--seed", cmd.seed, "RNG seed");
  sens->add_option("--trials", cmd.trials, "Number of trials");

  auto* rsm = app.add_subcommand("rsm", "Box-Behnken response surface over feature weights");
  rsm->add_option("--factors", cmd.factors, "Feature positions, e.g. xi1,xi10")->delimiter(',')->required();
  rsm->add_option("--grid", cmd.grid, "Grid points per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  cmd.name = app.get_subcommands().front()->get_name();

  try {
    auto cfg = load_config(config_path);
    if (!pool_override.empty()) {
      if (!std::filesystem::exists(pool_override))
        throw ConfigError("pool '" + pool_override + "' does not exist");
      cfg.pool = pool_override;
    }
    if (!plans_override.empty()) {
      if (!std::filesystem::exists(plans_override))
        throw ConfigError("plans '" + plans_override + "' does not exist");
      cfg.plans = plans_override;
    }
    rehash(cfg);
    std::filesystem::path dir = "mcda_out";
    if (!out_dir.empty()) {
      dir = out_dir;
    } else if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
      dir = env;
    } else if (cfg.output_dir) {
      dir = *cfg.output_dir;
    }
    const auto report = run(cfg, cmd);
    write_outputs(report, dir);
    std::cout << report.summary;
    std::cout << "wrote " << report.files.size() << " file(s) to " << dir.string() << "\n";
    return kOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Config: return kConfigError;
      case ErrorKind::Validation: return kValidationError;
      case ErrorKind::Numeric: return kNumericError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace mcda::cli
