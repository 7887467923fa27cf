#include "mcda/cli.hpp"

#include "mcda/error.hpp"
#include "mcda/format.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mcda::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + p.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

Cutoff parse_cutoff(const json& j) {
  if (j.contains("rank")) return Cutoff::rank(j["rank"].get<int>());
  if (j.contains("value")) return Cutoff::value(j["value"].get<double>());
  throw ConfigError("cutoff needs 'rank' or 'value'");
}

std::map<std::string, double> number_map(const json& j) {
  std::map<std::string, double> out;
  for (const auto& [k, v] : j.items()) out[k] = v.get<double>();
  return out;
}

}  // namespace

std::map<std::string, JudgmentMatrix> load_judgments_json(std::string_view text) {
  const auto doc = parse(text, "judgments");
  std::map<std::string, JudgmentMatrix> out;
  const auto& levels = doc.contains("levels") ? doc["levels"] : doc;
  for (const auto& [level, rows] : levels.items()) {
    SquareMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size())
        throw ValidationError("judgment matrix '" + level + "' is not square");
      for (std::size_t j = 0; j < rows.size(); ++j) {
        const auto& cell = rows[i][j];
        if (cell.is_string()) {
          // "1/3" style fractions.
          const auto s = cell.get<std::string>();
          const auto slash = s.find('/');
          m(i, j) = slash == std::string::npos
                        ? std::stod(s)
                        : std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
        } else {
          m(i, j) = cell.get<double>();
        }
      }
    }
    try {
      out.emplace(level, validate_judgment(m));
    } catch (const ValidationError& e) {
      throw ValidationError("judgment matrix '" + level + "': " + e.what());
    }
  }
  return out;
}

std::vector<CityProfile> load_pool_json(std::string_view text) {
  const auto doc = parse(text, "city pool");
  std::vector<CityProfile> out;
  try {
    for (const auto& c : doc.at("cities")) {
      CityProfile p;
      p.name = c.at("name").get<std::string>();
      p.country = c.value("country", "");
      p.gdp = c.value("gdp", 0.0);
      p.sports_score = c.value("sports_score", 0.0);
      if (c.contains("medals")) {
        const auto& m = c["medals"];
        p.medals = MedalTally{m.value("gold", 0), m.value("silver", 0), m.value("bronze", 0)};
      }
      if (c.contains("climate")) {
        for (const auto& [key, s] : c["climate"].items()) {
          p.climate[key] = TimeSeries{p.name + ":" + key, s.at("start").get<int>(),
                                      s.at("values").get<std::vector<double>>()};
        }
      }
      if (c.contains("indicators")) {
        for (const auto& [key, v] : c["indicators"].items())
          p.indicators[IndicatorId::parse(key)] = v.get<double>();
      }
      out.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("city pool: ") + e.what());
  }
  return out;
}

std::vector<SchemePlan> load_plans_json(std::string_view text) {
  const auto doc = parse(text, "plans");
  std::vector<SchemePlan> out;
  try {
    for (const auto& p : doc.at("plans")) {
      SchemePlan plan;
      plan.id = scheme_from_name(p.at("id").get<std::string>());
      plan.description = p.value("description", "");
      for (const auto& [key, v] : p.at("impacts").items()) {
        plan.impacts.emplace(IndicatorId::parse(key), ImpactScale(v.get<int>()));
      }
      out.push_back(std::move(plan));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("plans: ") + e.what());
  }
  return out;
}

std::vector<SwotRecord> load_swot_json(std::string_view text) {
  const auto doc = parse(text, "swot");
  std::vector<SwotRecord> out;
  try {
    for (const auto& r : doc.at("records")) {
      out.push_back({r.at("city").get<std::string>(), r.value("strengths", std::vector<std::string>{}),
                     r.value("weaknesses", std::vector<std::string>{}),
                     r.value("opportunities", std::vector<std::string>{}),
                     r.value("threats", std::vector<std::string>{})});
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("swot: ") + e.what());
  }
  return out;
}

RunConfig load_config(const std::filesystem::path& path) {
  RunConfig cfg;
  cfg.source = path;
  const auto text = read_file(path);
  const auto doc = parse(text, "config");
  const auto base = path.parent_path();

  auto resolve = [&](const char* key) -> std::optional<std::filesystem::path> {
    if (!doc.contains(key)) return std::nullopt;
    auto p = base / doc[key].get<std::string>();
    if (!std::filesystem::exists(p))
      throw ConfigError(std::string(key) + " path '" + p.string() + "' does not exist");
    return p;
  };

  try {
    cfg.seed = doc.value("seed", std::uint64_t{0});
    cfg.hierarchy = resolve("hierarchy");
    cfg.judgments = resolve("judgments");
    cfg.decision_matrix = resolve("decision_matrix");
    cfg.pool = resolve("pool");
    cfg.plans = resolve("plans");
    cfg.swot = resolve("swot");
    if (doc.contains("output_dir")) cfg.output_dir = base / doc["output_dir"].get<std::string>();

    if (doc.contains("weighting")) {
      const auto& w = doc["weighting"];
      const auto mode = w.value("mode", std::string("per-category"));
      if (mode == "global") {
        cfg.mode = WeightingMode::Global;
      } else if (mode != "per-category") {
        throw ConfigError("weighting.mode must be 'per-category' or 'global'");
      }
      cfg.feature_count = w.value("features", std::size_t{10});
      if (w.contains("coverage")) cfg.feature_coverage = w["coverage"].get<double>();
      cfg.impute_missing = w.value("impute_missing", false);
    }

    if (doc.contains("features")) {
      const auto& f = doc["features"];
      FeatureSelection sel;
      for (const auto& id : f.at("ids")) sel.ids.push_back(IndicatorId::parse(id.get<std::string>()));
      sel.gamma = f.at("gamma").get<std::vector<double>>();
      if (sel.gamma.size() != sel.ids.size())
        throw ConfigError("features.ids and features.gamma differ in length");
      if (f.value("normalize", true)) {
        double mass = 0.0;
        for (double g : sel.gamma) mass += g;
        if (!(mass > 0.0)) throw ConfigError("features.gamma carries no weight");
        for (double& g : sel.gamma) g /= mass;
      }
      sel.coverage = f.value("coverage", 1.0);
      cfg.features = std::move(sel);
    }

    if (doc.contains("winter")) {
      const auto& w = doc["winter"];
      for (const auto& name : w.value("exclude", std::vector<std::string>{}))
        cfg.winter.excluded.insert(name);
      if (w.contains("requirement")) {
        const auto& r = w["requirement"];
        cfg.winter.requirement.max_feb_temp = r.value("max_feb_temp", 0.0);
        cfg.winter.requirement.ideal_low = r.value("ideal_low", -17.0);
        cfg.winter.requirement.ideal_high = r.value("ideal_high", -10.0);
        cfg.winter.requirement.min_feb_snow = r.value("min_feb_snow", 30.0);
      }
      cfg.winter.until = w.value("until", 2050);
      if (w.contains("s_base")) cfg.winter.s_base = number_map(w["s_base"]);
      if (w.contains("s_evaluate")) cfg.winter.s_evaluate = number_map(w["s_evaluate"]);
    }

    if (doc.contains("summer")) {
      const auto& s = doc["summer"];
      if (s.contains("gdp_cutoff")) cfg.summer.gdp = parse_cutoff(s["gdp_cutoff"]);
      if (s.contains("sports_cutoff")) cfg.summer.sports = parse_cutoff(s["sports_cutoff"]);
      if (s.contains("min_medal_points")) cfg.summer.min_medal_points = s["min_medal_points"].get<double>();
      if (s.contains("medal_top")) cfg.summer.medal_top = s["medal_top"].get<std::size_t>();
      if (s.contains("s_base")) cfg.summer.s_base = number_map(s["s_base"]);
      if (s.contains("s_evaluate")) cfg.summer.s_evaluate = number_map(s["s_evaluate"]);
      cfg.summer.finalists = s.value("finalists", std::size_t{4});
    }

    if (doc.contains("sensitivity")) {
      const auto& s = doc["sensitivity"];
      cfg.n_swap = s.value("n_swap", std::size_t{5});
      cfg.trials = s.value("trials", std::size_t{100});
    }

    if (doc.contains("rsm")) {
      const auto& r = doc["rsm"];
      cfg.rsm_alternative = r.value("alternative", std::string{});
      cfg.rsm_delta = r.value("delta", 0.5);
      cfg.rsm_centers = r.value("center_replicates", std::size_t{3});
      cfg.rsm_renormalize = r.value("renormalize", false);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  rehash(cfg);
  return cfg;
}

void rehash(RunConfig& cfg) {
  std::string bytes = read_file(cfg.source);
  for (const auto* p :
       {&cfg.hierarchy, &cfg.judgments, &cfg.decision_matrix, &cfg.pool, &cfg.plans, &cfg.swot}) {
    bytes += '\0';
    if (*p) bytes += read_file(**p);
  }
  cfg.hash = fnv1a_hex(bytes);
}

}  // namespace mcda::cli
