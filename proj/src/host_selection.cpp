#include "mcda/host_selection.hpp"

#include "mcda/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mcda {

double medal_points(const MedalTally& t) {
  if (t.gold < 0 || t.silver < 0 || t.bronze < 0) throw ValidationError("medal counts must be nonnegative");
  return 5.0 * t.gold + 1.0 * t.silver + 0.5 * t.bronze;
}

namespace {

// Dense rank, 1 = largest value.
std::vector<int> dense_rank_desc(const std::vector<double>& v) {
  std::vector<double> distinct(v);
  std::sort(distinct.begin(), distinct.end(), std::greater<>());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> out;
  out.reserve(v.size());
  for (double x : v) {
    out.push_back(static_cast<int>(std::find(distinct.begin(), distinct.end(), x) - distinct.begin()) + 1);
  }
  return out;
}

bool passes(const Cutoff& c, double value, int rank) {
  return c.kind == Cutoff::Kind::Rank ? rank <= c.threshold : value >= c.threshold;
}

void check_unique(std::span<const CityProfile> pool) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& c : pool) {
    if (!seen.emplace(c.name, c.country).second) {
      throw ValidationError("duplicate city '" + c.name + "' (" + c.country + ") in pool");
    }
  }
}

}  // namespace

ScreenResult screen_candidates(std::span<const CityProfile> pool, Cutoff gdp, Cutoff sports) {
  if (pool.empty()) throw ValidationError("candidate pool is empty");
  check_unique(pool);
  std::vector<double> g, s;
  for (const auto& c : pool) {
    g.push_back(c.gdp);
    s.push_back(c.sports_points());
  }
  const auto gr = dense_rank_desc(g);
  const auto sr = dense_rank_desc(s);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (passes(gdp, g[i], gr[i]) && passes(sports, s[i], sr[i])) keep.push_back(i);
  }
  std::stable_sort(keep.begin(), keep.end(),
                   [&](std::size_t a, std::size_t b) { return gr[a] + sr[a] < gr[b] + sr[b]; });
  ScreenResult out;
  for (auto i : keep) out.cities.push_back(pool[i]);
  if (out.cities.empty()) out.warnings.push_back("cutoffs exclude every city in the pool");
  return out;
}

void validate_requirement(const ClimateRequirement& req) {
  if (!(req.ideal_low <= req.ideal_high)) throw ValidationError("ideal temperature range is inverted");
  if (!(req.ideal_high < req.max_feb_temp)) {
    throw ValidationError("ideal temperature range must lie below the maximum February temperature");
  }
}

ClimateVerdict classify_climate(std::string city, double temperature, double snowfall,
                                const ClimateRequirement& req) {
  ClimateVerdict v;
  v.city = std::move(city);
  v.temperature = temperature;
  v.snowfall = snowfall;
  v.temperature_ok = temperature < req.max_feb_temp;
  v.snowfall_ok = snowfall >= req.min_feb_snow;
  v.pass = v.temperature_ok && v.snowfall_ok;
  v.ideal = temperature >= req.ideal_low && temperature <= req.ideal_high;
  return v;
}

std::vector<ClimateAssessment> winter_climate_filter(std::span<const CityProfile> cities,
                                                     const ClimateRequirement& req, int until) {
  validate_requirement(req);
  std::vector<TimeSeries> series;
  series.reserve(2 * cities.size());
  for (const auto& c : cities) {
    for (const char* key : {kFebTemperature, kFebSnowfall}) {
      auto it = c.climate.find(key);
      if (it == c.climate.end()) {
        throw ValidationError("city '" + c.name + "' has no '" + key + "' series");
      }
      auto s = it->second;
      s.label = c.name + ":" + key;
      series.push_back(std::move(s));
    }
  }
  auto fits = extend_all(series, until);
  std::vector<ClimateAssessment> out;
  out.reserve(cities.size());
  for (std::size_t i = 0; i < cities.size(); ++i) {
    auto& t = fits[2 * i];
    auto& s = fits[2 * i + 1];
    auto at = [until](const TimeSeries& ts) {
      const int idx = until - ts.start_period;
      if (idx < 0 || idx >= static_cast<int>(ts.values.size())) {
        throw ValidationError("series '" + ts.label + "' does not cover period " + std::to_string(until));
      }
      return ts.values[static_cast<std::size_t>(idx)];
    };
    auto verdict = classify_climate(cities[i].name, at(t.series), at(s.series), req);
    out.push_back({std::move(verdict), std::move(t), std::move(s)});
  }
  return out;
}

SuitabilityScore make_score(double s_base, double s_evaluate) {
  return {s_base, s_evaluate, s_base + s_evaluate};
}

SuitabilityScore suitability_score(double s_base, const FeatureSelection& sel, std::span<const double> xi) {
  if (!(s_base >= 0.0 && s_base <= 1.0)) throw ValidationError("s_base must lie in [0, 1]");
  return make_score(s_base, evaluate_chi(sel, xi));
}

std::vector<std::pair<std::string, SuitabilityScore>> suitability_scores(
    std::span<const CityProfile> cities, const std::map<std::string, double>& s_base,
    const FeatureSelection& sel, const IndicatorHierarchy& h) {
  std::vector<std::pair<std::string, SuitabilityScore>> out;
  std::vector<std::string> labels;
  std::vector<double> vals;
  for (const auto& c : cities) {
    labels.push_back(c.name);
    for (const auto& id : sel.ids) {
      auto it = c.indicators.find(id);
      if (it == c.indicators.end()) {
        throw ValidationError("city '" + c.name + "' has no value for feature " + id.str());
      }
      vals.push_back(it->second);
    }
  }
  std::vector<Polarity> pol;
  std::vector<std::optional<IdealInterval>> ideal;
  for (const auto& id : sel.ids) {
    const auto* spec = h.find(id);
    pol.push_back(spec ? spec->polarity : Polarity::Positive);
    ideal.push_back(spec ? spec->ideal_interval : std::nullopt);
  }
  std::vector<std::vector<double>> xi;
  if (!cities.empty()) {
    DecisionMatrix m(labels, sel.ids, std::move(vals), std::move(pol), std::move(ideal));
    xi = scale_features(m, sel.ids);
  }
  for (std::size_t i = 0; i < cities.size(); ++i) {
    auto base = s_base.find(cities[i].name);
    if (base == s_base.end()) throw ValidationError("no s_base configured for '" + cities[i].name + "'");
    out.emplace_back(cities[i].name, suitability_score(base->second, sel, xi[i]));
  }
  return out;
}

std::vector<std::pair<std::string, SuitabilityScore>> rank_cities(
    std::vector<std::pair<std::string, SuitabilityScore>> scores) {
  std::sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
    if (a.second.total != b.second.total) return a.second.total > b.second.total;
    return a.first < b.first;
  });
  return scores;
}

ImpactScale::ImpactScale(int value) : value_(value) {
  if (value != 1 && value != 3 && value != 5 && value != 7 && value != 9) {
    throw ValidationError("impact scale must be one of 1, 3, 5, 7, 9 (got " + std::to_string(value) + ")");
  }
}

std::string scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::Original: return "Original";
    case SchemeId::A: return "A";
    case SchemeId::B: return "B";
    case SchemeId::C: return "C";
    case SchemeId::D: return "D";
  }
  return "?";
}

SchemeId scheme_from_name(const std::string& name) {
  for (auto id : {SchemeId::Original, SchemeId::A, SchemeId::B, SchemeId::C, SchemeId::D}) {
    if (scheme_name(id) == name) return id;
  }
  throw ValidationError("unknown scheme '" + name + "'");
}

std::vector<SchemeScore> compare_schemes(std::span<const SchemePlan> plans, const FeatureSelection& sel) {
  std::vector<SchemeScore> out;
  for (const auto& plan : plans) {
    if (plan.impacts.size() != sel.ids.size()) {
      for (const auto& [id, _] : plan.impacts) {
        if (std::find(sel.ids.begin(), sel.ids.end(), id) == sel.ids.end()) {
          throw ValidationError("plan " + scheme_name(plan.id) + " rates " + id.str() +
                                ", which is not a selected feature");
        }
      }
    }
    SchemeScore s{plan.id, 0.0, {}};
    for (std::size_t j = 0; j < sel.ids.size(); ++j) {
      auto it = plan.impacts.find(sel.ids[j]);
      if (it == plan.impacts.end()) {
        throw ValidationError("plan " + scheme_name(plan.id) + " has no impact for " + sel.ids[j].str());
      }
      const double c = sel.gamma[j] * it->second.value();
      s.contributions.push_back(c);
      s.aggregate += c;
    }
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.aggregate > b.aggregate; });
  return out;
}

std::string swot_report(std::span<const SwotRecord> records) {
  std::ostringstream os;
  auto section = [&os](const char* title, const std::vector<std::string>& items) {
    os << "  " << title << ":\n";
    for (const auto& s : items) os << "    - " << s << '\n';
  };
  for (const auto& r : records) {
    os << "== " << r.city << " ==\n";
    section("Strengths", r.strengths);
    section("Weaknesses", r.weaknesses);
    section("Opportunities", r.opportunities);
    section("Threats", r.threats);
  }
  return os.str();
}

namespace {

std::vector<std::pair<std::string, SuitabilityScore>> score_with_overrides(
    std::span<const CityProfile> cities, const std::map<std::string, double>& s_base,
    const std::map<std::string, double>& s_evaluate, const FeatureSelection& sel,
    const IndicatorHierarchy& h) {
  std::vector<CityProfile> computed;
  for (const auto& c : cities) {
    if (!s_evaluate.count(c.name)) computed.push_back(c);
  }
  auto scores = suitability_scores(computed, s_base, sel, h);
  for (const auto& c : cities) {
    auto it = s_evaluate.find(c.name);
    if (it == s_evaluate.end()) continue;
    auto base = s_base.find(c.name);
    if (base == s_base.end()) throw ValidationError("no s_base configured for '" + c.name + "'");
    scores.emplace_back(c.name, make_score(base->second, it->second));
  }
  return rank_cities(std::move(scores));
}

}  // namespace

WinterScreenResult winter_screen(std::span<const CityProfile> pool, const WinterScreenConfig& cfg,
                                 const FeatureSelection& sel, const IndicatorHierarchy& h) {
  check_unique(pool);
  WinterScreenResult out;
  std::vector<CityProfile> remaining;
  for (const auto& c : pool) {
    if (cfg.excluded.count(c.name)) continue;
    remaining.push_back(c);
    out.after_exclusion.push_back(c.name);
  }
  out.climate = winter_climate_filter(remaining, cfg.requirement, cfg.until);
  std::vector<CityProfile> passing;
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    if (out.climate[i].verdict.pass) passing.push_back(remaining[i]);
  }
  out.ranking = score_with_overrides(passing, cfg.s_base, cfg.s_evaluate, sel, h);
  return out;
}

SummerScreenResult summer_screen(std::span<const CityProfile> pool, const SummerScreenConfig& cfg,
                                 const FeatureSelection& sel, const IndicatorHierarchy& h) {
  SummerScreenResult out;
  std::vector<CityProfile> stage1(pool.begin(), pool.end());
  if (cfg.gdp || cfg.sports) {
    auto r = screen_candidates(pool, cfg.gdp.value_or(Cutoff::value(-INFINITY)),
                               cfg.sports.value_or(Cutoff::value(-INFINITY)));
    stage1 = std::move(r.cities);
    out.warnings = std::move(r.warnings);
  } else {
    check_unique(pool);
  }
  for (const auto& c : stage1) out.stage1.push_back(c.name);

  std::vector<std::size_t> idx(stage1.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return stage1[a].sports_points() > stage1[b].sports_points();
  });
  std::vector<CityProfile> sporty;
  for (auto i : idx) {
    const double pts = stage1[i].sports_points();
    if (cfg.min_medal_points && pts < *cfg.min_medal_points) continue;
    if (cfg.medal_top && sporty.size() >= *cfg.medal_top) break;
    sporty.push_back(stage1[i]);
    out.medal_screen.emplace_back(stage1[i].name, pts);
  }
  if (sporty.empty()) {
    out.warnings.push_back("medal screen leaves no cities");
    return out;
  }
  out.ranking = score_with_overrides(sporty, cfg.s_base, cfg.s_evaluate, sel, h);
  for (std::size_t i = 0; i < out.ranking.size() && i < cfg.finalists; ++i) {
    out.finalists.push_back(out.ranking[i].first);
  }
  return out;
}

}  // namespace mcda
