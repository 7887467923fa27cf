#pragma once

#include "mcda/combined.hpp"
#include "mcda/grey.hpp"
#include "mcda/indicator.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mcda {

/// Climate series keys used by the winter screen.
inline constexpr const char* kFebTemperature = "feb_temp";  // °C
inline constexpr const char* kFebSnowfall = "feb_snow";     // cm

struct MedalTally {
  int gold = 0;
  int silver = 0;
  int bronze = 0;
};

/// 5 points per gold, 1 per silver, 0.5 per bronze.
double medal_points(const MedalTally& t);

struct CityProfile {
  std::string name;
  std::string country;
  double gdp = 0.0;
  double sports_score = 0.0;
  std::optional<MedalTally> medals;
  std::map<std::string, TimeSeries> climate;
  std::map<IndicatorId, double> indicators;

  /// Medal points when a tally is present, otherwise the configured sports score.
  double sports_points() const { return medals ? medal_points(*medals) : sports_score; }
};

/// Threshold on either the dense rank (1 = best) or the raw value.
struct Cutoff {
  enum class Kind { Rank, Value };
  Kind kind = Kind::Value;
  double threshold = 0.0;

  static Cutoff rank(int r) { return {Kind::Rank, static_cast<double>(r)}; }
  static Cutoff value(double v) { return {Kind::Value, v}; }
};

struct ScreenResult {
  std::vector<CityProfile> cities;
  std::vector<std::string> warnings;
};

/// Keeps cities whose country GDP and sports level both pass, stable-sorted by
/// the sum of the two dense ranks.
ScreenResult screen_candidates(std::span<const CityProfile> pool, Cutoff gdp, Cutoff sports);

struct ClimateRequirement {
  double max_feb_temp = 0.0;
  double ideal_low = -17.0;
  double ideal_high = -10.0;
  double min_feb_snow = 30.0;
};

void validate_requirement(const ClimateRequirement& req);

struct ClimateVerdict {
  std::string city;
  double temperature = 0.0;  // forecast at the target period
  double snowfall = 0.0;
  bool temperature_ok = false;
  bool snowfall_ok = false;
  bool pass = false;
  bool ideal = false;
};

/// pass ⇔ temperature < max and snowfall ≥ min; ideal ⇔ temperature within the ideal range.
ClimateVerdict classify_climate(std::string city, double temperature, double snowfall,
                                const ClimateRequirement& req);

struct ClimateAssessment {
  ClimateVerdict verdict;
  ForecastSeries temperature;
  ForecastSeries snowfall;
};

/// Forecasts each city's February temperature and snowfall through `until`
/// (cities fan out in parallel) and classifies the forecast at `until`.
std::vector<ClimateAssessment> winter_climate_filter(std::span<const CityProfile> cities,
                                                     const ClimateRequirement& req, int until);

struct SuitabilityScore {
  double s_base = 0.0;
  double s_evaluate = 0.0;
  double total = 0.0;
};

SuitabilityScore make_score(double s_base, double s_evaluate);

/// Scores one alternative from its already scaled feature values.
SuitabilityScore suitability_score(double s_base, const FeatureSelection& sel, std::span<const double> xi);

/// Scores a set of cities, min-max scaling feature values across the set.
/// `s_base` must name every city.
std::vector<std::pair<std::string, SuitabilityScore>> suitability_scores(
    std::span<const CityProfile> cities, const std::map<std::string, double>& s_base,
    const FeatureSelection& sel, const IndicatorHierarchy& h);

/// Descending total; equal totals fall back to alphabetical order.
std::vector<std::pair<std::string, SuitabilityScore>> rank_cities(
    std::vector<std::pair<std::string, SuitabilityScore>> scores);

/// One of the five levels 1, 3, 5, 7, 9.
class ImpactScale {
 public:
  explicit ImpactScale(int value);
  int value() const noexcept { return value_; }

 private:
  int value_;
};

enum class SchemeId { Original, A, B, C, D };

std::string scheme_name(SchemeId id);
SchemeId scheme_from_name(const std::string& name);

struct SchemePlan {
  SchemeId id = SchemeId::Original;
  std::string description;
  std::map<IndicatorId, ImpactScale> impacts;
};

struct SchemeScore {
  SchemeId id;
  double aggregate = 0.0;
  std::vector<double> contributions;  // γ_j·impact_j in selection order
};

/// Aggregate Σ γ_j·impact(ξ_j) per plan, sorted descending (ties in plan order).
std::vector<SchemeScore> compare_schemes(std::span<const SchemePlan> plans, const FeatureSelection& sel);

struct SwotRecord {
  std::string city;
  std::vector<std::string> strengths;
  std::vector<std::string> weaknesses;
  std::vector<std::string> opportunities;
  std::vector<std::string> threats;
};

/// Plain-text rendering, one section per record, entries verbatim.
std::string swot_report(std::span<const SwotRecord> records);

struct WinterScreenConfig {
  std::set<std::string> excluded;  // geography pre-elimination, by city name
  ClimateRequirement requirement;
  int until = 2050;
  std::map<std::string, double> s_base;
  /// Fixed s_evaluate per city, used in place of the computed value when present.
  std::map<std::string, double> s_evaluate;
};

struct WinterScreenResult {
  std::vector<std::string> after_exclusion;
  std::vector<ClimateAssessment> climate;
  std::vector<std::pair<std::string, SuitabilityScore>> ranking;
};

WinterScreenResult winter_screen(std::span<const CityProfile> pool, const WinterScreenConfig& cfg,
                                 const FeatureSelection& sel, const IndicatorHierarchy& h);

struct SummerScreenConfig {
  std::optional<Cutoff> gdp;
  std::optional<Cutoff> sports;
  /// Keep cities whose medal points reach this value ...
  std::optional<double> min_medal_points;
  /// ... and at most this many of them, best first.
  std::optional<std::size_t> medal_top;
  std::map<std::string, double> s_base;
  std::map<std::string, double> s_evaluate;
  std::size_t finalists = 4;
};

struct SummerScreenResult {
  std::vector<std::string> stage1;
  std::vector<std::pair<std::string, double>> medal_screen;
  std::vector<std::pair<std::string, SuitabilityScore>> ranking;
  std::vector<std::string> finalists;
  std::vector<std::string> warnings;
};

SummerScreenResult summer_screen(std::span<const CityProfile> pool, const SummerScreenConfig& cfg,
                                 const FeatureSelection& sel, const IndicatorHierarchy& h);

}  // namespace mcda
