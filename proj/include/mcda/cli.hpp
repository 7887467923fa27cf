#pragma once

#include "mcda/ahp.hpp"
#include "mcda/combined.hpp"
#include "mcda/host_selection.hpp"
#include "mcda/indicator.hpp"
#include "mcda/sensitivity.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mcda::cli {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kOutputDirEnv = "MCDA_OUTPUT_DIR";

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfigError = 2,
  kValidationError = 3,
  kNumericError = 4,
};

/// Paths are resolved against the config file's directory and checked at load.
struct RunConfig {
  std::filesystem::path source;
  std::string hash;  // FNV-1a over the config file and every input file it references
  std::uint64_t seed = 0;

  std::optional<std::filesystem::path> hierarchy;
  std::optional<std::filesystem::path> judgments;
  std::optional<std::filesystem::path> decision_matrix;
  std::optional<std::filesystem::path> pool;
  std::optional<std::filesystem::path> plans;
  std::optional<std::filesystem::path> swot;
  std::optional<std::filesystem::path> output_dir;

  WeightingMode mode = WeightingMode::PerCategory;
  std::size_t feature_count = 10;
  std::optional<double> feature_coverage;
  bool impute_missing = false;
  /// Fixed feature group; when absent the group is derived from the weighting run.
  std::optional<FeatureSelection> features;

  WinterScreenConfig winter;
  SummerScreenConfig summer;

  std::size_t n_swap = 5;
  std::size_t trials = 100;

  std::string rsm_alternative;
  double rsm_delta = 0.5;
  std::size_t rsm_centers = 3;
  bool rsm_renormalize = false;
};

RunConfig load_config(const std::filesystem::path& path);

/// Recomputes `hash` after input paths change.
void rehash(RunConfig& cfg);

struct Command {
  std::string name;                 // weights, evaluate, forecast, screen, compare-schemes, sensitivity, rsm
  std::string method = "combined";  // weights
  std::optional<std::size_t> features;  // evaluate
  std::string indicator;                // forecast
  std::optional<int> until;             // forecast
  std::string city;                     // forecast: restrict to one city
  std::string season;                   // screen: winter | summer
  std::optional<std::uint64_t> seed;    // sensitivity override
  std::optional<std::size_t> trials;    // sensitivity override
  std::vector<std::string> factors;     // rsm: "ξ1", "xi10" or "10"
  std::size_t grid = 25;                // rsm: points per axis
};

struct OutputFile {
  std::string name;
  std::string content;
};

struct RunReport {
  std::vector<OutputFile> files;
  std::string summary;
};

/// Runs one subcommand entirely in memory. Throws mcda::Error subclasses on failure.
RunReport run(const RunConfig& config, const Command& command);

/// Writes every file into `dir` (created if missing).
void write_outputs(const RunReport& report, const std::filesystem::path& dir);

/// Loader helpers shared with tests.
std::map<std::string, JudgmentMatrix> load_judgments_json(std::string_view text);
std::vector<CityProfile> load_pool_json(std::string_view text);
std::vector<SchemePlan> load_plans_json(std::string_view text);
std::vector<SwotRecord> load_swot_json(std::string_view text);

/// Full command-line entry point; returns the process exit status.
int main_entry(int argc, char** argv);

}  // namespace mcda::cli
