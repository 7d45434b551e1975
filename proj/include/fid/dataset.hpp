#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fid {

enum class Platform { PC, MidRange, MainFrame };
enum class Rating { A, B, C, D };
enum class DevelopmentType { NewDevelopment, Enhancement, Redevelopment };

Platform parse_platform(const std::string& token);
Rating parse_rating(const std::string& token);
DevelopmentType parse_development_type(const std::string& token);
std::string to_string(Platform value);
std::string to_string(Rating value);
std::string to_string(DevelopmentType value);

inline constexpr std::size_t kNumericFeatureCount = 5;
inline constexpr std::size_t kPlatformCount = 3;

// Split attributes in fixed tie-break order; the first five are numeric.
enum class Feature {
  FunctionPoints = 0,
  MaxTeamSize,
  UbBusinessUnits,
  UbLocations,
  UbConcurrentUsers,
  DevelopmentPlatform,
};
inline constexpr std::size_t kFeatureCount = 6;

std::string_view feature_name(Feature feature);
std::string_view numeric_feature_name(std::size_t index);
Feature parse_feature(std::string_view name);

// One software project: estimation features, filter metadata, actual effort.
struct ProjectRecord {
  std::string project_id;
  std::optional<double> function_points;
  std::optional<double> max_team_size;
  std::optional<double> ub_business_units;
  std::optional<double> ub_locations;
  std::optional<double> ub_concurrent_users;
  std::optional<Platform> development_platform;
  std::optional<double> work_effort;  // hours; the dependent variable
  Rating data_quality_rating = Rating::A;
  Rating ufp_rating = Rating::A;
  int resource_level = 1;  // 1..4
  DevelopmentType development_type = DevelopmentType::NewDevelopment;
};

// Field invariants (non-negative numerics, positive effort, resource level in
// 1..4); throws std::invalid_argument naming the offending field.
void validate(const ProjectRecord& record);

std::optional<double> numeric_feature(const ProjectRecord& record, std::size_t index);
void set_numeric_feature(ProjectRecord& record, std::size_t index,
                         std::optional<double> value);

struct Dataset {
  std::vector<ProjectRecord> records;
  std::string provenance;  // raw / filtered / imputed / normalized
};

inline constexpr std::string_view kCsvHeader =
    "project_id,function_points,max_team_size,ub_business_units,ub_locations,"
    "ub_concurrent_users,development_platform,work_effort,data_quality_rating,"
    "ufp_rating,resource_level,development_type";

// Strict schema CSV reader: exact header, empty cell = missing, invalid rows
// reported with line number and column name (std::runtime_error). Record ids
// must be unique.
Dataset load_csv(const std::filesystem::path& path);

// Deterministic writer (shortest round-trip numerics, atomic replace).
void write_csv(const Dataset& dataset, const std::filesystem::path& path);
std::string to_csv(const Dataset& dataset);

struct FilterSummary {
  std::size_t total = 0;
  std::size_t kept = 0;
  // Per-criterion violation counts; a record may appear in several.
  std::size_t data_quality = 0;
  std::size_t ufp = 0;
  std::size_t resource_level = 0;
  std::size_t development_type = 0;
};

// Keeps records with quality in {A,B}, UFP rating in {A,B}, resource level in
// {1,2} and development type NewDevelopment; order preserved.
Dataset filter_cases(const Dataset& dataset, FilterSummary* summary = nullptr);

struct ImputeSummary {
  std::size_t dropped_missing_effort = 0;
  std::array<std::size_t, kNumericFeatureCount> numeric_cells_filled{};
  std::size_t platform_cells_filled = 0;
};

// Mean/mode single imputation: continuous gaps get the column mean, platform
// gaps the column mode (ties -> lexicographically smallest label). Records
// with missing work_effort are dropped, never imputed. A column that is
// entirely missing throws std::runtime_error naming the feature.
Dataset impute_mmsi(const Dataset& dataset, ImputeSummary* summary = nullptr);

struct FeatureRange {
  double min = 0.0;
  double max = 0.0;
};

struct NormalizationParams {
  std::array<FeatureRange, kNumericFeatureCount> features{};
  FeatureRange effort{};

  // (x - min) / (max - min); constant ranges map to 0.
  static double apply(FeatureRange range, double x);
  static double apply_clamped(FeatureRange range, double x);
  double denormalize_effort(double normalized) const;
};

struct NormalizedSplit {
  Dataset train;
  Dataset test;
  NormalizationParams params;
};

// Min-max normalization of the five numeric features and effort. Ranges come
// from the training set only; test values are mapped with those ranges and
// clamped to [0,1]. Requires imputed (complete) inputs and non-empty train.
NormalizedSplit normalize_minmax(const Dataset& train, const Dataset& test);

struct SplitResult {
  Dataset train;
  Dataset test;
};

// Seeded Fisher-Yates shuffle; train receives floor(train_fraction * N)
// records. Deterministic across runs and platforms.
SplitResult split(const Dataset& dataset, double train_fraction, std::uint64_t seed);

struct SynthSpec {
  std::size_t record_count = 151;
  double missing_rate = 0.0;  // applied independently to each optional field
  double noise_level = 0.0;   // effort noise scale, hours
  std::uint64_t seed = 42;
  double quality_violation_fraction = 0.0;
  double ufp_violation_fraction = 0.0;
  double resource_violation_fraction = 0.0;
  double devtype_violation_fraction = 0.0;
};

void validate(const SynthSpec& spec);

// Deterministic schema-compatible data. Effort is monotone in function points
// and team size (6*fp + 150*mts) plus noise_level-scaled Gaussian noise;
// violation and missing counts are exact: llround(fraction * record_count).
Dataset synth_generate(const SynthSpec& spec);

}  // namespace fid
