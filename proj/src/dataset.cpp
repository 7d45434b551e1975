#include "fid/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "fid/io.hpp"

namespace fid {

Platform parse_platform(const std::string& token) {
  if (token == "PC") return Platform::PC;
  if (token == "MidRange") return Platform::MidRange;
  if (token == "MainFrame") return Platform::MainFrame;
  throw std::invalid_argument("unknown development_platform value '" + token + "'");
}

Rating parse_rating(const std::string& token) {
  if (token == "A") return Rating::A;
  if (token == "B") return Rating::B;
  if (token == "C") return Rating::C;
  if (token == "D") return Rating::D;
  throw std::invalid_argument("unknown rating value '" + token + "'");
}

DevelopmentType parse_development_type(const std::string& token) {
  if (token == "NewDevelopment") return DevelopmentType::NewDevelopment;
  if (token == "Enhancement") return DevelopmentType::Enhancement;
  if (token == "Redevelopment") return DevelopmentType::Redevelopment;
  throw std::invalid_argument("unknown development_type value '" + token + "'");
}

std::string to_string(Platform value) {
  switch (value) {
    case Platform::PC: return "PC";
    case Platform::MidRange: return "MidRange";
    case Platform::MainFrame: return "MainFrame";
  }
  throw std::logic_error("bad Platform");
}

std::string to_string(Rating value) {
  switch (value) {
    case Rating::A: return "A";
    case Rating::B: return "B";
    case Rating::C: return "C";
    case Rating::D: return "D";
  }
  throw std::logic_error("bad Rating");
}

std::string to_string(DevelopmentType value) {
  switch (value) {
    case DevelopmentType::NewDevelopment: return "NewDevelopment";
    case DevelopmentType::Enhancement: return "Enhancement";
    case DevelopmentType::Redevelopment: return "Redevelopment";
  }
  throw std::logic_error("bad DevelopmentType");
}

namespace {

constexpr std::string_view kFeatureNames[kFeatureCount] = {
    "function_points",     "max_team_size",        "ub_business_units",
    "ub_locations",        "ub_concurrent_users",  "development_platform",
};

}  // namespace

std::string_view feature_name(Feature feature) {
  return kFeatureNames[static_cast<std::size_t>(feature)];
}

std::string_view numeric_feature_name(std::size_t index) {
  return kFeatureNames[index];
}

Feature parse_feature(std::string_view name) {
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (kFeatureNames[i] == name) return static_cast<Feature>(i);
  }
  throw std::invalid_argument("unknown feature '" + std::string(name) + "'");
}

void validate(const ProjectRecord& record) {
  if (record.project_id.empty()) {
    throw std::invalid_argument("project_id: must not be empty");
  }
  for (std::size_t i = 0; i < kNumericFeatureCount; ++i) {
    const auto value = numeric_feature(record, i);
    if (value && (!std::isfinite(*value) || *value < 0.0)) {
      throw std::invalid_argument(std::string(numeric_feature_name(i)) +
                                  ": must be finite and non-negative");
    }
  }
  if (record.work_effort &&
      (!std::isfinite(*record.work_effort) || *record.work_effort <= 0.0)) {
    throw std::invalid_argument("work_effort: must be finite and positive");
  }
  if (record.resource_level < 1 || record.resource_level > 4) {
    throw std::invalid_argument("resource_level: must be in 1..4");
  }
}

std::optional<double> numeric_feature(const ProjectRecord& record, std::size_t index) {
  switch (index) {
    case 0: return record.function_points;
    case 1: return record.max_team_size;
    case 2: return record.ub_business_units;
    case 3: return record.ub_locations;
    case 4: return record.ub_concurrent_users;
    default: throw std::logic_error("numeric feature index out of range");
  }
}

void set_numeric_feature(ProjectRecord& record, std::size_t index,
                         std::optional<double> value) {
  switch (index) {
    case 0: record.function_points = value; break;
    case 1: record.max_team_size = value; break;
    case 2: record.ub_business_units = value; break;
    case 3: record.ub_locations = value; break;
    case 4: record.ub_concurrent_users = value; break;
    default: throw std::logic_error("numeric feature index out of range");
  }
}

namespace {

constexpr std::size_t kColumnCount = 12;

constexpr std::string_view kColumnNames[kColumnCount] = {
    "project_id",        "function_points",      "max_team_size",
    "ub_business_units", "ub_locations",         "ub_concurrent_users",
    "development_platform", "work_effort",       "data_quality_rating",
    "ufp_rating",        "resource_level",       "development_type",
};

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

std::optional<double> parse_optional_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  return parse_double(cell);
}

ProjectRecord parse_row(const std::vector<std::string>& cells) {
  ProjectRecord record;
  std::size_t column = 0;
  auto next = [&]() -> const std::string& { return cells[column++]; };
  try {
    record.project_id = next();
    record.function_points = parse_optional_number(next());
    record.max_team_size = parse_optional_number(next());
    record.ub_business_units = parse_optional_number(next());
    record.ub_locations = parse_optional_number(next());
    record.ub_concurrent_users = parse_optional_number(next());
    if (const std::string& cell = next(); !cell.empty()) {
      record.development_platform = parse_platform(cell);
    }
    record.work_effort = parse_optional_number(next());
    record.data_quality_rating = parse_rating(next());
    record.ufp_rating = parse_rating(next());
    record.resource_level = static_cast<int>(parse_integer(next()));
    record.development_type = parse_development_type(next());
  } catch (const std::exception& error) {
    throw std::runtime_error("column '" + std::string(kColumnNames[column - 1]) +
                             "': " + error.what());
  }
  validate(record);
  return record;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path) {
  const std::string content = read_text_file(path);
  std::istringstream stream(content);

  std::string line;
  if (!std::getline(stream, line)) {
    throw std::runtime_error(path.string() + ": empty file, expected header");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    throw std::runtime_error(path.string() + ": unexpected header '" + line + "'");
  }

  Dataset dataset;
  dataset.provenance = "raw";
  std::unordered_set<std::string> seen_ids;
  std::vector<std::string> row_errors;
  std::size_t line_number = 1;
  while (std::getline(stream, line)) {
    ++line_number;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_line(line);
    try {
      if (cells.size() != kColumnCount) {
        throw std::runtime_error("expected " + std::to_string(kColumnCount) +
                                 " columns, found " + std::to_string(cells.size()));
      }
      ProjectRecord record = parse_row(cells);
      if (!seen_ids.insert(record.project_id).second) {
        throw std::runtime_error("duplicate project_id '" + record.project_id + "'");
      }
      dataset.records.push_back(std::move(record));
    } catch (const std::exception& error) {
      row_errors.push_back(path.filename().string() + ":" +
                           std::to_string(line_number) + ": " + error.what());
    }
  }
  if (!row_errors.empty()) {
    std::string message = "invalid rows in " + path.string() + ":";
    for (const auto& row_error : row_errors) message += "\n  " + row_error;
    throw std::runtime_error(message);
  }
  return dataset;
}

std::string to_csv(const Dataset& dataset) {
  std::string text(kCsvHeader);
  text += '\n';
  auto cell = [](const std::optional<double>& value) {
    return value ? format_double(*value) : std::string();
  };
  for (const auto& r : dataset.records) {
    text += r.project_id;
    text += ',' + cell(r.function_points);
    text += ',' + cell(r.max_team_size);
    text += ',' + cell(r.ub_business_units);
    text += ',' + cell(r.ub_locations);
    text += ',' + cell(r.ub_concurrent_users);
    text += ',';
    if (r.development_platform) text += to_string(*r.development_platform);
    text += ',' + cell(r.work_effort);
    text += ',' + to_string(r.data_quality_rating);
    text += ',' + to_string(r.ufp_rating);
    text += ',' + std::to_string(r.resource_level);
    text += ',' + to_string(r.development_type);
    text += '\n';
  }
  return text;
}

void write_csv(const Dataset& dataset, const std::filesystem::path& path) {
  atomic_write_text(path, to_csv(dataset));
}

namespace {

bool passes_quality(const ProjectRecord& r) {
  return r.data_quality_rating == Rating::A || r.data_quality_rating == Rating::B;
}
bool passes_ufp(const ProjectRecord& r) {
  return r.ufp_rating == Rating::A || r.ufp_rating == Rating::B;
}
bool passes_resource(const ProjectRecord& r) {
  return r.resource_level == 1 || r.resource_level == 2;
}
bool passes_devtype(const ProjectRecord& r) {
  return r.development_type == DevelopmentType::NewDevelopment;
}

}  // namespace

Dataset filter_cases(const Dataset& dataset, FilterSummary* summary) {
  FilterSummary counts;
  counts.total = dataset.records.size();
  Dataset filtered;
  filtered.provenance = "filtered";
  for (const auto& record : dataset.records) {
    bool keep = true;
    if (!passes_quality(record)) { ++counts.data_quality; keep = false; }
    if (!passes_ufp(record)) { ++counts.ufp; keep = false; }
    if (!passes_resource(record)) { ++counts.resource_level; keep = false; }
    if (!passes_devtype(record)) { ++counts.development_type; keep = false; }
    if (keep) filtered.records.push_back(record);
  }
  counts.kept = filtered.records.size();
  if (summary) *summary = counts;
  return filtered;
}

Dataset impute_mmsi(const Dataset& dataset, ImputeSummary* summary) {
  ImputeSummary counts;
  Dataset imputed;
  imputed.provenance = "imputed";
  for (const auto& record : dataset.records) {
    if (!record.work_effort) {
      ++counts.dropped_missing_effort;
      continue;
    }
    imputed.records.push_back(record);
  }

  for (std::size_t f = 0; f < kNumericFeatureCount; ++f) {
    double sum = 0.0;
    std::size_t present = 0, missing = 0;
    for (const auto& record : imputed.records) {
      if (const auto value = numeric_feature(record, f)) {
        sum += *value;
        ++present;
      } else {
        ++missing;
      }
    }
    if (missing == 0) continue;
    if (present == 0) {
      throw std::runtime_error("cannot impute '" + std::string(numeric_feature_name(f)) +
                               "': no present values");
    }
    const double mean = sum / static_cast<double>(present);
    for (auto& record : imputed.records) {
      if (!numeric_feature(record, f)) {
        set_numeric_feature(record, f, mean);
        ++counts.numeric_cells_filled[f];
      }
    }
  }

  std::size_t platform_counts[kPlatformCount] = {0, 0, 0};
  std::size_t platform_missing = 0;
  for (const auto& record : imputed.records) {
    if (record.development_platform) {
      ++platform_counts[static_cast<std::size_t>(*record.development_platform)];
    } else {
      ++platform_missing;
    }
  }
  if (platform_missing > 0) {
    if (platform_counts[0] + platform_counts[1] + platform_counts[2] == 0) {
      throw std::runtime_error("cannot impute 'development_platform': no present values");
    }
    // Mode; ties go to the lexicographically smallest label.
    Platform mode = Platform::PC;
    std::size_t best = 0;
    std::string best_label;
    for (std::size_t p = 0; p < kPlatformCount; ++p) {
      const Platform candidate = static_cast<Platform>(p);
      const std::string label = to_string(candidate);
      if (platform_counts[p] > best ||
          (platform_counts[p] == best && best > 0 && label < best_label)) {
        mode = candidate;
        best = platform_counts[p];
        best_label = label;
      }
    }
    for (auto& record : imputed.records) {
      if (!record.development_platform) {
        record.development_platform = mode;
        ++counts.platform_cells_filled;
      }
    }
  }

  if (summary) *summary = counts;
  return imputed;
}

double NormalizationParams::apply(FeatureRange range, double x) {
  if (range.max <= range.min) return 0.0;
  return (x - range.min) / (range.max - range.min);
}

double NormalizationParams::apply_clamped(FeatureRange range, double x) {
  return std::clamp(apply(range, x), 0.0, 1.0);
}

double NormalizationParams::denormalize_effort(double normalized) const {
  return effort.min + normalized * (effort.max - effort.min);
}

namespace {

double require_value(const std::optional<double>& value, std::string_view field,
                     const std::string& id) {
  if (!value) {
    throw std::runtime_error("record '" + id + "': missing " + std::string(field) +
                             " (imputation not applied?)");
  }
  return *value;
}

}  // namespace

NormalizedSplit normalize_minmax(const Dataset& train, const Dataset& test) {
  if (train.records.empty()) {
    throw std::runtime_error("normalize_minmax: empty training set");
  }

  NormalizationParams params;
  for (std::size_t f = 0; f < kNumericFeatureCount; ++f) {
    FeatureRange range{std::numeric_limits<double>::infinity(),
                       -std::numeric_limits<double>::infinity()};
    for (const auto& record : train.records) {
      const double value =
          require_value(numeric_feature(record, f), numeric_feature_name(f),
                        record.project_id);
      range.min = std::min(range.min, value);
      range.max = std::max(range.max, value);
    }
    params.features[f] = range;
  }
  FeatureRange effort{std::numeric_limits<double>::infinity(),
                      -std::numeric_limits<double>::infinity()};
  for (const auto& record : train.records) {
    const double value = require_value(record.work_effort, "work_effort",
                                       record.project_id);
    effort.min = std::min(effort.min, value);
    effort.max = std::max(effort.max, value);
  }
  params.effort = effort;

  NormalizedSplit result;
  result.params = params;
  result.train.provenance = "normalized";
  result.test.provenance = "normalized";

  auto map_record = [&params](const ProjectRecord& record, bool clamp) {
    ProjectRecord mapped = record;
    for (std::size_t f = 0; f < kNumericFeatureCount; ++f) {
      const double raw = *numeric_feature(record, f);
      const double value = clamp ? NormalizationParams::apply_clamped(params.features[f], raw)
                                 : NormalizationParams::apply(params.features[f], raw);
      set_numeric_feature(mapped, f, value);
    }
    const double raw_effort = *record.work_effort;
    mapped.work_effort = clamp
                             ? NormalizationParams::apply_clamped(params.effort, raw_effort)
                             : NormalizationParams::apply(params.effort, raw_effort);
    return mapped;
  };

  for (const auto& record : train.records) {
    // Validate presence up front for clearer diagnostics.
    for (std::size_t f = 0; f < kNumericFeatureCount; ++f) {
      require_value(numeric_feature(record, f), numeric_feature_name(f), record.project_id);
    }
    result.train.records.push_back(map_record(record, false));
  }
  for (const auto& record : test.records) {
    for (std::size_t f = 0; f < kNumericFeatureCount; ++f) {
      require_value(numeric_feature(record, f), numeric_feature_name(f), record.project_id);
    }
    require_value(record.work_effort, "work_effort", record.project_id);
    result.test.records.push_back(map_record(record, true));
  }
  return result;
}

namespace {

// Deterministic Fisher-Yates; std::shuffle's draw sequence is
// implementation-defined, this one is pinned.
void shuffle_indices(std::vector<std::size_t>& indices, std::mt19937_64& rng) {
  for (std::size_t i = indices.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(indices[i - 1], indices[j]);
  }
}

}  // namespace

SplitResult split(const Dataset& dataset, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train_fraction must lie in (0,1)");
  }
  const std::size_t n = dataset.records.size();
  if (n < 2) {
    throw std::runtime_error("split needs at least 2 records");
  }
  std::vector<std::size_t> indices(n);
  for (std::size_t i = 0; i < n; ++i) indices[i] = i;
  std::mt19937_64 rng(seed);
  shuffle_indices(indices, rng);

  // 1e-9 guards against fraction*N landing one ulp under an intended integer.
  const auto train_size = static_cast<std::size_t>(
      std::floor(train_fraction * static_cast<double>(n) + 1e-9));

  SplitResult result;
  result.train.provenance = dataset.provenance + "/train";
  result.test.provenance = dataset.provenance + "/test";
  for (std::size_t i = 0; i < n; ++i) {
    auto& target = i < train_size ? result.train : result.test;
    target.records.push_back(dataset.records[indices[i]]);
  }
  return result;
}

void validate(const SynthSpec& spec) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(spec.missing_rate)) {
    throw std::invalid_argument("missing_rate must lie in [0,1]");
  }
  if (!(spec.noise_level >= 0.0) || !std::isfinite(spec.noise_level)) {
    throw std::invalid_argument("noise_level must be finite and >= 0");
  }
  if (!in_unit(spec.quality_violation_fraction) || !in_unit(spec.ufp_violation_fraction) ||
      !in_unit(spec.resource_violation_fraction) ||
      !in_unit(spec.devtype_violation_fraction)) {
    throw std::invalid_argument("violation fractions must lie in [0,1]");
  }
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_between(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t count) {
  return static_cast<std::size_t>(rng() % count);
}

// Box-Muller; only the first variate is used to keep the stream simple.
double standard_normal(std::mt19937_64& rng) {
  const double u1 = std::max(uniform01(rng), 1e-300);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

double round1(double v) { return std::round(v * 10.0) / 10.0; }

std::vector<std::size_t> pick_exactly(std::mt19937_64& rng, std::size_t population,
                                      std::size_t count) {
  std::vector<std::size_t> indices(population);
  for (std::size_t i = 0; i < population; ++i) indices[i] = i;
  shuffle_indices(indices, rng);
  indices.resize(count);
  return indices;
}

std::size_t exact_count(double fraction, std::size_t population) {
  return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(population)));
}

}  // namespace

Dataset synth_generate(const SynthSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);

  Dataset dataset;
  dataset.provenance = "raw";
  dataset.records.reserve(spec.record_count);
  for (std::size_t i = 0; i < spec.record_count; ++i) {
    ProjectRecord r;
    char id[16];
    std::snprintf(id, sizeof(id), "P%04zu", i + 1);
    r.project_id = id;
    const double fp = round1(uniform_between(rng, 10.0, 2000.0));
    const double mts = std::floor(uniform_between(rng, 1.0, 41.0));
    r.function_points = fp;
    r.max_team_size = mts;
    r.ub_business_units = std::floor(uniform_between(rng, 1.0, 51.0));
    r.ub_locations = std::floor(uniform_between(rng, 1.0, 101.0));
    r.ub_concurrent_users = std::floor(uniform_between(rng, 1.0, 501.0));
    r.development_platform = static_cast<Platform>(uniform_index(rng, kPlatformCount));
    // Effort is monotone in size and team: 6 h per function point plus 150 h
    // per team member, with optional Gaussian noise.
    const double noise = spec.noise_level > 0.0 ? spec.noise_level * standard_normal(rng) : 0.0;
    r.work_effort = std::max(1.0, round1(6.0 * fp + 150.0 * mts + noise));
    r.data_quality_rating = uniform_index(rng, 2) == 0 ? Rating::A : Rating::B;
    r.ufp_rating = uniform_index(rng, 2) == 0 ? Rating::A : Rating::B;
    r.resource_level = uniform_index(rng, 2) == 0 ? 1 : 2;
    r.development_type = DevelopmentType::NewDevelopment;
    dataset.records.push_back(std::move(r));
  }

  const std::size_t n = spec.record_count;
  for (std::size_t i : pick_exactly(rng, n, exact_count(spec.quality_violation_fraction, n))) {
    dataset.records[i].data_quality_rating = uniform_index(rng, 2) == 0 ? Rating::C : Rating::D;
  }
  for (std::size_t i : pick_exactly(rng, n, exact_count(spec.ufp_violation_fraction, n))) {
    dataset.records[i].ufp_rating = uniform_index(rng, 2) == 0 ? Rating::C : Rating::D;
  }
  for (std::size_t i : pick_exactly(rng, n, exact_count(spec.resource_violation_fraction, n))) {
    dataset.records[i].resource_level = uniform_index(rng, 2) == 0 ? 3 : 4;
  }
  for (std::size_t i : pick_exactly(rng, n, exact_count(spec.devtype_violation_fraction, n))) {
    dataset.records[i].development_type =
        uniform_index(rng, 2) == 0 ? DevelopmentType::Enhancement
                                   : DevelopmentType::Redevelopment;
  }

  const std::size_t missing_per_field = exact_count(spec.missing_rate, n);
  for (std::size_t f = 0; f < kNumericFeatureCount; ++f) {
    for (std::size_t i : pick_exactly(rng, n, missing_per_field)) {
      set_numeric_feature(dataset.records[i], f, std::nullopt);
    }
  }
  for (std::size_t i : pick_exactly(rng, n, missing_per_field)) {
    dataset.records[i].development_platform = std::nullopt;
  }
  for (std::size_t i : pick_exactly(rng, n, missing_per_field)) {
    dataset.records[i].work_effort = std::nullopt;
  }

  for (const auto& record : dataset.records) validate(record);
  return dataset;
}

}  // namespace fid
