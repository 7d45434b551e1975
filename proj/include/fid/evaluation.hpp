#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fid/dataset.hpp"
#include "fid/induction.hpp"
#include "fid/inference.hpp"

namespace fid {

struct PredictionPair {
  std::string project_id;
  double actual = 0.0;     // hours, > 0
  double estimated = 0.0;  // hours, >= 0
};

// |actual - estimated| / actual. Non-positive actual throws std::domain_error.
double mre(const PredictionPair& pair);

// Mean MRE as a percentage. Empty input throws std::runtime_error.
double mmre(std::span<const PredictionPair> pairs);

// Percentage of pairs with MRE <= p/100 (inclusive). Default level p = 25.
double pred(std::span<const PredictionPair> pairs, double p = 25.0);

struct Acceptability {
  bool mmre_ok = false;  // MMRE <= 25
  bool pred_ok = false;  // Pred(25) >= 75
};

Acceptability acceptable(double mmre_value, double pred25_value);

struct EvaluationRow {
  double threshold = 0.0;
  std::size_t class_count = 0;
  double mmre_percent = 0.0;
  double pred25_percent = 0.0;
  std::size_t node_count = 0;
  std::uint64_t seed = 0;
};

struct EvaluationReport {
  std::vector<EvaluationRow> rows;  // ordered by (class_count, threshold)
};

struct SweepRequest {
  std::vector<double> thresholds = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<std::size_t> class_counts = {11, 16};
  std::uint64_t seed = 42;
  InferenceMode mode = InferenceMode::ExemplarBased;
  double train_fraction = 74.0 / 151.0;
  GrowthConfig base;  // threshold and class count are overridden per cell
};

// One fixed split per seed, shared by every (threshold, class count) cell:
// split -> normalize on train -> grow -> predict the raw test records.
// Input must already be filtered and imputed.
EvaluationReport threshold_sweep(const Dataset& dataset, const SweepRequest& request);

std::string report_to_csv(const EvaluationReport& report);
void write_report_csv(const EvaluationReport& report, const std::filesystem::path& path);

// Plot series per class count: "<stem>_mmre_k<K>.txt" and
// "<stem>_pred25_k<K>.txt", one "threshold value" pair per line.
void write_series_files(const EvaluationReport& report,
                        const std::filesystem::path& report_path);

}  // namespace fid
