#include "fid/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fid/io.hpp"

namespace fid {

double mre(const PredictionPair& pair) {
  if (!(pair.actual > 0.0)) {
    throw std::domain_error("mre: actual effort must be positive (project '" +
                            pair.project_id + "')");
  }
  return std::abs(pair.actual - pair.estimated) / pair.actual;
}

double mmre(std::span<const PredictionPair> pairs) {
  if (pairs.empty()) {
    throw std::runtime_error("mmre: no prediction pairs");
  }
  double sum = 0.0;
  for (const auto& pair : pairs) sum += mre(pair);
  return sum / static_cast<double>(pairs.size()) * 100.0;
}

double pred(std::span<const PredictionPair> pairs, double p) {
  if (pairs.empty()) {
    throw std::runtime_error("pred: no prediction pairs");
  }
  if (!(p >= 0.0)) {
    throw std::invalid_argument("pred: level must be >= 0");
  }
  std::size_t hits = 0;
  for (const auto& pair : pairs) {
    if (mre(pair) <= p / 100.0) ++hits;  // inclusive bound
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(pairs.size());
}

Acceptability acceptable(double mmre_value, double pred25_value) {
  return Acceptability{mmre_value <= 25.0, pred25_value >= 75.0};
}

EvaluationReport threshold_sweep(const Dataset& dataset, const SweepRequest& request) {
  if (request.thresholds.empty() || request.class_counts.empty()) {
    throw std::invalid_argument("threshold_sweep: empty threshold or class-count list");
  }

  // One split per seed, shared by every cell, so the sweep isolates the
  // threshold and class-count effects.
  const SplitResult parts = split(dataset, request.train_fraction, request.seed);
  const NormalizedSplit normalized = normalize_minmax(parts.train, parts.test);

  std::vector<double> thresholds = request.thresholds;
  std::sort(thresholds.begin(), thresholds.end());
  std::vector<std::size_t> class_counts = request.class_counts;
  std::sort(class_counts.begin(), class_counts.end());

  EvaluationReport report;
  for (std::size_t k_classes : class_counts) {
    GrowthConfig config = request.base;
    config.effort_class_count = k_classes;
    config.fuzziness_control_threshold = thresholds.front();
    validate(config);
    const auto examples = fuzzify_training_set(normalized.train, config);

    for (double threshold : thresholds) {
      config.fuzziness_control_threshold = threshold;
      const FuzzyTree tree = grow_tree(examples, config, normalized.params);

      std::vector<PredictionPair> pairs;
      pairs.reserve(parts.test.records.size());
      for (const auto& record : parts.test.records) {
        PredictionPair pair;
        pair.project_id = record.project_id;
        if (!record.work_effort) {
          throw std::runtime_error("test record '" + record.project_id +
                                   "' has no actual effort");
        }
        pair.actual = *record.work_effort;
        pair.estimated = predict_effort(tree, record, request.mode);
        pairs.push_back(std::move(pair));
      }

      EvaluationRow row;
      row.threshold = threshold;
      row.class_count = k_classes;
      row.mmre_percent = mmre(pairs);
      row.pred25_percent = pred(pairs, 25.0);
      row.node_count = tree_stats(tree).node_count;
      row.seed = request.seed;
      report.rows.push_back(row);
    }
  }
  return report;
}

std::string report_to_csv(const EvaluationReport& report) {
  std::string text = "threshold,class_count,mmre,pred25,node_count,seed\n";
  for (const auto& row : report.rows) {
    text += format_double(row.threshold);
    text += ',' + std::to_string(row.class_count);
    text += ',' + format_fixed(row.mmre_percent, 4);
    text += ',' + format_fixed(row.pred25_percent, 4);
    text += ',' + std::to_string(row.node_count);
    text += ',' + std::to_string(row.seed);
    text += '\n';
  }
  return text;
}

void write_report_csv(const EvaluationReport& report, const std::filesystem::path& path) {
  atomic_write_text(path, report_to_csv(report));
}

void write_series_files(const EvaluationReport& report,
                        const std::filesystem::path& report_path) {
  std::vector<std::size_t> class_counts;
  for (const auto& row : report.rows) {
    if (std::find(class_counts.begin(), class_counts.end(), row.class_count) ==
        class_counts.end()) {
      class_counts.push_back(row.class_count);
    }
  }
  std::filesystem::path stem = report_path;
  stem.replace_extension();
  for (std::size_t k_classes : class_counts) {
    std::string mmre_series, pred_series;
    for (const auto& row : report.rows) {
      if (row.class_count != k_classes) continue;
      mmre_series += format_double(row.threshold) + ' ' +
                     format_fixed(row.mmre_percent, 4) + '\n';
      pred_series += format_double(row.threshold) + ' ' +
                     format_fixed(row.pred25_percent, 4) + '\n';
    }
    atomic_write_text(stem.string() + "_mmre_k" + std::to_string(k_classes) + ".txt",
                      mmre_series);
    atomic_write_text(stem.string() + "_pred25_k" + std::to_string(k_classes) + ".txt",
                      pred_series);
  }
}

}  // namespace fid
