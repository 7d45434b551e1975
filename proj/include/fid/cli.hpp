#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fid/dataset.hpp"
#include "fid/evaluation.hpp"
#include "fid/induction.hpp"
#include "fid/inference.hpp"

namespace fid {

// Flat key=value run configuration. Flags override file keys; unknown keys
// are rejected.
struct RunConfig {
  std::string input;
  std::string output;
  std::string tree_file;
  std::string partition_dump;  // optional audit dump path for cmd_train
  std::uint64_t seed = 42;
  double train_fraction = 74.0 / 151.0;
  TNormKind tnorm = TNormKind::Product;
  double threshold = 0.4;
  double leaf_mass = 0.0;
  double min_gain = 1e-6;
  std::array<std::size_t, kNumericFeatureCount> feature_set_counts = {7, 11, 9, 9, 9};
  std::size_t classes = 16;
  InferenceMode mode = InferenceMode::ExemplarBased;
  std::vector<double> sweep_thresholds = {0.1, 0.2, 0.3, 0.4, 0.5,
                                          0.6, 0.7, 0.8, 0.9};
  std::vector<std::size_t> sweep_classes = {11, 16};
  // Synthetic data controls.
  std::size_t synth_count = 151;
  double synth_missing_rate = 0.0;
  double synth_noise = 0.0;
  double synth_violation_quality = 0.0;
  double synth_violation_ufp = 0.0;
  double synth_violation_resource = 0.0;
  double synth_violation_devtype = 0.0;
};

// Throws std::invalid_argument on unknown keys or unparseable values.
void apply_config_file(RunConfig& config, const std::string& path);
void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value);

GrowthConfig growth_config_from(const RunConfig& config);
SynthSpec synth_spec_from(const RunConfig& config);

// Command bodies. Each throws on failure: std::logic_error for configuration
// problems, std::runtime_error for data/I-O problems.
void cmd_synth(const RunConfig& config);

struct PreprocessSummary {
  FilterSummary filter;
  ImputeSummary impute;
};
PreprocessSummary cmd_preprocess(const RunConfig& config);

TreeStats cmd_train(const RunConfig& config);

std::size_t cmd_predict(const RunConfig& config);  // rows written

EvaluationReport cmd_evaluate(const RunConfig& config);
EvaluationReport cmd_sweep(const RunConfig& config);

// Full argv-level entry point: parses subcommand and flags, runs the command,
// maps exceptions to exit codes (0 ok, 2 config error, 3 data error).
int run_cli(const std::vector<std::string>& args);

}  // namespace fid
