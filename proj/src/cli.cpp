#include "fid/cli.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "fid/io.hpp"
#include "fid/model_io.hpp"

namespace fid {

namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t");
  return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ',')) items.push_back(trim(item));
  return items;
}

double config_double(const std::string& key, const std::string& value) {
  try {
    return parse_double(value);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': not a number: '" + value + "'");
  }
}

std::uint64_t config_unsigned(const std::string& key, const std::string& value) {
  try {
    const long long parsed = parse_integer(value);
    if (parsed < 0) throw std::runtime_error("negative");
    return static_cast<std::uint64_t>(parsed);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': not a non-negative integer: '" +
                                value + "'");
  }
}

}  // namespace

void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "input") config.input = value;
  else if (key == "out") config.output = value;
  else if (key == "tree") config.tree_file = value;
  else if (key == "dump_partitions") config.partition_dump = value;
  else if (key == "seed") config.seed = config_unsigned(key, value);
  else if (key == "train_fraction") config.train_fraction = config_double(key, value);
  else if (key == "tnorm") config.tnorm = parse_tnorm(value);
  else if (key == "threshold") config.threshold = config_double(key, value);
  else if (key == "leaf_mass") config.leaf_mass = config_double(key, value);
  else if (key == "min_gain") config.min_gain = config_double(key, value);
  else if (key == "classes") config.classes = static_cast<std::size_t>(config_unsigned(key, value));
  else if (key == "mode") config.mode = parse_inference_mode(value);
  else if (key == "sweep_thresholds") {
    config.sweep_thresholds.clear();
    for (const auto& item : split_list(value)) {
      config.sweep_thresholds.push_back(config_double(key, item));
    }
  } else if (key == "sweep_classes") {
    config.sweep_classes.clear();
    for (const auto& item : split_list(value)) {
      config.sweep_classes.push_back(static_cast<std::size_t>(config_unsigned(key, item)));
    }
  } else if (key == "sets_function_points") {
    config.feature_set_counts[0] = static_cast<std::size_t>(config_unsigned(key, value));
  } else if (key == "sets_max_team_size") {
    config.feature_set_counts[1] = static_cast<std::size_t>(config_unsigned(key, value));
  } else if (key == "sets_ub_business_units") {
    config.feature_set_counts[2] = static_cast<std::size_t>(config_unsigned(key, value));
  } else if (key == "sets_ub_locations") {
    config.feature_set_counts[3] = static_cast<std::size_t>(config_unsigned(key, value));
  } else if (key == "sets_ub_concurrent_users") {
    config.feature_set_counts[4] = static_cast<std::size_t>(config_unsigned(key, value));
  } else if (key == "synth_count") {
    config.synth_count = static_cast<std::size_t>(config_unsigned(key, value));
  } else if (key == "synth_missing_rate") {
    config.synth_missing_rate = config_double(key, value);
  } else if (key == "synth_noise") {
    config.synth_noise = config_double(key, value);
  } else if (key == "synth_violation_quality") {
    config.synth_violation_quality = config_double(key, value);
  } else if (key == "synth_violation_ufp") {
    config.synth_violation_ufp = config_double(key, value);
  } else if (key == "synth_violation_resource") {
    config.synth_violation_resource = config_double(key, value);
  } else if (key == "synth_violation_devtype") {
    config.synth_violation_devtype = config_double(key, value);
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::string content;
  try {
    content = read_text_file(path);
  } catch (const std::exception& error) {
    // A missing config file is a configuration problem, not a data problem.
    throw std::invalid_argument(error.what());
  }
  std::istringstream stream(content);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const auto equals = trimmed.find('=');
    if (equals == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(line_number) +
                                  ": expected 'key = value'");
    }
    apply_config_entry(config, trim(trimmed.substr(0, equals)),
                       trim(trimmed.substr(equals + 1)));
  }
}

GrowthConfig growth_config_from(const RunConfig& config) {
  GrowthConfig growth;
  growth.tnorm = config.tnorm;
  growth.fuzziness_control_threshold = config.threshold;
  growth.leaf_decision_threshold = config.leaf_mass;
  growth.min_information_gain = config.min_gain;
  growth.feature_set_counts = config.feature_set_counts;
  growth.effort_class_count = config.classes;
  return growth;
}

SynthSpec synth_spec_from(const RunConfig& config) {
  SynthSpec spec;
  spec.record_count = config.synth_count;
  spec.missing_rate = config.synth_missing_rate;
  spec.noise_level = config.synth_noise;
  spec.seed = config.seed;
  spec.quality_violation_fraction = config.synth_violation_quality;
  spec.ufp_violation_fraction = config.synth_violation_ufp;
  spec.resource_violation_fraction = config.synth_violation_resource;
  spec.devtype_violation_fraction = config.synth_violation_devtype;
  return spec;
}

namespace {

void require(const std::string& value, const char* what) {
  if (value.empty()) {
    throw std::invalid_argument(std::string("missing required ") + what);
  }
}

}  // namespace

void cmd_synth(const RunConfig& config) {
  require(config.output, "output path (--out)");
  const SynthSpec spec = synth_spec_from(config);
  validate(spec);
  const Dataset dataset = synth_generate(spec);
  write_csv(dataset, config.output);
  std::cout << "wrote " << dataset.records.size() << " records to " << config.output
            << "\n";
}

PreprocessSummary cmd_preprocess(const RunConfig& config) {
  require(config.input, "input path (--input)");
  require(config.output, "output path (--out)");

  const Dataset raw = load_csv(config.input);
  PreprocessSummary summary;
  const Dataset filtered = filter_cases(raw, &summary.filter);
  const Dataset imputed = impute_mmsi(filtered, &summary.impute);
  write_csv(imputed, config.output);

  std::cout << "rows read:            " << summary.filter.total << "\n"
            << "discarded by criterion\n"
            << "  data_quality_rating: " << summary.filter.data_quality << "\n"
            << "  ufp_rating:          " << summary.filter.ufp << "\n"
            << "  resource_level:      " << summary.filter.resource_level << "\n"
            << "  development_type:    " << summary.filter.development_type << "\n"
            << "kept after filtering: " << summary.filter.kept << "\n"
            << "dropped (no effort):  " << summary.impute.dropped_missing_effort << "\n";
  std::size_t filled = summary.impute.platform_cells_filled;
  for (std::size_t count : summary.impute.numeric_cells_filled) filled += count;
  std::cout << "imputed cells:        " << filled << "\n"
            << "wrote " << imputed.records.size() << " records to " << config.output
            << "\n";
  if (imputed.records.empty()) {
    std::cerr << "warning: no records survived preprocessing\n";
  }
  return summary;
}

TreeStats cmd_train(const RunConfig& config) {
  require(config.input, "input path (--input)");
  require(config.output, "output path (--out)");

  const Dataset train = load_csv(config.input);
  const NormalizedSplit normalized = normalize_minmax(train, Dataset{});
  const GrowthConfig growth = growth_config_from(config);
  const auto examples = fuzzify_training_set(normalized.train, growth);
  const FuzzyTree tree = grow_tree(examples, growth, normalized.params);
  save_model(tree, config.output);

  if (!config.partition_dump.empty()) {
    std::string dump;
    for (std::size_t f = 0; f < kNumericFeatureCount; ++f) {
      dump += "# " + std::string(numeric_feature_name(f)) + "\n";
      dump += partition_to_text(tree.partitions.features[f]);
    }
    dump += "# work_effort\n";
    dump += partition_to_text(tree.partitions.effort);
    atomic_write_text(config.partition_dump, dump);
  }

  const TreeStats stats = tree_stats(tree);
  std::cout << "trained on " << train.records.size() << " records\n"
            << "nodes: " << stats.node_count << "  leaves: " << stats.leaf_count
            << "  max depth: " << stats.max_depth << "\n";
  for (const auto& [criterion, count] : stats.leaf_criteria) {
    std::cout << "  " << to_string(criterion) << ": " << count << "\n";
  }
  std::cout << "model written to " << config.output << "\n";
  return stats;
}

std::size_t cmd_predict(const RunConfig& config) {
  require(config.tree_file, "model path (--tree)");
  require(config.input, "input path (--input)");
  require(config.output, "output path (--out)");

  const FuzzyTree tree = load_model(config.tree_file);
  const Dataset records = load_csv(config.input);

  std::vector<Prediction> predictions;
  std::vector<std::string> row_errors;
  predictions.reserve(records.records.size());
  for (const auto& record : records.records) {
    try {
      predictions.push_back(predict_record(tree, record, config.mode));
    } catch (const std::exception& error) {
      row_errors.push_back(error.what());
    }
  }
  if (!row_errors.empty()) {
    for (const auto& row_error : row_errors) std::cerr << row_error << "\n";
    throw std::runtime_error(std::to_string(row_errors.size()) +
                             " record(s) could not be predicted");
  }
  write_predictions_csv(predictions, config.mode, config.output);
  std::cout << "wrote " << predictions.size() << " predictions to " << config.output
            << "\n";
  return predictions.size();
}

namespace {

EvaluationReport run_sweep(const RunConfig& config, std::vector<double> thresholds,
                           std::vector<std::size_t> class_counts) {
  require(config.input, "input path (--input)");
  require(config.output, "output path (--out)");

  const Dataset dataset = load_csv(config.input);
  SweepRequest request;
  request.thresholds = std::move(thresholds);
  request.class_counts = std::move(class_counts);
  request.seed = config.seed;
  request.mode = config.mode;
  request.train_fraction = config.train_fraction;
  request.base = growth_config_from(config);

  const EvaluationReport report = threshold_sweep(dataset, request);
  write_report_csv(report, config.output);
  write_series_files(report, config.output);

  std::cout << "threshold  K  MMRE%    Pred(25)%  nodes  acceptable\n";
  for (const auto& row : report.rows) {
    const Acceptability flags = acceptable(row.mmre_percent, row.pred25_percent);
    std::printf("%9s %2zu  %-8s %-9s %5zu  %s/%s\n",
                format_double(row.threshold).c_str(), row.class_count,
                format_fixed(row.mmre_percent, 2).c_str(),
                format_fixed(row.pred25_percent, 2).c_str(), row.node_count,
                flags.mmre_ok ? "yes" : "no", flags.pred_ok ? "yes" : "no");
  }
  std::cout << "report written to " << config.output << "\n";
  return report;
}

}  // namespace

EvaluationReport cmd_evaluate(const RunConfig& config) {
  return run_sweep(config, {config.threshold}, {config.classes});
}

EvaluationReport cmd_sweep(const RunConfig& config) {
  return run_sweep(config, config.sweep_thresholds, config.sweep_classes);
}

}  // namespace fid
