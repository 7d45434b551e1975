#include "fid/induction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fid {

void validate(const GrowthConfig& config) {
  if (!(config.fuzziness_control_threshold > 0.0 &&
        config.fuzziness_control_threshold <= 1.0)) {
    throw std::invalid_argument("fuzziness control threshold must lie in (0,1]");
  }
  if (!(config.leaf_decision_threshold >= 0.0)) {
    throw std::invalid_argument("leaf decision threshold must be >= 0");
  }
  if (!(config.min_information_gain >= 0.0)) {
    throw std::invalid_argument("minimum information gain must be >= 0");
  }
  for (std::size_t count : config.feature_set_counts) {
    if (count < 1) throw std::invalid_argument("feature set counts must be >= 1");
  }
  if (config.effort_class_count < 2) {
    throw std::invalid_argument("effort class count must be >= 2");
  }
}

FeaturePartitions make_partitions(const GrowthConfig& config) {
  FeaturePartitions partitions;
  for (std::size_t f = 0; f < kNumericFeatureCount; ++f) {
    partitions.features[f] = build_uniform_partition(config.feature_set_counts[f]);
  }
  partitions.effort = build_uniform_partition(config.effort_class_count);
  return partitions;
}

std::vector<FuzzifiedExample> fuzzify_training_set(const Dataset& normalized_train,
                                                   const GrowthConfig& config) {
  validate(config);
  const FeaturePartitions partitions = make_partitions(config);

  std::vector<FuzzifiedExample> examples;
  examples.reserve(normalized_train.records.size());
  for (const auto& record : normalized_train.records) {
    FuzzifiedExample example;
    for (std::size_t f = 0; f < kNumericFeatureCount; ++f) {
      const auto value = numeric_feature(record, f);
      if (!value) {
        throw std::runtime_error("record '" + record.project_id + "': missing " +
                                 std::string(numeric_feature_name(f)));
      }
      example.feature_memberships[f] = fuzzify(partitions.features[f], *value);
    }
    if (!record.development_platform) {
      throw std::runtime_error("record '" + record.project_id +
                               "': missing development_platform");
    }
    example.platform = *record.development_platform;
    if (!record.work_effort) {
      throw std::runtime_error("record '" + record.project_id + "': missing work_effort");
    }
    example.class_memberships = fuzzify(partitions.effort, *record.work_effort);
    examples.push_back(std::move(example));
  }
  return examples;
}

namespace {

double set_membership_of(const FuzzifiedExample& example, Feature attribute,
                         std::size_t set_index) {
  if (attribute == Feature::DevelopmentPlatform) {
    return static_cast<std::size_t>(example.platform) == set_index ? 1.0 : 0.0;
  }
  return example.feature_memberships[static_cast<std::size_t>(attribute)][set_index];
}

std::size_t branch_count_of(const FuzzifiedExample& example, Feature attribute) {
  if (attribute == Feature::DevelopmentPlatform) return kPlatformCount;
  return example.feature_memberships[static_cast<std::size_t>(attribute)].size();
}

double conj(TNormKind kind, double a, double b) {
  return kind == TNormKind::Product ? a * b : std::min(a, b);
}

}  // namespace

std::vector<double> class_proportions(std::span<const FuzzifiedExample> examples,
                                      std::span<const double> node_memberships,
                                      TNormKind tnorm_kind) {
  if (examples.empty() || node_memberships.size() != examples.size()) {
    throw std::invalid_argument("class_proportions: examples and memberships disagree");
  }
  const std::size_t k_classes = examples.front().class_memberships.size();
  std::vector<double> proportions(k_classes, 0.0);
  double denominator = 0.0;
  for (std::size_t k = 0; k < k_classes; ++k) {
    double numerator = 0.0;
    for (std::size_t i = 0; i < examples.size(); ++i) {
      numerator += conj(tnorm_kind, examples[i].class_memberships[k], node_memberships[i]);
    }
    proportions[k] = numerator;
    denominator += numerator;
  }
  if (denominator <= 0.0) {
    throw std::domain_error("class_proportions: zero membership mass (empty node)");
  }
  for (double& p : proportions) p /= denominator;
  return proportions;
}

double fuzzy_entropy(std::span<const double> proportions) {
  double entropy = 0.0;
  for (double p : proportions) {
    if (p < 0.0) throw std::domain_error("fuzzy_entropy: negative proportion");
    if (p > 0.0) entropy -= p * std::log2(p);
  }
  return entropy;
}

double information_gain(std::span<const FuzzifiedExample> examples,
                        std::span<const double> node_memberships, Feature attribute,
                        TNormKind tnorm_kind) {
  const double parent_entropy =
      fuzzy_entropy(class_proportions(examples, node_memberships, tnorm_kind));

  const std::size_t branches = branch_count_of(examples.front(), attribute);
  std::vector<std::vector<double>> child_memberships(
      branches, std::vector<double>(examples.size(), 0.0));
  std::vector<double> child_mass(branches, 0.0);
  for (std::size_t l = 0; l < branches; ++l) {
    for (std::size_t i = 0; i < examples.size(); ++i) {
      const double mu = conj(tnorm_kind, node_memberships[i],
                             set_membership_of(examples[i], attribute, l));
      child_memberships[l][i] = mu;
      child_mass[l] += mu;
    }
  }
  double total_mass = 0.0;
  for (double mass : child_mass) total_mass += mass;
  if (total_mass <= 0.0) return 0.0;

  double weighted_child_entropy = 0.0;
  for (std::size_t l = 0; l < branches; ++l) {
    if (child_mass[l] <= 0.0) continue;
    const double child_entropy =
        fuzzy_entropy(class_proportions(examples, child_memberships[l], tnorm_kind));
    weighted_child_entropy += (child_mass[l] / total_mass) * child_entropy;
  }
  return parent_entropy - weighted_child_entropy;
}

namespace {

constexpr double kGainTieTolerance = 1e-12;

struct Grower {
  std::span<const FuzzifiedExample> examples;
  const GrowthConfig& config;

  std::unique_ptr<TreeNode> grow(std::vector<double> memberships, double mass,
                                 unsigned used_attributes, int depth) {
    auto node = std::make_unique<TreeNode>();
    node->membership_mass = mass;
    node->depth = depth;
    node->proportions = class_proportions(examples, memberships, config.tnorm);

    // Stop criteria, checked in the documented order.
    const double top =
        *std::max_element(node->proportions.begin(), node->proportions.end());
    if (top >= config.fuzziness_control_threshold) {
      node->leaf_criterion = StopCriterion::ClassThreshold;
      return node;
    }
    if (used_attributes == (1u << kFeatureCount) - 1u) {
      node->leaf_criterion = StopCriterion::AttributesExhausted;
      return node;
    }
    if (mass < config.leaf_decision_threshold) {
      node->leaf_criterion = StopCriterion::MassBelowThreshold;
      return node;
    }

    int best_attribute = -1;
    double best_gain = 0.0;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      if (used_attributes & (1u << f)) continue;
      const double gain = information_gain(examples, memberships,
                                           static_cast<Feature>(f), config.tnorm);
      if (best_attribute < 0 || gain > best_gain + kGainTieTolerance) {
        best_attribute = static_cast<int>(f);
        best_gain = gain;
      }
    }
    if (best_gain < config.min_information_gain) {
      node->leaf_criterion = StopCriterion::GainBelowMinimum;
      return node;
    }

    const auto attribute = static_cast<Feature>(best_attribute);
    node->split_attribute = attribute;
    const std::size_t branches = branch_count_of(examples.front(), attribute);
    for (std::size_t l = 0; l < branches; ++l) {
      std::vector<double> child_memberships(examples.size());
      double child_mass = 0.0;
      for (std::size_t i = 0; i < examples.size(); ++i) {
        child_memberships[i] = conj(config.tnorm, memberships[i],
                                    set_membership_of(examples[i], attribute, l));
        child_mass += child_memberships[i];
      }
      if (child_mass <= 0.0) continue;  // zero-mass children are pruned
      node->child_edges.push_back(l);
      node->children.push_back(grow(std::move(child_memberships), child_mass,
                                    used_attributes | (1u << best_attribute), depth + 1));
    }
    return node;
  }
};

}  // namespace

FuzzyTree grow_tree(std::span<const FuzzifiedExample> examples,
                    const GrowthConfig& config,
                    const NormalizationParams& normalization) {
  validate(config);
  if (examples.empty()) {
    throw std::runtime_error("grow_tree: empty example set");
  }
  for (const auto& example : examples) {
    if (example.class_memberships.size() != config.effort_class_count) {
      throw std::runtime_error("grow_tree: class membership size disagrees with the "
                               "configured class count");
    }
    for (std::size_t f = 0; f < kNumericFeatureCount; ++f) {
      if (example.feature_memberships[f].size() != config.feature_set_counts[f]) {
        throw std::runtime_error("grow_tree: membership vector size for " +
                                 std::string(numeric_feature_name(f)) +
                                 " disagrees with the configured set count");
      }
    }
  }

  std::vector<double> memberships(examples.size(), 1.0);
  double mass = static_cast<double>(examples.size());

  FuzzyTree tree;
  tree.config = config;
  tree.partitions = make_partitions(config);
  tree.normalization = normalization;
  Grower grower{examples, config};
  tree.root = grower.grow(std::move(memberships), mass, 0u, 0);
  return tree;
}

std::string to_string(StopCriterion criterion) {
  switch (criterion) {
    case StopCriterion::ClassThreshold: return "class_threshold";
    case StopCriterion::AttributesExhausted: return "attributes_exhausted";
    case StopCriterion::MassBelowThreshold: return "mass_below_threshold";
    case StopCriterion::GainBelowMinimum: return "gain_below_minimum";
  }
  throw std::logic_error("bad StopCriterion");
}

StopCriterion parse_stop_criterion(std::string_view token) {
  if (token == "class_threshold") return StopCriterion::ClassThreshold;
  if (token == "attributes_exhausted") return StopCriterion::AttributesExhausted;
  if (token == "mass_below_threshold") return StopCriterion::MassBelowThreshold;
  if (token == "gain_below_minimum") return StopCriterion::GainBelowMinimum;
  throw std::invalid_argument("unknown stop criterion '" + std::string(token) + "'");
}

namespace {

void collect_stats(const TreeNode& node, TreeStats& stats) {
  ++stats.node_count;
  stats.max_depth = std::max(stats.max_depth, node.depth);
  if (node.is_leaf()) {
    ++stats.leaf_count;
    ++stats.leaf_criteria[*node.leaf_criterion];
    return;
  }
  for (const auto& child : node.children) collect_stats(*child, stats);
}

}  // namespace

TreeStats tree_stats(const FuzzyTree& tree) {
  TreeStats stats;
  if (tree.root) collect_stats(*tree.root, stats);
  return stats;
}

}  // namespace fid
