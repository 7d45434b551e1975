#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "fid/dataset.hpp"
#include "fid/fuzzy.hpp"

namespace fid {

struct GrowthConfig {
  TNormKind tnorm = TNormKind::Product;
  // A branch becomes a leaf once one class proportion reaches this value.
  double fuzziness_control_threshold = 0.4;
  // Minimum membership mass a node needs to keep expanding.
  double leaf_decision_threshold = 0.0;
  // Expansion stops when the best attribute gain falls below this floor.
  double min_information_gain = 1e-6;
  std::array<std::size_t, kNumericFeatureCount> feature_set_counts = {7, 11, 9, 9, 9};
  std::size_t effort_class_count = 16;
};

void validate(const GrowthConfig& config);

struct FeaturePartitions {
  std::array<FuzzyPartition, kNumericFeatureCount> features;
  FuzzyPartition effort;
};

// Uniform partitions for every numeric feature and the effort classes,
// derived purely from the config counts.
FeaturePartitions make_partitions(const GrowthConfig& config);

// One training record after fuzzification: per-feature membership vectors,
// the nominal platform value, and class memberships of the normalized effort.
struct FuzzifiedExample {
  std::array<std::vector<double>, kNumericFeatureCount> feature_memberships;
  Platform platform = Platform::PC;
  std::vector<double> class_memberships;
};

// Requires a normalized, complete training set (no missing values).
std::vector<FuzzifiedExample> fuzzify_training_set(const Dataset& normalized_train,
                                                   const GrowthConfig& config);

// p_k = sum_i T(u_k(y_i), mu_i) / sum_c sum_i T(u_c(y_i), mu_i).
// Zero total mass throws std::domain_error (empty-node condition).
std::vector<double> class_proportions(std::span<const FuzzifiedExample> examples,
                                      std::span<const double> node_memberships,
                                      TNormKind tnorm_kind);

// H = -sum_k p_k log2(p_k), with 0*log2(0) = 0. Negative entries throw.
double fuzzy_entropy(std::span<const double> proportions);

// G = H_node - sum_l w_l * H_l over the attribute's fuzzy sets (or platform
// values); child memberships are T(mu_i, u_l(x_i)) and w_l is the child's
// share of total child mass. Zero-mass children contribute nothing.
double information_gain(std::span<const FuzzifiedExample> examples,
                        std::span<const double> node_memberships, Feature attribute,
                        TNormKind tnorm_kind);

enum class StopCriterion {
  ClassThreshold,       // max_k p_k >= fuzziness control threshold
  AttributesExhausted,  // every attribute already used on the path
  MassBelowThreshold,   // membership mass < leaf decision threshold
  GainBelowMinimum,     // best attribute gain < minimum information gain
};

std::string to_string(StopCriterion criterion);
StopCriterion parse_stop_criterion(std::string_view token);

struct TreeNode {
  std::vector<double> proportions;  // class-proportion vector p
  double membership_mass = 0.0;
  int depth = 0;
  std::optional<Feature> split_attribute;       // internal nodes only
  std::optional<StopCriterion> leaf_criterion;  // leaves only
  // Sparse children: edge i carries the fuzzy-set (or platform) index.
  // Zero-mass children are pruned at growth time.
  std::vector<std::size_t> child_edges;
  std::vector<std::unique_ptr<TreeNode>> children;

  bool is_leaf() const { return leaf_criterion.has_value(); }
};

struct FuzzyTree {
  GrowthConfig config;
  FeaturePartitions partitions;
  NormalizationParams normalization;
  std::unique_ptr<TreeNode> root;
};

// Recursive fuzzy ID3 growth. Splits on the attribute with maximal gain
// (ties within 1e-12 keep the earlier feature in the fixed order); stop
// criteria are checked in the order listed in StopCriterion. Empty example
// sets or zero root mass throw std::runtime_error.
FuzzyTree grow_tree(std::span<const FuzzifiedExample> examples,
                    const GrowthConfig& config,
                    const NormalizationParams& normalization);

struct TreeStats {
  std::size_t node_count = 0;
  std::size_t leaf_count = 0;
  int max_depth = 0;
  std::map<StopCriterion, std::size_t> leaf_criteria;
};

TreeStats tree_stats(const FuzzyTree& tree);

}  // namespace fid
