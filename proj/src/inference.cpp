#include "fid/inference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fid/io.hpp"

namespace fid {

InferenceMode parse_inference_mode(const std::string& token) {
  if (token == "set") return InferenceMode::SetBased;
  if (token == "exemplar") return InferenceMode::ExemplarBased;
  throw std::invalid_argument("unknown inference mode: '" + token + "'");
}

std::string to_string(InferenceMode mode) {
  return mode == InferenceMode::SetBased ? "set" : "exemplar";
}

FeatureVector normalized_features(const ProjectRecord& raw,
                                  const NormalizationParams& params) {
  std::string missing;
  for (std::size_t f = 0; f < kNumericFeatureCount; ++f) {
    if (!numeric_feature(raw, f)) {
      missing += missing.empty() ? "" : ", ";
      missing += numeric_feature_name(f);
    }
  }
  if (!raw.development_platform) {
    missing += missing.empty() ? "" : ", ";
    missing += "development_platform";
  }
  if (!missing.empty()) {
    throw std::runtime_error("record '" + raw.project_id +
                             "': missing features: " + missing);
  }

  FeatureVector input;
  for (std::size_t f = 0; f < kNumericFeatureCount; ++f) {
    input.numeric[f] =
        NormalizationParams::apply_clamped(params.features[f], *numeric_feature(raw, f));
  }
  input.platform = *raw.development_platform;
  return input;
}

namespace {

struct PathWalker {
  const FuzzyTree& tree;
  const FeatureVector& input;
  std::vector<LeafActivation> active;
  int next_id = 0;

  void walk(const TreeNode& node, double activation) {
    const int node_id = next_id++;
    if (node.is_leaf()) {
      if (activation > 0.0) {
        active.push_back({node_id, activation, &node});
      }
      return;
    }
    const Feature attribute = *node.split_attribute;
    double covered = 0.0;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      const std::size_t edge = node.child_edges[i];
      double edge_membership;
      if (attribute == Feature::DevelopmentPlatform) {
        edge_membership = static_cast<std::size_t>(input.platform) == edge ? 1.0 : 0.0;
      } else {
        const auto& partition =
            tree.partitions.features[static_cast<std::size_t>(attribute)];
        edge_membership =
            membership(partition.set(edge), input.numeric[static_cast<std::size_t>(attribute)]);
      }
      covered += edge_membership;
      const double child_activation = tnorm(tree.config.tnorm, activation, edge_membership);
      if (child_activation > 0.0) {
        walk(*node.children[i], child_activation);
      } else {
        skip(*node.children[i]);
      }
    }
    // Membership flowing toward pruned zero-mass branches stays anchored at
    // this node, which stands in for the paper's null branch. The Ruspini
    // property makes 1 - covered the merged membership of the absent sets.
    const double null_membership = std::clamp(1.0 - covered, 0.0, 1.0);
    if (null_membership > 1e-12) {
      const double residual = tnorm(tree.config.tnorm, activation, null_membership);
      if (residual > 0.0) {
        active.push_back({node_id, residual, &node});
      }
    }
  }

  // Keeps preorder ids aligned with the serialized dump when subtrees carry
  // no activation.
  void skip(const TreeNode& node) {
    ++next_id;
    for (const auto& child : node.children) skip(*child);
  }
};

}  // namespace

std::vector<LeafActivation> leaf_activations(const FuzzyTree& tree,
                                             const FeatureVector& input) {
  if (!tree.root) throw std::runtime_error("leaf_activations: empty tree");
  PathWalker walker{tree, input, {}, 0};
  walker.walk(*tree.root, 1.0);
  return std::move(walker.active);
}

ClassActivation infer(const FuzzyTree& tree, const FeatureVector& input,
                      InferenceMode mode) {
  const auto leaves = leaf_activations(tree, input);
  if (leaves.empty()) {
    throw std::runtime_error("no leaf activation: record falls outside the tree's "
                             "training coverage");
  }
  const std::size_t k_classes = leaves.front().node->proportions.size();

  ClassActivation result;
  result.degrees.assign(k_classes, 0.0);
  if (mode == InferenceMode::SetBased) {
    // Each leaf acts as a fuzzy set: max-min composition.
    for (const auto& leaf : leaves) {
      for (std::size_t k = 0; k < k_classes; ++k) {
        result.degrees[k] = std::max(result.degrees[k],
                                     std::min(leaf.activation, leaf.node->proportions[k]));
      }
    }
  } else {
    // Each leaf acts as a mass-weighted super exemplar.
    double total = 0.0;
    for (const auto& leaf : leaves) {
      const double weight = leaf.activation * leaf.node->membership_mass;
      for (std::size_t k = 0; k < k_classes; ++k) {
        result.degrees[k] += weight * leaf.node->proportions[k];
        total += weight * leaf.node->proportions[k];
      }
    }
    if (total > 0.0) {
      for (double& degree : result.degrees) degree /= total;
    }
  }

  result.trace.reserve(leaves.size());
  for (const auto& leaf : leaves) {
    result.trace.push_back({leaf.leaf_id, leaf.activation});
  }
  std::sort(result.trace.begin(), result.trace.end(), [](const auto& x, const auto& y) {
    if (x.activation != y.activation) return x.activation > y.activation;
    return x.leaf_id < y.leaf_id;
  });
  return result;
}

double defuzzify(const ClassActivation& activation, const FuzzyPartition& effort_partition,
                 const NormalizationParams& params) {
  if (activation.degrees.size() != effort_partition.size()) {
    throw std::invalid_argument("defuzzify: activation size does not match partition");
  }
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < activation.degrees.size(); ++k) {
    const double a = activation.degrees[k];
    if (a < 0.0) throw std::domain_error("defuzzify: negative activation");
    weighted += a * centroid(effort_partition.set(k));
    total += a;
  }
  if (total <= 0.0) {
    throw std::domain_error("defuzzify: all-zero activation");
  }
  return params.denormalize_effort(weighted / total);
}

double predict_effort(const FuzzyTree& tree, const ProjectRecord& raw,
                      InferenceMode mode) {
  const FeatureVector input = normalized_features(raw, tree.normalization);
  const ClassActivation activation = infer(tree, input, mode);
  return defuzzify(activation, tree.partitions.effort, tree.normalization);
}

Prediction predict_record(const FuzzyTree& tree, const ProjectRecord& raw,
                          InferenceMode mode) {
  const FeatureVector input = normalized_features(raw, tree.normalization);
  const ClassActivation activation = infer(tree, input, mode);
  Prediction prediction;
  prediction.project_id = raw.project_id;
  prediction.hours = defuzzify(activation, tree.partitions.effort, tree.normalization);
  prediction.trace = activation.trace;
  return prediction;
}

std::string predictions_to_csv(std::span<const Prediction> predictions,
                               InferenceMode mode) {
  std::string text =
      "project_id,predicted_hours,mode,leaf_1,activation_1,leaf_2,activation_2,"
      "leaf_3,activation_3\n";
  for (const auto& prediction : predictions) {
    text += prediction.project_id;
    text += ',' + format_double(prediction.hours);
    text += ',' + to_string(mode);
    for (std::size_t t = 0; t < 3; ++t) {
      if (t < prediction.trace.size()) {
        text += ',' + std::to_string(prediction.trace[t].leaf_id);
        text += ',' + format_double(prediction.trace[t].activation);
      } else {
        text += ",,";
      }
    }
    text += '\n';
  }
  return text;
}

void write_predictions_csv(std::span<const Prediction> predictions, InferenceMode mode,
                           const std::filesystem::path& path) {
  atomic_write_text(path, predictions_to_csv(predictions, mode));
}

}  // namespace fid
