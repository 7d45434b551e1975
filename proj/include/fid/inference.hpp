#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fid/dataset.hpp"
#include "fid/induction.hpp"

namespace fid {

enum class InferenceMode { SetBased, ExemplarBased };

InferenceMode parse_inference_mode(const std::string& token);  // "set" | "exemplar"
std::string to_string(InferenceMode mode);

// A normalized, complete input: five numerics in [0,1] plus the platform.
struct FeatureVector {
  std::array<double, kNumericFeatureCount> numeric{};
  Platform platform = Platform::PC;
};

// Normalizes a raw record with the given params (clamped to [0,1]); throws
// std::runtime_error listing any missing input feature.
FeatureVector normalized_features(const ProjectRecord& raw,
                                  const NormalizationParams& params);

struct LeafActivation {
  int leaf_id;  // preorder node index, matching the serialized dump order
  double activation;
  const TreeNode* node;
};

// Activation of each leaf = t-norm composition of edge memberships along its
// path (nominal edges contribute 0 or 1). Zero-activation leaves are omitted.
// Membership flowing toward pruned zero-mass branches is kept as a null-branch
// entry anchored at the expanding node, so in-domain inputs always retain
// their full activation mass.
std::vector<LeafActivation> leaf_activations(const FuzzyTree& tree,
                                             const FeatureVector& input);

struct TraceEntry {
  int leaf_id;
  double activation;
};

struct ClassActivation {
  std::vector<double> degrees;      // one per effort class
  std::vector<TraceEntry> trace;    // active leaves, strongest first
};

// SetBased: a_k = max over leaves of min(activation, leaf p_k).
// ExemplarBased: a_k = sum over leaves of activation * mass * p_k, normalized
// to sum 1. All-zero leaf coverage throws std::runtime_error.
ClassActivation infer(const FuzzyTree& tree, const FeatureVector& input,
                      InferenceMode mode);

// Centroid defuzzification over the effort partition, then the inverse of the
// min-max mapping back to hours. All-zero activations throw std::domain_error.
double defuzzify(const ClassActivation& activation, const FuzzyPartition& effort_partition,
                 const NormalizationParams& params);

// normalize -> clamp -> infer -> defuzzify on a raw record.
double predict_effort(const FuzzyTree& tree, const ProjectRecord& raw,
                      InferenceMode mode);

struct Prediction {
  std::string project_id;
  double hours = 0.0;
  std::vector<TraceEntry> trace;  // strongest-first; CSV emits the top 3
};

Prediction predict_record(const FuzzyTree& tree, const ProjectRecord& raw,
                          InferenceMode mode);

std::string predictions_to_csv(std::span<const Prediction> predictions,
                               InferenceMode mode);
void write_predictions_csv(std::span<const Prediction> predictions, InferenceMode mode,
                           const std::filesystem::path& path);

}  // namespace fid
