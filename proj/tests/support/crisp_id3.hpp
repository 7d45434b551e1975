#pragma once

// Textbook ID3 on discrete data, used as the reference the fuzzy induction
// must reduce to when every membership is 0 or 1. Conventions are pinned to
// match the production tie-breaking exactly:
//   - entropy in base 2 from class counts,
//   - branch weights |S_v| / |S|,
//   - a candidate attribute replaces the incumbent only when its gain exceeds
//     the incumbent's by more than 1e-12 (earlier feature wins ties),
//   - expansion stops on pure nodes, exhausted attributes, or best gain below
//     a caller-supplied floor,
//   - attribute values absent from a node's subset produce no child,
//   - predicted class = majority (argmax) with ties to the smallest index.

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "fid/dataset.hpp"
#include "fid/induction.hpp"

namespace crisp {

struct CrispDataset {
  std::vector<std::size_t> feature_arity;  // values per feature
  std::size_t class_count = 0;
  struct Row {
    std::vector<std::size_t> values;
    std::size_t label;
  };
  std::vector<Row> rows;
};

struct CrispNode {
  bool leaf = false;
  int split_feature = -1;
  std::vector<std::size_t> class_counts;
  std::size_t majority = 0;
  std::vector<std::pair<std::size_t, std::unique_ptr<CrispNode>>> children;
};

struct CrispTree {
  std::unique_ptr<CrispNode> root;
};

CrispTree id3_build(const CrispDataset& data, double min_gain);
std::size_t id3_predict(const CrispTree& tree, const CrispDataset::Row& row);

// A random discrete classification instance together with its embedding into
// the production feature space: discrete value j of feature f maps onto the
// core midpoint of set j in an m_f-set uniform partition (so fuzzification is
// exactly one-hot), and label k maps onto the core midpoint of effort set k.
struct PairedInstance {
  CrispDataset crisp;
  fid::Dataset normalized;        // ProjectRecords carrying the embedded values
  fid::GrowthConfig config;       // T_h = 1, product t-norm, min gain 1e-9
  fid::NormalizationParams params;  // identity ranges
  std::vector<int> feature_map;   // crisp feature index -> fid::Feature index
};

PairedInstance make_paired_instance(std::mt19937_64& rng);

// Structural isomorphism between the fuzzy tree and the crisp oracle tree
// under the instance's feature mapping: same split attributes, same child
// edge sets, leaves aligned.
bool same_structure(const fid::TreeNode& fuzzy_node, const CrispNode& crisp_node,
                    const std::vector<int>& feature_map);

}  // namespace crisp
