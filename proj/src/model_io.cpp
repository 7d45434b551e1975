#include "fid/model_io.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

#include "fid/io.hpp"

namespace fid {

namespace {

constexpr std::string_view kMagic = "fidtree model 1";

std::string proportions_to_text(const std::vector<double>& proportions) {
  std::string text;
  for (std::size_t k = 0; k < proportions.size(); ++k) {
    if (k > 0) text += ',';
    text += format_double(proportions[k]);
  }
  return text;
}

std::string edge_label(const FuzzyTree& tree, Feature parent_attribute,
                       std::size_t edge) {
  if (parent_attribute == Feature::DevelopmentPlatform) {
    return to_string(static_cast<Platform>(edge));
  }
  return tree.partitions.features[static_cast<std::size_t>(parent_attribute)]
      .set(edge)
      .label;
}

void append_node(const FuzzyTree& tree, const TreeNode& node, const std::string& edge,
                 std::string& out) {
  out.append(static_cast<std::size_t>(node.depth) * 2, ' ');
  out += edge;
  if (node.is_leaf()) {
    out += " leaf=" + to_string(*node.leaf_criterion);
  } else {
    out += " split=" + std::string(feature_name(*node.split_attribute));
  }
  out += " mass=" + format_double(node.membership_mass);
  out += " p=" + proportions_to_text(node.proportions);
  out += '\n';
  if (node.is_leaf()) return;
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    append_node(tree, *node.children[i],
                edge_label(tree, *node.split_attribute, node.child_edges[i]), out);
  }
}

}  // namespace

std::string tree_to_text(const FuzzyTree& tree) {
  std::string text;
  if (tree.root) append_node(tree, *tree.root, "root", text);
  return text;
}

std::string model_to_text(const FuzzyTree& tree) {
  std::string text(kMagic);
  text += '\n';
  text += "tnorm " + to_string(tree.config.tnorm) + '\n';
  text += "threshold " + format_double(tree.config.fuzziness_control_threshold) + '\n';
  text += "leaf_mass " + format_double(tree.config.leaf_decision_threshold) + '\n';
  text += "min_gain " + format_double(tree.config.min_information_gain) + '\n';
  text += "classes " + std::to_string(tree.config.effort_class_count) + '\n';
  text += "sets";
  for (std::size_t count : tree.config.feature_set_counts) {
    text += ' ' + std::to_string(count);
  }
  text += '\n';
  for (std::size_t f = 0; f < kNumericFeatureCount; ++f) {
    text += "normalization " + std::string(numeric_feature_name(f)) + ' ' +
            format_double(tree.normalization.features[f].min) + ' ' +
            format_double(tree.normalization.features[f].max) + '\n';
  }
  text += "normalization work_effort " + format_double(tree.normalization.effort.min) +
          ' ' + format_double(tree.normalization.effort.max) + '\n';
  text += "tree\n";
  text += tree_to_text(tree);
  return text;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream stream(line);
  std::vector<std::string> tokens;
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

struct NodeLine {
  int depth = 0;
  std::string edge;
  bool leaf = false;
  std::string tag;  // criterion or feature name
  double mass = 0.0;
  std::vector<double> proportions;
};

NodeLine parse_node_line(const std::string& line, std::size_t line_number) {
  NodeLine parsed;
  std::size_t indent = 0;
  while (indent < line.size() && line[indent] == ' ') ++indent;
  if (indent % 2 != 0) {
    throw std::runtime_error("model line " + std::to_string(line_number) +
                             ": odd indentation");
  }
  parsed.depth = static_cast<int>(indent / 2);

  const auto tokens = tokenize(line);
  if (tokens.size() != 4) {
    throw std::runtime_error("model line " + std::to_string(line_number) +
                             ": expected 'edge kind mass p'");
  }
  parsed.edge = tokens[0];
  const std::string& kind = tokens[1];
  if (kind.rfind("leaf=", 0) == 0) {
    parsed.leaf = true;
    parsed.tag = kind.substr(5);
  } else if (kind.rfind("split=", 0) == 0) {
    parsed.leaf = false;
    parsed.tag = kind.substr(6);
  } else {
    throw std::runtime_error("model line " + std::to_string(line_number) +
                             ": expected leaf= or split=");
  }
  if (tokens[2].rfind("mass=", 0) != 0 || tokens[3].rfind("p=", 0) != 0) {
    throw std::runtime_error("model line " + std::to_string(line_number) +
                             ": expected mass= and p= fields");
  }
  parsed.mass = parse_double(std::string_view(tokens[2]).substr(5));
  std::string_view vector_text = std::string_view(tokens[3]).substr(2);
  while (!vector_text.empty()) {
    const std::size_t comma = vector_text.find(',');
    parsed.proportions.push_back(parse_double(vector_text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    vector_text.remove_prefix(comma + 1);
  }
  return parsed;
}

std::size_t edge_index_for(const FuzzyTree& tree, Feature parent_attribute,
                           const std::string& label, std::size_t line_number) {
  if (parent_attribute == Feature::DevelopmentPlatform) {
    return static_cast<std::size_t>(parse_platform(label));
  }
  const auto& partition =
      tree.partitions.features[static_cast<std::size_t>(parent_attribute)];
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (partition.set(i).label == label) return i;
  }
  throw std::runtime_error("model line " + std::to_string(line_number) +
                           ": unknown edge label '" + label + "'");
}

}  // namespace

FuzzyTree model_from_text(const std::string& text) {
  std::istringstream stream(text);
  std::string line;
  std::size_t line_number = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(stream, line)) return false;
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line() || line != kMagic) {
    throw std::runtime_error("not a fidtree model file");
  }

  FuzzyTree tree;
  bool in_tree = false;
  while (next_line()) {
    if (line.empty()) continue;
    if (line == "tree") {
      in_tree = true;
      break;
    }
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& key = tokens[0];
    try {
      if (key == "tnorm" && tokens.size() == 2) {
        tree.config.tnorm = parse_tnorm(tokens[1]);
      } else if (key == "threshold" && tokens.size() == 2) {
        tree.config.fuzziness_control_threshold = parse_double(tokens[1]);
      } else if (key == "leaf_mass" && tokens.size() == 2) {
        tree.config.leaf_decision_threshold = parse_double(tokens[1]);
      } else if (key == "min_gain" && tokens.size() == 2) {
        tree.config.min_information_gain = parse_double(tokens[1]);
      } else if (key == "classes" && tokens.size() == 2) {
        tree.config.effort_class_count = static_cast<std::size_t>(parse_integer(tokens[1]));
      } else if (key == "sets" && tokens.size() == 1 + kNumericFeatureCount) {
        for (std::size_t f = 0; f < kNumericFeatureCount; ++f) {
          tree.config.feature_set_counts[f] =
              static_cast<std::size_t>(parse_integer(tokens[1 + f]));
        }
      } else if (key == "normalization" && tokens.size() == 4) {
        const FeatureRange range{parse_double(tokens[2]), parse_double(tokens[3])};
        if (tokens[1] == "work_effort") {
          tree.normalization.effort = range;
        } else {
          const Feature feature = parse_feature(tokens[1]);
          tree.normalization.features[static_cast<std::size_t>(feature)] = range;
        }
      } else {
        throw std::runtime_error("unknown model entry '" + line + "'");
      }
    } catch (const std::exception& error) {
      throw std::runtime_error("model line " + std::to_string(line_number) + ": " +
                               error.what());
    }
  }
  if (!in_tree) {
    throw std::runtime_error("model file has no tree section");
  }
  validate(tree.config);
  tree.partitions = make_partitions(tree.config);

  // Parent stack per depth while reading the indented preorder dump.
  std::vector<TreeNode*> stack;
  while (next_line()) {
    if (line.empty()) continue;
    const NodeLine parsed = parse_node_line(line, line_number);
    auto node = std::make_unique<TreeNode>();
    node->depth = parsed.depth;
    node->membership_mass = parsed.mass;
    node->proportions = parsed.proportions;
    if (parsed.leaf) {
      node->leaf_criterion = parse_stop_criterion(parsed.tag);
    } else {
      node->split_attribute = parse_feature(parsed.tag);
    }

    if (parsed.depth == 0) {
      if (tree.root) {
        throw std::runtime_error("model line " + std::to_string(line_number) +
                                 ": multiple roots");
      }
      if (parsed.edge != "root") {
        throw std::runtime_error("model line " + std::to_string(line_number) +
                                 ": depth-0 node must be 'root'");
      }
      tree.root = std::move(node);
      stack = {tree.root.get()};
      continue;
    }
    if (static_cast<std::size_t>(parsed.depth) > stack.size()) {
      throw std::runtime_error("model line " + std::to_string(line_number) +
                               ": indentation skips a level");
    }
    stack.resize(static_cast<std::size_t>(parsed.depth));
    TreeNode* parent = stack.back();
    if (parent->is_leaf()) {
      throw std::runtime_error("model line " + std::to_string(line_number) +
                               ": child under a leaf");
    }
    parent->child_edges.push_back(
        edge_index_for(tree, *parent->split_attribute, parsed.edge, line_number));
    parent->children.push_back(std::move(node));
    stack.push_back(parent->children.back().get());
  }
  if (!tree.root) {
    throw std::runtime_error("model file has an empty tree section");
  }
  return tree;
}

void save_model(const FuzzyTree& tree, const std::filesystem::path& path) {
  atomic_write_text(path, model_to_text(tree));
}

FuzzyTree load_model(const std::filesystem::path& path) {
  return model_from_text(read_text_file(path));
}

}  // namespace fid
