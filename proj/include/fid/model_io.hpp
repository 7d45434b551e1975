#pragma once

#include <filesystem>
#include <string>

#include "fid/induction.hpp"

namespace fid {

// Tree section only: one node per line, indented two spaces per depth level,
// carrying the edge label, split attribute or leaf criterion, membership
// mass, and the class-proportion vector.
std::string tree_to_text(const FuzzyTree& tree);

// Full model: growth config, normalization ranges, tree. All doubles use
// shortest round-trip formatting so a reloaded model predicts bit-identically.
std::string model_to_text(const FuzzyTree& tree);
FuzzyTree model_from_text(const std::string& text);

void save_model(const FuzzyTree& tree, const std::filesystem::path& path);
FuzzyTree load_model(const std::filesystem::path& path);

}  // namespace fid
