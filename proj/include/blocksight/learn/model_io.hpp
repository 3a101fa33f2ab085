#ifndef BLOCKSIGHT_LEARN_MODEL_IO_HPP
#define BLOCKSIGHT_LEARN_MODEL_IO_HPP

#include <string>

#include "blocksight/learn/tree.hpp"

namespace blocksight::learn {

// Versioned JSON encoding of the node tree plus importances.
std::string tree_to_json(const DecisionTree& tree);
DecisionTree tree_from_json(const std::string& text);

void save_tree(const DecisionTree& tree, const std::string& path);
DecisionTree load_tree(const std::string& path);

}  // namespace blocksight::learn

#endif
