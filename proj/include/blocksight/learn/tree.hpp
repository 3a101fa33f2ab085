#ifndef BLOCKSIGHT_LEARN_TREE_HPP
#define BLOCKSIGHT_LEARN_TREE_HPP

#include <array>
#include <span>
#include <vector>

#include "blocksight/corpus/dataset.hpp"

namespace blocksight::learn {

using FeatureVector = std::array<double, instrument::kNumSignals>;
using Importances = std::array<double, instrument::kNumSignals>;

// Gini impurity of a two-class count pair.
double gini(std::int64_t c0, std::int64_t c1);

struct TreeNode {
    bool leaf = true;
    // internal
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    // leaf
    int label = corpus::kPass;
    std::array<std::int64_t, 2> class_counts{};
};

// CART-style binary classifier grown to purity, no depth or size limits.
// Split candidates are midpoints of consecutive distinct sorted values; the
// left child takes feature <= threshold. Ties on impurity decrease resolve
// to the lowest feature index, then the lowest threshold, so fitting is
// fully deterministic.
class DecisionTree {
public:
    int predict(std::span<const double> features) const;  // length must be 26

    const std::vector<TreeNode>& nodes() const { return nodes_; }
    const Importances& importances() const { return importances_; }
    const std::vector<int>& allowed_features() const { return allowed_features_; }

    // True when training saw a single class and produced one leaf.
    bool degenerate() const { return nodes_.size() == 1; }

    // Used by fit and deserialization.
    static DecisionTree assemble(std::vector<TreeNode> nodes, Importances importances,
                                 std::vector<int> allowed_features);

private:
    std::vector<TreeNode> nodes_;  // nodes_[0] is the root
    Importances importances_{};
    std::vector<int> allowed_features_;
};

// Grows a tree on the dataset. feature_mask selects the feature indices the
// tree may split on (empty = all 26). Importances are the normalized total
// impurity decrease per feature and sum to 1 whenever the tree has at least
// one split. A single-class dataset yields a degenerate single-leaf tree.
DecisionTree fit(const corpus::LabeledDataset& train, const std::vector<int>& feature_mask = {});

}  // namespace blocksight::learn

#endif
