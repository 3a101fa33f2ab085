#include "blocksight/learn/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace blocksight::learn {

double gini(std::int64_t c0, std::int64_t c1) {
    const double n = static_cast<double>(c0 + c1);
    if (n == 0.0) return 0.0;
    const double p0 = static_cast<double>(c0) / n;
    const double p1 = static_cast<double>(c1) / n;
    return 1.0 - p0 * p0 - p1 * p1;
}

DecisionTree DecisionTree::assemble(std::vector<TreeNode> nodes, Importances importances,
                                    std::vector<int> allowed_features) {
    DecisionTree t;
    t.nodes_ = std::move(nodes);
    t.importances_ = importances;
    t.allowed_features_ = std::move(allowed_features);
    return t;
}

int DecisionTree::predict(std::span<const double> features) const {
    if (features.size() != instrument::kNumSignals)
        throw std::invalid_argument("feature vector must have 26 entries");
    int node = 0;
    while (!nodes_[static_cast<std::size_t>(node)].leaf) {
        const TreeNode& n = nodes_[static_cast<std::size_t>(node)];
        node = features[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes_[static_cast<std::size_t>(node)].label;
}

namespace {

struct Builder {
    const std::vector<corpus::LabeledExample>* examples;
    std::vector<int> allowed;
    std::vector<TreeNode> nodes;
    Importances raw_importance{};
    double n_root = 0.0;

    double feature(std::size_t example, int f) const {
        return (*examples)[example].features[static_cast<std::size_t>(f)];
    }

    int build(std::vector<std::size_t>& idx) {
        std::array<std::int64_t, 2> counts{};
        for (std::size_t i : idx) counts[static_cast<std::size_t>((*examples)[i].label)] += 1;
        const double node_gini = gini(counts[0], counts[1]);
        const double n_node = static_cast<double>(idx.size());

        int best_feature = -1;
        double best_threshold = 0.0;
        double best_gain = 0.0;
        if (node_gini > 0.0) {
            std::vector<std::pair<double, int>> vals(idx.size());
            for (int f : allowed) {
                for (std::size_t k = 0; k < idx.size(); ++k)
                    vals[k] = {feature(idx[k], f), (*examples)[idx[k]].label};
                std::sort(vals.begin(), vals.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });

                std::array<std::int64_t, 2> left{};
                for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
                    left[static_cast<std::size_t>(vals[k].second)] += 1;
                    if (vals[k].first == vals[k + 1].first) continue;
                    const std::int64_t nl = static_cast<std::int64_t>(k) + 1;
                    const std::int64_t nr = static_cast<std::int64_t>(vals.size()) - nl;
                    const double gini_l = gini(left[0], left[1]);
                    const double gini_r = gini(counts[0] - left[0], counts[1] - left[1]);
                    const double gain = node_gini -
                                        (static_cast<double>(nl) / n_node) * gini_l -
                                        (static_cast<double>(nr) / n_node) * gini_r;
                    if (gain > best_gain) {
                        best_gain = gain;
                        best_feature = f;
                        best_threshold = (vals[k].first + vals[k + 1].first) / 2.0;
                    }
                }
            }
        }

        const int id = static_cast<int>(nodes.size());
        nodes.push_back({});
        if (best_feature < 0) {
            TreeNode& leaf = nodes[static_cast<std::size_t>(id)];
            leaf.leaf = true;
            leaf.class_counts = counts;
            // Equal counts predict pass; fewer false alarms.
            leaf.label = counts[1] > counts[0] ? corpus::kFail : corpus::kPass;
            return id;
        }

        raw_importance[static_cast<std::size_t>(best_feature)] += (n_node / n_root) * best_gain;

        std::vector<std::size_t> left_idx, right_idx;
        for (std::size_t i : idx)
            (feature(i, best_feature) <= best_threshold ? left_idx : right_idx).push_back(i);
        idx.clear();
        idx.shrink_to_fit();

        const int left_id = build(left_idx);
        const int right_id = build(right_idx);
        TreeNode& n = nodes[static_cast<std::size_t>(id)];
        n.leaf = false;
        n.feature = best_feature;
        n.threshold = best_threshold;
        n.left = left_id;
        n.right = right_id;
        n.class_counts = counts;
        return id;
    }
};

}  // namespace

DecisionTree fit(const corpus::LabeledDataset& train, const std::vector<int>& feature_mask) {
    if (train.examples.empty()) throw std::invalid_argument("fit on empty dataset");

    Builder b;
    b.examples = &train.examples;
    if (feature_mask.empty()) {
        b.allowed.resize(instrument::kNumSignals);
        std::iota(b.allowed.begin(), b.allowed.end(), 0);
    } else {
        b.allowed = feature_mask;
        std::sort(b.allowed.begin(), b.allowed.end());
        for (int f : b.allowed)
            if (f < 0 || f >= instrument::kNumSignals)
                throw std::invalid_argument("feature mask index out of range");
    }
    b.n_root = static_cast<double>(train.examples.size());

    std::vector<std::size_t> all(train.examples.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    b.build(all);

    double total = 0.0;
    for (double v : b.raw_importance) total += v;
    Importances norm{};
    if (total > 0.0)
        for (int f = 0; f < instrument::kNumSignals; ++f)
            norm[static_cast<std::size_t>(f)] = b.raw_importance[static_cast<std::size_t>(f)] / total;
    return DecisionTree::assemble(std::move(b.nodes), norm, std::move(b.allowed));
}

}  // namespace blocksight::learn
