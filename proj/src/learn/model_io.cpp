#include "blocksight/learn/model_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace blocksight::learn {

namespace {
using nlohmann::json;
constexpr int kFormatVersion = 1;
}  // namespace

std::string tree_to_json(const DecisionTree& tree) {
    json nodes = json::array();
    for (const auto& n : tree.nodes()) {
        if (n.leaf) {
            nodes.push_back({{"leaf", true},
                             {"label", n.label},
                             {"counts", {n.class_counts[0], n.class_counts[1]}}});
        } else {
            nodes.push_back({{"leaf", false},
                             {"feature", n.feature},
                             {"threshold", n.threshold},
                             {"left", n.left},
                             {"right", n.right},
                             {"counts", {n.class_counts[0], n.class_counts[1]}}});
        }
    }
    json j{{"format_version", kFormatVersion},
           {"allowed_features", tree.allowed_features()},
           {"importances", tree.importances()},
           {"nodes", nodes}};
    return j.dump(2) + "\n";
}

DecisionTree tree_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.at("format_version").get<int>() != kFormatVersion)
        throw std::runtime_error("unsupported model format version");
    std::vector<TreeNode> nodes;
    for (const auto& n : j.at("nodes")) {
        TreeNode node;
        node.leaf = n.at("leaf").get<bool>();
        node.class_counts[0] = n.at("counts")[0].get<std::int64_t>();
        node.class_counts[1] = n.at("counts")[1].get<std::int64_t>();
        if (node.leaf) {
            node.label = n.at("label").get<int>();
        } else {
            node.feature = n.at("feature").get<int>();
            node.threshold = n.at("threshold").get<double>();
            node.left = n.at("left").get<int>();
            node.right = n.at("right").get<int>();
        }
        nodes.push_back(node);
    }
    Importances imp{};
    auto ji = j.at("importances");
    for (std::size_t i = 0; i < imp.size(); ++i) imp[i] = ji.at(i).get<double>();
    return DecisionTree::assemble(std::move(nodes), imp,
                                  j.at("allowed_features").get<std::vector<int>>());
}

void save_tree(const DecisionTree& tree, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << tree_to_json(tree);
}

DecisionTree load_tree(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return tree_from_json(os.str());
}

}  // namespace blocksight::learn
