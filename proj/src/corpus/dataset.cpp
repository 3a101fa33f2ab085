#include "blocksight/corpus/dataset.hpp"

#include <stdexcept>

#include "blocksight/common/rng.hpp"

namespace blocksight::corpus {

std::array<double, instrument::kNumSignals> features_from_summary(
    const instrument::SignalSummary& summary) {
    std::array<double, instrument::kNumSignals> f{};
    const auto a = summary.to_array();
    for (int i = 0; i < instrument::kNumSignals; ++i) f[static_cast<std::size_t>(i)] =
        static_cast<double>(a[static_cast<std::size_t>(i)]);
    return f;
}

bool has_both_classes(const LabeledDataset& dataset) {
    bool pass = false, fail = false;
    for (const auto& e : dataset.examples) (e.label == kFail ? fail : pass) = true;
    return pass && fail;
}

LabeledDataset balance(const LabeledDataset& dataset, std::uint64_t seed) {
    std::vector<std::size_t> pass_idx, fail_idx;
    for (std::size_t i = 0; i < dataset.examples.size(); ++i)
        (dataset.examples[i].label == kFail ? fail_idx : pass_idx).push_back(i);
    if (pass_idx.empty() || fail_idx.empty())
        throw std::invalid_argument("balance requires both classes present");

    LabeledDataset out = dataset;
    const auto& minority = pass_idx.size() < fail_idx.size() ? pass_idx : fail_idx;
    const std::size_t deficit = pass_idx.size() < fail_idx.size()
                                    ? fail_idx.size() - pass_idx.size()
                                    : pass_idx.size() - fail_idx.size();
    Rng rng(seed);
    for (std::size_t k = 0; k < deficit; ++k) {
        std::size_t pick = minority[static_cast<std::size_t>(uniform_below(rng, minority.size()))];
        out.examples.push_back(dataset.examples[pick]);
    }
    return out;
}

}  // namespace blocksight::corpus
