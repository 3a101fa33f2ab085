#ifndef BLOCKSIGHT_CORPUS_DATASET_HPP
#define BLOCKSIGHT_CORPUS_DATASET_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "blocksight/instrument/signals.hpp"

namespace blocksight::corpus {

inline constexpr int kPass = 0;
inline constexpr int kFail = 1;

// Identifies the execution (and interval) a feature vector came from.
// Balancing duplicates examples; duplicates share their provenance, which is
// how fold hygiene is checked.
struct Provenance {
    std::string run_id;
    int interval_index = -1;  // -1 = end-of-run summary

    bool operator==(const Provenance&) const = default;

    std::string key() const {
        return run_id + "#" + std::to_string(interval_index);
    }
};

struct LabeledExample {
    std::array<double, instrument::kNumSignals> features{};
    int label = kPass;
    Provenance prov;
};

struct LabeledDataset {
    std::vector<LabeledExample> examples;
    std::string version_tag;
};

std::array<double, instrument::kNumSignals> features_from_summary(
    const instrument::SignalSummary& summary);

// Upsamples the minority class by seeded random duplication until class
// counts match; the majority class and all feature vectors are untouched.
// Throws std::invalid_argument when a class is missing.
LabeledDataset balance(const LabeledDataset& dataset, std::uint64_t seed);

// False when either class is absent (balance would throw).
bool has_both_classes(const LabeledDataset& dataset);

}  // namespace blocksight::corpus

#endif
