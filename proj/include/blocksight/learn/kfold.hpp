#ifndef BLOCKSIGHT_LEARN_KFOLD_HPP
#define BLOCKSIGHT_LEARN_KFOLD_HPP

#include "blocksight/learn/metrics.hpp"
#include "blocksight/learn/tree.hpp"

namespace blocksight::learn {

struct FoldDiagnostics {
    std::int64_t train_pass = 0;  // class counts after per-fold balancing
    std::int64_t train_fail = 0;
    std::int64_t test_pass = 0;
    std::int64_t test_fail = 0;
    std::int64_t test_size_raw = 0;  // fold size before balancing
    bool provenance_clean = true;    // no example id on both sides of the fold
};

struct CvReport {
    int k = 0;
    std::vector<Metrics> fold_metrics;
    Metrics mean;  // rates are arithmetic means over folds; counts are sums
    std::vector<Importances> fold_importances;
    Importances mean_importances{};
    std::vector<FoldDiagnostics> diagnostics;

    bool operator==(const CvReport& other) const;
};

// K = 10 for n >= 100, otherwise the largest K giving folds of at least 10.
int choose_k(std::size_t n);

// Seeded shuffle, contiguous folds over the unbalanced dataset; each fold's
// train and test portions are balanced independently before fit/predict.
// Throws std::invalid_argument for n < 20.
CvReport kfold(const corpus::LabeledDataset& dataset, std::uint64_t seed,
               const std::vector<int>& feature_mask = {});

// Train on one release, score on another; no folding. The training set is
// balanced, the test set is scored as-is.
Metrics cross_version_eval(const corpus::LabeledDataset& train_ds,
                           const corpus::LabeledDataset& test_ds, std::uint64_t seed,
                           const std::vector<int>& feature_mask = {});

}  // namespace blocksight::learn

#endif
