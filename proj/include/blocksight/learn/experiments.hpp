#ifndef BLOCKSIGHT_LEARN_EXPERIMENTS_HPP
#define BLOCKSIGHT_LEARN_EXPERIMENTS_HPP

#include "blocksight/corpus/builder.hpp"
#include "blocksight/learn/kfold.hpp"

namespace blocksight::learn {

// One row of the early-detection sweep: models built from the cumulative
// summaries available at an interval boundary. n shrinks as intervals grow
// because shorter executions drop out. Intervals with fewer than 20
// surviving executions are reported but skipped.
struct IntervalReport {
    std::int64_t interval_instructions = 0;  // (index+1) * interval_size
    bool is_final = false;                   // end-of-run summaries; equals the headline report
    std::size_t n = 0;
    bool skipped = false;
    CvReport report;
};

std::vector<IntervalReport> early_detection_sweep(const corpus::Corpus& corpus,
                                                  std::uint64_t seed,
                                                  const std::vector<int>& feature_mask = {});

// Builds the end-of-run dataset from a corpus in record order; the headline
// cross-validation and the sweep's final row share it.
corpus::LabeledDataset final_dataset(const corpus::Corpus& corpus);

struct CurvePoint {
    std::size_t size = 0;
    CvReport report;
};

// Seeded stratified subsample at each size, cross-validated. A size equal to
// the dataset reproduces the headline report for the same seed.
std::vector<CurvePoint> learning_curve(const corpus::LabeledDataset& dataset,
                                       const std::vector<std::size_t>& sizes, std::uint64_t seed);

struct FeatureEvalReport {
    CvReport full;
    std::vector<int> selected;  // top-k by mean importance across folds
    CvReport reduced;
};

FeatureEvalReport reduced_feature_eval(const corpus::LabeledDataset& dataset, int top_k,
                                       std::uint64_t seed);

}  // namespace blocksight::learn

#endif
