#include "blocksight/learn/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "blocksight/common/rng.hpp"

namespace blocksight::learn {

corpus::LabeledDataset final_dataset(const corpus::Corpus& corpus) {
    corpus::LabeledDataset ds;
    ds.version_tag = corpus.version_tag;
    for (const auto& rec : corpus.records) {
        if (rec.discarded) continue;
        corpus::LabeledExample ex;
        ex.features = corpus::features_from_summary(rec.stream.final_summary);
        ex.label = rec.label;
        ex.prov = {rec.run_id, -1};
        ds.examples.push_back(ex);
    }
    return ds;
}

std::vector<IntervalReport> early_detection_sweep(const corpus::Corpus& corpus,
                                                  std::uint64_t seed,
                                                  const std::vector<int>& feature_mask) {
    std::size_t max_entries = 0;
    for (const auto& rec : corpus.records)
        if (!rec.discarded) max_entries = std::max(max_entries, rec.stream.entries.size());

    std::vector<IntervalReport> out;
    for (std::size_t i = 0; i < max_entries; ++i) {
        IntervalReport row;
        row.interval_instructions =
            static_cast<std::int64_t>(i + 1) * corpus.interval_size;

        corpus::LabeledDataset ds;
        ds.version_tag = corpus.version_tag;
        for (const auto& rec : corpus.records) {
            if (rec.discarded || rec.stream.entries.size() <= i) continue;
            corpus::LabeledExample ex;
            ex.features = corpus::features_from_summary(rec.stream.entries[i].summary);
            ex.label = rec.label;
            ex.prov = {rec.run_id, static_cast<int>(i)};
            ds.examples.push_back(ex);
        }
        row.n = ds.examples.size();
        if (row.n < 20 || !corpus::has_both_classes(ds)) {
            row.skipped = true;
        } else {
            row.report = kfold(ds, seed, feature_mask);
        }
        out.push_back(std::move(row));
    }

    IntervalReport final_row;
    final_row.is_final = true;
    corpus::LabeledDataset ds = final_dataset(corpus);
    final_row.n = ds.examples.size();
    if (final_row.n < 20 || !corpus::has_both_classes(ds)) {
        final_row.skipped = true;
    } else {
        final_row.report = kfold(ds, seed, feature_mask);
    }
    out.push_back(std::move(final_row));
    return out;
}

std::vector<CurvePoint> learning_curve(const corpus::LabeledDataset& dataset,
                                       const std::vector<std::size_t>& sizes,
                                       std::uint64_t seed) {
    const std::size_t n = dataset.examples.size();
    std::vector<CurvePoint> out;
    for (std::size_t size : sizes) {
        if (size > n) throw std::invalid_argument("learning_curve size exceeds dataset");
        CurvePoint point;
        point.size = size;
        if (size == n) {
            point.report = kfold(dataset, seed);
            out.push_back(std::move(point));
            continue;
        }

        // Stratified draw keeps both classes present at small sizes.
        std::vector<std::size_t> pass_idx, fail_idx;
        for (std::size_t i = 0; i < n; ++i)
            (dataset.examples[i].label == corpus::kFail ? fail_idx : pass_idx).push_back(i);
        Rng rng(mix_seed(seed, size, 1));
        fisher_yates(rng, pass_idx);
        fisher_yates(rng, fail_idx);

        std::size_t take_pass = static_cast<std::size_t>(std::llround(
            static_cast<double>(size) * static_cast<double>(pass_idx.size()) /
            static_cast<double>(n)));
        take_pass = std::min(take_pass, pass_idx.size());
        std::size_t take_fail = size - take_pass;
        if (take_fail > fail_idx.size()) {
            take_fail = fail_idx.size();
            take_pass = size - take_fail;
        }
        if (take_pass == 0 && !pass_idx.empty() && take_fail > 1) {
            take_pass = 1;
            --take_fail;
        }
        if (take_fail == 0 && !fail_idx.empty() && take_pass > 1) {
            take_fail = 1;
            --take_pass;
        }

        std::vector<std::size_t> chosen(pass_idx.begin(),
                                        pass_idx.begin() + static_cast<std::ptrdiff_t>(take_pass));
        chosen.insert(chosen.end(), fail_idx.begin(),
                      fail_idx.begin() + static_cast<std::ptrdiff_t>(take_fail));
        std::sort(chosen.begin(), chosen.end());  // keep original dataset order

        corpus::LabeledDataset sub;
        sub.version_tag = dataset.version_tag;
        for (std::size_t i : chosen) sub.examples.push_back(dataset.examples[i]);
        point.report = kfold(sub, seed);
        out.push_back(std::move(point));
    }
    return out;
}

FeatureEvalReport reduced_feature_eval(const corpus::LabeledDataset& dataset, int top_k,
                                       std::uint64_t seed) {
    if (top_k < 1 || top_k > instrument::kNumSignals)
        throw std::invalid_argument("top_k must be in [1, 26]");

    FeatureEvalReport report;
    report.full = kfold(dataset, seed);

    std::vector<int> ranked(instrument::kNumSignals);
    std::iota(ranked.begin(), ranked.end(), 0);
    std::stable_sort(ranked.begin(), ranked.end(), [&](int a, int b) {
        return report.full.mean_importances[static_cast<std::size_t>(a)] >
               report.full.mean_importances[static_cast<std::size_t>(b)];
    });
    ranked.resize(static_cast<std::size_t>(top_k));
    std::sort(ranked.begin(), ranked.end());
    report.selected = ranked;

    report.reduced = top_k == instrument::kNumSignals ? report.full : kfold(dataset, seed, ranked);
    return report;
}

}  // namespace blocksight::learn
