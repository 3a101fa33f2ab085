#include "blocksight/learn/metrics.hpp"

#include <stdexcept>

namespace blocksight::learn {

Metrics metrics_from_counts(std::int64_t tp, std::int64_t fp, std::int64_t tn, std::int64_t fn) {
    Metrics m;
    m.tp = tp;
    m.fp = fp;
    m.tn = tn;
    m.fn = fn;
    const std::int64_t total = tp + fp + tn + fn;
    m.acc = total > 0 ? static_cast<double>(tp + tn) / static_cast<double>(total) : 0.0;
    m.prec = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    m.rec = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    m.f = m.prec + m.rec > 0.0 ? 2.0 * m.prec * m.rec / (m.prec + m.rec) : 0.0;
    return m;
}

Metrics score_predictions(std::span<const int> truth, std::span<const int> predicted) {
    if (truth.size() != predicted.size())
        throw std::invalid_argument("prediction/truth length mismatch");
    std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (predicted[i] == 1)
            truth[i] == 1 ? ++tp : ++fp;
        else
            truth[i] == 1 ? ++fn : ++tn;
    }
    return metrics_from_counts(tp, fp, tn, fn);
}

}  // namespace blocksight::learn
