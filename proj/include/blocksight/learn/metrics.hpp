#ifndef BLOCKSIGHT_LEARN_METRICS_HPP
#define BLOCKSIGHT_LEARN_METRICS_HPP

#include <cstdint>
#include <span>

namespace blocksight::learn {

// Two-class counts and derived rates. fail (1) is the positive class.
// Division-by-zero cases yield 0 by convention.
struct Metrics {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;
    double acc = 0.0;
    double prec = 0.0;
    double rec = 0.0;
    double f = 0.0;
};

Metrics metrics_from_counts(std::int64_t tp, std::int64_t fp, std::int64_t tn, std::int64_t fn);

Metrics score_predictions(std::span<const int> truth, std::span<const int> predicted);

}  // namespace blocksight::learn

#endif
