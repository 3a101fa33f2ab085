#ifndef BLOCKSIGHT_COMMON_PARALLEL_HPP
#define BLOCKSIGHT_COMMON_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace blocksight {

// Resolves the worker count: explicit request, else BLOCKSIGHT_WORKERS,
// else hardware concurrency; always at least 1.
int resolve_workers(int requested, std::size_t jobs);

// Runs fn(0..n-1) on a bounded pool. Results must be written to
// pre-allocated slots so assembly order never depends on scheduling. The
// first exception is rethrown after all workers stop.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace blocksight

#endif
