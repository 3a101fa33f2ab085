#ifndef BLOCKSIGHT_TESTS_TRACE_ORACLE_HPP
#define BLOCKSIGHT_TESTS_TRACE_ORACLE_HPP

#include <vector>

#include "blocksight/instrument/collector.hpp"

namespace blocksight::test {

// Independent recomputation of the 26-signal stream from a raw event log.
// This is a deliberate brute-force fold over every event, sharing none of
// the Collector's per-block precomputation or reconciliation paths.
instrument::SummaryStream replay_signals(const std::vector<instrument::TraceEvent>& events,
                                         std::int64_t interval_size);

}  // namespace blocksight::test

#endif
