#ifndef BLOCKSIGHT_CORPUS_BUILDER_HPP
#define BLOCKSIGHT_CORPUS_BUILDER_HPP

#include <string>
#include <vector>

#include "blocksight/corpus/dataset.hpp"
#include "blocksight/corpus/mutation.hpp"
#include "blocksight/robosim/mission_runner.hpp"

namespace blocksight::corpus {

struct CorpusConfig {
    std::uint64_t seed = 1;
    std::int64_t interval_size = 10'000;
    std::int64_t discard_window = 1'000;  // crashes at or under this are dropped
    vm::RunLimits limits;
    double noise_sigma_m = 0.05;
    instrument::Mode mode = instrument::Mode::Optimized;
    int workers = 0;  // 0 = hardware concurrency
    std::vector<int> core_blocks;  // empty = mutate everywhere
};

// One mutant x mission execution.
struct RunRecord {
    std::string run_id;  // "<mutant>_<mission>"
    std::string mutant_id;
    std::string op_name;
    MutationSite site;
    std::string mission_id;
    vm::ExitKind exit = vm::ExitKind::Halted;
    int label = kPass;
    bool discarded = false;  // crashed within the discard window
    std::int64_t instructions = 0;
    instrument::SummaryStream stream;
};

struct Corpus {
    LabeledDataset dataset;               // end-of-run summaries of retained runs
    std::vector<RunRecord> records;       // every run, including discarded
    std::vector<ExcludedMutant> excluded; // mutants that failed validation
    std::int64_t valid_mutants = 0;
    std::int64_t interval_size = 10'000;
    std::string version_tag;
    std::uint64_t seed = 0;
};

// Runs every valid mutant against every mission under instrumentation and
// labels the results. Never aborts on a run failure; throws only when the
// retained corpus ends up empty. Runs fan out to a worker pool; assembly is
// by run index, so the result is independent of scheduling.
Corpus build_corpus(const vm::Program& base, const std::vector<robosim::Mission>& missions,
                    const CorpusConfig& config);

}  // namespace blocksight::corpus

#endif
