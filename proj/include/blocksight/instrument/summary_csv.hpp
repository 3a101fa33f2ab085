#ifndef BLOCKSIGHT_INSTRUMENT_SUMMARY_CSV_HPP
#define BLOCKSIGHT_INSTRUMENT_SUMMARY_CSV_HPP

#include <string>

#include "blocksight/instrument/signals.hpp"

namespace blocksight::instrument {

// Summary CSV contract. Column order is fixed and part of the dataset
// format: run_id, instructions_executed, label_placeholder, final, then the
// 26 canonical signal names. Interval rows carry final=0; the end-of-run row
// carries final=1. label_placeholder is -1 until a corpus labels the run.
std::string summary_csv_header();

void append_summary_row(std::string& out, const std::string& run_id,
                        std::int64_t instructions_executed, int label, bool final_row,
                        const SignalSummary& summary);

std::string stream_to_csv(const std::string& run_id, const SummaryStream& stream,
                          std::int64_t final_instructions, int label = -1);

}  // namespace blocksight::instrument

#endif
