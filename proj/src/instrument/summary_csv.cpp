#include "blocksight/instrument/summary_csv.hpp"

namespace blocksight::instrument {

std::string summary_csv_header() {
    std::string h = "run_id,instructions_executed,label_placeholder,final";
    for (const auto& name : signal_names()) {
        h += ',';
        h += name;
    }
    h += '\n';
    return h;
}

void append_summary_row(std::string& out, const std::string& run_id,
                        std::int64_t instructions_executed, int label, bool final_row,
                        const SignalSummary& summary) {
    out += run_id;
    out += ',';
    out += std::to_string(instructions_executed);
    out += ',';
    out += std::to_string(label);
    out += final_row ? ",1" : ",0";
    for (std::int64_t v : summary.to_array()) {
        out += ',';
        out += std::to_string(v);
    }
    out += '\n';
}

std::string stream_to_csv(const std::string& run_id, const SummaryStream& stream,
                          std::int64_t final_instructions, int label) {
    std::string out = summary_csv_header();
    for (const auto& entry : stream.entries)
        append_summary_row(out, run_id, entry.instructions_executed, label, false, entry.summary);
    append_summary_row(out, run_id, final_instructions, label, true, stream.final_summary);
    return out;
}

}  // namespace blocksight::instrument
