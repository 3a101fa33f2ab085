#include "blocksight/corpus/corpus_io.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "blocksight/instrument/summary_csv.hpp"

namespace blocksight::corpus {

namespace {

using nlohmann::json;

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

struct SummaryRow {
    std::string run_id;
    std::int64_t instructions = 0;
    int label = -1;
    bool final_row = false;
    instrument::SignalSummary summary;
};

std::vector<SummaryRow> parse_summary_csv(const std::string& text) {
    std::vector<SummaryRow> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            if (line != instrument::summary_csv_header().substr(
                            0, instrument::summary_csv_header().size() - 1))
                throw std::runtime_error("unexpected summary CSV header");
            header = false;
            continue;
        }
        auto fields = split_csv_line(line);
        if (fields.size() != 4 + instrument::kNumSignals)
            throw std::runtime_error("malformed summary CSV row");
        SummaryRow row;
        row.run_id = fields[0];
        row.instructions = std::stoll(fields[1]);
        row.label = std::stoi(fields[2]);
        row.final_row = fields[3] == "1";
        std::array<std::int64_t, instrument::kNumSignals> a{};
        for (int i = 0; i < instrument::kNumSignals; ++i)
            a[static_cast<std::size_t>(i)] = std::stoll(fields[static_cast<std::size_t>(4 + i)]);
        row.summary = instrument::SignalSummary::from_array(a);
        rows.push_back(std::move(row));
    }
    return rows;
}

const char* exit_name(vm::ExitKind k) { return vm::exit_kind_name(k); }

vm::ExitKind exit_from_name(const std::string& name) {
    if (name == "halted") return vm::ExitKind::Halted;
    if (name == "crashed") return vm::ExitKind::Crashed;
    if (name == "timed_out") return vm::ExitKind::TimedOut;
    throw std::runtime_error("unknown exit kind: " + name);
}

}  // namespace

void save_corpus(const Corpus& corpus, const std::string& dir) {
    std::filesystem::create_directories(dir);

    std::string dataset_csv = instrument::summary_csv_header();
    std::string streams_csv = instrument::summary_csv_header();
    std::string manifest;
    for (const auto& rec : corpus.records) {
        json j{{"run_id", rec.run_id},
               {"mutant_id", rec.mutant_id},
               {"operator", rec.op_name},
               {"site", {{"block", rec.site.block}, {"offset", rec.site.offset}}},
               {"mission_id", rec.mission_id},
               {"exit_kind", exit_name(rec.exit)},
               {"label", rec.label},
               {"discarded", rec.discarded},
               {"instructions", rec.instructions},
               {"summary_file", "streams.csv"}};
        manifest += j.dump();
        manifest += '\n';
        if (rec.discarded) continue;
        instrument::append_summary_row(dataset_csv, rec.run_id, rec.instructions, rec.label,
                                       true, rec.stream.final_summary);
        for (const auto& e : rec.stream.entries)
            instrument::append_summary_row(streams_csv, rec.run_id, e.instructions_executed,
                                           rec.label, false, e.summary);
        instrument::append_summary_row(streams_csv, rec.run_id, rec.instructions, rec.label,
                                       true, rec.stream.final_summary);
    }

    json excluded = json::array();
    for (const auto& ex : corpus.excluded)
        excluded.push_back({{"id", ex.id},
                            {"operator", ex.op_name},
                            {"site", {{"block", ex.site.block}, {"offset", ex.site.offset}}},
                            {"defects", ex.defects}});
    json meta{{"version_tag", corpus.version_tag},
              {"seed", corpus.seed},
              {"interval_size", corpus.interval_size},
              {"valid_mutants", corpus.valid_mutants},
              {"excluded_mutants", excluded}};

    write_text(dir + "/dataset.csv", dataset_csv);
    write_text(dir + "/streams.csv", streams_csv);
    write_text(dir + "/manifest.jsonl", manifest);
    write_text(dir + "/meta.json", meta.dump(2) + "\n");
}

Corpus load_corpus(const std::string& dir) {
    Corpus corpus;
    json meta = json::parse(read_text(dir + "/meta.json"));
    corpus.version_tag = meta.at("version_tag").get<std::string>();
    corpus.seed = meta.at("seed").get<std::uint64_t>();
    corpus.interval_size = meta.at("interval_size").get<std::int64_t>();
    corpus.valid_mutants = meta.at("valid_mutants").get<std::int64_t>();
    for (const auto& ex : meta.at("excluded_mutants"))
        corpus.excluded.push_back({ex.at("id").get<std::string>(),
                                   ex.at("operator").get<std::string>(),
                                   {ex.at("site").at("block").get<int>(),
                                    ex.at("site").at("offset").get<int>()},
                                   ex.at("defects").get<std::string>()});
    corpus.dataset.version_tag = corpus.version_tag;

    std::map<std::string, std::size_t> index_by_run;
    std::istringstream manifest(read_text(dir + "/manifest.jsonl"));
    std::string line;
    while (std::getline(manifest, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        RunRecord rec;
        rec.run_id = j.at("run_id").get<std::string>();
        rec.mutant_id = j.at("mutant_id").get<std::string>();
        rec.op_name = j.at("operator").get<std::string>();
        rec.site = {j.at("site").at("block").get<int>(), j.at("site").at("offset").get<int>()};
        rec.mission_id = j.at("mission_id").get<std::string>();
        rec.exit = exit_from_name(j.at("exit_kind").get<std::string>());
        rec.label = j.at("label").get<int>();
        rec.discarded = j.at("discarded").get<bool>();
        rec.instructions = j.at("instructions").get<std::int64_t>();
        rec.stream.interval_size = corpus.interval_size;
        index_by_run[rec.run_id] = corpus.records.size();
        corpus.records.push_back(std::move(rec));
    }

    for (const auto& row : parse_summary_csv(read_text(dir + "/streams.csv"))) {
        auto it = index_by_run.find(row.run_id);
        if (it == index_by_run.end()) throw std::runtime_error("stream row for unknown run");
        RunRecord& rec = corpus.records[it->second];
        if (row.final_row)
            rec.stream.final_summary = row.summary;
        else
            rec.stream.entries.push_back({row.instructions, row.summary});
    }

    for (const auto& rec : corpus.records) {
        if (rec.discarded) continue;
        LabeledExample ex;
        ex.features = features_from_summary(rec.stream.final_summary);
        ex.label = rec.label;
        ex.prov = {rec.run_id, -1};
        corpus.dataset.examples.push_back(ex);
    }
    if (corpus.dataset.examples.empty()) throw std::runtime_error("empty corpus at " + dir);
    return corpus;
}

LabeledDataset load_dataset(const std::string& dir) { return load_corpus(dir).dataset; }

}  // namespace blocksight::corpus
