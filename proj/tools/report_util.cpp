#include "report_util.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "blocksight/instrument/signals.hpp"

namespace blocksight::tools {

void ReportConfig::add(const std::string& key, const std::string& value) {
    entries_.emplace_back(key, value);
}
void ReportConfig::add(const std::string& key, std::uint64_t value) {
    entries_.emplace_back(key, std::to_string(value));
}
void ReportConfig::add(const std::string& key, std::int64_t value) {
    entries_.emplace_back(key, std::to_string(value));
}
void ReportConfig::add(const std::string& key, double value) {
    entries_.emplace_back(key, format_double(value));
}

std::string ReportConfig::header() const {
    std::string out;
    for (const auto& [k, v] : entries_) out += "# " + k + "=" + v + "\n";
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string text_table(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return "";
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c)
            width[c] = std::max(width[c], row[c].size());
    }
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += "  ";
            out += row[c];
            out.append(width[c] - row[c].size(), ' ');
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += '\n';
    }
    return out;
}

std::string metrics_row_csv(const learn::Metrics& m) {
    return std::to_string(m.tp) + "," + std::to_string(m.fp) + "," + std::to_string(m.tn) + "," +
           std::to_string(m.fn) + "," + format_double(m.acc) + "," + format_double(m.prec) + "," +
           format_double(m.rec) + "," + format_double(m.f);
}

std::string cv_report_text(const learn::CvReport& report) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"fold", "acc", "prec", "rec", "f"});
    for (std::size_t i = 0; i < report.fold_metrics.size(); ++i) {
        const auto& m = report.fold_metrics[i];
        rows.push_back({std::to_string(i), format_double(m.acc), format_double(m.prec),
                        format_double(m.rec), format_double(m.f)});
    }
    rows.push_back({"mean", format_double(report.mean.acc), format_double(report.mean.prec),
                    format_double(report.mean.rec), format_double(report.mean.f)});
    return text_table(rows);
}

std::string cv_report_csv(const learn::CvReport& report) {
    std::string out = "fold,";
    out += metrics_csv_columns();
    out += '\n';
    for (std::size_t i = 0; i < report.fold_metrics.size(); ++i)
        out += std::to_string(i) + "," + metrics_row_csv(report.fold_metrics[i]) + "\n";
    out += "mean," + metrics_row_csv(report.mean) + "\n";
    return out;
}

std::string importance_table(const learn::CvReport& report) {
    const auto& names = instrument::signal_names();
    std::vector<int> order(instrument::kNumSignals);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return report.mean_importances[static_cast<std::size_t>(a)] >
               report.mean_importances[static_cast<std::size_t>(b)];
    });
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"signal", "folds_used", "mean_importance"});
    for (int f : order) {
        const double imp = report.mean_importances[static_cast<std::size_t>(f)];
        if (imp <= 0.0) continue;
        int folds_used = 0;
        for (const auto& fi : report.fold_importances)
            if (fi[static_cast<std::size_t>(f)] > 0.0) ++folds_used;
        rows.push_back({names[static_cast<std::size_t>(f)], std::to_string(folds_used),
                        format_double(imp)});
    }
    return text_table(rows);
}

void write_report_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void ensure_dir(const std::string& dir) { std::filesystem::create_directories(dir); }

}  // namespace blocksight::tools
