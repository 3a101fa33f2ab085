#ifndef BLOCKSIGHT_TOOLS_REPORT_UTIL_HPP
#define BLOCKSIGHT_TOOLS_REPORT_UTIL_HPP

#include <string>
#include <vector>

#include "blocksight/learn/kfold.hpp"

namespace blocksight::tools {

// Replay header: every report starts with "# key=value" lines recording the
// full configuration and seeds, so reruns reproduce the machine-readable
// output byte for byte.
class ReportConfig {
public:
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, std::uint64_t value);
    void add(const std::string& key, std::int64_t value);
    void add(const std::string& key, double value);
    std::string header() const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

std::string format_double(double v);  // fixed 6 decimals

// Aligned text table; first row is the header.
std::string text_table(const std::vector<std::vector<std::string>>& rows);

std::string metrics_row_csv(const learn::Metrics& m);
inline const char* metrics_csv_columns() { return "tp,fp,tn,fn,acc,prec,rec,f"; }

// Human-readable cross-validation block: per-fold rows plus the mean.
std::string cv_report_text(const learn::CvReport& report);
std::string cv_report_csv(const learn::CvReport& report);

// Nonzero mean importances, highest first.
std::string importance_table(const learn::CvReport& report);

void write_report_file(const std::string& path, const std::string& content);
void ensure_dir(const std::string& dir);

}  // namespace blocksight::tools

#endif
