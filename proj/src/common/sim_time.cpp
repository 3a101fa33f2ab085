#include "blocksight/common/sim_time.hpp"

#include <cctype>

namespace blocksight {

bool parse_seconds(const std::string& text, SimNs& out_ns) {
    if (text.empty()) return false;
    std::size_t i = 0;
    std::int64_t whole = 0;
    bool any_digit = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
        whole = whole * 10 + (text[i] - '0');
        if (whole > 1'000'000'000) return false;  // > ~31 years of sim time
        any_digit = true;
    }
    std::int64_t frac = 0;
    int frac_digits = 0;
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            if (frac_digits == 9) return false;
            frac = frac * 10 + (text[i] - '0');
            ++frac_digits;
            any_digit = true;
        }
    }
    if (!any_digit || i != text.size()) return false;
    for (int d = frac_digits; d < 9; ++d) frac *= 10;
    out_ns = whole * kNsPerSecond + frac;
    return true;
}

std::string format_seconds(SimNs ns) {
    std::int64_t whole = ns / kNsPerSecond;
    std::int64_t frac = ns % kNsPerSecond;
    std::string s = std::to_string(whole);
    if (frac != 0) {
        std::string f = std::to_string(frac);
        f.insert(f.begin(), 9 - f.size(), '0');
        while (!f.empty() && f.back() == '0') f.pop_back();
        s += "." + f;
    }
    return s;
}

}  // namespace blocksight
