#include "pubcausal/common.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace pubcausal {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string format_estimate2(double v) {
    // decimal half-up with a tiny guard so 0.795 stored one ulp low still
    // reports as 0.80
    const double magnitude = std::fabs(v) * 100.0;
    const long long rounded = static_cast<long long>(std::floor(magnitude + 0.5 + 1e-9));
    const double out = (v < 0.0 ? -1.0 : 1.0) * static_cast<double>(rounded) / 100.0;
    if (out == 0.0) return "0.00";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", out);
    return buf;
}

std::string slugify(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    bool pending_sep = false;
    for (unsigned char c : s) {
        if (std::isalnum(c)) {
            if (pending_sep && !out.empty()) out.push_back('_');
            pending_sep = false;
            out.push_back(static_cast<char>(std::tolower(c)));
        } else {
            pending_sep = true;
        }
    }
    return out;
}

std::string lower_ascii(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string collapse_whitespace(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    bool in_ws = true;  // trims leading whitespace
    for (unsigned char c : s) {
        if (std::isspace(c)) {
            in_ws = true;
        } else {
            if (in_ws && !out.empty()) out.push_back(' ');
            in_ws = false;
            out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace pubcausal
