#pragma once
// Deterministic CSV output.  Doubles print with %.12g, rationals as
// num/den column pairs, and fields containing separators or quotes are
// quoted per RFC 4180.  Rows are written in a fixed order by callers, so
// two runs with the same config produce byte-identical files.

#include "mfgap/exact_int.hpp"

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace mfgap {

inline std::string csv_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string csv_escape(const std::string& field) {
    bool needs = false;
    for (char c : field)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') { needs = true; break; }
    if (!needs) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void row(const std::vector<std::string>& fields) {
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) os_ << ',';
            os_ << csv_escape(fields[i]);
        }
        os_ << '\n';
    }

private:
    std::ostream& os_;
};

inline std::string rational_num(const BigRat& r) {
    return boost::multiprecision::numerator(r).str();
}

inline std::string rational_den(const BigRat& r) {
    return boost::multiprecision::denominator(r).str();
}

}  // namespace mfgap
