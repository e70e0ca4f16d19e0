#pragma once

// CSV serialization of spectra (value,branch,m,multiplicity) and trace/det
// signatures (m,trace,det). Reals are written with 17 significant digits, so
// reading a file back reproduces every double exactly.

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "steklov/dn_map.hpp"
#include "steklov/errors.hpp"
#include "steklov/inverse.hpp"

namespace steklov {

namespace detail {

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

inline double parse_real(const std::string& s, std::size_t line_no) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') {
        throw UsageError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
    }
    return v;
}

inline long long parse_integer(const std::string& s, std::size_t line_no) {
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0') {
        throw UsageError("line " + std::to_string(line_no) + ": bad integer '" + s + "'");
    }
    return v;
}

inline bool next_data_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return true;
    }
    return false;
}

} // namespace detail

inline void write_spectrum_csv(std::ostream& out, const SteklovSpectrum& s) {
    out << "value,branch,m,multiplicity\n";
    for (const auto& e : s.entries) {
        out << detail::format_real(e.value) << ',' << branch_symbol(e.branch) << ',' << e.m << ','
            << e.multiplicity << '\n';
    }
}

/// Reads a spectrum written by write_spectrum_csv. The dimension is inferred
/// from the multiplicity at m = 1 unless given; the frequency is not stored in
/// the file and must be supplied.
inline SteklovSpectrum read_spectrum_csv(std::istream& in, double lambda = 0.0,
                                         std::optional<int> dimension = std::nullopt) {
    std::string line;
    if (!detail::next_data_line(in, line) || line != "value,branch,m,multiplicity") {
        throw UsageError("spectrum CSV must start with header value,branch,m,multiplicity");
    }
    SteklovSpectrum s;
    s.lambda = lambda;
    std::size_t line_no = 1;
    while (detail::next_data_line(in, line)) {
        ++line_no;
        const auto cells = detail::split_csv_row(line);
        if (cells.size() != 4) throw UsageError("line " + std::to_string(line_no) + ": expected 4 columns");
        SpectrumEntry e;
        e.value = detail::parse_real(cells[0], line_no);
        if (cells[1] == "-") {
            e.branch = Branch::minus;
        } else if (cells[1] == "+") {
            e.branch = Branch::plus;
        } else if (cells[1] == "?") {
            e.branch = Branch::unknown;
        } else {
            throw UsageError("line " + std::to_string(line_no) + ": branch must be -, + or ?");
        }
        e.m = static_cast<int>(detail::parse_integer(cells[2], line_no));
        e.multiplicity = detail::parse_integer(cells[3], line_no);
        if (e.m < 0 || e.multiplicity < 1) {
            throw UsageError("line " + std::to_string(line_no) + ": invalid index or multiplicity");
        }
        s.m_max = std::max(s.m_max, e.m);
        s.entries.push_back(e);
    }
    if (s.entries.empty()) throw UsageError("spectrum CSV has no rows");

    if (dimension) {
        s.n = *dimension;
    } else {
        bool found = false;
        for (const auto& e : s.entries) {
            if (e.m == 1) {
                s.n = static_cast<int>(e.multiplicity);
                found = true;
                break;
            }
        }
        if (!found) throw UsageError("cannot infer the dimension without an m = 1 row");
    }

    // crossover index, recomputed from complete minus/plus pairs
    std::vector<BlockEigenvalues> pairs(static_cast<std::size_t>(s.m_max) + 1);
    std::vector<int> seen(pairs.size(), 0);
    for (const auto& e : s.entries) {
        auto& p = pairs[static_cast<std::size_t>(e.m)];
        if (e.branch == Branch::plus) {
            p.lambda_plus = e.value;
        } else {
            p.lambda_minus = e.value;
        }
        ++seen[static_cast<std::size_t>(e.m)];
    }
    bool complete = true;
    for (int c : seen) complete = complete && c == 2;
    if (complete) s.crossover_index = detail::branch_crossover(pairs);
    return s;
}

inline void write_signature_csv(std::ostream& out, const TraceDetSignature& sig) {
    out << "m,trace,det\n";
    for (const auto& e : sig.entries) {
        out << e.m << ',' << detail::format_real(e.trace) << ',' << detail::format_real(e.det) << '\n';
    }
}

inline TraceDetSignature read_signature_csv(std::istream& in) {
    std::string line;
    if (!detail::next_data_line(in, line) || line != "m,trace,det") {
        throw UsageError("signature CSV must start with header m,trace,det");
    }
    TraceDetSignature sig;
    std::size_t line_no = 1;
    while (detail::next_data_line(in, line)) {
        ++line_no;
        const auto cells = detail::split_csv_row(line);
        if (cells.size() != 3) throw UsageError("line " + std::to_string(line_no) + ": expected 3 columns");
        sig.entries.push_back({static_cast<int>(detail::parse_integer(cells[0], line_no)),
                               detail::parse_real(cells[1], line_no),
                               detail::parse_real(cells[2], line_no)});
    }
    return sig;
}

} // namespace steklov
