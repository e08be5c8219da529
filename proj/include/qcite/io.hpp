#pragma once

// Serialization of fit results (CSV row contract:
// entity,q,T,r2,anchor_c,anchor_value,n_points_q,n_points_T — q with 3
// decimals, T with 2; JSON carries full precision) and readers for the
// bundled reference tables.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qcite/errors.hpp"
#include "qcite/fitter.hpp"
#include "qcite/histogram.hpp"

#include "json.hpp"

namespace qcite {

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

inline double parse_double(const std::string& s, long line) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("bad numeric field '" + s + "'", line);
    return v;
}

inline std::int64_t parse_int(const std::string& s, long line) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("bad integer field '" + s + "'", line);
    return v;
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << content;
}

}  // namespace detail

inline std::string results_to_csv(std::span<const FitResult> results) {
    std::string out =
        "entity,q,T,r2,anchor_c,anchor_value,n_points_q,n_points_T\n";
    char buf[128];
    for (const auto& r : results) {
        std::snprintf(buf, sizeof buf, "%.3f,%.2f,%.4f", r.q, r.T, r.r2);
        out += r.entity + ',' + buf + ',' + std::to_string(r.anchor_c) + ',' +
               std::to_string(r.anchor_value) + ',' +
               std::to_string(r.n_points_q) + ',' +
               std::to_string(r.n_points_T) + '\n';
    }
    return out;
}

inline nlohmann::json results_to_json(std::span<const FitResult> results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) {
        arr.push_back({{"entity", r.entity},
                       {"q", r.q},
                       {"T", r.T},
                       {"r2", r.r2},
                       {"anchor_c", r.anchor_c},
                       {"anchor_value", r.anchor_value},
                       {"n_points_q", r.n_points_q},
                       {"n_points_T", r.n_points_T}});
    }
    return arr;
}

inline std::vector<FitResult> results_from_json(const nlohmann::json& arr) {
    std::vector<FitResult> out;
    try {
        for (const auto& j : arr) {
            FitResult r;
            r.entity = j.at("entity").get<std::string>();
            r.q = j.at("q").get<double>();
            r.T = j.at("T").get<double>();
            r.r2 = j.at("r2").get<double>();
            r.anchor_c = j.value("anchor_c", std::int64_t{2});
            r.anchor_value = j.value("anchor_value", std::int64_t{0});
            r.n_points_q = j.value("n_points_q", 0);
            r.n_points_T = j.value("n_points_T", 0);
            out.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("results JSON: ") + e.what());
    }
    return out;
}

inline std::vector<FitResult> read_results_csv(const std::filesystem::path& path) {
    auto lines = detail::read_lines(path);
    if (lines.empty() ||
        lines[0] != "entity,q,T,r2,anchor_c,anchor_value,n_points_q,n_points_T")
        throw ParseError(path.string() + ": bad results header", 1);
    std::vector<FitResult> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto f = detail::split_csv_line(lines[i]);
        if (f.size() != 8)
            throw ParseError(path.string() + ": expected 8 fields", long(i + 1));
        FitResult r;
        r.entity = f[0];
        r.q = detail::parse_double(f[1], long(i + 1));
        r.T = detail::parse_double(f[2], long(i + 1));
        r.r2 = detail::parse_double(f[3], long(i + 1));
        r.anchor_c = detail::parse_int(f[4], long(i + 1));
        r.anchor_value = detail::parse_int(f[5], long(i + 1));
        r.n_points_q = int(detail::parse_int(f[6], long(i + 1)));
        r.n_points_T = int(detail::parse_int(f[7], long(i + 1)));
        out.push_back(std::move(r));
    }
    return out;
}

/// Reads results from either serialization; dispatches on extension.
inline std::vector<FitResult> read_results(const std::filesystem::path& path) {
    if (path.extension() == ".json") {
        std::ifstream in(path);
        if (!in) throw DataError("cannot open " + path.string());
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path.string() + ": " + e.what());
        }
        return results_from_json(j);
    }
    return read_results_csv(path);
}

/// Reads back a summary.csv produced by render_summary_csv. Percentages are
/// recomputed at full precision from the counts.
inline std::vector<SummaryStats> read_summary_csv(
    const std::filesystem::path& path) {
    auto lines = detail::read_lines(path);
    if (lines.empty() || lines[0] != "entity,total,n0,pct0,n1,pct1,n2,pct2")
        throw ParseError(path.string() + ": bad summary header", 1);
    std::vector<SummaryStats> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto f = detail::split_csv_line(lines[i]);
        if (f.size() != 8)
            throw ParseError(path.string() + ": expected 8 fields", long(i + 1));
        SummaryStats s;
        s.entity = f[0];
        s.total_papers = detail::parse_int(f[1], long(i + 1));
        s.n0 = detail::parse_int(f[2], long(i + 1));
        s.n1 = detail::parse_int(f[4], long(i + 1));
        s.n2 = detail::parse_int(f[6], long(i + 1));
        if (s.total_papers <= 0)
            throw ParseError(path.string() + ": non-positive total", long(i + 1));
        s.pct0 = 100.0 * double(s.n0) / double(s.total_papers);
        s.pct1 = 100.0 * double(s.n1) / double(s.total_papers);
        s.pct2 = 100.0 * double(s.n2) / double(s.total_papers);
        out.push_back(std::move(s));
    }
    return out;
}

/// Row of the bundled publication-count table (fixtures/table1.csv).
struct CountTableRow {
    std::string entity;
    std::int64_t total = 0;
    std::int64_t n0 = 0, n1 = 0, n2 = 0;
};

inline std::vector<CountTableRow> read_count_table(
    const std::filesystem::path& path) {
    auto lines = detail::read_lines(path);
    if (lines.empty() || lines[0] != "entity,total,n0,n1,n2")
        throw ParseError(path.string() + ": bad count-table header", 1);
    std::vector<CountTableRow> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto f = detail::split_csv_line(lines[i]);
        if (f.size() != 5)
            throw ParseError(path.string() + ": expected 5 fields", long(i + 1));
        out.push_back({f[0], detail::parse_int(f[1], long(i + 1)),
                       detail::parse_int(f[2], long(i + 1)),
                       detail::parse_int(f[3], long(i + 1)),
                       detail::parse_int(f[4], long(i + 1))});
    }
    return out;
}

/// Reads the bundled fit table (fixtures/table2.csv: entity,q,r2,T) as
/// FitResult records with empty anchor fields.
inline std::vector<FitResult> read_fit_table(const std::filesystem::path& path) {
    auto lines = detail::read_lines(path);
    if (lines.empty() || lines[0] != "entity,q,r2,T")
        throw ParseError(path.string() + ": bad fit-table header", 1);
    std::vector<FitResult> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto f = detail::split_csv_line(lines[i]);
        if (f.size() != 4)
            throw ParseError(path.string() + ": expected 4 fields", long(i + 1));
        FitResult r;
        r.entity = f[0];
        r.q = detail::parse_double(f[1], long(i + 1));
        r.r2 = detail::parse_double(f[2], long(i + 1));
        r.T = detail::parse_double(f[3], long(i + 1));
        out.push_back(std::move(r));
    }
    return out;
}

/// Group-name -> entity list mapping, preserving file order.
inline std::vector<std::pair<std::string, std::vector<std::string>>> read_groups(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    nlohmann::ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    std::vector<std::pair<std::string, std::vector<std::string>>> groups;
    for (const auto& [name, members] : j.items()) {
        std::vector<std::string> list;
        for (const auto& m : members) list.push_back(m.get<std::string>());
        groups.emplace_back(name, std::move(list));
    }
    return groups;
}

/// Builds a minimal histogram reproducing a count-table row: the table
/// carries no full distribution, so the papers beyond two citations are
/// parked in a single c = 3 bin.
inline CitationHistogram histogram_from_count_row(const CountTableRow& row) {
    CitationHistogram h;
    h.entity = row.entity;
    h.source_note = "count-table row";
    const std::int64_t rest = row.total - row.n0 - row.n1 - row.n2;
    if (rest < 0) throw DataError(row.entity + ": counts exceed total");
    if (row.n0 > 0) h.counts[0] = row.n0;
    if (row.n1 > 0) h.counts[1] = row.n1;
    if (row.n2 > 0) h.counts[2] = row.n2;
    if (rest > 0) h.counts[3] = rest;
    return h;
}

}  // namespace qcite
