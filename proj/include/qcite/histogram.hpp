#pragma once

// Per-entity citation-count histograms: CSV ingestion, validation, Table-1
// style summary statistics, aggregation, and the fit view consumed by the
// fitter.
//
// CSV contract: UTF-8, header line "citations,count", then one
// "<non-negative integer>,<non-negative integer>" row per citation count,
// LF or CRLF line endings, no thousands separators. One file per entity;
// the entity name is the file stem unless overridden.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcite/errors.hpp"
#include "qcite/fit_config.hpp"

namespace qcite {

struct CitationHistogram {
    std::string entity;
    /// c -> N(c), number of papers with exactly c citations. Sparse: a
    /// missing key means N(c) = 0.
    std::map<std::int64_t, std::int64_t> counts;
    std::string source_note;

    std::int64_t total_papers() const {
        std::int64_t sum = 0;
        for (const auto& [c, n] : counts) sum += n;
        return sum;
    }

    std::int64_t count_at(std::int64_t c) const {
        auto it = counts.find(c);
        return it == counts.end() ? 0 : it->second;
    }

    /// True when some c >= 2 has N(c) > 0 (required before fitting).
    bool fittable() const {
        for (auto it = counts.lower_bound(2); it != counts.end(); ++it)
            if (it->second > 0) return true;
        return false;
    }

    void validate() const {
        if (entity.empty()) throw DataError("histogram: empty entity name");
        std::int64_t sum = 0;
        for (const auto& [c, n] : counts) {
            if (c < 0) throw DataError(entity + ": negative citation count");
            if (n < 0) throw DataError(entity + ": negative paper count");
            sum += n;
        }
        if (sum <= 0) throw DataError(entity + ": empty histogram (no papers)");
    }
};

struct SummaryStats {
    std::string entity;
    std::int64_t total_papers = 0;
    std::int64_t n0 = 0, n1 = 0, n2 = 0;
    /// Percentages of the grand total, full precision; renderers round to
    /// one decimal for display.
    double pct0 = 0, pct1 = 0, pct2 = 0;
};

inline SummaryStats summarize(const CitationHistogram& h) {
    h.validate();
    SummaryStats s;
    s.entity = h.entity;
    s.total_papers = h.total_papers();
    s.n0 = h.count_at(0);
    s.n1 = h.count_at(1);
    s.n2 = h.count_at(2);
    const double t = double(s.total_papers);
    s.pct0 = 100.0 * double(s.n0) / t;
    s.pct1 = 100.0 * double(s.n1) / t;
    s.pct2 = 100.0 * double(s.n2) / t;
    return s;
}

/// Pointwise sum of counts across entities.
inline CitationHistogram aggregate(std::span<const CitationHistogram> hs,
                                   std::string name) {
    if (hs.empty()) throw DataError("aggregate: empty histogram list");
    CitationHistogram out;
    out.entity = std::move(name);
    out.source_note = "aggregate of " + std::to_string(hs.size()) + " entities";
    for (const auto& h : hs)
        for (const auto& [c, n] : h.counts) out.counts[c] += n;
    return out;
}

struct FitPoint {
    std::int64_t c;
    std::int64_t count;
};

/// Points the fitter may use: c >= cfg.anchor_c with N(c) > 0, strictly
/// increasing in c. The c = 1 point is deliberately absent; the fitter
/// re-reads it from the histogram for R^2 only.
inline std::vector<FitPoint> fit_view(const CitationHistogram& h,
                                      const FitConfig& cfg) {
    h.validate();
    std::vector<FitPoint> view;
    for (auto it = h.counts.lower_bound(cfg.anchor_c); it != h.counts.end(); ++it)
        if (it->second > 0) view.push_back({it->first, it->second});
    if (std::ssize(view) < cfg.min_fit_points)
        throw InsufficientDataError(h.entity + ": fit view too small",
                                    std::ssize(view), cfg.min_fit_points);
    return view;
}

namespace detail {

inline std::int64_t parse_count_field(std::string_view field, long line,
                                      const char* what) {
    std::int64_t value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw ParseError(std::string("bad ") + what + " field '" +
                             std::string(field) + "'",
                         line);
    if (value < 0)
        throw ParseError(std::string("negative ") + what + " '" +
                             std::string(field) + "'",
                         line);
    return value;
}

}  // namespace detail

inline CitationHistogram load_histogram(std::istream& in, std::string entity) {
    CitationHistogram h;
    h.entity = std::move(entity);
    std::string line;
    long lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1) {
            if (line != "citations,count")
                throw ParseError("expected header 'citations,count', got '" +
                                     line + "'",
                                 1);
            saw_header = true;
            continue;
        }
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("expected '<citations>,<count>' row", lineno);
        std::string_view sv(line);
        std::int64_t c =
            detail::parse_count_field(sv.substr(0, comma), lineno, "citations");
        std::int64_t n =
            detail::parse_count_field(sv.substr(comma + 1), lineno, "count");
        if (!h.counts.emplace(c, n).second)
            throw ParseError("duplicate row for citations=" + std::to_string(c),
                             lineno);
    }
    if (!saw_header) throw ParseError("empty file: missing header", 0);
    if (h.counts.empty()) throw DataError(h.entity + ": no data rows");
    h.validate();
    return h;
}

inline CitationHistogram load_histogram(const std::filesystem::path& path,
                                        std::string entity_override = "") {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::string entity =
        entity_override.empty() ? path.stem().string() : std::move(entity_override);
    auto h = load_histogram(in, std::move(entity));
    h.source_note = path.string();
    return h;
}

inline void write_histogram_csv(const CitationHistogram& h, std::ostream& out) {
    out << "citations,count\n";
    for (const auto& [c, n] : h.counts) out << c << ',' << n << '\n';
}

inline void write_histogram_csv(const CitationHistogram& h,
                                const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    write_histogram_csv(h, out);
}

}  // namespace qcite
