#pragma once

// Fixed-width text and CSV renderings of the summary (Table-1 style),
// ranking (Table-2 style) and quantity-vs-impact reports. All numeric
// formatting is locale-independent and byte-stable: q prints with 3
// decimals, T and r2 with 2, percentages with 1.

#include <algorithm>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "qcite/histogram.hpp"
#include "qcite/ranking.hpp"

namespace qcite {
namespace detail {

inline std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

inline std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

inline std::string lpad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

inline std::size_t entity_width(std::span<const std::string> names) {
    std::size_t w = 8;
    for (const auto& n : names) w = std::max(w, n.size());
    return w;
}

}  // namespace detail

inline std::string render_summary_csv(std::span<const SummaryStats> rows) {
    std::string out = "entity,total,n0,pct0,n1,pct1,n2,pct2\n";
    for (const auto& s : rows) {
        out += s.entity + ',' + std::to_string(s.total_papers) + ',' +
               std::to_string(s.n0) + ',' + detail::fmt("%.1f", s.pct0) + ',' +
               std::to_string(s.n1) + ',' + detail::fmt("%.1f", s.pct1) + ',' +
               std::to_string(s.n2) + ',' + detail::fmt("%.1f", s.pct2) + '\n';
    }
    return out;
}

inline std::string render_summary_text(std::span<const SummaryStats> rows) {
    std::vector<std::string> names;
    for (const auto& s : rows) names.push_back(s.entity);
    const std::size_t ew = detail::entity_width(names);
    std::string out = detail::pad("entity", ew) +
                      "      total         N(0)          N(1)          N(2)\n";
    for (const auto& s : rows) {
        out += detail::pad(s.entity, ew);
        out += detail::lpad(std::to_string(s.total_papers), 11);
        out += detail::lpad(std::to_string(s.n0), 9) + " (" +
               detail::lpad(detail::fmt("%.1f", s.pct0), 5) + "%)";
        out += detail::lpad(std::to_string(s.n1), 8) + " (" +
               detail::lpad(detail::fmt("%.1f", s.pct1), 5) + "%)";
        out += detail::lpad(std::to_string(s.n2), 8) + " (" +
               detail::lpad(detail::fmt("%.1f", s.pct2), 5) + "%)";
        out += '\n';
    }
    return out;
}

inline std::string render_ranking_csv(const RankingTable& table) {
    std::string out = "rank,entity,q,r2,T\n";
    for (const auto& r : table.rows) {
        out += std::to_string(r.rank) + ',' + r.entity + ',' +
               detail::fmt("%.3f", r.q) + ',' + detail::fmt("%.2f", r.r2) + ',' +
               detail::fmt("%.2f", r.T) + '\n';
    }
    return out;
}

inline std::string render_ranking_text(const RankingTable& table) {
    std::vector<std::string> names;
    for (const auto& r : table.rows) names.push_back(r.entity);
    const std::size_t ew = detail::entity_width(names);
    std::string out =
        "rank  " + detail::pad("entity", ew) + "      q    R^2      T\n";
    for (const auto& r : table.rows) {
        out += detail::lpad(std::to_string(r.rank), 4) + "  " +
               detail::pad(r.entity, ew) + "  " +
               detail::fmt("%.3f", r.q) + "   " + detail::fmt("%.2f", r.r2) +
               "  " + detail::lpad(detail::fmt("%.2f", r.T), 5) + '\n';
    }
    return out;
}

inline std::string render_quantity_impact_csv(const QuantityImpactReport& rep) {
    std::string out = "entity,total,quantity_rank,T,impact_rank,delta\n";
    for (const auto& r : rep.rows) {
        out += r.entity + ',' + std::to_string(r.total_papers) + ',' +
               std::to_string(r.quantity_rank) + ',' +
               detail::fmt("%.2f", r.T) + ',' + std::to_string(r.impact_rank) +
               ',' + std::to_string(r.delta) + '\n';
    }
    return out;
}

inline std::string render_quantity_impact_text(const QuantityImpactReport& rep) {
    std::vector<std::string> names;
    for (const auto& r : rep.rows) names.push_back(r.entity);
    const std::size_t ew = detail::entity_width(names);
    std::string out = detail::pad("entity", ew) +
                      "       total  qty-rank      T  impact-rank  delta\n";
    for (const auto& r : rep.rows) {
        out += detail::pad(r.entity, ew) +
               detail::lpad(std::to_string(r.total_papers), 12) +
               detail::lpad(std::to_string(r.quantity_rank), 10) +
               detail::lpad(detail::fmt("%.2f", r.T), 7) +
               detail::lpad(std::to_string(r.impact_rank), 13) +
               detail::lpad(std::to_string(r.delta), 7) + '\n';
    }
    return out;
}

}  // namespace qcite
