#pragma once

// Impact ordering by effective temperature and the quantity-vs-impact
// comparison. Ties on T break by entity name ascending so output never
// depends on input order.

#include <algorithm>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qcite/errors.hpp"
#include "qcite/fitter.hpp"
#include "qcite/histogram.hpp"

namespace qcite {

struct RankingRow {
    int rank = 0;  // 1-based, no gaps
    std::string entity;
    double q = 0.0;
    double r2 = 0.0;
    double T = 0.0;
};

struct RankingTable {
    std::vector<RankingRow> rows;  // sorted by T descending
};

inline RankingTable rank_by_temperature(std::span<const FitResult> results) {
    if (results.empty()) throw DataError("rank_by_temperature: empty result list");
    RankingTable table;
    table.rows.reserve(results.size());
    std::set<std::string> seen;
    for (const auto& r : results) {
        if (!seen.insert(r.entity).second)
            throw DataError("rank_by_temperature: duplicate entity '" + r.entity +
                            "'");
        table.rows.push_back({0, r.entity, r.q, r.r2, r.T});
    }
    std::sort(table.rows.begin(), table.rows.end(),
              [](const RankingRow& a, const RankingRow& b) {
                  if (a.T != b.T) return a.T > b.T;
                  return a.entity < b.entity;
              });
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        table.rows[i].rank = int(i) + 1;
    return table;
}

struct QuantityImpactRow {
    std::string entity;
    int quantity_rank = 0;  // by total_papers descending
    int impact_rank = 0;    // by T descending
    int delta = 0;          // quantity_rank - impact_rank
    std::int64_t total_papers = 0;
    double T = 0.0;
};

struct QuantityImpactReport {
    std::vector<QuantityImpactRow> rows;  // sorted by impact rank
};

/// Pairs each entity's quantity rank with its impact rank. The entity sets
/// of both inputs must match exactly.
inline QuantityImpactReport quantity_vs_impact(
    std::span<const SummaryStats> summaries,
    std::span<const FitResult> results) {
    if (summaries.size() != results.size())
        throw DataError("quantity_vs_impact: entity sets differ in size");
    std::vector<const SummaryStats*> by_quantity;
    for (const auto& s : summaries) by_quantity.push_back(&s);
    std::sort(by_quantity.begin(), by_quantity.end(),
              [](const SummaryStats* a, const SummaryStats* b) {
                  if (a->total_papers != b->total_papers)
                      return a->total_papers > b->total_papers;
                  return a->entity < b->entity;
              });

    const RankingTable impact = rank_by_temperature(results);
    QuantityImpactReport report;
    for (const auto& row : impact.rows) {
        int qrank = 0;
        const SummaryStats* summary = nullptr;
        for (std::size_t i = 0; i < by_quantity.size(); ++i) {
            if (by_quantity[i]->entity == row.entity) {
                qrank = int(i) + 1;
                summary = by_quantity[i];
                break;
            }
        }
        if (!summary)
            throw DataError("quantity_vs_impact: no summary for entity '" +
                            row.entity + "'");
        report.rows.push_back({row.entity, qrank, row.rank, qrank - row.rank,
                               summary->total_papers, row.T});
    }
    return report;
}

}  // namespace qcite
