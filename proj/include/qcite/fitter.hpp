#pragma once

// Two-stage fit of N(c) = N(anchor) * e_q(-(c - anchor)/T) to a citation
// histogram:
//
//   stage 1: grid-search q; for each candidate q the best T is found by
//            golden-section search restricted to the first
//            q_window_decades decades of c above the anchor.
//   stage 2: with q fixed, re-optimize T over every fit-view point.
//
// The objective is the unweighted sum of squared log residuals
// [ln N(c) - ln model(c)]^2; the model passes exactly through the observed
// anchor point, so the amplitude is never a free parameter. R^2 is the
// coefficient of determination of observed vs fitted log counts, optionally
// including the model extrapolated to c = 1.

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qcite/errors.hpp"
#include "qcite/fit_config.hpp"
#include "qcite/histogram.hpp"
#include "qcite/qmath.hpp"

namespace qcite {

struct FitResult {
    std::string entity;
    double q = 0.0;
    /// Effective temperature, citation units.
    double T = 0.0;
    double r2 = 0.0;
    std::int64_t anchor_c = 2;
    std::int64_t anchor_value = 0;
    int n_points_q = 0;
    int n_points_T = 0;
};

/// T search bracket; citation temperatures are O(10), so an optimum pinned
/// at the upper edge means the data does not decay and the fit errors out.
inline constexpr double fit_T_min = 1e-6;
inline constexpr double fit_T_max = 1e3;
inline constexpr double fit_T_rel_tol = 1e-6;

/// Model prediction anchor_value * e_q(-(c - anchor_c)/T). Also used to
/// extrapolate below the anchor (c = 1 in R^2 and plots), where a
/// non-positive q-exponential base throws std::domain_error.
inline double model_eval(std::int64_t c, double q, double T,
                         std::int64_t anchor_c, double anchor_value) {
    if (!(T > 0.0)) throw std::domain_error("model_eval: requires T > 0");
    if (!(anchor_value > 0.0))
        throw std::domain_error("model_eval: requires anchor_value > 0");
    return anchor_value * q_exp(-double(c - anchor_c) / T, q);
}

namespace detail {

/// ln e_q(-dc/T) for q > 1; dc may be negative (extrapolation).
inline double log_q_decay(double dc, double q, double T) {
    const double a = (q - 1.0) * dc / T;
    if (a <= -1.0)
        throw std::domain_error("model extrapolation outside q-exponential domain");
    return -std::log1p(a) / (q - 1.0);
}

struct LogPoint {
    double dc;    // c - anchor_c
    double ln_n;  // ln N(c)
};

inline double log_objective(std::span<const LogPoint> pts, double q, double T,
                            double ln_anchor) {
    double sum = 0.0;
    for (const auto& p : pts) {
        const double r = p.ln_n - (ln_anchor + log_q_decay(p.dc, q, T));
        sum += r * r;
    }
    return sum;
}

struct GoldenMin {
    double x;
    double fx;
};

/// Golden-section minimum of f on [lo, hi] to relative tolerance rel_tol.
/// Assumes a unimodal objective; callers must sanity-check results that
/// land on the bracket edge.
template <class F>
GoldenMin golden_min(F&& f, double lo, double hi, double rel_tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > rel_tol * 0.5 * (std::fabs(c) + std::fabs(d)) + 1e-12) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? GoldenMin{c, fc} : GoldenMin{d, fd};
}

inline GoldenMin best_T_for_q(std::span<const LogPoint> pts, double q,
                              double ln_anchor) {
    return golden_min(
        [&](double T) { return log_objective(pts, q, T, ln_anchor); }, fit_T_min,
        fit_T_max, fit_T_rel_tol);
}

struct PreparedFit {
    std::vector<LogPoint> all;
    std::vector<LogPoint> window;
    std::int64_t anchor_value;
    double ln_anchor;
};

inline PreparedFit prepare(const CitationHistogram& h, const FitConfig& cfg) {
    cfg.validate();
    auto view = fit_view(h, cfg);
    PreparedFit prep;
    prep.anchor_value = h.count_at(cfg.anchor_c);
    if (prep.anchor_value <= 0)
        throw DataError(h.entity + ": no observation at anchor c=" +
                        std::to_string(cfg.anchor_c));
    prep.ln_anchor = std::log(double(prep.anchor_value));
    const double window_max = cfg.q_window_max_c();
    prep.all.reserve(view.size());
    for (const auto& p : view) {
        LogPoint lp{double(p.c - cfg.anchor_c), std::log(double(p.count))};
        prep.all.push_back(lp);
        if (double(p.c) <= window_max) prep.window.push_back(lp);
    }
    if (std::ssize(prep.window) < 2)
        throw InsufficientDataError(h.entity + ": q window too small",
                                    std::ssize(prep.window), 2);
    return prep;
}

/// R^2 of observed vs fitted log counts over the fit view, plus the model
/// extrapolated to c = 1 when requested and N(1) > 0.
inline double r_squared(const CitationHistogram& h, const FitConfig& cfg,
                        const PreparedFit& prep, double q, double T,
                        int* n_points = nullptr) {
    std::vector<double> obs, fitted;
    obs.reserve(prep.all.size() + 1);
    fitted.reserve(prep.all.size() + 1);
    if (cfg.include_c1_in_r2 && cfg.anchor_c > 1 && h.count_at(1) > 0) {
        obs.push_back(std::log(double(h.count_at(1))));
        fitted.push_back(prep.ln_anchor +
                         log_q_decay(double(1 - cfg.anchor_c), q, T));
    }
    for (const auto& p : prep.all) {
        obs.push_back(p.ln_n);
        fitted.push_back(prep.ln_anchor + log_q_decay(p.dc, q, T));
    }
    double mean = 0.0;
    for (double v : obs) mean += v;
    mean /= double(obs.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        ss_res += (obs[i] - fitted[i]) * (obs[i] - fitted[i]);
        ss_tot += (obs[i] - mean) * (obs[i] - mean);
    }
    if (n_points) *n_points = int(obs.size());
    if (ss_tot == 0.0) return ss_res == 0.0 ? 1.0 : 0.0;
    // clamped at 0: a fit worse than the mean carries no more information
    return std::max(0.0, 1.0 - ss_res / ss_tot);
}

inline FitResult finish_fit(const CitationHistogram& h, const FitConfig& cfg,
                            const PreparedFit& prep, double q) {
    const auto stage2 = best_T_for_q(prep.all, q, prep.ln_anchor);
    if (stage2.x >= 0.999 * fit_T_max)
        throw FitError(h.entity + ": T optimum pinned at bracket edge (T=" +
                       std::to_string(stage2.x) +
                       ", objective=" + std::to_string(stage2.fx) +
                       "); data does not decay like a q-exponential");
    if (stage2.x <= 2.0 * fit_T_min)
        throw FitError(h.entity + ": T optimum collapsed to zero");
    FitResult res;
    res.entity = h.entity;
    res.q = q;
    res.T = stage2.x;
    res.anchor_c = cfg.anchor_c;
    res.anchor_value = prep.anchor_value;
    res.n_points_q = int(prep.window.size());
    res.n_points_T = int(prep.all.size());
    res.r2 = r_squared(h, cfg, prep, q, res.T);
    return res;
}

}  // namespace detail

/// Full two-stage fit. Deterministic: the q grid is scanned in order and
/// ties break toward smaller q.
inline FitResult fit(const CitationHistogram& h, const FitConfig& cfg = {}) {
    const auto prep = detail::prepare(h, cfg);
    double best_q = cfg.q_grid.at(0);
    double best_obj = std::numeric_limits<double>::infinity();
    const int n = cfg.q_grid.size();
    for (int i = 0; i < n; ++i) {
        const double q = cfg.q_grid.at(i);
        const auto m = detail::best_T_for_q(prep.window, q, prep.ln_anchor);
        if (m.fx < best_obj) {
            best_obj = m.fx;
            best_q = q;
        }
    }
    return detail::finish_fit(h, cfg, prep, best_q);
}

/// Stage 2 and R^2 only, with the entropic index supplied by the caller.
inline FitResult refit_T_fixed_q(const CitationHistogram& h, double q,
                                 const FitConfig& cfg = {}) {
    if (!(q > 1.0 && q < 2.0))
        throw std::domain_error("refit_T_fixed_q: requires 1 < q < 2");
    const auto prep = detail::prepare(h, cfg);
    return detail::finish_fit(h, cfg, prep, q);
}

struct LinearizedPoint {
    double x;  // c - ref_c
    double y;  // ln_q[N(c)/N(ref_c)]
};

/// Fig.-4 style linearization: under a perfect model the points lie on a
/// line through the origin with slope -1/T.
inline std::vector<LinearizedPoint> linearize(const CitationHistogram& h,
                                              double q, std::int64_t ref_c) {
    if (!(q > 1.0 && q < 2.0))
        throw std::domain_error("linearize: requires 1 < q < 2");
    h.validate();
    const std::int64_t ref_n = h.count_at(ref_c);
    if (ref_n <= 0)
        throw DataError(h.entity + ": reference count N(" +
                        std::to_string(ref_c) + ") not in support");
    std::vector<LinearizedPoint> pts;
    for (auto it = h.counts.lower_bound(ref_c); it != h.counts.end(); ++it) {
        if (it->second <= 0) continue;
        pts.push_back({double(it->first - ref_c),
                       q_log(double(it->second) / double(ref_n), q)});
    }
    return pts;
}

}  // namespace qcite
