#pragma once

// Static SVG figures (log-log data+model, and the q-log linearization) plus
// the plot-data CSV that accompanies every figure so tests can assert
// numbers instead of pixels. Output is byte-deterministic: fixed canvas,
// fixed precision, no timestamps.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qcite/errors.hpp"
#include "qcite/fitter.hpp"
#include "qcite/histogram.hpp"

namespace qcite {

namespace detail {

inline std::string svg_num(double v) {
    if (v == 0.0) v = 0.0;  // avoid "-0.00"
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string g6(double v) {
    if (v == 0.0) v = 0.0;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct Canvas {
    static constexpr double width = 640, height = 480;
    static constexpr double left = 70, right = 610, top = 40, bottom = 430;
    double x0, x1, y0, y1;  // data ranges

    double px(double x) const {
        return left + (x - x0) / (x1 - x0) * (right - left);
    }
    double py(double y) const {
        return bottom - (y - y0) / (y1 - y0) * (bottom - top);
    }
};

inline void svg_header(std::string& svg, const std::string& title) {
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
           "height=\"480\" viewBox=\"0 0 640 480\">\n";
    svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    svg += "<text x=\"320\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" +
           xml_escape(title) + "</text>\n";
}

inline void svg_frame(std::string& svg) {
    svg += "<rect x=\"70\" y=\"40\" width=\"540\" height=\"390\" fill=\"none\" "
           "stroke=\"black\" stroke-width=\"1\"/>\n";
}

inline void svg_tick_x(std::string& svg, const Canvas& cv, double x,
                       const std::string& label) {
    const double px = cv.px(x);
    svg += "<line x1=\"" + svg_num(px) + "\" y1=\"430\" x2=\"" + svg_num(px) +
           "\" y2=\"436\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + svg_num(px) +
           "\" y=\"452\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">" +
           label + "</text>\n";
}

inline void svg_tick_y(std::string& svg, const Canvas& cv, double y,
                       const std::string& label) {
    const double py = cv.py(y);
    svg += "<line x1=\"64\" y1=\"" + svg_num(py) + "\" x2=\"70\" y2=\"" +
           svg_num(py) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"60\" y=\"" + svg_num(py + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\">" +
           label + "</text>\n";
}

inline void svg_axis_label(std::string& svg, const std::string& xlab,
                           const std::string& ylab) {
    svg += "<text x=\"340\" y=\"474\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"13\">" +
           xml_escape(xlab) + "</text>\n";
    svg += "<text x=\"16\" y=\"235\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 16 235)\">" +
           xml_escape(ylab) + "</text>\n";
}

}  // namespace detail

/// Rows of the log-log plot: every observed point with c >= 1, N(c) > 0,
/// and the model value at the same c (empty when the extrapolation below
/// the anchor leaves the model's domain).
inline std::string loglog_plot_data_csv(const CitationHistogram& h,
                                        const FitResult& fr,
                                        bool normalize = false) {
    const double scale = normalize ? double(h.total_papers()) : 1.0;
    std::string out = "c,observed,fitted\n";
    for (const auto& [c, n] : h.counts) {
        if (c < 1 || n <= 0) continue;
        std::string fitted;
        try {
            fitted = detail::g6(
                model_eval(c, fr.q, fr.T, fr.anchor_c, double(fr.anchor_value)) /
                scale);
        } catch (const std::domain_error&) {
            fitted = "";
        }
        out += std::to_string(c) + ',' + detail::g6(double(n) / scale) + ',' +
               fitted + '\n';
    }
    return out;
}

inline std::string loglog_svg(const CitationHistogram& h, const FitResult& fr,
                              bool normalize = false) {
    const double scale = normalize ? double(h.total_papers()) : 1.0;
    std::vector<std::pair<double, double>> pts;  // log10 c, log10 value
    for (const auto& [c, n] : h.counts)
        if (c >= 1 && n > 0)
            pts.emplace_back(std::log10(double(c)),
                             std::log10(double(n) / scale));
    if (pts.empty()) throw DataError(h.entity + ": nothing to plot");

    detail::Canvas cv;
    cv.x0 = 0.0;
    cv.x1 = 0.0;
    cv.y0 = pts[0].second;
    cv.y1 = pts[0].second;
    for (const auto& [x, y] : pts) {
        cv.x0 = std::min(cv.x0, x);
        cv.x1 = std::max(cv.x1, x);
        cv.y0 = std::min(cv.y0, y);
        cv.y1 = std::max(cv.y1, y);
    }
    cv.x0 = std::floor(cv.x0);
    cv.x1 = std::ceil(cv.x1 + 0.05);
    cv.y0 = std::floor(cv.y0);
    cv.y1 = std::ceil(cv.y1 + 0.05);

    char ann[160];
    std::snprintf(ann, sizeof ann, "q=%.3f  T=%.2f  R2=%.2f", fr.q, fr.T, fr.r2);
    std::string svg;
    detail::svg_header(svg, h.entity + "  (" + ann + ")");
    detail::svg_frame(svg);
    for (int e = int(cv.x0); e <= int(cv.x1); ++e)
        detail::svg_tick_x(svg, cv, double(e), detail::g6(std::pow(10.0, e)));
    for (int e = int(cv.y0); e <= int(cv.y1); ++e)
        detail::svg_tick_y(svg, cv, double(e), detail::g6(std::pow(10.0, e)));
    detail::svg_axis_label(svg, "citations c",
                           normalize ? "fraction of papers" : "papers N(c)");

    // model curve, log-spaced sampling from c = 1 (or wherever the model
    // becomes evaluable) to the last observed c
    const double cmax = double(h.counts.rbegin()->first);
    std::string poly;
    const int segments = 160;
    for (int i = 0; i <= segments; ++i) {
        const double lc = cv.x0 + (std::log10(cmax) - cv.x0) * i / segments;
        const double c = std::pow(10.0, lc);
        if (c < 1.0) continue;
        const double a = (fr.q - 1.0) * (c - double(fr.anchor_c)) / fr.T;
        if (a <= -1.0) continue;
        const double v = double(fr.anchor_value) *
                         std::exp(-std::log1p(a) / (fr.q - 1.0)) / scale;
        const double ly = std::log10(v);
        if (ly < cv.y0 || ly > cv.y1) continue;
        poly += detail::svg_num(cv.px(lc)) + ',' + detail::svg_num(cv.py(ly)) + ' ';
    }
    svg += "<polyline fill=\"none\" stroke=\"#c02020\" stroke-width=\"1.5\" "
           "points=\"" +
           poly + "\"/>\n";
    for (const auto& [x, y] : pts) {
        svg += "<circle cx=\"" + detail::svg_num(cv.px(x)) + "\" cy=\"" +
               detail::svg_num(cv.py(y)) +
               "\" r=\"2\" fill=\"none\" stroke=\"black\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

/// Rows of the linearization plot: x = c - ref_c, the transformed data
/// point, and the ideal line -x/T.
inline std::string qlog_plot_data_csv(const CitationHistogram& h, double q,
                                      double T, std::int64_t ref_c,
                                      double x_limit) {
    auto pts = linearize(h, q, ref_c);
    std::string out = "x,y,fit\n";
    for (const auto& p : pts) {
        if (p.x > x_limit) continue;
        out += detail::g6(p.x) + ',' + detail::g6(p.y) + ',' +
               detail::g6(-p.x / T) + '\n';
    }
    return out;
}

inline std::string qlog_svg(const CitationHistogram& h, double q, double T,
                            std::int64_t ref_c, double x_limit) {
    auto pts = linearize(h, q, ref_c);
    std::erase_if(pts, [&](const LinearizedPoint& p) { return p.x > x_limit; });
    if (pts.empty()) throw DataError(h.entity + ": nothing to plot");

    detail::Canvas cv;
    cv.x0 = 0.0;
    cv.x1 = 1.0;
    cv.y0 = 0.0;
    cv.y1 = 1e-9;
    for (const auto& p : pts) {
        cv.x1 = std::max(cv.x1, p.x);
        cv.y0 = std::min(cv.y0, p.y);
        cv.y1 = std::max(cv.y1, p.y);
    }
    cv.y0 = std::min(cv.y0, -cv.x1 / T);

    char ann[160];
    std::snprintf(ann, sizeof ann, "q=%.3f  slope=-1/T=%.4f", q, -1.0 / T);
    std::string svg;
    detail::svg_header(svg, h.entity + "  (" + ann + ")");
    detail::svg_frame(svg);
    for (int i = 0; i <= 4; ++i) {
        const double x = cv.x0 + (cv.x1 - cv.x0) * i / 4;
        detail::svg_tick_x(svg, cv, x, detail::g6(x));
        const double y = cv.y0 + (cv.y1 - cv.y0) * i / 4;
        detail::svg_tick_y(svg, cv, y, detail::g6(y));
    }
    detail::svg_axis_label(svg, "c - " + std::to_string(ref_c),
                           "ln_q[N(c)/N(ref)]");

    svg += "<line x1=\"" + detail::svg_num(cv.px(0.0)) + "\" y1=\"" +
           detail::svg_num(cv.py(0.0)) + "\" x2=\"" +
           detail::svg_num(cv.px(cv.x1)) + "\" y2=\"" +
           detail::svg_num(cv.py(-cv.x1 / T)) +
           "\" stroke=\"#c02020\" stroke-width=\"1.5\"/>\n";
    for (const auto& p : pts) {
        svg += "<circle cx=\"" + detail::svg_num(cv.px(p.x)) + "\" cy=\"" +
               detail::svg_num(cv.py(p.y)) +
               "\" r=\"2\" fill=\"none\" stroke=\"black\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace qcite
