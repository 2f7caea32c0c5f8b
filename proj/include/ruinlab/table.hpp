#pragma once

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ruinlab/retention.hpp"

namespace ruinlab {

namespace detail {

inline std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace detail

inline const char* sweep_axis_name(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::u: return "u";
    case SweepAxis::k_cap: return "k";
    default: return "x";
    }
}

// RFC 4180 rows, CRLF line endings, 12 significant digits.
inline void write_sweep_csv(std::ostream& os, SweepAxis axis,
                            const std::vector<SweepRow>& rows) {
    os << "axis,value,umr,x_star,objective,converged_in_k,error\r\n";
    const char* axis_name = sweep_axis_name(axis);
    for (const auto& row : rows) {
        os << axis_name << ',' << detail::fmt12(row.axis_value) << ',';
        if (row.umr) os << detail::fmt12(*row.umr);
        os << ',';
        if (row.x_star) os << detail::fmt12(*row.x_star);
        os << ',';
        if (row.objective) os << detail::fmt12(*row.objective);
        os << ',';
        if (row.converged_in_k) os << (*row.converged_in_k ? "true" : "false");
        os << ',' << detail::csv_quote(row.error) << "\r\n";
    }
}

// Minimal SVG 1.1 line chart of (axis value, y) pairs; rows without a
// value are skipped.
inline void write_sweep_svg(std::ostream& os, SweepAxis axis,
                            const std::vector<SweepRow>& rows, bool plot_x_star) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : rows) {
        const auto& y = plot_x_star ? row.x_star : row.umr;
        if (y) pts.emplace_back(row.axis_value, *y);
    }
    constexpr double w = 640, h = 420, margin = 56;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w
       << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    if (pts.size() >= 2) {
        double xmin = pts.front().first, xmax = pts.back().first;
        double ymin = pts.front().second, ymax = pts.front().second;
        for (const auto& [px, py] : pts) {
            ymin = std::min(ymin, py);
            ymax = std::max(ymax, py);
        }
        if (ymax == ymin) ymax = ymin + 1.0;
        if (xmax == xmin) xmax = xmin + 1.0;
        auto sx = [&](double v) { return margin + (v - xmin) / (xmax - xmin) * (w - 2 * margin); };
        auto sy = [&](double v) { return h - margin - (v - ymin) / (ymax - ymin) * (h - 2 * margin); };
        os << "  <rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << w - 2 * margin
           << "\" height=\"" << h - 2 * margin
           << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
        os << "  <polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
        for (const auto& [px, py] : pts) os << detail::fmt12(sx(px)) << ',' << detail::fmt12(sy(py)) << ' ';
        os << "\"/>\n";
        os << "  <text x=\"" << w / 2 << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\" "
           << "font-family=\"sans-serif\" font-size=\"13\">" << sweep_axis_name(axis)
           << "</text>\n"
           << "  <text x=\"14\" y=\"" << h / 2 << "\" text-anchor=\"middle\" "
           << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 14 "
           << h / 2 << ")\">" << (plot_x_star ? "x*" : "umr") << "</text>\n";
    }
    os << "</svg>\n";
}

} // namespace ruinlab
