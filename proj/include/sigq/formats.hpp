#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sigq/common.hpp"
#include "sigq/curve.hpp"
#include "sigq/polyline.hpp"
#include "sigq/signature.hpp"

namespace sigq {

namespace detail {

inline std::string num9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace detail

// ---- CSV -----------------------------------------------------------------

// Export: s,x,y,kappa,kappa_dot (s is accumulated arc length).
inline void write_curve_csv(std::ostream& os, const PlaneCurve& c) {
    const std::vector<double> cum = cumulative_arclength(c);
    os << "s,x,y,kappa,kappa_dot\n";
    for (size_t i = 0; i < c.samples.size(); ++i) {
        KappaPair k = curvature_at(c, i);
        os << detail::num9(cum[i]) << ',' << detail::num9(c.samples[i].point.x) << ','
           << detail::num9(c.samples[i].point.y) << ',' << detail::num9(k.kappa) << ','
           << detail::num9(k.kappa_dot) << '\n';
    }
}

inline void write_signature_csv(std::ostream& os, const Signature& sig) {
    os << "s,kappa,kappa_dot\n";
    for (const SigPoint& p : sig.trace)
        os << detail::num9(p.s) << ',' << detail::num9(p.q.x) << ',' << detail::num9(p.q.y)
           << '\n';
}

// Import: header t,x,y; derivatives filled by finite differences.
inline PlaneCurve read_polyline_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) fail("invalid-spec", "empty polyline CSV");
    // tolerate 0xEF 0xBB 0xBF and whitespace around the header
    std::string header;
    for (char ch : line)
        if (!std::isspace((unsigned char)ch) && (unsigned char)ch < 0x80) header += ch;
    if (header != "t,x,y") fail("invalid-spec", "polyline CSV must start with header t,x,y");
    std::vector<double> ts;
    std::vector<Vec2> pts;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double t, x, y;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &x, &y) != 3)
            fail("invalid-spec", "bad polyline CSV row: " + line);
        ts.push_back(t);
        pts.push_back({x, y});
    }
    if (ts.size() < 7) fail("invalid-spec", "polyline CSV needs at least 7 rows");
    const bool closed = dist(pts.front(), pts.back()) <= 1e-6 * (bbox_diagonal(pts) + 1e-300);
    if (closed) {
        ts.pop_back();
        pts.pop_back();
        PlaneCurve c = curve_from_polyline(ts, pts, true);
        // re-append the closing sample so first == last
        CurveSample back = c.samples.front();
        back.t = ts.back() + (ts[1] - ts[0]);
        c.samples.push_back(back);
        return c;
    }
    return curve_from_polyline(ts, pts, false);
}

// ---- SVG -----------------------------------------------------------------

struct SvgPolyline {
    std::vector<Vec2> points;
    std::string css_class;  // stroke color class
};

// Minimal hand-emitted SVG: axes plus one polyline element per class.
inline void write_svg(std::ostream& os, const std::vector<SvgPolyline>& polys,
                      int pixel_size = 640) {
    if (polys.empty()) fail("invalid-spec", "nothing to plot");
    Vec2 lo{1e300, 1e300}, hi{-1e300, -1e300};
    for (const auto& p : polys)
        for (const Vec2& v : p.points) {
            lo.x = std::min(lo.x, v.x);
            lo.y = std::min(lo.y, v.y);
            hi.x = std::max(hi.x, v.x);
            hi.y = std::max(hi.y, v.y);
        }
    const double w = std::max(hi.x - lo.x, 1e-12), h = std::max(hi.y - lo.y, 1e-12);
    const double span = std::max(w, h) * 1.1;
    const Vec2 center{0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y)};
    const double scale = pixel_size / span;
    auto X = [&](double x) { return (x - center.x) * scale + pixel_size / 2.0; };
    auto Y = [&](double y) { return pixel_size / 2.0 - (y - center.y) * scale; };

    static const char* kPalette[] = {"#c4342b", "#2b6cc4", "#2ba02b", "#8a2bc4",
                                     "#c48a2b", "#2bb0b0", "#777777", "#c42b8a"};
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixel_size << "\" height=\""
       << pixel_size << "\" viewBox=\"0 0 " << pixel_size << ' ' << pixel_size << "\">\n";
    os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes through the origin when visible
    os << "  <line x1=\"0\" y1=\"" << detail::num9(Y(0)) << "\" x2=\"" << pixel_size << "\" y2=\""
       << detail::num9(Y(0)) << "\" stroke=\"#cccccc\"/>\n";
    os << "  <line x1=\"" << detail::num9(X(0)) << "\" y1=\"0\" x2=\"" << detail::num9(X(0))
       << "\" y2=\"" << pixel_size << "\" stroke=\"#cccccc\"/>\n";
    int color = 0;
    for (const auto& p : polys) {
        os << "  <polyline fill=\"none\" stroke=\""
           << kPalette[color++ % (sizeof(kPalette) / sizeof(kPalette[0]))] << "\" stroke-width=\"1\"";
        if (!p.css_class.empty()) os << " class=\"" << p.css_class << "\"";
        os << " points=\"";
        for (size_t i = 0; i < p.points.size(); ++i) {
            if (i) os << ' ';
            os << detail::num9(X(p.points[i].x)) << ',' << detail::num9(Y(p.points[i].y));
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
}

// Curve plot, optionally split into per-piece color classes at the given
// arc-length breakpoints.
inline void write_curve_svg(std::ostream& os, const PlaneCurve& c,
                            const std::vector<double>& breakpoints = {}) {
    std::vector<SvgPolyline> polys;
    if (breakpoints.size() < 2) {
        polys.push_back({curve_points(c), "piece0"});
    } else {
        const std::vector<double> cum = cumulative_arclength(c);
        size_t b = 1;
        SvgPolyline cur{{}, "piece0"};
        for (size_t i = 0; i < c.samples.size(); ++i) {
            cur.points.push_back(c.samples[i].point);
            if (b + 1 < breakpoints.size() && cum[i] >= breakpoints[b]) {
                polys.push_back(cur);
                cur = {{c.samples[i].point}, "piece" + std::to_string(b)};
                ++b;
            }
        }
        polys.push_back(cur);
    }
    write_svg(os, polys);
}

inline void write_signature_svg(std::ostream& os, const Signature& sig) {
    write_svg(os, {{sig.points(), "signature"}});
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) fail("io-error", "cannot open for writing: " + path);
    f << content;
}

}  // namespace sigq
