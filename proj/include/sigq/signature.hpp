#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sigq/common.hpp"
#include "sigq/curvature.hpp"
#include "sigq/curve.hpp"
#include "sigq/polyline.hpp"

namespace sigq {

struct SigPoint {
    double s = 0.0;
    Vec2 q;  // (kappa, kappa_dot)
};

// Oriented polyline in the (kappa, kappa_dot) plane plus its parameter trace.
struct Signature {
    std::vector<SigPoint> trace;   // s ascending; for periodic sources the last
                                   // point closes the loop at s = ell
    double period_ell = 0.0;
    double bbox_diag = 0.0;

    std::vector<Vec2> points() const {
        std::vector<Vec2> pts;
        pts.reserve(trace.size());
        for (const SigPoint& p : trace) pts.push_back(p.q);
        return pts;
    }
};

namespace detail {

// Golden-section minimizer of g on [a, b] (unimodal assumed).
template <class G>
double golden_min(const G& g, double a, double b, int iters = 120) {
    const double phi = 0.6180339887498949;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = g(x1), f2 = g(x2);
    for (int i = 0; i < iters && (b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = g(x2);
        }
    }
    return 0.5 * (a + b);
}

// Local extrema of kappa_dot (sign changes of the second derivative),
// located by golden-section on the sampled grid. Sampling aid only.
inline std::vector<double> kappa_dot_extrema(const CurvatureFunction& f, int grid_n) {
    std::vector<double> out;
    const double o = f.domain_offset(), ell = f.period();
    const double h = ell / grid_n;
    std::vector<double> kd(grid_n);
    for (int i = 0; i < grid_n; ++i) kd[i] = f.eval(o + i * h).kappa_dot;
    for (int i = 0; i < grid_n; ++i) {
        const double dm = kd[i] - kd[(i + grid_n - 1) % grid_n];
        const double dp = kd[(i + 1) % grid_n] - kd[i];
        if (dm == 0.0 || dp == 0.0 || (dm < 0) == (dp < 0)) continue;
        const double a = o + (i - 1) * h, b = o + (i + 1) * h;
        const double sign = dm > 0 ? -1.0 : 1.0;  // fold max onto min
        const double s =
            golden_min([&](double u) { return sign * f.eval(u).kappa_dot; }, a, b);
        out.push_back(wrap_into(s, o, ell));
    }
    return out;
}

}  // namespace detail

// Trace of (kappa(s), kappa_dot(s)) over one minimal period, on a uniform grid
// augmented with the critical points of kappa and the extrema of kappa_dot so
// the extreme points of the phase portrait are sampled exactly.
inline Signature signature_of(const CurvatureFunction& f, int samples_per_period = 8192) {
    const double o = f.domain_offset(), ell = f.period();

    CriticalPoints crit;
    try {
        crit = f.critical_points();
    } catch (const Error& e) {
        // constant kappa means a single-point signature
        if (e.code() == "degenerate-function")
            fail("degenerate-signature", "constant curvature: signature is a single point");
        throw;
    }

    // uniform grid, then augmented points replace any grid sample they land
    // near (near-duplicate samples would create spurious tiny segments)
    std::vector<double> svals;
    svals.reserve(samples_per_period + 80);
    for (int i = 0; i <= samples_per_period; ++i)
        svals.push_back(o + ell * (double)i / samples_per_period);
    const double merge_tol = 0.25 * ell / samples_per_period;

    std::vector<double> augmented = crit.points;
    for (double s : detail::kappa_dot_extrema(f, samples_per_period / 2)) augmented.push_back(s);
    for (double s : augmented) {
        if (s <= svals.front() + merge_tol || s >= svals.back() - merge_tol) continue;
        auto it = std::lower_bound(svals.begin(), svals.end(), s);
        if (it != svals.end() && *it - s < merge_tol)
            *it = s;
        else if (it != svals.begin() && s - *(it - 1) < merge_tol)
            *(it - 1) = s;
        else
            svals.insert(it, s);
    }

    Signature sig;
    sig.period_ell = ell;
    sig.trace.reserve(svals.size());
    for (double s : svals) {
        KappaPair k = f.eval(s);
        sig.trace.push_back({s, {k.kappa, k.kappa_dot}});
    }
    sig.bbox_diag = bbox_diagonal(sig.points());
    return sig;
}

// Per-sample signature of a sampled curve; s is accumulated arc length.
inline Signature signature_of_curve(const PlaneCurve& c) {
    validate_curve(c);
    const std::vector<double> cum = cumulative_arclength(c);
    Signature sig;
    sig.period_ell = cum.back();
    sig.trace.reserve(c.samples.size());
    for (size_t i = 0; i < c.samples.size(); ++i) {
        KappaPair k = curvature_at(c, i);
        sig.trace.push_back({cum[i], {k.kappa, k.kappa_dot}});
    }
    sig.bbox_diag = bbox_diagonal(sig.points());
    return sig;
}

// Set distance between signatures: symmetric polyline Hausdorff.
inline double signature_distance(const Signature& a, const Signature& b) {
    if (a.trace.size() < 2 || b.trace.size() < 2)
        fail("degenerate-signature", "signature_distance needs non-degenerate signatures");
    return hausdorff_distance(a.points(), b.points());
}

// Vertical-axis reflection (kappa, kappa_dot) -> (-kappa, kappa_dot); the
// image of a signature under orientation reversal of the curve.
inline std::vector<Vec2> reflect_about_vertical_axis(const std::vector<Vec2>& pts) {
    std::vector<Vec2> out = pts;
    for (Vec2& p : out) p.x = -p.x;
    return out;
}

}  // namespace sigq
