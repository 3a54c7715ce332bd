#pragma once

#include <cmath>
#include <vector>

#include "sigq/common.hpp"
#include "sigq/curvature.hpp"
#include "sigq/curve.hpp"
#include "sigq/quadrature.hpp"

namespace sigq {

// Closedness data of the curve generated by a periodic curvature:
// integral over one period reconstructed as 2*pi*xi/m.
struct ClosureInfo {
    double integral_over_ell = 0.0;
    int xi = 0;                // turning number (sign carried)
    int m = 1;                 // symmetry index, >= 1 when closed
    bool closed = false;
    double total_length_L = 0.0;  // m * ell when closed
    bool rational_ok = false;     // integral matched xi/m within tolerance
    double endpoint_gap = 0.0;    // Frenet endpoint gap relative to L
};

// Unit-speed curve from kappa via the Frenet solution
// gamma(s) = (int cos eta, int sin eta), eta(s) = int_0^s kappa.
// Panels are split at curvature piece boundaries; 5-point Gauss-Legendre per
// panel with nested nodes for the interior eta values.
inline PlaneCurve integrate_frenet(const CurvatureFunction& f, double s_max, double step) {
    if (!(s_max > 0.0)) fail("invalid-interval", "s_max must be positive");
    if (!(step > 0.0)) fail("invalid-step", "step must be positive");

    PlaneCurve out;
    out.closed = false;

    double eta = 0.0;
    Vec2 pos{0.0, 0.0};
    double s = 0.0;

    auto emit = [&](double at) {
        KappaPair k = f.eval(at);
        CurveSample cs;
        cs.t = at;
        cs.point = pos;
        cs.d1 = {std::cos(eta), std::sin(eta)};
        const Vec2 normal{-cs.d1.y, cs.d1.x};
        cs.d2 = k.kappa * normal;
        cs.d3 = k.kappa_dot * normal - (k.kappa * k.kappa) * cs.d1;
        out.samples.push_back(cs);
        out.eta.push_back(eta);
    };
    emit(0.0);

    const double offset = f.domain_offset();
    const double ell = f.period();
    auto kappa = [&](double u) { return f.eval(u).kappa; };

    size_t step_index = 1;
    double next_output = std::min(step, s_max);
    while (s < s_max - 1e-12 * s_max) {
        // next panel end: the nearest of (piece boundary, output sample);
        // a start sitting on a boundary advances to the following piece
        const double u = wrap_into(s, offset, ell);
        double boundary = s + (ell - (u - offset));
        for (const CurvaturePiece& p : f.pieces()) {
            if (p.b > u + 1e-9 * ell) {
                boundary = s + (p.b - u);
                break;
            }
        }
        if (boundary <= s) boundary = s + ell / std::max<size_t>(f.pieces().size(), 1);
        const double panel_end = std::min({boundary, next_output, s_max});
        const double h = panel_end - s;
        if (h > 1e-15 * std::max(1.0, s_max)) {
            const double mid = 0.5 * (s + panel_end);
            const double half = 0.5 * h;
            Vec2 dpos{0.0, 0.0};
            for (int i = 0; i < 5; ++i) {
                const double node = mid + half * GaussLegendre5::nodes[i];
                const double eta_node = eta + gauss5(kappa, s, node);
                dpos += GaussLegendre5::weights[i] * Vec2{std::cos(eta_node), std::sin(eta_node)};
            }
            pos += half * dpos;
            eta += gauss5(kappa, s, panel_end);
        }
        s = panel_end;
        if (s >= next_output - 1e-12 * s_max) {
            emit(s);
            ++step_index;
            next_output = std::min(step * (double)step_index, s_max);
            if (next_output <= s) next_output = s_max;
        }
    }
    return out;
}

namespace detail {

// Best rational approximation xi/m to x by continued fractions,
// denominator bounded; returns false when nothing lands within tol.
inline bool rational_reconstruct(double x, int max_den, double tol, int& xi, int& m) {
    const double ax = std::abs(x);
    int64_t h0 = 1, h1 = (int64_t)std::floor(ax);
    int64_t k0 = 0, k1 = 1;
    double frac = ax - std::floor(ax);
    int64_t best_h = h1, best_k = 1;
    double best_err = std::abs(ax - (double)h1);
    for (int it = 0; it < 40 && frac > 1e-15; ++it) {
        const double inv = 1.0 / frac;
        const int64_t a = (int64_t)std::floor(inv);
        frac = inv - std::floor(inv);
        const int64_t h2 = a * h1 + h0;
        const int64_t k2 = a * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        const double err = std::abs(ax - (double)h1 / (double)k1);
        if (err < best_err) {
            best_err = err;
            best_h = h1;
            best_k = k1;
        }
    }
    if (best_err > tol) return false;
    const int64_t g = gcd64(best_h, best_k);
    xi = (int)((x < 0 ? -best_h : best_h) / std::max<int64_t>(g, 1));
    m = (int)(best_k / std::max<int64_t>(g, 1));
    return true;
}

}  // namespace detail

// Integrate kappa over one minimal period, reconstruct xi/m, and confirm
// closedness geometrically (the endpoint gap wins over the arithmetic).
inline ClosureInfo closure_info(const CurvatureFunction& f) {
    ClosureInfo info;
    const double ell = f.period();
    info.integral_over_ell = f.integrate(f.domain_offset(), f.domain_offset() + ell, 1e-10);
    const double x = info.integral_over_ell / kTwoPi;
    if (std::abs(x) < 1e-6) return info;  // zero integral: never a closed curve here

    int xi = 0, m = 1;
    if (!detail::rational_reconstruct(x, 64, 1e-6, xi, m)) return info;
    if (xi == 0 || m < 1) return info;
    info.rational_ok = true;
    info.xi = xi;
    info.m = m;
    info.total_length_L = m * ell;

    PlaneCurve probe = integrate_frenet(f, info.total_length_L, info.total_length_L / 4096.0);
    info.endpoint_gap = dist(probe.samples.front().point, probe.samples.back().point) /
                        info.total_length_L;
    info.closed = info.endpoint_gap <= 1e-4;
    if (!info.closed) info.total_length_L = 0.0;
    return info;
}

}  // namespace sigq
