#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sigq/common.hpp"
#include "sigq/curvature.hpp"
#include "sigq/curve.hpp"
#include "sigq/quadrature.hpp"

namespace sigq {

// ---- the C-infinity bump family ---------------------------------------------

// kappa_i built from scaled bumps on 2-unit blocks, coefficient times pi/3.
inline CurvatureFunction bump_curvature(const std::vector<double>& block_coeffs) {
    std::vector<CurvaturePiece> pieces;
    for (size_t i = 0; i < block_coeffs.size(); ++i) {
        CurvaturePiece p;
        p.a = 2.0 * (double)i;
        p.b = p.a + 2.0;
        p.payload = BumpCombination{{{block_coeffs[i] * kPi / 3.0, p.a, p.b}}};
        pieces.push_back(p);
    }
    return CurvatureFunction::create(std::move(pieces));
}

struct BumpFamily {
    CurvatureFunction k1, k2, k3, k4;
};

// The four curvatures of equal-length closed curves with identical
// signatures: periods 8, 8, 16, 24; symmetry indices 6, 6, 3, 2.
inline BumpFamily bump_curvatures() {
    return {bump_curvature({1, -2, 3, -1}),
            bump_curvature({1, 3, -2, -1}),
            bump_curvature({1, -2, 3, -1, 1, 3, -2, -1}),
            bump_curvature({1, -2, 3, -1, 1, 3, -2, -1, 1, -2, 3, -1})};
}

// ---- trigonometric examples --------------------------------------------------

// kappa(s) = (sin s - cos 3s)/2 - 1/5, period 2 pi.
inline CurvatureFunction mn_curvature() {
    CurvaturePiece p;
    p.a = 0.0;
    p.b = kTwoPi;
    p.payload = TrigPolynomial{-0.2, 1.0, {{1, 0.0, 0.5}, {3, -0.5, 0.0}}};
    return CurvatureFunction::create({p});
}

// kappa(s) = sin s + cos s + 1/5: a curve whose signature is a circle.
inline CurvatureFunction simple_sig_curvature() {
    CurvaturePiece p;
    p.a = 0.0;
    p.b = kTwoPi;
    p.payload = TrigPolynomial{0.2, 1.0, {{1, 1.0, 1.0}}};
    return CurvatureFunction::create({p});
}

// kappa(s) = sin s: closed phase portrait, zero total curvature, so no
// closed non-degenerate curve carries it.
inline CurvatureFunction sine_curvature() {
    CurvaturePiece p;
    p.a = 0.0;
    p.b = kTwoPi;
    p.payload = TrigPolynomial{0.0, 1.0, {{1, 0.0, 1.0}}};
    return CurvatureFunction::create({p});
}

// ---- cogwheels ---------------------------------------------------------------

struct CogwheelSpec {
    int n = 4;
    double r0 = 1.0;
    std::vector<int> teeth{3, 4, 5, 6};  // a_j, one entry per cog

    void validate() const {
        if (n < 1 || (int)teeth.size() != n)
            fail("invalid-spec", "cogwheel needs one tooth count per cog");
        if (!(r0 > 0.0)) fail("invalid-spec", "cogwheel inner radius must be positive");
        for (int a : teeth)
            if (a <= 0) fail("invalid-spec", "cogwheel tooth counts must be positive");
    }
};

// gamma(t) = rho(t) (cos t, sin t) with analytic derivatives up to third
// order; strictly C3 at cog boundaries.
inline PlaneCurve cogwheel(const CogwheelSpec& spec, int samples_per_tooth = 512) {
    spec.validate();
    PlaneCurve out;
    out.closed = true;

    auto sample_at = [&](int j, double t) {
        const double a = (double)spec.teeth[j];
        const double na = spec.n * a;
        const double c = std::cos(na * t), sn = std::sin(na * t);
        const double rho = spec.r0 + (1.0 - c) / (a * a);
        const double rho1 = (spec.n / a) * sn;
        const double rho2 = spec.n * spec.n * c;
        const double rho3 = -spec.n * spec.n * na * sn;
        const Vec2 er{std::cos(t), std::sin(t)};
        const Vec2 et{-er.y, er.x};
        CurveSample cs;
        cs.t = t;
        cs.point = rho * er;
        cs.d1 = rho1 * er + rho * et;
        cs.d2 = (rho2 - rho) * er + 2.0 * rho1 * et;
        cs.d3 = (rho3 - 3.0 * rho1) * er + (3.0 * rho2 - rho) * et;
        return cs;
    };

    for (int j = 0; j < spec.n; ++j) {
        const double cog_lo = kTwoPi * j / spec.n;
        const double tooth_width = kTwoPi / (spec.n * spec.teeth[j]);
        for (int tooth = 0; tooth < spec.teeth[j]; ++tooth) {
            const double t0 = cog_lo + tooth * tooth_width;
            for (int i = 0; i < samples_per_tooth; ++i)
                out.samples.push_back(sample_at(j, t0 + tooth_width * i / samples_per_tooth));
        }
    }
    out.samples.push_back(sample_at(spec.n - 1, kTwoPi));  // close the loop
    return out;
}

// The closed-form curvature on cog j as printed in the source material,
// used as the independent check of the derivative route.
inline double cogwheel_curvature_formula(const CogwheelSpec& spec, int j, double t) {
    spec.validate();
    const double a = (double)spec.teeth[j];
    const double n = (double)spec.n;
    const double c = std::cos(n * a * t);
    const double g = std::sqrt((1.0 - a * a * n * n) * c * c - (2.0 * spec.r0 * a * a + 2.0) * c +
                               spec.r0 * spec.r0 * a * a * a * a +
                               (n * n + 2.0 * spec.r0) * a * a + 1.0) /
                     (a * a);
    return (g * g * a * a - (a * a * n * n * spec.r0 + n * n) * c + n * n) / (g * g * g * a * a);
}

// Arc-length curvature of a cogwheel as a CurvatureFunction: one
// sampled-with-derivative piece per tooth, kappa_dot converted to arc length.
// If the tooth pattern repeats, only the minimal block is kept.
inline CurvatureFunction cogwheel_curvature(const CogwheelSpec& spec, int nodes_per_tooth = 384) {
    spec.validate();

    // tooth-shape sequence; its minimal cyclic period bounds the kappa period
    std::vector<int> shape;
    for (int j = 0; j < spec.n; ++j)
        for (int k = 0; k < spec.teeth[j]; ++k) shape.push_back(spec.teeth[j]);
    size_t tooth_period = shape.size();
    for (size_t p = 1; p < shape.size(); ++p) {
        if (shape.size() % p != 0) continue;
        bool ok = true;
        for (size_t i = 0; i < shape.size() && ok; ++i) ok = shape[i] == shape[(i + p) % shape.size()];
        if (ok) {
            tooth_period = p;
            break;
        }
    }

    auto deriv_sample = [&](int j, double t) {
        const double a = (double)spec.teeth[j];
        const double na = spec.n * a;
        const double c = std::cos(na * t), sn = std::sin(na * t);
        const double rho = spec.r0 + (1.0 - c) / (a * a);
        const double rho1 = (spec.n / a) * sn;
        const double rho2 = spec.n * spec.n * c;
        const double rho3 = -spec.n * spec.n * na * sn;
        const Vec2 er{std::cos(t), std::sin(t)};
        const Vec2 et{-er.y, er.x};
        const Vec2 d1 = rho1 * er + rho * et;
        const Vec2 d2 = (rho2 - rho) * er + 2.0 * rho1 * et;
        const Vec2 d3 = (rho3 - 3.0 * rho1) * er + (3.0 * rho2 - rho) * et;
        const double g2 = d1.norm2();
        const double g = std::sqrt(g2);
        const double kappa = cross(d1, d2) / (g2 * g);
        const double kdot =
            (g2 * cross(d1, d3) - 3.0 * dot(d1, d2) * cross(d1, d2)) / (g2 * g2 * g2);
        return std::tuple<double, double, double>{kappa, kdot, g};
    };

    std::vector<CurvaturePiece> pieces;
    double s_cursor = 0.0;
    size_t tooth_index = 0;
    for (int j = 0; j < spec.n && tooth_index < tooth_period; ++j) {
        const double cog_lo = kTwoPi * j / spec.n;
        const double tooth_width = kTwoPi / (spec.n * spec.teeth[j]);
        for (int tooth = 0; tooth < spec.teeth[j] && tooth_index < tooth_period;
             ++tooth, ++tooth_index) {
            const double t0 = cog_lo + tooth * tooth_width;
            SampledWithDerivative sp;
            sp.s.resize(nodes_per_tooth + 1);
            sp.kappa.resize(nodes_per_tooth + 1);
            sp.kappa_dot.resize(nodes_per_tooth + 1);
            double s_local = 0.0;
            double t_prev = t0;
            for (int i = 0; i <= nodes_per_tooth; ++i) {
                const double t = t0 + tooth_width * (double)i / nodes_per_tooth;
                if (i > 0) {
                    s_local += gauss5(
                        [&](double tt) { return std::get<2>(deriv_sample(j, tt)); }, t_prev, t);
                }
                auto [kap, kdot, g] = deriv_sample(j, t);
                sp.s[i] = s_cursor + s_local;
                sp.kappa[i] = kap;
                sp.kappa_dot[i] = kdot;
                t_prev = t;

                // sampled curvature must agree with the printed formula
                if (i % 16 == 0 &&
                    std::abs(kap - cogwheel_curvature_formula(spec, j, t)) > 1e-8)
                    fail("internal-consistency", "cogwheel curvature routes disagree");
            }
            CurvaturePiece piece;
            piece.a = s_cursor;
            piece.b = s_cursor + s_local;
            piece.payload = std::move(sp);
            pieces.push_back(std::move(piece));
            s_cursor += s_local;
        }
    }
    return CurvatureFunction::create(std::move(pieces));
}

// ---- miscellaneous -----------------------------------------------------------

// The degenerate sampled curve (t, t^6 sin(1/t)) on [-1/(4 pi), 1/(4 pi)]:
// C3, no degenerate vertices, vertices accumulating at t = 0.
inline PlaneCurve degenerate_example_curve(int n_samples = 4096) {
    PlaneCurve out;
    out.closed = false;
    const double T = 1.0 / (4.0 * kPi);
    out.samples.reserve(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double t = -T + (2.0 * T) * (i + 0.5) / n_samples;  // grid avoids t = 0
        const double u = 1.0 / t;
        const double sn = std::sin(u), cs = std::cos(u);
        const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t, t6 = t5 * t;
        CurveSample s;
        s.t = t;
        s.point = {t, t6 * sn};
        s.d1 = {1.0, 6 * t5 * sn - t4 * cs};
        s.d2 = {0.0, 30 * t4 * sn - 10 * t3 * cs - t2 * sn};
        s.d3 = {0.0, 120 * t3 * sn - 60 * t2 * cs - 12 * t * sn + cs};
        out.samples.push_back(s);
    }
    return out;
}

// ---- lookup by name (CLI surface) --------------------------------------------

struct GalleryItem {
    std::string name;
    std::optional<CurvatureFunction> kappa;
    std::optional<PlaneCurve> curve;  // provided when the construction is a curve
};

inline GalleryItem gallery_item(const std::string& name) {
    if (name == "cinf1") return {name, bump_curvature({1, -2, 3, -1}), {}};
    if (name == "cinf2") return {name, bump_curvature({1, 3, -2, -1}), {}};
    if (name == "cinf3") return {name, bump_curvature({1, -2, 3, -1, 1, 3, -2, -1}), {}};
    if (name == "cinf4")
        return {name, bump_curvature({1, -2, 3, -1, 1, 3, -2, -1, 1, -2, 3, -1}), {}};
    if (name == "mn") return {name, mn_curvature(), {}};
    if (name == "simple-sig") return {name, simple_sig_curvature(), {}};
    if (name == "sine") return {name, sine_curvature(), {}};
    if (name == "degenerate") return {name, {}, degenerate_example_curve()};
    if (name.rfind("cogwheel", 0) == 0) {
        CogwheelSpec spec;
        // optional suffix: cogwheel:a1,a2,...[:r0]
        if (name.size() > 8 && name[8] == ':') {
            std::string rest = name.substr(9);
            const size_t colon = rest.find(':');
            std::string teeth_str = colon == std::string::npos ? rest : rest.substr(0, colon);
            spec.teeth.clear();
            size_t pos = 0;
            while (pos < teeth_str.size()) {
                size_t comma = teeth_str.find(',', pos);
                if (comma == std::string::npos) comma = teeth_str.size();
                spec.teeth.push_back(std::stoi(teeth_str.substr(pos, comma - pos)));
                pos = comma + 1;
            }
            spec.n = (int)spec.teeth.size();
            if (colon != std::string::npos) spec.r0 = std::stod(rest.substr(colon + 1));
        }
        spec.validate();
        return {name, cogwheel_curvature(spec), cogwheel(spec)};
    }
    fail("invalid-spec", "unknown gallery item: " + name);
}

}  // namespace sigq
