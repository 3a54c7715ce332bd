#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "sigq/common.hpp"
#include "sigq/curvature.hpp"
#include "sigq/curve.hpp"
#include "sigq/polyline.hpp"
#include "sigq/quiver.hpp"
#include "sigq/reconstruct.hpp"
#include "sigq/words.hpp"

namespace sigq {

// Curvature of the curve a word induces: the representative window of each
// edge, copied end to end. Periodic with the minimal repeated subword, so the
// result's period is minimal by construction.
inline CurvatureFunction kappa_from_word(const SignatureQuiver& q, const Word& w) {
    require_valid_path(q, w);
    if (!w.closed) fail("not-a-path", "kappa_from_word expects a closed path");
    const Word u = minimal_subword(w).subword;

    std::vector<CurvaturePiece> pieces;
    double c = 0.0;
    for (int letter : u.letters) {
        const QuiverEdge& e = q.edges[letter];
        const double next = c + (e.rep_b - e.rep_a);
        CurvaturePiece p;
        p.a = c;
        p.b = next;
        p.payload = Window{q.source, e.rep_a};
        pieces.push_back(std::move(p));
        c = next;
    }
    // junction mismatches mean the quiver itself is inconsistent
    return CurvatureFunction::create(std::move(pieces));
}

struct SynthesisResult {
    CurvatureFunction kappa_w;
    PlaneCurve curve;
    std::vector<double> breakpoints_c;  // c_0 .. c_k over the full word
    int sym_index_m = 1;
    int sig_index = 0;
    bool closed = false;
    bool complete = false;      // every quiver edge appears in the word
    double closure_sum = 0.0;   // sum of mu~_i omega_i
    double endpoint_gap = 0.0;  // relative to total length
    int curve_self_intersections = 0;  // simplicity diagnostic, never enforced
};

// Build the curve a word induces: kappa_W integrated by Frenet over
// L_W = m * |u|. Closedness is decided by the endpoint gap; the weight
// criterion is reported alongside.
inline SynthesisResult synthesize_curve(const SignatureQuiver& q, const Word& w,
                                        std::optional<int> xi = std::nullopt,
                                        int samples = 8192) {
    const int xi_eff = xi.value_or(q.xi);
    ClosureTestResult ct = closure_test(q, w, xi_eff);

    SynthesisResult out{kappa_from_word(q, w), {}, {}, 1, 0, false, false, 0.0, 0.0, 0};
    out.sym_index_m = ct.m;
    out.closure_sum = ct.sum;

    const std::vector<int> mu = multiplicities(w, (int)q.edges.size());
    out.complete = std::all_of(mu.begin(), mu.end(), [](int c) { return c > 0; });
    out.sig_index = 0;
    for (int c : mu)
        if (c > 0) out.sig_index = out.sig_index == 0 ? c : std::min(out.sig_index, c);

    double c = 0.0;
    out.breakpoints_c.push_back(0.0);
    for (int letter : w.letters) {
        const QuiverEdge& e = q.edges[letter];
        c += e.rep_b - e.rep_a;
        out.breakpoints_c.push_back(c);
    }
    const double L = c;

    out.curve = integrate_frenet(out.kappa_w, L, L / samples);
    out.endpoint_gap = closure_gap(out.curve);
    out.closed = out.endpoint_gap <= 1e-4;
    out.curve.closed = out.closed;

    {
        const std::vector<Vec2> pts = curve_points(out.curve);
        const auto events = polyline_self_intersections(pts, out.closed);
        const double merge = 1e-4 * bbox_diagonal(pts);
        std::vector<Vec2> reps;
        for (const auto& ev : events) {
            bool found = false;
            for (const Vec2& r : reps)
                if (dist(r, ev.point) <= merge) {
                    found = true;
                    break;
                }
            if (!found) reps.push_back(ev.point);
        }
        out.curve_self_intersections = (int)reps.size();
    }
    return out;
}

}  // namespace sigq
