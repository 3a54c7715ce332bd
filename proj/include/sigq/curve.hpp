#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "sigq/common.hpp"
#include "sigq/curvature.hpp"
#include "sigq/polyline.hpp"
#include "sigq/quadrature.hpp"

namespace sigq {

struct CurveSample {
    double t = 0.0;
    Vec2 point;
    Vec2 d1;
    Vec2 d2;
    Vec2 d3;
};

// Sampled regular plane curve; derivatives define the traversal direction.
struct PlaneCurve {
    std::vector<CurveSample> samples;
    bool closed = false;
    std::vector<double> eta;          // tangent angle per sample (Frenet-built curves)
    bool low_trust_derivatives = false;  // derivatives filled by finite differences

    size_t size() const { return samples.size(); }
};

inline void validate_curve(const PlaneCurve& c) {
    if (c.samples.size() < 2) fail("invalid-spec", "curve needs at least 2 samples");
    for (size_t i = 0; i + 1 < c.samples.size(); ++i)
        if (!(c.samples[i].t < c.samples[i + 1].t))
            fail("invalid-spec", "curve parameter must be strictly increasing");
    for (const CurveSample& s : c.samples)
        if (s.d1.norm() <= 0.0) fail("non-regular-curve", "|gamma'| vanishes at a sample");
}

inline std::vector<Vec2> curve_points(const PlaneCurve& c) {
    std::vector<Vec2> pts;
    pts.reserve(c.samples.size());
    for (const CurveSample& s : c.samples) pts.push_back(s.point);
    return pts;
}

// kappa = det(d1,d2)/|d1|^3,
// kappa_dot = [(d1.d1) det(d1,d3) - 3 (d1.d2) det(d1,d2)] / |d1|^6
inline KappaPair curvature_at(const PlaneCurve& c, size_t i) {
    const CurveSample& s = c.samples.at(i);
    const double g2 = s.d1.norm2();
    if (g2 <= 0.0) fail("non-regular-curve", "|gamma'| vanishes at sample " + std::to_string(i));
    const double g = std::sqrt(g2);
    const double kappa = cross(s.d1, s.d2) / (g2 * g);
    const double kappa_dot =
        (g2 * cross(s.d1, s.d3) - 3.0 * dot(s.d1, s.d2) * cross(s.d1, s.d2)) / (g2 * g2 * g2);
    return {kappa, kappa_dot};
}

namespace detail {

// |gamma'(tau)| inside [t_i, t_i+1], with gamma' cubic-Hermite from (d1, d2).
inline double speed_between(const CurveSample& a, const CurveSample& b, double tau) {
    const double h = b.t - a.t;
    const double u = (tau - a.t) / h;
    const double u2 = u * u, u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
    const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
    const Vec2 d1 = h00 * a.d1 + (h10 * h) * a.d2 + h01 * b.d1 + (h11 * h) * b.d2;
    return d1.norm();
}

}  // namespace detail

// Cumulative arc length at every sample (index 0 maps to 0).
inline std::vector<double> cumulative_arclength(const PlaneCurve& c) {
    std::vector<double> cum(c.samples.size(), 0.0);
    for (size_t i = 0; i + 1 < c.samples.size(); ++i) {
        const CurveSample& a = c.samples[i];
        const CurveSample& b = c.samples[i + 1];
        cum[i + 1] =
            cum[i] + gauss5([&](double tau) { return detail::speed_between(a, b, tau); }, a.t, b.t);
    }
    return cum;
}

inline double total_length(const PlaneCurve& c) { return cumulative_arclength(c).back(); }

// First-to-last gap relative to total length.
inline double closure_gap(const PlaneCurve& c) {
    if (c.samples.size() < 2) return 0.0;
    const double L = total_length(c);
    return dist(c.samples.front().point, c.samples.back().point) / std::max(L, 1e-300);
}

inline PlaneCurve apply_rigid_motion(const PlaneCurve& c, double angle, Vec2 translation) {
    const double ca = std::cos(angle), sa = std::sin(angle);
    PlaneCurve out = c;
    for (CurveSample& s : out.samples) {
        s.point = rotate(s.point, ca, sa) + translation;
        s.d1 = rotate(s.d1, ca, sa);
        s.d2 = rotate(s.d2, ca, sa);
        s.d3 = rotate(s.d3, ca, sa);
    }
    for (double& e : out.eta) e += angle;
    return out;
}

// Orientation reversal: same point set, parameter and derivatives flipped.
inline PlaneCurve reversed(const PlaneCurve& c) {
    PlaneCurve out;
    out.closed = c.closed;
    out.low_trust_derivatives = c.low_trust_derivatives;
    const double t_end = c.samples.back().t;
    out.samples.reserve(c.samples.size());
    for (auto it = c.samples.rbegin(); it != c.samples.rend(); ++it) {
        CurveSample s = *it;
        s.t = t_end - s.t;
        s.d1 = {-s.d1.x, -s.d1.y};
        s.d3 = {-s.d3.x, -s.d3.y};
        out.samples.push_back(s);
    }
    return out;
}

// Unit-speed resampling at multiples of `step`. Positions and d1/d2 come from
// Hermite interpolation of the source fields; kappa_dot at the new nodes is
// the derivative of the Hermite interpolant of kappa (exact at source nodes).
inline PlaneCurve resample_arclength(const PlaneCurve& c, double step) {
    if (step <= 0.0) fail("invalid-step", "resample step must be positive");
    validate_curve(c);
    const std::vector<double> cum = cumulative_arclength(c);
    const double L = cum.back();

    std::vector<double> targets;
    for (double s = 0.0; s < L + 1e-9 * std::max(L, 1.0); s += step)
        targets.push_back(std::min(s, L));
    if (L - targets.back() > 1e-7 * std::max(L, 1.0)) targets.push_back(L);

    // per-sample kappa/kappa_dot of the source, for scalar Hermite interpolation
    std::vector<double> kap(c.samples.size()), kapd(c.samples.size());
    for (size_t i = 0; i < c.samples.size(); ++i) {
        KappaPair k = curvature_at(c, i);
        kap[i] = k.kappa;
        kapd[i] = k.kappa_dot;
    }

    PlaneCurve out;
    out.closed = c.closed;
    out.low_trust_derivatives = c.low_trust_derivatives;
    out.samples.reserve(targets.size());

    size_t seg = 0;
    for (double s_target : targets) {
        while (seg + 2 < cum.size() && cum[seg + 1] < s_target) ++seg;
        const CurveSample& a = c.samples[seg];
        const CurveSample& b = c.samples[seg + 1];
        // invert s(tau) on [t_seg, t_seg+1] by bisection on the Hermite speed
        double lo = a.t, hi = b.t;
        const double want = s_target - cum[seg];
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double len =
                gauss5([&](double u) { return detail::speed_between(a, b, u); }, a.t, mid);
            if (len < want)
                lo = mid;
            else
                hi = mid;
        }
        const double tau = 0.5 * (lo + hi);
        const double h = b.t - a.t;
        const double u = (tau - a.t) / h;
        const double u2 = u * u, u3 = u2 * u;
        const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
        const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;

        const Vec2 pos = h00 * a.point + (h10 * h) * a.d1 + h01 * b.point + (h11 * h) * b.d1;
        const Vec2 vel = h00 * a.d1 + (h10 * h) * a.d2 + h01 * b.d1 + (h11 * h) * b.d2;
        const Vec2 acc = h00 * a.d2 + (h10 * h) * a.d3 + h01 * b.d2 + (h11 * h) * b.d3;
        const double speed = vel.norm();
        if (speed <= 0.0) fail("non-regular-curve", "vanishing speed during resampling");

        const double kappa = cross(vel, acc) / (speed * speed * speed);
        // d(kappa)/dt from the Hermite interpolant of kappa over the segment
        const double dh00 = (6 * u2 - 6 * u) / h, dh10 = 3 * u2 - 4 * u + 1;
        const double dh01 = (-6 * u2 + 6 * u) / h, dh11 = 3 * u2 - 2 * u;
        const size_t i0 = seg, i1 = seg + 1;
        const double dkdt = dh00 * kap[i0] + dh10 * (kapd[i0] * a.d1.norm()) +
                            dh01 * kap[i1] + dh11 * (kapd[i1] * b.d1.norm());
        const double kappa_dot = dkdt / speed;

        CurveSample ns;
        ns.t = s_target;
        ns.point = pos;
        ns.d1 = vel / speed;
        const Vec2 normal{-ns.d1.y, ns.d1.x};
        ns.d2 = kappa * normal;
        ns.d3 = kappa_dot * normal - (kappa * kappa) * ns.d1;
        out.samples.push_back(ns);
    }
    return out;
}

// Imported polylines: derivatives from the degree-6 interpolating polynomial
// through the 7 nearest samples (periodic wrap when closed). Lower trust than
// analytic derivatives; callers see the flag.
inline PlaneCurve curve_from_polyline(const std::vector<double>& t, const std::vector<Vec2>& pts,
                                      bool closed) {
    if (t.size() != pts.size() || t.size() < 7)
        fail("invalid-spec", "polyline import needs >= 7 samples with matching t");
    const size_t n = t.size();
    PlaneCurve out;
    out.closed = closed;
    out.low_trust_derivatives = true;
    out.samples.resize(n);

    const double period = closed ? (t.back() - t.front()) + (t[1] - t[0]) : 0.0;
    for (size_t i = 0; i < n; ++i) {
        // window of 7 nodes centered on i (clamped for open curves)
        std::array<double, 7> ts;
        std::array<Vec2, 7> ps;
        for (int k = -3; k <= 3; ++k) {
            int64_t j = (int64_t)i + k;
            double shift = 0.0;
            if (closed) {
                while (j < 0) {
                    j += (int64_t)n;
                    shift -= period;
                }
                while (j >= (int64_t)n) {
                    j -= (int64_t)n;
                    shift += period;
                }
            } else {
                j = std::clamp<int64_t>(j, 0, (int64_t)n - 1);
            }
            ts[k + 3] = t[(size_t)j] + shift;
            ps[k + 3] = pts[(size_t)j];
        }
        // Newton divided differences per coordinate, then derivatives at t[i]
        auto derivs_at = [&](auto coord) {
            std::array<double, 7> dd;
            for (int k = 0; k < 7; ++k) dd[k] = coord(ps[k]);
            for (int lev = 1; lev < 7; ++lev)
                for (int k = 6; k >= lev; --k)
                    dd[k] = (dd[k] - dd[k - 1]) / (ts[k] - ts[k - lev]);
            // evaluate p, p', p'', p''' at t[i] via Horner on the Newton form
            double p = dd[6], d1 = 0, d2 = 0, d3 = 0;
            for (int k = 5; k >= 0; --k) {
                const double x = t[i] - ts[k];
                d3 = d3 * x + 3 * d2;
                d2 = d2 * x + 2 * d1;
                d1 = d1 * x + p;
                p = p * x + dd[k];
            }
            return std::array<double, 4>{p, d1, d2, d3};
        };
        auto dx = derivs_at([](Vec2 v) { return v.x; });
        auto dy = derivs_at([](Vec2 v) { return v.y; });
        out.samples[i] = {t[i], pts[i], {dx[1], dy[1]}, {dx[2], dy[2]}, {dx[3], dy[3]}};
    }
    validate_curve(out);
    return out;
}

struct VertexScan {
    std::vector<double> vertex_params;  // t values where kappa_dot crosses or touches zero
    bool degenerate = false;            // vertices not isolated at sample resolution
};

// Heuristic non-degeneracy check on a sampled curve.
inline VertexScan scan_vertices(const PlaneCurve& c) {
    validate_curve(c);
    const size_t n = c.samples.size();
    std::vector<double> kd(n);
    double scale = 0.0;
    for (size_t i = 0; i < n; ++i) {
        kd[i] = curvature_at(c, i).kappa_dot;
        scale = std::max(scale, std::abs(kd[i]));
    }
    VertexScan out;
    const double zero_tol = 1e-9 * std::max(scale, 1e-300);
    bool in_run = false;
    double run_start = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const bool z = std::abs(kd[i]) <= zero_tol;
        if (z && !in_run) {
            in_run = true;
            run_start = c.samples[i].t;
        } else if (!z && in_run) {
            in_run = false;
            out.vertex_params.push_back(0.5 * (run_start + c.samples[i - 1].t));
        }
        if (i + 1 < n && !z && std::abs(kd[i + 1]) > zero_tol && (kd[i] < 0) != (kd[i + 1] < 0)) {
            const double f = kd[i] / (kd[i] - kd[i + 1]);
            out.vertex_params.push_back(c.samples[i].t +
                                        f * (c.samples[i + 1].t - c.samples[i].t));
        }
    }
    if (in_run) out.vertex_params.push_back(0.5 * (run_start + c.samples.back().t));
    std::sort(out.vertex_params.begin(), out.vertex_params.end());
    const double span = c.samples.back().t - c.samples.front().t;
    const double floor_sep = span / 4096.0;
    // on a closed curve the wrap point would otherwise count twice
    while (c.closed && out.vertex_params.size() > 1 &&
           out.vertex_params.front() + span - out.vertex_params.back() < floor_sep)
        out.vertex_params.pop_back();
    for (size_t i = 0; i + 1 < out.vertex_params.size(); ++i)
        if (out.vertex_params[i + 1] - out.vertex_params[i] < floor_sep) out.degenerate = true;
    return out;
}

}  // namespace sigq
