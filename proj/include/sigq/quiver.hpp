#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "sigq/common.hpp"
#include "sigq/curvature.hpp"
#include "sigq/polyline.hpp"
#include "sigq/reconstruct.hpp"
#include "sigq/signature.hpp"

namespace sigq {

struct QuiverVertex {
    int id = 0;
    Vec2 location;                  // (kappa, kappa_dot) of the self-intersection
    std::vector<double> preimages;  // arc lengths in [offset, offset+ell)
    bool on_axis = false;           // sits on kappa_dot = 0 (strands meet tangentially)
};

struct QuiverEdge {
    int id = 0;  // letter index: 0 -> 'a', 1 -> 'b', ... in first-traversal order
    int from_vertex = 0;
    int to_vertex = 0;
    double rep_a = 0.0;  // representative preimage interval (may wrap past offset+ell)
    double rep_b = 0.0;
    int multiplicity_mu = 0;  // traversals per full curve period L = m*ell
    double weight_omega = 0.0;
    std::vector<std::pair<double, double>> preimage_intervals;  // all, per period ell

    char letter() const { return static_cast<char>('a' + id); }
};

// Directed multigraph of a signature: vertices are self-intersection points,
// edges the open segments between them, traversed per the phase-portrait
// orientation.
struct SignatureQuiver {
    std::vector<QuiverVertex> vertices;
    std::vector<QuiverEdge> edges;
    double ell = 0.0;
    int m = 1;    // symmetry exponent of the source curve
    int xi = 1;   // turning number of the source curve
    bool closed = false;
    double diag = 0.0;                 // signature bbox diagonal (comparison scale)
    std::vector<double> breakpoints;   // vertex preimages, sorted, within one period
    std::vector<int> interval_edges;   // edge id per breakpoint interval, in trace order
    std::vector<int> interval_vertex;  // vertex id at each breakpoint
    std::shared_ptr<const CurvatureFunction> source;
    int tangential_events = 0;  // off-axis crossings below the transversality floor
    int axis_vertices = 0;      // vertices resolved through the critical-point path

    int edge_by_letter(char c) const {
        const int id = c - 'a';
        if (id < 0 || id >= (int)edges.size())
            fail("invalid-spec", std::string("no quiver edge with letter '") + c + "'");
        return id;
    }
};

struct QuiverOptions {
    int samples_per_period = 8192;
    double cluster_eps_rel = 1e-4;   // vertex clustering radius, relative to diag
    double frechet_rel = 1e-3;       // edge identity tolerance, relative to diag
    double tangential_angle = 1e-3;  // transversality floor in radians
};

namespace detail {

// Every point of the signature on the horizontal axis is the image of a
// critical point of kappa, so on-axis self-intersections are found exactly:
// group the critical points by curvature value; a group whose local germs
// are not all identical is a self-intersection, and the group members are
// its preimages. Off-axis self-intersections are transversal polyline
// crossings, which segment intersection handles cleanly.

// Germ comparison: kappa(u + tau) vs kappa(v + tau) on a two-sided probe
// grid. delta reaches to roughly half the critical spacing so the probes
// sample macroscopic, representable differences.
template <class EvalK>
bool same_local_germ(const EvalK& kappa, double u, double v, double delta, double tol) {
    for (int j = 1; j <= 12; ++j) {
        const double tau = delta * sq((double)j / 12.0);
        if (std::abs(kappa(u + tau) - kappa(v + tau)) > tol) return false;
        if (std::abs(kappa(u - tau) - kappa(v - tau)) > tol) return false;
    }
    return true;
}

struct AxisGroup {
    double kappa0 = 0.0;
    std::vector<double> members;  // critical points sharing this curvature value
    int germ_classes = 1;
};

template <class EvalK>
std::vector<AxisGroup> axis_intersection_groups(const EvalK& kappa,
                                                const std::vector<double>& criticals, double ell,
                                                double value_tol, double germ_tol) {
    std::vector<AxisGroup> groups;
    if (criticals.size() < 2) return groups;
    double min_gap = ell;
    for (size_t i = 0; i < criticals.size(); ++i) {
        const double next =
            i + 1 < criticals.size() ? criticals[i + 1] : criticals.front() + ell;
        min_gap = std::min(min_gap, next - criticals[i]);
    }
    const double delta = 0.45 * min_gap;

    std::vector<std::pair<double, double>> by_value;  // (kappa, s)
    for (double s : criticals) by_value.push_back({kappa(s), s});
    std::sort(by_value.begin(), by_value.end());

    size_t i = 0;
    while (i < by_value.size()) {
        size_t j = i + 1;
        while (j < by_value.size() && by_value[j].first - by_value[j - 1].first <= value_tol) ++j;
        if (j - i >= 2) {
            AxisGroup g;
            g.kappa0 = 0.0;
            for (size_t k = i; k < j; ++k) {
                g.kappa0 += by_value[k].first / (double)(j - i);
                g.members.push_back(by_value[k].second);
            }
            std::sort(g.members.begin(), g.members.end());
            // count germ classes greedily against class representatives
            std::vector<double> reps{g.members.front()};
            for (size_t k = 1; k < g.members.size(); ++k) {
                bool matched = false;
                for (double r : reps)
                    if (same_local_germ(kappa, g.members[k], r, delta, germ_tol)) {
                        matched = true;
                        break;
                    }
                if (!matched) reps.push_back(g.members[k]);
            }
            g.germ_classes = (int)reps.size();
            if (g.germ_classes >= 2) groups.push_back(g);
        }
        i = j;
    }
    return groups;
}

// Newton iteration for a transversal pair: solve sigma(u) = sigma(v) for the
// two strand parameters; second derivative of kappa comes from a central
// difference (it only enters the Jacobian).
inline bool newton_pair_polish(const CurvatureFunction& f, double& u, double& v, double scale,
                               double span) {
    auto sigma = [&](double s) {
        KappaPair k = f.eval(s);
        return Vec2{k.kappa, k.kappa_dot};
    };
    auto sigma_prime = [&](double s) {
        const double h = 1e-7 * f.period();
        KappaPair k = f.eval(s);
        KappaPair kp = f.eval(s + h);
        KappaPair km = f.eval(s - h);
        return Vec2{k.kappa_dot, (kp.kappa_dot - km.kappa_dot) / (2.0 * h)};
    };
    double uu = u, vv = v;
    for (int it = 0; it < 40; ++it) {
        const Vec2 res = sigma(uu) - sigma(vv);
        if (res.norm() <= 1e-12 * std::max(scale, 1e-12)) {
            u = uu;
            v = vv;
            return true;
        }
        const Vec2 ju = sigma_prime(uu);
        const Vec2 jv = sigma_prime(vv);
        const double det = -ju.x * jv.y + ju.y * jv.x;  // det[ju, -jv]
        if (std::abs(det) < 1e-14) return false;
        const double du = (-jv.y * res.x + jv.x * res.y) / det;
        const double dv = (-ju.y * res.x + ju.x * res.y) / det;
        uu -= du;
        vv -= dv;
        if (std::abs(uu - u) > span || std::abs(vv - v) > span) return false;
    }
    return false;
}

struct OffAxisCluster {
    Vec2 location;
    std::vector<double> preimages;
    int events = 0;
};

struct CrossingRecord {
    Vec2 point;
    double sa = 0.0;
    double sb = 0.0;
};

// Cluster crossing records within eps_q.
inline std::vector<OffAxisCluster> cluster_crossings(const std::vector<CrossingRecord>& recs,
                                                     double eps_q) {
    std::vector<OffAxisCluster> clusters;
    for (const auto& r : recs) {
        int hit = -1;
        for (size_t i = 0; i < clusters.size(); ++i)
            if (dist(clusters[i].location, r.point) <= eps_q) {
                hit = (int)i;
                break;
            }
        if (hit < 0) {
            clusters.push_back({r.point, {}, 0});
            hit = (int)clusters.size() - 1;
        }
        OffAxisCluster& c = clusters[hit];
        c.location = (c.location * (double)c.events + r.point) / double(c.events + 1);
        c.events++;
        c.preimages.push_back(r.sa);
        c.preimages.push_back(r.sb);
    }
    for (size_t i = 0; i < clusters.size(); ++i)
        for (size_t j = i + 1; j < clusters.size();) {
            if (dist(clusters[i].location, clusters[j].location) <= eps_q) {
                auto& pi = clusters[i].preimages;
                pi.insert(pi.end(), clusters[j].preimages.begin(), clusters[j].preimages.end());
                clusters[i].events += clusters[j].events;
                clusters.erase(clusters.begin() + j);
            } else {
                ++j;
            }
        }
    return clusters;
}

inline void dedup_sorted(std::vector<double>& v, double tol) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(), [&](double a, double b) { return b - a < tol; }),
            v.end());
}

}  // namespace detail

// Self-intersections of a signature: on-axis ones from coincident critical
// values with distinct germs, off-axis ones from transversal crossings of the
// trace polyline (spatial-hash accelerated), clustered within eps_q. Crossing
// events where the two strands do not separate are re-traversals of one
// signature arc (symmetric curves cover each arc several times), not
// self-intersections, and are rejected.
inline std::vector<QuiverVertex> self_intersections(const Signature& sig,
                                                    const QuiverOptions& opts = {}) {
    if (sig.trace.size() < 4)
        fail("degenerate-signature", "self_intersections needs a polyline signature");
    const double eps_q = opts.cluster_eps_rel * sig.bbox_diag;
    const double ell = sig.period_ell;

    double scale = 0.0;
    for (const SigPoint& p : sig.trace) scale = std::max(scale, std::abs(p.q.x));

    // critical parameters from the trace (augmented samples sit on them)
    std::vector<double> criticals;
    for (size_t i = 0; i + 1 < sig.trace.size(); ++i) {
        const double y0 = sig.trace[i].q.y, y1 = sig.trace[i + 1].q.y;
        if (y0 == 0.0) {
            if (criticals.empty() || sig.trace[i].s - criticals.back() > 1e-3 * ell)
                criticals.push_back(sig.trace[i].s);
        } else if ((y0 < 0) != (y1 < 0) && y1 != 0.0) {
            const double t = y0 / (y0 - y1);
            criticals.push_back(sig.trace[i].s + t * (sig.trace[i + 1].s - sig.trace[i].s));
        }
    }
    detail::dedup_sorted(criticals, 1e-3 * ell);
    while (criticals.size() > 1 && criticals.front() + ell - criticals.back() < 1e-3 * ell)
        criticals.pop_back();

    // trace interpolation in the signature plane
    auto sigma = [&](double s) {
        const double u = wrap_into(s, sig.trace.front().s, ell);
        size_t lo = 0, hi = sig.trace.size() - 1;
        while (hi - lo > 1) {
            size_t mid = (lo + hi) / 2;
            (sig.trace[mid].s <= u ? lo : hi) = mid;
        }
        const double span = sig.trace[hi].s - sig.trace[lo].s;
        const double t = span > 0 ? (u - sig.trace[lo].s) / span : 0.0;
        return sig.trace[lo].q + t * (sig.trace[hi].q - sig.trace[lo].q);
    };
    auto kappa = [&](double s) { return sigma(s).x; };

    std::vector<QuiverVertex> out;
    for (const auto& g : detail::axis_intersection_groups(kappa, criticals, ell,
                                                          1e-4 * std::max(scale, 1e-12),
                                                          1e-3 * std::max(scale, 1e-12))) {
        QuiverVertex v;
        v.id = (int)out.size();
        v.location = {g.kappa0, 0.0};
        v.preimages = g.members;
        v.on_axis = true;
        out.push_back(v);
    }

    const double h = ell / std::max<size_t>(sig.trace.size() - 1, 1);
    auto strands_separate = [&](double u, double v) {
        double sep = 0.0;
        for (double tau : {8.0 * h, -8.0 * h, 16.0 * h, -16.0 * h})
            sep = std::max(sep, dist(sigma(u + tau), sigma(v + tau)));
        return sep > 4.0 * eps_q;
    };

    std::vector<detail::CrossingRecord> recs;
    const auto events = polyline_self_intersections(sig.points(), true);
    for (const auto& ev : events) {
        if (std::abs(ev.point.y) < eps_q) continue;  // axis handled via criticals
        const double sa =
            sig.trace[ev.seg_a].s + ev.ta * (sig.trace[ev.seg_a + 1].s - sig.trace[ev.seg_a].s);
        const double sb =
            sig.trace[ev.seg_b].s + ev.tb * (sig.trace[ev.seg_b + 1].s - sig.trace[ev.seg_b].s);
        if (!strands_separate(sa, sb)) continue;
        recs.push_back({ev.point, sa, sb});
    }
    for (const auto& c : detail::cluster_crossings(recs, eps_q)) {
        QuiverVertex v;
        v.id = (int)out.size();
        v.location = c.location;
        v.preimages = c.preimages;
        detail::dedup_sorted(v.preimages, 1e-4 * ell);
        if (v.preimages.size() < 2) continue;
        out.push_back(v);
    }
    return out;
}

// Assemble the signature quiver of a curvature function: find the
// self-intersections, split one period at their preimages, identify equal
// signature segments across intervals, and attach multiplicities and weights.
inline SignatureQuiver build_quiver(const CurvatureFunction& f, const QuiverOptions& opts = {}) {
    const Signature sig = signature_of(f, opts.samples_per_period);
    const double eps_q = opts.cluster_eps_rel * sig.bbox_diag;
    const double o = f.domain_offset(), ell = f.period();

    SignatureQuiver q;
    q.ell = ell;
    q.diag = sig.bbox_diag;
    q.source = std::make_shared<CurvatureFunction>(f);

    ClosureInfo ci = closure_info(f);
    q.m = std::max(ci.m, 1);
    q.xi = ci.xi;
    q.closed = ci.closed;

    // on-axis vertices from critical points (exact preimages)
    const CriticalPoints crit = f.critical_points();
    auto kappa_exact = [&](double s) { return f.eval(s).kappa; };
    std::vector<QuiverVertex> verts;
    for (const auto& g : detail::axis_intersection_groups(kappa_exact, crit.points, ell,
                                                          1e-7 * std::max(f.scale(), 1e-12),
                                                          1e-5 * std::max(f.scale(), 1e-12))) {
        QuiverVertex v;
        v.id = (int)verts.size();
        v.location = {g.kappa0, 0.0};
        v.preimages = g.members;
        v.on_axis = true;
        verts.push_back(v);
        q.axis_vertices++;
    }

    // off-axis vertices: transversal crossing events, each Newton-polished to
    // the exact strand pair. Events between re-traversals of the same arc do
    // not converge transversally and are dropped (tangential warning).
    {
        std::vector<detail::CrossingRecord> recs;
        auto sigma_dir = [&](double s) {
            const double h = 1e-7 * ell;
            KappaPair k = f.eval(s);
            KappaPair kp = f.eval(s + h);
            KappaPair km = f.eval(s - h);
            Vec2 d{k.kappa_dot, (kp.kappa_dot - km.kappa_dot) / (2.0 * h)};
            const double n = d.norm();
            return n > 0 ? d / n : d;
        };
        const auto events = polyline_self_intersections(sig.points(), true);
        for (const auto& ev : events) {
            if (std::abs(ev.point.y) < eps_q) continue;  // axis handled via criticals
            double u = sig.trace[ev.seg_a].s +
                       ev.ta * (sig.trace[ev.seg_a + 1].s - sig.trace[ev.seg_a].s);
            double v = sig.trace[ev.seg_b].s +
                       ev.tb * (sig.trace[ev.seg_b + 1].s - sig.trace[ev.seg_b].s);
            if (!detail::newton_pair_polish(f, u, v, sig.bbox_diag, 0.05 * ell)) {
                q.tangential_events++;
                continue;
            }
            const double ca = std::clamp(std::abs(dot(sigma_dir(u), sigma_dir(v))), 0.0, 1.0);
            if (std::acos(ca) < opts.tangential_angle) {
                q.tangential_events++;
                continue;
            }
            KappaPair k = f.eval(u);
            recs.push_back({{k.kappa, k.kappa_dot}, u, v});
        }
        for (const auto& c : detail::cluster_crossings(recs, eps_q)) {
            std::vector<double> pre = c.preimages;
            for (double& s : pre) s = wrap_into(s, o, ell);
            detail::dedup_sorted(pre, 1e-6 * ell);
            if (pre.size() < 2) continue;
            QuiverVertex v;
            v.id = (int)verts.size();
            KappaPair k = f.eval(pre.front());
            v.location = {k.kappa, k.kappa_dot};
            v.preimages = pre;
            verts.push_back(v);
        }
    }

    if (verts.empty())
        fail("simple-signature",
             "signature has no self-intersections; use the congruence module's "
             "simple-signature criterion instead");
    q.vertices = verts;

    struct Visit {
        double s;
        int vertex;
    };
    std::vector<Visit> visits;
    for (const QuiverVertex& v : q.vertices)
        for (double s : v.preimages) visits.push_back({s, v.id});
    std::sort(visits.begin(), visits.end(),
              [](const Visit& a, const Visit& b) { return a.s < b.s; });
    for (const Visit& v : visits) {
        q.breakpoints.push_back(v.s);
        q.interval_vertex.push_back(v.vertex);
    }

    // edge identity per breakpoint interval: same endpoints plus matching
    // signature image (discrete Frechet on a uniform resampling)
    const int K = 256;
    auto interval_image = [&](double a, double b) {
        std::vector<Vec2> img(K);
        for (int i = 0; i < K; ++i) {
            KappaPair k = f.eval(a + (b - a) * (double)i / (K - 1));
            img[i] = {k.kappa, k.kappa_dot};
        }
        return img;
    };

    const size_t nb = q.breakpoints.size();
    std::vector<std::vector<Vec2>> edge_images;
    for (size_t j = 0; j < nb; ++j) {
        const double a = q.breakpoints[j];
        const double b = (j + 1 < nb) ? q.breakpoints[j + 1] : q.breakpoints[0] + ell;
        const int vfrom = q.interval_vertex[j];
        const int vto = q.interval_vertex[(j + 1) % nb];
        auto img = interval_image(a, b);

        int found = -1;
        for (QuiverEdge& e : q.edges) {
            if (e.from_vertex != vfrom || e.to_vertex != vto) continue;
            if (std::abs((e.rep_b - e.rep_a) - (b - a)) > 1e-3 * ell) continue;
            if (discrete_frechet(img, edge_images[e.id]) <= opts.frechet_rel * sig.bbox_diag) {
                found = e.id;
                break;
            }
        }
        if (found < 0) {
            if (q.edges.size() >= 26) fail("invalid-spec", "more than 26 quiver edges");
            QuiverEdge e;
            e.id = (int)q.edges.size();
            e.from_vertex = vfrom;
            e.to_vertex = vto;
            e.rep_a = a;
            e.rep_b = b;
            q.edges.push_back(e);
            edge_images.push_back(std::move(img));
            found = (int)q.edges.size() - 1;
        }
        q.edges[found].preimage_intervals.push_back({a, b});
        q.interval_edges.push_back(found);
    }

    for (QuiverEdge& e : q.edges) {
        e.multiplicity_mu = (int)e.preimage_intervals.size() * q.m;
        e.weight_omega = f.integrate(e.rep_a, e.rep_b, 1e-10);
    }

    if (q.closed) {
        double sum = 0.0;
        for (const QuiverEdge& e : q.edges) sum += e.multiplicity_mu * e.weight_omega;
        if (std::abs(sum - kTwoPi * q.xi) > 1e-3)
            fail("internal-consistency",
                 "sum of multiplicity*weight does not match the turning number");
    }
    return q;
}

// ---- words traced by the source curve ---------------------------------------

struct Word {
    std::vector<int> letters;
    bool closed = true;
};

// The word the source curve traces on its own quiver: the per-period edge
// sequence repeated m times.
inline Word traced_word(const SignatureQuiver& q) {
    Word w;
    w.closed = true;
    w.letters.reserve(q.interval_edges.size() * q.m);
    for (int rep = 0; rep < q.m; ++rep)
        for (int e : q.interval_edges) w.letters.push_back(e);
    return w;
}

// DOT export: one node per vertex, one arc per edge labeled letter:mu:omega.
inline std::string export_dot(const SignatureQuiver& q) {
    std::ostringstream os;
    os << "digraph signature_quiver {\n";
    for (const QuiverVertex& v : q.vertices) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "  q%d [label=\"q%d (%.6g, %.6g)\"];\n", v.id, v.id,
                      v.location.x, v.location.y);
        os << buf;
    }
    for (const QuiverEdge& e : q.edges) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "  q%d -> q%d [label=\"%c:%d:%.6f\"];\n", e.from_vertex,
                      e.to_vertex, e.letter(), e.multiplicity_mu, e.weight_omega);
        os << buf;
    }
    os << "}\n";
    return os.str();
}

}  // namespace sigq
