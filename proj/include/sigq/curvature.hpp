#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "sigq/bump.hpp"
#include "sigq/common.hpp"
#include "sigq/quadrature.hpp"

namespace sigq {

struct KappaPair {
    double kappa = 0.0;
    double kappa_dot = 0.0;
};

class CurvatureFunction;

// ---- piece payloads --------------------------------------------------------

struct BumpTerm {
    double coeff = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
};

// kappa(s) = sum_i coeff_i * f_{r1_i, r2_i}(s)
struct BumpCombination {
    std::vector<BumpTerm> terms;
};

struct TrigTerm {
    int k = 1;
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;
};

// kappa(s) = constant + sum_k a_k cos(k*omega*s) + b_k sin(k*omega*s)
struct TrigPolynomial {
    double constant = 0.0;
    double omega = 1.0;
    std::vector<TrigTerm> terms;
};

// Dense (s, kappa, dkappa/ds) nodes, cubic Hermite in between. This is also
// the on-disk form of curvatures that only exist as arc-length samples
// (cogwheels and other explicit-rational sources).
struct SampledWithDerivative {
    std::vector<double> s;
    std::vector<double> kappa;
    std::vector<double> kappa_dot;
};

// A shifted window into another curvature function; the piece covering
// [a, b) evaluates source at source_start + (s - a). Used by word synthesis.
struct Window {
    std::shared_ptr<const CurvatureFunction> source;
    double source_start = 0.0;
};

struct CurvaturePiece {
    double a = 0.0;
    double b = 0.0;
    std::variant<BumpCombination, TrigPolynomial, SampledWithDerivative, Window> payload;

    KappaPair eval(double s) const;
    ValueDeriv<long double> eval_ld(long double s) const;
    const char* kind_name() const;
    CurvaturePiece reversed() const;  // piece for kappa~(s) = -kappa(-s), interval [-b, -a)
};

struct CriticalPoints {
    std::vector<double> points;  // sorted, within one fundamental period
    bool degenerate = false;     // two roots closer than the resolution floor
};

// ---- CurvatureFunction -----------------------------------------------------

// Periodic piecewise-smooth curvature in arc-length. Immutable after
// construction; all operations are pure.
class CurvatureFunction {
public:
    struct CreateOptions {
        double junction_rel_tol = 1e-6;  // allowed C1 jump relative to max|kappa|
        bool verify_minimal = true;
    };

    static CurvatureFunction create(std::vector<CurvaturePiece> pieces,
                                    const CreateOptions& opts);
    static CurvatureFunction create(std::vector<CurvaturePiece> pieces) {
        return create(std::move(pieces), CreateOptions{});
    }

    double period() const { return ell_; }
    double domain_offset() const { return offset_; }
    const std::vector<CurvaturePiece>& pieces() const { return pieces_; }
    double scale() const { return scale_; }  // max |kappa| over the period

    KappaPair eval(double s) const {
        double u = wrap_into(s, offset_, ell_);
        return pieces_[piece_index(u)].eval(u);
    }

    // Extended-precision path; only bump pieces benefit, the rest just widen.
    ValueDeriv<long double> eval_ld(double s) const {
        double u = wrap_into(s, offset_, ell_);
        return pieces_[piece_index(u)].eval_ld(u);
    }

    // Integral of kappa over [s0, s1] by adaptive quadrature, panels split at
    // piece boundaries so no panel straddles a junction.
    double integrate(double s0, double s1, double abs_tol = 1e-9) const;

    // All roots of kappa_dot in one period, by sign-change bracketing plus
    // detection of touching zeros (plateau-safe for flat bump junctions).
    CriticalPoints critical_points() const;

    // Curvature of the orientation-reversed curve: -kappa(-s).
    CurvatureFunction reversed() const;

private:
    CurvatureFunction() = default;

    size_t piece_index(double u) const {
        size_t lo = 0, hi = pieces_.size();
        while (hi - lo > 1) {
            size_t mid = (lo + hi) / 2;
            if (u < pieces_[mid].a)
                hi = mid;
            else
                lo = mid;
        }
        return lo;
    }

    std::vector<CurvaturePiece> pieces_;
    double offset_ = 0.0;
    double ell_ = 0.0;
    double scale_ = 0.0;
};

// ---- piece evaluation ------------------------------------------------------

namespace detail {

template <class Real>
ValueDeriv<Real> eval_bump_combination(const BumpCombination& bc, Real s) {
    ValueDeriv<Real> acc;
    for (const BumpTerm& t : bc.terms) {
        ValueDeriv<Real> f = bump_f<Real>(s, Real(t.r1), Real(t.r2));
        acc.value += Real(t.coeff) * f.value;
        acc.deriv += Real(t.coeff) * f.deriv;
    }
    return acc;
}

template <class Real>
ValueDeriv<Real> eval_trig(const TrigPolynomial& tp, Real s) {
    ValueDeriv<Real> acc{Real(tp.constant), Real(0)};
    for (const TrigTerm& t : tp.terms) {
        const Real w = Real(t.k) * Real(tp.omega);
        const Real c = std::cos(w * s);
        const Real sn = std::sin(w * s);
        acc.value += Real(t.cos_coeff) * c + Real(t.sin_coeff) * sn;
        acc.deriv += w * (Real(t.sin_coeff) * c - Real(t.cos_coeff) * sn);
    }
    return acc;
}

inline ValueDeriv<double> eval_sampled(const SampledWithDerivative& sp, double s) {
    const auto& xs = sp.s;
    if (xs.size() < 2) fail("invalid-spec", "sampled piece needs at least 2 nodes");
    size_t hi = std::upper_bound(xs.begin(), xs.end(), s) - xs.begin();
    size_t i = std::clamp<size_t>(hi, 1, xs.size() - 1) - 1;
    const double h = xs[i + 1] - xs[i];
    const double u = std::clamp((s - xs[i]) / h, 0.0, 1.0);
    const double k0 = sp.kappa[i], k1 = sp.kappa[i + 1];
    const double d0 = sp.kappa_dot[i], d1 = sp.kappa_dot[i + 1];
    const double u2 = u * u, u3 = u2 * u;
    const double value = (2 * u3 - 3 * u2 + 1) * k0 + (u3 - 2 * u2 + u) * h * d0 +
                         (-2 * u3 + 3 * u2) * k1 + (u3 - u2) * h * d1;
    const double deriv = ((6 * u2 - 6 * u) * (k0 - k1)) / h + (3 * u2 - 4 * u + 1) * d0 +
                         (3 * u2 - 2 * u) * d1;
    return {value, deriv};
}

}  // namespace detail

inline KappaPair CurvaturePiece::eval(double s) const {
    if (const auto* bc = std::get_if<BumpCombination>(&payload)) {
        auto r = detail::eval_bump_combination<double>(*bc, s);
        return {r.value, r.deriv};
    }
    if (const auto* tp = std::get_if<TrigPolynomial>(&payload)) {
        auto r = detail::eval_trig<double>(*tp, s);
        return {r.value, r.deriv};
    }
    if (const auto* sp = std::get_if<SampledWithDerivative>(&payload)) {
        auto r = detail::eval_sampled(*sp, s);
        return {r.value, r.deriv};
    }
    const auto& w = std::get<Window>(payload);
    return w.source->eval(w.source_start + (s - a));
}

inline ValueDeriv<long double> CurvaturePiece::eval_ld(long double s) const {
    if (const auto* bc = std::get_if<BumpCombination>(&payload))
        return detail::eval_bump_combination<long double>(*bc, s);
    if (const auto* tp = std::get_if<TrigPolynomial>(&payload))
        return detail::eval_trig<long double>(*tp, s);
    if (const auto* sp = std::get_if<SampledWithDerivative>(&payload)) {
        auto r = detail::eval_sampled(*sp, static_cast<double>(s));
        return {r.value, r.deriv};
    }
    const auto& w = std::get<Window>(payload);
    return w.source->eval_ld(w.source_start + static_cast<double>(s - a));
}

inline const char* CurvaturePiece::kind_name() const {
    switch (payload.index()) {
        case 0: return "bump-combination";
        case 1: return "trig-polynomial";
        case 2: return "sampled-with-derivative";
        default: return "window";
    }
}

inline CurvaturePiece CurvaturePiece::reversed() const {
    CurvaturePiece out;
    out.a = -b;
    out.b = -a;
    if (const auto* bc = std::get_if<BumpCombination>(&payload)) {
        BumpCombination r;
        for (const BumpTerm& t : bc->terms) r.terms.push_back({-t.coeff, -t.r2, -t.r1});
        out.payload = std::move(r);
        return out;
    }
    if (const auto* tp = std::get_if<TrigPolynomial>(&payload)) {
        TrigPolynomial r;
        r.constant = -tp->constant;
        r.omega = tp->omega;
        for (const TrigTerm& t : tp->terms) r.terms.push_back({t.k, -t.cos_coeff, t.sin_coeff});
        out.payload = std::move(r);
        return out;
    }
    // sampled and window pieces reverse by resampling
    const size_t n = 512;
    SampledWithDerivative r;
    r.s.resize(n + 1);
    r.kappa.resize(n + 1);
    r.kappa_dot.resize(n + 1);
    for (size_t i = 0; i <= n; ++i) {
        const double src = b - (b - a) * double(i) / double(n);
        KappaPair k = eval(std::min(src, b));
        r.s[i] = -src;
        r.kappa[i] = -k.kappa;
        r.kappa_dot[i] = k.kappa_dot;
    }
    out.payload = std::move(r);
    return out;
}

// ---- CurvatureFunction implementation --------------------------------------

inline CurvatureFunction CurvatureFunction::create(std::vector<CurvaturePiece> pieces,
                                                   const CreateOptions& opts) {
    if (pieces.empty()) fail("invalid-spec", "curvature function needs at least one piece");
    for (const CurvaturePiece& p : pieces)
        if (!(p.a < p.b)) fail("invalid-interval", "piece interval must satisfy a < b");
    std::sort(pieces.begin(), pieces.end(),
              [](const CurvaturePiece& x, const CurvaturePiece& y) { return x.a < y.a; });

    CurvatureFunction f;
    f.offset_ = pieces.front().a;
    f.ell_ = pieces.back().b - pieces.front().a;
    const double gap_tol = 1e-9 * std::max(f.ell_, 1.0);
    for (size_t i = 0; i + 1 < pieces.size(); ++i)
        if (std::abs(pieces[i].b - pieces[i + 1].a) > gap_tol)
            fail("invalid-spec", "pieces must tile the period without gaps or overlaps");
    f.pieces_ = std::move(pieces);

    double max_abs = 0.0, kmin = 1e300, kmax = -1e300;
    for (int i = 0; i < 2048; ++i) {
        double s = f.offset_ + f.ell_ * (i + 0.5) / 2048.0;
        const double k = f.eval(s).kappa;
        max_abs = std::max(max_abs, std::abs(k));
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
    }
    f.scale_ = max_abs;
    const bool constant = (kmax - kmin) <= 1e-12 * std::max(max_abs, 1.0);

    const double jtol = opts.junction_rel_tol * std::max(max_abs, 1e-12);
    for (size_t i = 0; i < f.pieces_.size(); ++i) {
        const CurvaturePiece& left = f.pieces_[i];
        const CurvaturePiece& right = f.pieces_[(i + 1) % f.pieces_.size()];
        KappaPair l = left.eval(left.b);
        KappaPair r = right.eval(right.a);
        if (std::abs(l.kappa - r.kappa) > jtol || std::abs(l.kappa_dot - r.kappa_dot) > jtol)
            fail("internal-consistency", "curvature is not C1 at piece junction s=" +
                                             std::to_string(right.a));
    }

    // constant curvature has no minimal period; the declared one is conventional
    if (opts.verify_minimal && f.scale_ > 0.0 && !constant) {
        for (int k = 2; k <= 16; ++k) {
            const double p = f.ell_ / k;
            double max_diff = 0.0;
            for (int i = 0; i < 256; ++i) {
                double s = f.offset_ + f.ell_ * (i + 0.37) / 256.0;
                max_diff = std::max(max_diff, std::abs(f.eval(s + p).kappa - f.eval(s).kappa));
            }
            if (max_diff <= 1e-6 * std::max(max_abs, 1e-12))
                fail("invalid-spec",
                     "period is not minimal: kappa repeats with period ell/" + std::to_string(k));
        }
    }
    return f;
}

inline double CurvatureFunction::integrate(double s0, double s1, double abs_tol) const {
    if (s0 > s1) fail("invalid-interval", "integrate requires s0 <= s1");
    if (s0 == s1) return 0.0;
    const double span = s1 - s0;
    double total = 0.0;
    double pos = s0;
    auto integrand = [this](double s) { return eval(s).kappa; };
    while (pos < s1 - 1e-15 * span) {
        const double u = wrap_into(pos, offset_, ell_);
        double seg_end = pos + (ell_ - (u - offset_));
        for (const CurvaturePiece& p : pieces_) {
            if (p.b > u + 1e-9 * ell_) {
                seg_end = pos + (p.b - u);
                break;
            }
        }
        // a start on a piece boundary advances into the following piece
        if (seg_end <= pos) seg_end = pos + ell_ / (double)pieces_.size();
        seg_end = std::min(seg_end, s1);
        const double tol = std::max(abs_tol * (seg_end - pos) / span, 1e-16);
        total += adaptive_gauss(integrand, pos, seg_end, tol);
        pos = seg_end;
    }
    return total;
}

namespace detail {

// Golden-section minimization of |g| on [lo, hi].
template <class G>
long double golden_min_abs(const G& g, long double lo, long double hi, int iters = 160) {
    const long double phi = 0.6180339887498948482L;
    long double a = lo, b = hi;
    long double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    long double f1 = std::abs(g(x1)), f2 = std::abs(g(x2));
    for (int i = 0; i < iters && (b - a) > 1e-16L * std::max(1.0L, std::abs(a)); ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = std::abs(g(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = std::abs(g(x2));
        }
    }
    return 0.5L * (a + b);
}

}  // namespace detail

inline CriticalPoints CurvatureFunction::critical_points() const {
    const int n = 4096;
    const double h = ell_ / n;
    std::vector<long double> kd(n);
    double kmin = 1e300, kmax = -1e300;
    long double dot_scale = 0.0L;
    for (int i = 0; i < n; ++i) {
        auto v = eval_ld(offset_ + i * h);
        kd[i] = v.deriv;
        dot_scale = std::max(dot_scale, std::abs(v.deriv));
        kmin = std::min(kmin, (double)v.value);
        kmax = std::max(kmax, (double)v.value);
    }
    if (kmax - kmin <= 1e-12 * std::max(std::abs(kmax), 1.0))
        fail("degenerate-function", "constant curvature has no isolated critical points");

    auto g = [this](long double s) { return eval_ld((double)s).deriv; };
    std::vector<double> roots;

    // Expand from a known zero of g to the edges of its zero run, then take
    // the midpoint: flat bump junctions are plateaus at long-double precision.
    auto refine_plateau = [&](long double z, long double lo, long double hi) {
        for (int it = 0; it < 8 && g(lo) == 0.0L; ++it) lo -= h;
        for (int it = 0; it < 8 && g(hi) == 0.0L; ++it) hi += h;
        long double l0 = lo, l1 = z;
        for (int it = 0; it < 120 && l1 - l0 > 1e-18L * std::max(1.0L, std::abs(z)) + 1e-30L;
             ++it) {
            long double m = 0.5L * (l0 + l1);
            if (g(m) == 0.0L)
                l1 = m;
            else
                l0 = m;
        }
        long double r0 = z, r1 = hi;
        for (int it = 0; it < 120 && r1 - r0 > 1e-18L * std::max(1.0L, std::abs(z)) + 1e-30L;
             ++it) {
            long double m = 0.5L * (r0 + r1);
            if (g(m) == 0.0L)
                r0 = m;
            else
                r1 = m;
        }
        return 0.5L * (l1 + r0);
    };

    auto bisect_root = [&](long double a, long double b) {
        long double fa = g(a);
        for (int it = 0; it < 200 && (b - a) > 1e-15L * std::max(1.0L, std::abs(a)); ++it) {
            long double m = 0.5L * (a + b);
            long double fm = g(m);
            if (fm == 0.0L) return refine_plateau(m, a, b);
            if ((fa < 0) == (fm < 0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        return 0.5L * (a + b);
    };

    const long double touch_cut = 1e-10L * std::max(dot_scale, 1e-30L);
    for (int i = 0; i < n; ++i) {
        const long double s0 = offset_ + i * h;
        const long double s1 = offset_ + (i + 1) * h;
        const long double v0 = kd[i];
        const long double v1 = kd[(i + 1) % n];
        if (v0 == 0.0L) {
            roots.push_back((double)refine_plateau(s0, s0 - h, s0 + h));
            continue;
        }
        if ((v0 < 0) != (v1 < 0) && v1 != 0.0L) {
            roots.push_back((double)bisect_root(s0, s1));
            continue;
        }
        // same-sign local minimum of |kd| that dips to (numerical) zero:
        // a touching critical point without a sign change
        const long double vm = kd[(i + n - 1) % n];
        if (v1 != 0.0L && vm != 0.0L && std::abs(v0) < std::abs(vm) &&
            std::abs(v0) <= std::abs(v1) && std::abs(v0) < touch_cut) {
            long double z = detail::golden_min_abs(g, s0 - h, s1);
            if (std::abs(g(z)) <= 1e-14L * std::max(dot_scale, 1e-30L))
                roots.push_back((double)refine_plateau(z, s0 - h, s1));
        }
    }

    for (double& r : roots) r = wrap_into(r, offset_, ell_);
    std::sort(roots.begin(), roots.end());

    CriticalPoints out;
    const double floor_sep = h / 4.0;
    for (double r : roots) {
        if (!out.points.empty() && r - out.points.back() < floor_sep) continue;
        out.points.push_back(r);
    }
    // treat wrap-around duplicates: last root within floor of first + period
    while (out.points.size() > 1 &&
           out.points.front() + ell_ - out.points.back() < floor_sep)
        out.points.pop_back();
    // degeneracy heuristic: distinct roots closer than the resolution floor
    for (size_t i = 0; i + 1 < roots.size(); ++i)
        if (roots[i + 1] - roots[i] > 1e-13 * ell_ && roots[i + 1] - roots[i] < floor_sep)
            out.degenerate = true;
    return out;
}

inline CurvatureFunction CurvatureFunction::reversed() const {
    std::vector<CurvaturePiece> rev;
    rev.reserve(pieces_.size());
    for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) rev.push_back(it->reversed());
    CreateOptions opts;
    opts.junction_rel_tol = 1e-5;  // sampled reversals round-trip through Hermite nodes
    return create(std::move(rev), opts);
}

}  // namespace sigq
