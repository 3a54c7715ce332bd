#include <doctest.h>

#include <cmath>

#include "sigq/gallery.hpp"
#include "sigq/reconstruct.hpp"
#include "sigq/signature.hpp"

using namespace sigq;

TEST_CASE("sin + cos + 1/5 has a circular signature of radius sqrt 2") {
    Signature sig = signature_of(simple_sig_curvature());
    for (const SigPoint& p : sig.trace)
        CHECK(std::abs(sq(p.q.x - 0.2) + sq(p.q.y) - 2.0) <= 1e-6);
}

TEST_CASE("kappa1 and kappa2 share one signature set") {
    BumpFamily fam = bump_curvatures();
    Signature s1 = signature_of(fam.k1);
    Signature s2 = signature_of(fam.k2);
    CHECK(signature_distance(s1, s2) <= 1e-3 * std::max(s1.bbox_diag, s2.bbox_diag));
}

TEST_CASE("constant curvature has a degenerate signature") {
    CurvaturePiece p;
    p.a = 0.0;
    p.b = 1.0;
    p.payload = TrigPolynomial{2.0, kTwoPi, {}};
    CurvatureFunction f = CurvatureFunction::create({p});
    CHECK_THROWS_WITH_AS(signature_of(f), doctest::Contains("degenerate-signature"), Error);
}

TEST_CASE("a circle's curve-signature collapses to one point") {
    PlaneCurve c;
    c.closed = true;
    const double r = 3.0;
    for (int i = 0; i <= 512; ++i) {
        const double t = kTwoPi * i / 512;
        c.samples.push_back({t,
                             {r * std::cos(t), r * std::sin(t)},
                             {-r * std::sin(t), r * std::cos(t)},
                             {-r * std::cos(t), -r * std::sin(t)},
                             {r * std::sin(t), -r * std::cos(t)}});
    }
    Signature sig = signature_of_curve(c);
    CHECK(sig.bbox_diag <= 1e-9);
    CHECK(sig.trace.front().q.x == doctest::Approx(1.0 / r).epsilon(1e-12));
}

TEST_CASE("curve route and curvature route give the same signature sets") {
    BumpFamily fam = bump_curvatures();
    PlaneCurve g3 = integrate_frenet(fam.k3, 48.0, 48.0 / 8192);
    PlaneCurve g4 = integrate_frenet(fam.k4, 48.0, 48.0 / 8192);
    Signature s3 = signature_of_curve(g3);
    Signature s4 = signature_of_curve(g4);
    CHECK(signature_distance(s3, s4) <= 1e-3 * std::max(s3.bbox_diag, s4.bbox_diag));
}

TEST_CASE("signature distance separates scaled signatures") {
    CHECK(signature_distance(signature_of(mn_curvature()), signature_of(mn_curvature())) == 0.0);

    // g(s) = 2 kappa(2 s): same analytic family, different signature set
    CurvaturePiece p;
    p.a = 0.0;
    p.b = kPi;
    p.payload = TrigPolynomial{-0.4, 2.0, {{1, 0.0, 1.0}, {3, -1.0, 0.0}}};
    CurvatureFunction scaled = CurvatureFunction::create({p});
    Signature s1 = signature_of(mn_curvature());
    Signature s2 = signature_of(scaled);
    CHECK(signature_distance(s1, s2) > 0.1 * std::max(s1.bbox_diag, s2.bbox_diag));
}

TEST_CASE("phase portrait orientation: kappa increases above the axis") {
    for (const CurvatureFunction& f : {bump_curvatures().k1, mn_curvature()}) {
        Signature sig = signature_of(f);
        for (size_t i = 0; i + 1 < sig.trace.size(); ++i) {
            const Vec2 a = sig.trace[i].q, b = sig.trace[i + 1].q;
            if (a.y > 1e-9 && b.y > 1e-9) CHECK(b.x >= a.x - 1e-12);
            if (a.y < -1e-9 && b.y < -1e-9) CHECK(b.x <= a.x + 1e-12);
        }
    }
}

TEST_CASE("reversing a curve reflects its signature about the vertical axis") {
    CurvatureFunction f = mn_curvature();
    PlaneCurve c = integrate_frenet(f, kTwoPi, kTwoPi / 4096);
    Signature fwd = signature_of_curve(c);
    Signature bwd = signature_of_curve(reversed(c));
    const double d = hausdorff_distance(reflect_about_vertical_axis(fwd.points()), bwd.points());
    CHECK(d <= 1e-6 * fwd.bbox_diag);
}

TEST_CASE("SE(2) motions leave the signature unchanged") {
    CurvatureFunction f = simple_sig_curvature();
    PlaneCurve c = integrate_frenet(f, kTwoPi, kTwoPi / 2048);
    PlaneCurve m = apply_rigid_motion(c, 1.234, {5.0, -2.0});
    Signature s1 = signature_of_curve(c);
    Signature s2 = signature_of_curve(m);
    double worst = 0.0;
    for (size_t i = 0; i < s1.trace.size(); ++i)
        worst = std::max(worst, dist(s1.trace[i].q, s2.trace[i].q));
    CHECK(worst <= 1e-9);
}
