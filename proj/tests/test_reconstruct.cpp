#include <doctest.h>

#include <cmath>

#include "sigq/gallery.hpp"
#include "sigq/reconstruct.hpp"

using namespace sigq;

namespace {

CurvatureFunction constant_curvature(double value, double period) {
    CurvaturePiece p;
    p.a = 0.0;
    p.b = period;
    p.payload = TrigPolynomial{value, kTwoPi / period, {}};
    return CurvatureFunction::create({p});
}

}  // namespace

TEST_CASE("kappa = 1 integrates to the unit circle about (0, 1)") {
    CurvatureFunction one = constant_curvature(1.0, kTwoPi);
    PlaneCurve c = integrate_frenet(one, kTwoPi, kTwoPi / 2048);
    CHECK(c.samples.front().point.x == 0.0);
    CHECK(c.samples.front().point.y == 0.0);
    double worst = 0.0;
    for (const CurveSample& s : c.samples)
        worst = std::max(worst, std::abs(dist(s.point, {0.0, 1.0}) - 1.0));
    CHECK(worst <= 1e-6);
    CHECK(closure_gap(c) <= 1e-6);
}

TEST_CASE("bump curvature closes after 48 units") {
    CurvatureFunction k1 = bump_curvatures().k1;
    PlaneCurve c = integrate_frenet(k1, 48.0, 48.0 / 8192);
    CHECK(closure_gap(c) <= 1e-4);
}

TEST_CASE("sin + cos + 1/5 closes after five periods") {
    CurvatureFunction f = simple_sig_curvature();
    PlaneCurve c = integrate_frenet(f, 10.0 * kPi, 10.0 * kPi / 8192);
    CHECK(closure_gap(c) <= 1e-4);
}

TEST_CASE("closure_info reconstructs xi/m for the worked examples") {
    BumpFamily fam = bump_curvatures();
    SUBCASE("kappa1: integral pi/3, m = 6, L = 48") {
        ClosureInfo ci = closure_info(fam.k1);
        CHECK(ci.integral_over_ell == doctest::Approx(kPi / 3.0).epsilon(1e-9));
        CHECK(ci.xi == 1);
        CHECK(ci.m == 6);
        CHECK(ci.closed);
        CHECK(ci.total_length_L == doctest::Approx(48.0).epsilon(1e-12));
    }
    SUBCASE("kappa4: integral pi, m = 2") {
        ClosureInfo ci = closure_info(fam.k4);
        CHECK(ci.integral_over_ell == doctest::Approx(kPi).epsilon(1e-9));
        CHECK(ci.xi == 1);
        CHECK(ci.m == 2);
        CHECK(ci.closed);
        CHECK(ci.total_length_L == doctest::Approx(48.0).epsilon(1e-12));
    }
    SUBCASE("kappa = sin s: zero integral, never closed") {
        ClosureInfo ci = closure_info(sine_curvature());
        CHECK(std::abs(ci.integral_over_ell) <= 1e-9);
        CHECK_FALSE(ci.closed);
    }
    SUBCASE("Musso-Nicolodi: xi = -1, m = 5") {
        ClosureInfo ci = closure_info(mn_curvature());
        CHECK(ci.xi == -1);
        CHECK(ci.m == 5);
        CHECK(ci.closed);
        CHECK(gcd64(std::abs(ci.xi), ci.m) == 1);
    }
}

TEST_CASE("turning number identity eta(L) - eta(0) = 2 pi xi") {
    BumpFamily fam = bump_curvatures();
    for (const CurvatureFunction* f : {&fam.k1, &fam.k2, &fam.k3, &fam.k4}) {
        ClosureInfo ci = closure_info(*f);
        REQUIRE(ci.closed);
        PlaneCurve c = integrate_frenet(*f, ci.total_length_L, ci.total_length_L / 8192);
        CHECK(std::abs((c.eta.back() - c.eta.front()) - kTwoPi * ci.xi) <= 1e-5);
    }
}

TEST_CASE("simple curves satisfy the per-period integral identity") {
    BumpFamily fam = bump_curvatures();
    const CurvatureFunction* ks[4] = {&fam.k1, &fam.k2, &fam.k3, &fam.k4};
    for (const CurvatureFunction* f : ks) {
        ClosureInfo ci = closure_info(*f);
        CHECK(ci.integral_over_ell == doctest::Approx(kTwoPi / ci.m).epsilon(1e-6));
    }
}

TEST_CASE("reconstruct-then-measure round trip") {
    CurvatureFunction f = mn_curvature();
    PlaneCurve c = integrate_frenet(f, kTwoPi, kTwoPi / 4096);
    for (size_t i = 0; i < c.samples.size(); i += 53) {
        KappaPair measured = curvature_at(c, i);
        KappaPair expected = f.eval(c.samples[i].t);
        CHECK(std::abs(measured.kappa - expected.kappa) <= 1e-5);
        CHECK(std::abs(measured.kappa_dot - expected.kappa_dot) <= 1e-5);
    }
}

TEST_CASE("frenet rejects bad arguments") {
    CurvatureFunction f = mn_curvature();
    CHECK_THROWS_WITH_AS(integrate_frenet(f, -1.0, 0.1), doctest::Contains("invalid-interval"),
                         Error);
    CHECK_THROWS_WITH_AS(integrate_frenet(f, 1.0, 0.0), doctest::Contains("invalid-step"), Error);
}
