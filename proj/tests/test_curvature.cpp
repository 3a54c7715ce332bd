#include <doctest.h>

#include <cmath>
#include <random>

#include "sigq/bump.hpp"
#include "sigq/curvature.hpp"
#include "sigq/gallery.hpp"
#include "sigq/quadrature.hpp"

using namespace sigq;

TEST_CASE("bump takes value 1 at the midpoint and 0 outside") {
    CHECK(bump_f<double>(1.0, 0.0, 2.0).value == doctest::Approx(1.0).epsilon(1e-15));
    for (double s : {-1.0, 0.0, 2.0, 3.0}) {
        CHECK(bump_f<double>(s, 0.0, 2.0).value == 0.0);
        CHECK(bump_f<double>(s, 0.0, 2.0).deriv == 0.0);
    }
    CHECK_THROWS_WITH_AS(bump_f<double>(0.5, 2.0, 1.0), doctest::Contains("invalid-interval"),
                         Error);
}

TEST_CASE("bump integral equals half the support width") {
    // the analytic identity is the oracle here: int f_{r1,r2} = (r2-r1)/2
    double I = adaptive_gauss([](double s) { return bump_f<double>(s, 0.0, 2.0).value; }, 0.0,
                              2.0, 1e-12);
    CHECK(I == doctest::Approx(1.0).epsilon(1e-9));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> lo(-5.0, 5.0), width(0.3, 6.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double r1 = lo(rng), r2 = r1 + width(rng);
        const double got = adaptive_gauss(
            [&](double s) { return bump_f<double>(s, r1, r2).value; }, r1, r2, 1e-12);
        CHECK(got == doctest::Approx((r2 - r1) / 2.0).epsilon(1e-9));
    }
}

TEST_CASE("bump family evaluation at landmark points") {
    BumpFamily fam = bump_curvatures();
    CHECK(fam.k1.eval(1.0).kappa == doctest::Approx(kPi / 3.0).epsilon(1e-12));
    CHECK(fam.k1.eval(0.0).kappa == 0.0);
    CHECK(fam.k1.eval(3.0).kappa == doctest::Approx(-2.0 * kPi / 3.0).epsilon(1e-12));
    // kappa2 carries the same pi/3 scaling (its blocks are 1, 3, -2, -1)
    CHECK(fam.k2.eval(1.0).kappa == doctest::Approx(kPi / 3.0).epsilon(1e-12));
    CHECK(fam.k2.eval(3.0).kappa == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("integrate_kappa splits at boundaries and handles wraps") {
    BumpFamily fam = bump_curvatures();
    CHECK(fam.k1.integrate(0.0, 8.0) == doctest::Approx(kPi / 3.0).epsilon(1e-6));
    CHECK(fam.k3.integrate(0.0, 16.0) == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-6));
    CHECK(fam.k1.integrate(3.0, 19.0) == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-6));
    CHECK(sine_curvature().integrate(0.0, kTwoPi) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK_THROWS_AS(fam.k1.integrate(2.0, 1.0), Error);
}

TEST_CASE("critical points: bump junctions, trig roots, degenerate input") {
    BumpFamily fam = bump_curvatures();
    CriticalPoints cp = fam.k1.critical_points();
    REQUIRE(cp.points.size() == 8);
    CHECK_FALSE(cp.degenerate);
    for (int i = 0; i < 8; ++i) CHECK(cp.points[i] == doctest::Approx((double)i).epsilon(1e-6));

    CurvatureFunction f = simple_sig_curvature();
    CriticalPoints cp2 = f.critical_points();
    REQUIRE(cp2.points.size() == 2);
    CHECK(cp2.points[0] == doctest::Approx(kPi / 4.0).epsilon(1e-6));
    CHECK(cp2.points[1] == doctest::Approx(5.0 * kPi / 4.0).epsilon(1e-6));

    CurvaturePiece constant;
    constant.a = 0.0;
    constant.b = kTwoPi;
    constant.payload = TrigPolynomial{1.0, 1.0, {}};
    CurvatureFunction circle = CurvatureFunction::create({constant});
    CHECK_THROWS_WITH_AS(circle.critical_points(), doctest::Contains("degenerate-function"),
                         Error);
}

TEST_CASE("periodicity holds for arbitrary shifts") {
    BumpFamily fam = bump_curvatures();
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> pos(-30.0, 30.0);
    std::uniform_int_distribution<int> rep(-4, 4);
    for (int trial = 0; trial < 100; ++trial) {
        const double s = pos(rng);
        const int k = rep(rng);
        const KappaPair a = fam.k3.eval(s);
        const KappaPair b = fam.k3.eval(s + k * fam.k3.period());
        CHECK(std::abs(a.kappa - b.kappa) <= 1e-12 * std::max(1.0, std::abs(a.kappa)));
        CHECK(std::abs(a.kappa_dot - b.kappa_dot) <=
              1e-12 * std::max(1.0, std::abs(a.kappa_dot)));
    }
}

TEST_CASE("closed-form derivative agrees with central differences") {
    std::vector<CurvatureFunction> fns = {bump_curvatures().k1, mn_curvature()};
    for (const CurvatureFunction& f : fns) {
        double max_dot = 0.0;
        for (int i = 0; i < 512; ++i)
            max_dot = std::max(max_dot, std::abs(f.eval(f.period() * i / 512.0).kappa_dot));
        std::mt19937 rng(23);
        std::uniform_real_distribution<double> pos(0.0, f.period());
        const double h = 1e-5;
        for (int trial = 0; trial < 100; ++trial) {
            const double s = pos(rng);
            const double fd = (f.eval(s + h).kappa - f.eval(s - h).kappa) / (2.0 * h);
            CHECK(std::abs(fd - f.eval(s).kappa_dot) <= 1e-6 * max_dot);
        }
    }
}

TEST_CASE("junctions are C1 within 1e-9") {
    BumpFamily fam = bump_curvatures();
    for (const CurvatureFunction* f : {&fam.k1, &fam.k2, &fam.k3, &fam.k4}) {
        const auto& pieces = f->pieces();
        for (size_t i = 0; i < pieces.size(); ++i) {
            const CurvaturePiece& left = pieces[i];
            const CurvaturePiece& right = pieces[(i + 1) % pieces.size()];
            KappaPair l = left.eval(left.b);
            KappaPair r = right.eval(right.a);
            CHECK(std::abs(l.kappa - r.kappa) <= 1e-9);
            CHECK(std::abs(l.kappa_dot - r.kappa_dot) <= 1e-9);
        }
    }
}

TEST_CASE("constructor rejects non-minimal periods and bad tilings") {
    // two identical bump blocks: the true period is half the declared one
    std::vector<CurvaturePiece> pieces;
    for (int i = 0; i < 2; ++i) {
        CurvaturePiece p;
        p.a = 2.0 * i;
        p.b = p.a + 2.0;
        p.payload = BumpCombination{{{1.0, p.a, p.b}}};
        pieces.push_back(p);
    }
    CHECK_THROWS_WITH_AS(CurvatureFunction::create(std::move(pieces)),
                         doctest::Contains("not minimal"), Error);

    std::vector<CurvaturePiece> gap;
    CurvaturePiece p1, p2;
    p1.a = 0.0;
    p1.b = 1.0;
    p1.payload = BumpCombination{{{1.0, 0.0, 1.0}}};
    p2.a = 1.5;  // hole in the tiling
    p2.b = 2.5;
    p2.payload = BumpCombination{{{2.0, 1.5, 2.5}}};
    gap.push_back(p1);
    gap.push_back(p2);
    CHECK_THROWS_WITH_AS(CurvatureFunction::create(std::move(gap)), doctest::Contains("tile"),
                         Error);
}

TEST_CASE("reversed curvature satisfies kappa~(s) = -kappa(-s)") {
    CurvatureFunction f = mn_curvature();
    CurvatureFunction r = f.reversed();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> pos(-10.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double s = pos(rng);
        CHECK(r.eval(s).kappa == doctest::Approx(-f.eval(-s).kappa).epsilon(1e-10));
        CHECK(r.eval(s).kappa_dot == doctest::Approx(f.eval(-s).kappa_dot).epsilon(1e-10));
    }
}

TEST_CASE("sampled pieces reproduce node values and derivatives exactly") {
    SampledWithDerivative sp;
    for (int i = 0; i <= 64; ++i) {
        const double s = kTwoPi * i / 64.0;
        sp.s.push_back(s);
        sp.kappa.push_back(std::sin(s) + 2.0);
        sp.kappa_dot.push_back(std::cos(s));
    }
    CurvaturePiece p;
    p.a = 0.0;
    p.b = kTwoPi;
    p.payload = sp;
    CurvatureFunction f = CurvatureFunction::create({p});
    for (int i = 0; i < 64; ++i) {
        const double s = kTwoPi * i / 64.0;
        CHECK(f.eval(s).kappa == doctest::Approx(std::sin(s) + 2.0).epsilon(1e-14));
        CHECK(f.eval(s).kappa_dot == doctest::Approx(std::cos(s)).epsilon(1e-14));
    }
    // between nodes the cubic Hermite stays within O(h^4)
    CHECK(f.eval(0.05).kappa == doctest::Approx(std::sin(0.05) + 2.0).epsilon(1e-7));
}
