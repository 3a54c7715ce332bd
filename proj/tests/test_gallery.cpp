#include <doctest.h>

#include <cmath>
#include <random>

#include "sigq/gallery.hpp"
#include "sigq/quiver.hpp"
#include "sigq/reconstruct.hpp"
#include "sigq/signature.hpp"
#include "sigq/words.hpp"

using namespace sigq;

TEST_CASE("bump family periods and closure data") {
    BumpFamily fam = bump_curvatures();
    CHECK(fam.k1.period() == doctest::Approx(8.0));
    CHECK(fam.k2.period() == doctest::Approx(8.0));
    CHECK(fam.k3.period() == doctest::Approx(16.0));
    CHECK(fam.k4.period() == doctest::Approx(24.0));
    CHECK(closure_info(fam.k3).m == 3);
    for (const CurvatureFunction* f : {&fam.k1, &fam.k2, &fam.k3, &fam.k4}) {
        ClosureInfo ci = closure_info(*f);
        REQUIRE(ci.closed);
        PlaneCurve c = integrate_frenet(*f, ci.total_length_L, ci.total_length_L / 8192);
        CHECK(total_length(resample_arclength(c, ci.total_length_L / 8192)) ==
              doctest::Approx(48.0).epsilon(1e-3 / 48.0));
    }
}

TEST_CASE("bump family signatures coincide pairwise") {
    BumpFamily fam = bump_curvatures();
    Signature sigs[4] = {signature_of(fam.k1), signature_of(fam.k2), signature_of(fam.k3),
                         signature_of(fam.k4)};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            CHECK(signature_distance(sigs[i], sigs[j]) <=
                  1e-3 * std::max(sigs[i].bbox_diag, sigs[j].bbox_diag));
}

TEST_CASE("Musso-Nicolodi curvature basics") {
    CurvatureFunction f = mn_curvature();
    CHECK(f.eval(0.0).kappa == doctest::Approx(-0.7).epsilon(1e-15));
    CHECK(f.integrate(0.0, kTwoPi) == doctest::Approx(-2.0 * kPi / 5.0).epsilon(1e-9));
    ClosureInfo ci = closure_info(f);
    CHECK(ci.m == 5);
    CHECK(std::abs(ci.xi) == 1);
}

TEST_CASE("the MN traced word is an 8-letter Eulerian circuit, 5 times") {
    SignatureQuiver q = build_quiver(mn_curvature());
    Word w = traced_word(q);
    CHECK(w.letters.size() == 40);
    auto ms = minimal_subword(w);
    CHECK(ms.exponent == 5);
    // each edge exactly once per period
    CHECK(multiplicities(ms.subword, 8) == std::vector<int>(8, 1));
    // any fixed-point-free published variant is reachable by relabeling
    Word paper = parse_word("bhfdgace");
    CHECK(relabel_rotation_equivalent(ms.subword, paper));
}

TEST_CASE("cogwheel boundary values match the direct computation") {
    CogwheelSpec spec;  // n=4, r0=1, teeth (3,4,5,6)
    PlaneCurve wheel = cogwheel(spec);
    CHECK(wheel.closed);
    CHECK(closure_gap(wheel) <= 1e-12);
    // at each cog endpoint 2 pi j / n: rho = r0 and kappa = 1 - n^2 = -15
    for (int j = 0; j < 4; ++j) {
        const double t = kTwoPi * j / 4.0;
        size_t best = 0;
        double best_d = 1e300;
        for (size_t i = 0; i < wheel.samples.size(); ++i)
            if (std::abs(wheel.samples[i].t - t) < best_d) {
                best_d = std::abs(wheel.samples[i].t - t);
                best = i;
            }
        REQUIRE(best_d <= 1e-12);
        CHECK(wheel.samples[best].point.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(curvature_at(wheel, best).kappa == doctest::Approx(-15.0).epsilon(1e-10));
        CHECK(cogwheel_curvature_formula(spec, j, t) == doctest::Approx(-15.0).epsilon(1e-12));
    }
}

TEST_CASE("cogwheel curvature: derivative route equals the printed formula") {
    CogwheelSpec spec;
    PlaneCurve wheel = cogwheel(spec, 64);
    std::mt19937 rng(97);
    for (int j = 0; j < spec.n; ++j) {
        std::uniform_real_distribution<double> inside(kTwoPi * j / spec.n,
                                                      kTwoPi * (j + 1) / spec.n);
        for (int trial = 0; trial < 1000; ++trial) {
            const double t = inside(rng);
            // polar-derivative route, independent of the printed formula
            const double a = (double)spec.teeth[j];
            const double na = spec.n * a;
            const double c = std::cos(na * t), sn = std::sin(na * t);
            const double rho = spec.r0 + (1.0 - c) / (a * a);
            const double rho1 = (spec.n / a) * sn;
            const double rho2 = 1.0 * spec.n * spec.n * c;
            const Vec2 er{std::cos(t), std::sin(t)};
            const Vec2 et{-er.y, er.x};
            const Vec2 d1 = rho1 * er + rho * et;
            const Vec2 d2 = (rho2 - rho) * er + 2.0 * rho1 * et;
            const double g2 = d1.norm2();
            const double kappa = cross(d1, d2) / (g2 * std::sqrt(g2));
            CHECK(std::abs(kappa - cogwheel_curvature_formula(spec, j, t)) <= 1e-8);
        }
    }
}

TEST_CASE("cogwheel quiver shape") {
    SignatureQuiver q = build_quiver(cogwheel_curvature(CogwheelSpec{}));
    REQUIRE(q.vertices.size() == 1);
    REQUIRE(q.edges.size() == 4);
    std::vector<int> mu;
    for (const QuiverEdge& e : q.edges) mu.push_back(e.multiplicity_mu);
    CHECK(mu == std::vector<int>({3, 4, 5, 6}));
}

TEST_CASE("symmetric tooth patterns reduce to the minimal period") {
    CogwheelSpec spec;
    spec.n = 2;
    spec.teeth = {3, 3};
    CurvatureFunction f = cogwheel_curvature(spec);
    // one tooth is the whole story: period = tooth length
    PlaneCurve wheel = cogwheel(spec);
    const double L = total_length(wheel);
    CHECK(f.period() == doctest::Approx(L / 6.0).epsilon(1e-6));
}

TEST_CASE("misc gallery witnesses") {
    SUBCASE("the simple-signature curve has an intersection-free signature") {
        CHECK(self_intersections(signature_of(simple_sig_curvature())).empty());
    }
    SUBCASE("kappa = sin s never closes") {
        CHECK_FALSE(closure_info(sine_curvature()).closed);
    }
    SUBCASE("the degenerate example trips the vertex flag") {
        VertexScan scan = scan_vertices(degenerate_example_curve());
        CHECK(scan.degenerate);
    }
}

TEST_CASE("gallery items resolve by name") {
    CHECK(gallery_item("cinf1").kappa.has_value());
    CHECK(gallery_item("cinf4").kappa->period() == doctest::Approx(24.0));
    CHECK(gallery_item("mn").kappa.has_value());
    CHECK(gallery_item("cogwheel").curve.has_value());
    CHECK(gallery_item("cogwheel").kappa.has_value());
    CHECK(gallery_item("cogwheel:2,3").kappa->pieces().size() == 5);
    CHECK(gallery_item("degenerate").curve.has_value());
    CHECK_THROWS_WITH_AS(gallery_item("nope"), doctest::Contains("invalid-spec"), Error);
    CHECK_THROWS_AS(gallery_item("cogwheel:0,3"), Error);
}

TEST_CASE("every closed gallery curve satisfies the turning identity") {
    std::vector<CurvatureFunction> gallery = {bump_curvatures().k1, bump_curvatures().k4,
                                              mn_curvature(), simple_sig_curvature(),
                                              cogwheel_curvature(CogwheelSpec{})};
    for (const CurvatureFunction& f : gallery) {
        ClosureInfo ci = closure_info(f);
        REQUIRE(ci.closed);
        const double total = f.integrate(f.domain_offset(), f.domain_offset() + ci.m * f.period());
        CHECK(std::abs(total - kTwoPi * ci.xi) <= 1e-5);
    }
}
