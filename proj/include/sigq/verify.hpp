#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sigq/congruence.hpp"
#include "sigq/gallery.hpp"
#include "sigq/quiver.hpp"
#include "sigq/reconstruct.hpp"
#include "sigq/signature.hpp"
#include "sigq/synthesis.hpp"
#include "sigq/words.hpp"

namespace sigq {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace verify_detail {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
    void note(const std::string& s) {
        if (detail.tellp() > 0) detail << "; ";
        detail << s;
    }
};

inline std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

// Map a word written in the published letters onto this build's quiver
// letters by matching edge weights.
inline Word paper_word_on_quiver(const SignatureQuiver& q, const std::string& text,
                                 const std::vector<std::pair<char, double>>& paper_weights) {
    std::vector<int> map(26, -1);
    for (const auto& [letter, w] : paper_weights) {
        int best = -1;
        double best_d = 1e300;
        for (const QuiverEdge& e : q.edges) {
            const double d = std::abs(e.weight_omega - w);
            if (d < best_d) {
                best_d = d;
                best = e.id;
            }
        }
        if (best < 0 || best_d > 1e-3) fail("internal-consistency", "no edge matches paper weight");
        map[letter - 'a'] = best;
    }
    Word paper = parse_word(text);
    Word out;
    out.closed = true;
    for (int l : paper.letters) {
        if (map[l] < 0) fail("internal-consistency", "paper letter not mapped");
        out.letters.push_back(map[l]);
    }
    return out;
}

inline const std::vector<std::pair<char, double>>& bump_paper_weights() {
    static const std::vector<std::pair<char, double>> w = {
        {'a', -2.0 * kPi / 3.0}, {'b', -kPi / 3.0}, {'c', kPi / 3.0}, {'d', kPi}};
    return w;
}

}  // namespace verify_detail

// 1. Bump family reconstruction: closed, length 48, turning number 1,
//    symmetry indices 6, 6, 3, 2.
inline CriterionResult criterion_bump_reconstruction() {
    using namespace verify_detail;
    Check c;
    BumpFamily fam = bump_curvatures();
    const CurvatureFunction* ks[4] = {&fam.k1, &fam.k2, &fam.k3, &fam.k4};
    const int want_m[4] = {6, 6, 3, 2};
    for (int i = 0; i < 4; ++i) {
        ClosureInfo ci = closure_info(*ks[i]);
        c.expect(ci.closed, "kappa" + std::to_string(i + 1) + " not closed");
        c.expect(ci.m == want_m[i], "kappa" + std::to_string(i + 1) + " symmetry index " +
                                        std::to_string(ci.m) + " != " + std::to_string(want_m[i]));
        if (!ci.closed) continue;
        PlaneCurve curve = integrate_frenet(*ks[i], ci.total_length_L, ci.total_length_L / 8192);
        const double len = total_length(resample_arclength(curve, ci.total_length_L / 8192));
        c.expect(std::abs(len - 48.0) <= 1e-3,
                 "length " + fmt("%.6f", len) + " not 48 +- 1e-3");
        c.expect(closure_gap(curve) <= 1e-4, "closure gap " + fmt("%.2e", closure_gap(curve)));
        const double turning = (curve.eta.back() - curve.eta.front()) / kTwoPi;
        c.expect(std::abs(turning - 1.0) <= 1e-5 / kTwoPi,
                 "turning number " + fmt("%.8f", turning));
    }
    return {"1 bump family reconstruction", c.ok, c.detail.str()};
}

// 2. Shared signature: pairwise Hausdorff distance of the four signatures.
inline CriterionResult criterion_shared_signature() {
    using namespace verify_detail;
    Check c;
    BumpFamily fam = bump_curvatures();
    const Signature sigs[4] = {signature_of(fam.k1), signature_of(fam.k2), signature_of(fam.k3),
                               signature_of(fam.k4)};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double d = signature_distance(sigs[i], sigs[j]);
            const double tol = 1e-3 * std::max(sigs[i].bbox_diag, sigs[j].bbox_diag);
            c.expect(d <= tol, "S" + std::to_string(i + 1) + " vs S" + std::to_string(j + 1) +
                                   " Hausdorff " + fmt("%.2e", d));
        }
    return {"2 shared signature (pairwise Hausdorff)", c.ok, c.detail.str()};
}

// 3. Quiver of the bump signature: 1 vertex at the origin, 4 edges with
//    multiplicity 6 and the published weights; traced words match the
//    published ones up to the weight-pinned letter bijection and rotation.
inline CriterionResult criterion_bump_quiver() {
    using namespace verify_detail;
    Check c;
    BumpFamily fam = bump_curvatures();
    const CurvatureFunction* ks[4] = {&fam.k1, &fam.k2, &fam.k3, &fam.k4};
    const char* paper_words[4] = {"(cadb)^6", "(cdab)^6", "(cadbcdab)^3", "(cadbcdabcadb)^2"};

    SignatureQuiver q1 = build_quiver(fam.k1);
    c.expect(q1.vertices.size() == 1, "vertex count " + std::to_string(q1.vertices.size()));
    if (!q1.vertices.empty())
        c.expect(q1.vertices[0].location.norm() <= 1e-4 * q1.diag,
                 "vertex not at the origin: " + fmt("%.2e", q1.vertices[0].location.norm()));
    c.expect(q1.edges.size() == 4, "edge count " + std::to_string(q1.edges.size()));
    for (const QuiverEdge& e : q1.edges)
        c.expect(e.multiplicity_mu == 6, std::string("mu(") + e.letter() + ") != 6");

    std::vector<double> got, want = {-2.0 * kPi / 3.0, -kPi / 3.0, kPi / 3.0, kPi};
    for (const QuiverEdge& e : q1.edges) got.push_back(e.weight_omega);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (size_t i = 0; i < want.size() && i < got.size(); ++i)
        c.expect(std::abs(got[i] - want[i]) <= 1e-4,
                 "weight " + fmt("%.6f", got[i]) + " != " + fmt("%.6f", want[i]));

    for (int i = 0; i < 4; ++i) {
        SignatureQuiver q = build_quiver(*ks[i]);
        Word traced = traced_word(q);
        Word paper = paper_word_on_quiver(q, paper_words[i], bump_paper_weights());
        c.expect(rotation_equivalent(traced, paper),
                 std::string("word of kappa") + std::to_string(i + 1) + " is " +
                     word_string(traced) + ", expected " + paper_words[i] + " under the weight map");
    }
    return {"3 bump quiver (vertex, edges, weights, words)", c.ok, c.detail.str()};
}

// 4. Non-congruence of the four curves; congruence of each with a randomly
//    moved copy of itself.
inline CriterionResult criterion_non_congruence(uint32_t seed) {
    using namespace verify_detail;
    Check c;
    BumpFamily fam = bump_curvatures();
    const CurvatureFunction* ks[4] = {&fam.k1, &fam.k2, &fam.k3, &fam.k4};
    PlaneCurve curves[4];
    for (int i = 0; i < 4; ++i) curves[i] = integrate_frenet(*ks[i], 48.0, 48.0 / 8192);

    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            CongruenceResult r = are_congruent(curves[i], curves[j]);
            c.expect(!r.congruent, "Gamma" + std::to_string(i + 1) + " ~ Gamma" +
                                       std::to_string(j + 1) + " unexpectedly congruent");
        }
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi), offs(-10.0, 10.0);
    for (int i = 0; i < 4; ++i) {
        PlaneCurve moved = apply_rigid_motion(curves[i], angle(rng), {offs(rng), offs(rng)});
        CongruenceResult r = are_congruent(curves[i], moved);
        c.expect(r.congruent && r.residual <= 1e-4,
                 "self congruence residual " + fmt("%.2e", r.residual));
    }
    return {"4 non-congruence of the bump family", c.ok, c.detail.str()};
}

// 5. Synthesis from non-compatible and aperiodic words.
inline CriterionResult criterion_synthesis_words() {
    using namespace verify_detail;
    Check c;
    BumpFamily fam = bump_curvatures();
    SignatureQuiver q = build_quiver(fam.k1);
    const Signature src = signature_of(fam.k1);

    struct Case {
        const char* word;
        bool closed;
        int m;
        int sig;
    };
    const Case cases[] = {{"(cbdacacccbda)^2", true, 2, 4},
                          {"(cbdacacc)^3", true, 3, 3},
                          {"(ccabdacc)^3", true, 3, 3}};
    for (const Case& cs : cases) {
        Word w = paper_word_on_quiver(q, cs.word, bump_paper_weights());
        SynthesisResult r = synthesize_curve(q, w);
        c.expect(r.closed == cs.closed, std::string(cs.word) + " closed=" +
                                            std::to_string(r.closed));
        c.expect(r.sym_index_m == cs.m,
                 std::string(cs.word) + " m=" + std::to_string(r.sym_index_m));
        c.expect(r.sig_index == cs.sig,
                 std::string(cs.word) + " sig-index=" + std::to_string(r.sig_index));
    }
    {
        Word w = paper_word_on_quiver(q, "cadbcdabcdabcadbcadbcdab", bump_paper_weights());
        SynthesisResult r = synthesize_curve(q, w);
        c.expect(!r.closed, "aperiodic word produced a closed curve");
        const Signature sw = signature_of(r.kappa_w);
        const double d = signature_distance(sw, src);
        c.expect(d <= 1e-3 * src.bbox_diag, "aperiodic word signature distance " + fmt("%.2e", d));
    }
    return {"5 synthesis from non-compatible words", c.ok, c.detail.str()};
}

// 6. Musso-Nicolodi example: quiver shape, enumeration count, and the five
//    non-congruent curves with one shared signature.
inline CriterionResult criterion_musso_nicolodi() {
    using namespace verify_detail;
    Check c;
    CurvatureFunction mn = mn_curvature();
    SignatureQuiver q = build_quiver(mn);
    c.expect(q.vertices.size() == 4, "vertex count " + std::to_string(q.vertices.size()));
    c.expect(q.edges.size() == 8, "edge count " + std::to_string(q.edges.size()));
    for (const QuiverEdge& e : q.edges)
        c.expect(e.multiplicity_mu == 5, std::string("mu(") + e.letter() + ") != 5");

    EnumerationResult en = enumerate_words(q, std::vector<int>(q.edges.size(), 1));
    c.expect(en.words.size() == 5,
             "enumeration found " + std::to_string(en.words.size()) + " classes, want 5");

    std::vector<SynthesisResult> rs;
    std::vector<Signature> sigs;
    for (const Word& u : en.words) {
        Word W;
        W.closed = true;
        for (int rep = 0; rep < 5; ++rep)
            W.letters.insert(W.letters.end(), u.letters.begin(), u.letters.end());
        rs.push_back(synthesize_curve(q, W));
        c.expect(rs.back().closed, word_string(W) + " not closed");
        sigs.push_back(signature_of(rs.back().kappa_w));
    }
    for (size_t i = 0; i < rs.size(); ++i)
        for (size_t j = i + 1; j < rs.size(); ++j) {
            CongruenceResult r = find_shift(rs[i].kappa_w, rs[j].kappa_w);
            c.expect(!r.congruent, "synthesized MN pair unexpectedly congruent");
            const double d = signature_distance(sigs[i], sigs[j]);
            c.expect(d <= 1e-3 * std::max(sigs[i].bbox_diag, sigs[j].bbox_diag),
                     "MN signature pair distance " + fmt("%.2e", d));
        }
    return {"6 Musso-Nicolodi quiver, enumeration, synthesis", c.ok, c.detail.str()};
}

// 7. Cogwheels: quiver with loop multiplicities (3,4,5,6), permuted-cog words
//    give closed non-congruent wheels, non-compatible words satisfy closure.
inline CriterionResult criterion_cogwheels() {
    using namespace verify_detail;
    Check c;
    CogwheelSpec spec;
    CurvatureFunction f = cogwheel_curvature(spec);
    PlaneCurve wheel = cogwheel(spec);
    SignatureQuiver q = build_quiver(f);

    c.expect(q.vertices.size() == 1, "vertex count " + std::to_string(q.vertices.size()));
    c.expect(q.edges.size() == 4, "edge count " + std::to_string(q.edges.size()));
    std::vector<int> mu;
    for (const QuiverEdge& e : q.edges) {
        mu.push_back(e.multiplicity_mu);
        c.expect(e.from_vertex == 0 && e.to_vertex == 0, "edge is not a loop");
    }
    c.expect(mu == std::vector<int>({3, 4, 5, 6}), "multiplicities not (3,4,5,6)");

    Word traced = traced_word(q);
    const std::vector<int> tm = multiplicities(traced, (int)q.edges.size());
    int sig_index = 1 << 30;
    for (int v : tm) sig_index = std::min(sig_index, v);
    c.expect(sig_index == 3, "sig-index " + std::to_string(sig_index));

    double sum = 0.0;
    for (const QuiverEdge& e : q.edges) sum += e.multiplicity_mu * e.weight_omega;
    c.expect(std::abs(sum - kTwoPi) <= 1e-3, "sum mu*omega = " + fmt("%.6f", sum));

    for (const char* ws : {"a^3c^5b^4d^6", "a^3c^5d^6b^4"}) {
        SynthesisResult r = synthesize_curve(q, parse_word(ws));
        c.expect(r.closed, std::string(ws) + " not closed");
        CongruenceResult vs = are_congruent(r.curve, wheel);
        c.expect(!vs.congruent, std::string(ws) + " congruent to the original wheel");
    }
    for (const char* ws : {"a^2b^4c^5d^8", "a^3b^6c^5d^3"}) {
        ClosureTestResult ct = closure_test(q, parse_word(ws), 1);
        c.expect(ct.holds, std::string(ws) + " closure sum " + fmt("%.6f", ct.sum));
    }
    return {"7 cogwheels", c.ok, c.detail.str()};
}

// 8. Simple-signature path: circle signature, closure with m=5, and the
//    simple-signature congruence shortcut.
inline CriterionResult criterion_simple_signature(uint32_t seed) {
    using namespace verify_detail;
    Check c;
    CurvatureFunction f = simple_sig_curvature();
    Signature sig = signature_of(f);
    c.expect(self_intersections(sig).empty(), "signature unexpectedly self-intersects");
    for (const SigPoint& p : sig.trace) {
        const double r2 = sq(p.q.x - 0.2) + sq(p.q.y);
        if (std::abs(r2 - 2.0) > 1e-6) {
            c.expect(false, "signature point off the circle by " + fmt("%.2e", r2 - 2.0));
            break;
        }
    }
    ClosureInfo ci = closure_info(f);
    c.expect(ci.closed && ci.m == 5, "closure m=" + std::to_string(ci.m));

    PlaneCurve curve = integrate_frenet(f, ci.total_length_L, ci.total_length_L / 8192);
    std::mt19937 rng(seed + 8);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi), offs(-5.0, 5.0);
    PlaneCurve moved = apply_rigid_motion(curve, angle(rng), {offs(rng), offs(rng)});
    CongruenceResult r = are_congruent(curve, moved);
    c.expect(r.congruent, "moved copy not congruent");
    c.expect(r.method == "simple-signature", "shortcut did not fire (method=" + r.method + ")");
    return {"8 simple-signature path", c.ok, c.detail.str()};
}

// 9. Property suite: invariances, round trips, weight identities, divisibility,
//    enumeration versus brute force.
inline CriterionResult criterion_properties(uint32_t seed) {
    using namespace verify_detail;
    Check c;
    BumpFamily fam = bump_curvatures();

    // SE(2) invariance of per-sample signatures under 50 random motions
    {
        PlaneCurve curve = integrate_frenet(fam.k1, 48.0, 48.0 / 2048);
        std::vector<KappaPair> base(curve.samples.size());
        for (size_t i = 0; i < curve.samples.size(); ++i) base[i] = curvature_at(curve, i);
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> angle(0.0, kTwoPi), offs(-20.0, 20.0);
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            PlaneCurve moved = apply_rigid_motion(curve, angle(rng), {offs(rng), offs(rng)});
            for (size_t i = 0; i < moved.samples.size(); ++i) {
                KappaPair k = curvature_at(moved, i);
                worst = std::max({worst, std::abs(k.kappa - base[i].kappa),
                                  std::abs(k.kappa_dot - base[i].kappa_dot)});
            }
        }
        c.expect(worst <= 1e-9, "SE(2) invariance worst deviation " + fmt("%.2e", worst));
    }

    // orientation reversal reflects the signature about the vertical axis
    {
        PlaneCurve curve = integrate_frenet(fam.k1, 48.0, 48.0 / 4096);
        Signature fwd = signature_of_curve(curve);
        Signature bwd = signature_of_curve(reversed(curve));
        const double d =
            hausdorff_distance(reflect_about_vertical_axis(fwd.points()), bwd.points());
        c.expect(d <= 1e-6 * fwd.bbox_diag, "reversal reflection distance " + fmt("%.2e", d));
    }

    // round trip: synthesize(traced_word(Gamma)) congruent to Gamma; weight
    // identity and divisibility for every gallery quiver
    {
        std::vector<CurvatureFunction> gallery = {fam.k1, fam.k2, fam.k3, fam.k4, mn_curvature(),
                                                  cogwheel_curvature(CogwheelSpec{})};
        const char* names[] = {"k1", "k2", "k3", "k4", "mn", "cogwheel"};
        for (size_t g = 0; g < gallery.size(); ++g) {
            SignatureQuiver q = build_quiver(gallery[g]);
            SynthesisResult r = synthesize_curve(q, traced_word(q));
            CongruenceResult cong = find_shift(r.kappa_w, gallery[g]);
            c.expect(cong.congruent, std::string(names[g]) + " round trip not congruent, residual " +
                                         fmt("%.2e", cong.residual));
            double sum = 0.0;
            for (const QuiverEdge& e : q.edges) {
                sum += e.multiplicity_mu * e.weight_omega;
                c.expect(e.multiplicity_mu % q.m == 0,
                         std::string(names[g]) + " m does not divide mu(" + e.letter() + ")");
            }
            c.expect(std::abs(sum - kTwoPi * q.xi) <= 1e-5,
                     std::string(names[g]) + " weight identity off by " +
                         fmt("%.2e", sum - kTwoPi * q.xi));
        }
    }

    // enumeration count equals brute force on the single-vertex 4-loop quiver
    {
        SignatureQuiver q = build_quiver(fam.k1);
        EnumerationResult en = enumerate_words(q, {1, 1, 1, 1});
        // brute force: all orderings of the four loops, deduplicated by the
        // minimal rotation of the plain letter string
        std::string letters = "abcd";
        std::set<std::string> classes;
        std::sort(letters.begin(), letters.end());
        do {
            std::string best = letters;
            for (size_t r = 1; r < letters.size(); ++r)
                best = std::min(best, letters.substr(r) + letters.substr(0, r));
            classes.insert(best);
        } while (std::next_permutation(letters.begin(), letters.end()));
        c.expect(en.words.size() == classes.size() && classes.size() == 6,
                 "enumeration " + std::to_string(en.words.size()) + " vs brute force " +
                     std::to_string(classes.size()));
    }
    return {"9 property suite", c.ok, c.detail.str()};
}

// The full acceptance battery; every tolerance is fixed in the criteria above.
inline std::vector<CriterionResult> run_acceptance(uint32_t seed = 12345) {
    std::vector<CriterionResult> results;
    results.push_back(criterion_bump_reconstruction());
    results.push_back(criterion_shared_signature());
    results.push_back(criterion_bump_quiver());
    results.push_back(criterion_non_congruence(seed));
    results.push_back(criterion_synthesis_words());
    results.push_back(criterion_musso_nicolodi());
    results.push_back(criterion_cogwheels());
    results.push_back(criterion_simple_signature(seed));
    results.push_back(criterion_properties(seed));
    return results;
}

inline int print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results) {
    int failures = 0;
    for (const CriterionResult& r : results) {
        os << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.pass && !r.detail.empty()) os << "  [" << r.detail << "]";
        os << '\n';
        failures += r.pass ? 0 : 1;
    }
    os << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
       << '\n';
    return failures;
}

}  // namespace sigq
