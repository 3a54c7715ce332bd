#pragma once

#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "sigq/common.hpp"
#include "sigq/congruence.hpp"
#include "sigq/curvature.hpp"
#include "sigq/quiver.hpp"

namespace sigq {

using json = nlohmann::json;

// ---- curvature specs ---------------------------------------------------------
// {"period": ell, "pieces": [{"kind": "...", "interval": [a,b], "params": {...}}]}

inline json piece_to_json(const CurvaturePiece& p) {
    json j;
    j["interval"] = {p.a, p.b};
    if (const auto* bc = std::get_if<BumpCombination>(&p.payload)) {
        j["kind"] = "bump-combination";
        json terms = json::array();
        for (const BumpTerm& t : bc->terms)
            terms.push_back({{"coeff", t.coeff}, {"r1", t.r1}, {"r2", t.r2}});
        j["params"] = {{"terms", terms}};
        return j;
    }
    if (const auto* tp = std::get_if<TrigPolynomial>(&p.payload)) {
        j["kind"] = "trig-polynomial";
        json terms = json::array();
        for (const TrigTerm& t : tp->terms)
            terms.push_back({{"k", t.k}, {"cos", t.cos_coeff}, {"sin", t.sin_coeff}});
        j["params"] = {{"constant", tp->constant}, {"omega", tp->omega}, {"terms", terms}};
        return j;
    }
    if (const auto* sp = std::get_if<SampledWithDerivative>(&p.payload)) {
        j["kind"] = "sampled-with-derivative";
        j["params"] = {{"s", sp->s}, {"kappa", sp->kappa}, {"kappa_dot", sp->kappa_dot}};
        return j;
    }
    // windows into another function are materialized as samples
    const int n = std::max(64, (int)std::ceil((p.b - p.a) * 1024));
    SampledWithDerivative sp;
    sp.s.resize(n + 1);
    sp.kappa.resize(n + 1);
    sp.kappa_dot.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double s = p.a + (p.b - p.a) * (double)i / n;
        KappaPair k = p.eval(s);
        sp.s[i] = s;
        sp.kappa[i] = k.kappa;
        sp.kappa_dot[i] = k.kappa_dot;
    }
    j["kind"] = "sampled-with-derivative";
    j["params"] = {{"s", sp.s}, {"kappa", sp.kappa}, {"kappa_dot", sp.kappa_dot}};
    return j;
}

inline json curvature_to_json(const CurvatureFunction& f) {
    json j;
    j["period"] = f.period();
    j["pieces"] = json::array();
    for (const CurvaturePiece& p : f.pieces()) j["pieces"].push_back(piece_to_json(p));
    return j;
}

inline CurvatureFunction curvature_from_json(const json& j) {
    if (!j.contains("period") || !j.contains("pieces"))
        fail("invalid-spec", "curvature JSON needs 'period' and 'pieces'");
    std::vector<CurvaturePiece> pieces;
    for (const json& pj : j.at("pieces")) {
        CurvaturePiece p;
        const auto& iv = pj.at("interval");
        p.a = iv.at(0).get<double>();
        p.b = iv.at(1).get<double>();
        const std::string kind = pj.at("kind").get<std::string>();
        const json& params = pj.at("params");
        if (kind == "bump-combination") {
            BumpCombination bc;
            for (const json& tj : params.at("terms"))
                bc.terms.push_back({tj.at("coeff").get<double>(), tj.at("r1").get<double>(),
                                    tj.at("r2").get<double>()});
            p.payload = std::move(bc);
        } else if (kind == "trig-polynomial") {
            TrigPolynomial tp;
            tp.constant = params.value("constant", 0.0);
            tp.omega = params.value("omega", 1.0);
            for (const json& tj : params.at("terms"))
                tp.terms.push_back({tj.at("k").get<int>(), tj.value("cos", 0.0),
                                    tj.value("sin", 0.0)});
            p.payload = std::move(tp);
        } else if (kind == "sampled-with-derivative" || kind == "explicit-rational") {
            SampledWithDerivative sp;
            sp.s = params.at("s").get<std::vector<double>>();
            sp.kappa = params.at("kappa").get<std::vector<double>>();
            sp.kappa_dot = params.at("kappa_dot").get<std::vector<double>>();
            if (sp.s.size() != sp.kappa.size() || sp.s.size() != sp.kappa_dot.size())
                fail("invalid-spec", "sampled piece arrays must have equal lengths");
            p.payload = std::move(sp);
        } else {
            fail("invalid-spec", "unknown piece kind: " + kind);
        }
        pieces.push_back(std::move(p));
    }
    CurvatureFunction f = CurvatureFunction::create(std::move(pieces));
    const double declared = j.at("period").get<double>();
    if (std::abs(f.period() - declared) > 1e-9 * std::max(1.0, declared))
        fail("invalid-spec", "declared period does not match the piece tiling");
    return f;
}

// ---- quivers -------------------------------------------------------------------

inline json quiver_to_json(const SignatureQuiver& q) {
    json j;
    j["ell"] = q.ell;
    j["m"] = q.m;
    j["xi"] = q.xi;
    j["closed"] = q.closed;
    j["diag"] = q.diag;
    j["breakpoints"] = q.breakpoints;
    j["interval_edges"] = q.interval_edges;
    j["interval_vertex"] = q.interval_vertex;
    j["vertices"] = json::array();
    for (const QuiverVertex& v : q.vertices)
        j["vertices"].push_back({{"id", v.id},
                                 {"location", {v.location.x, v.location.y}},
                                 {"preimages", v.preimages},
                                 {"on_axis", v.on_axis}});
    j["edges"] = json::array();
    for (const QuiverEdge& e : q.edges) {
        json intervals = json::array();
        for (const auto& [a, b] : e.preimage_intervals) intervals.push_back({a, b});
        j["edges"].push_back({{"letter", std::string(1, e.letter())},
                              {"from", e.from_vertex},
                              {"to", e.to_vertex},
                              {"interval", {e.rep_a, e.rep_b}},
                              {"mu", e.multiplicity_mu},
                              {"omega", e.weight_omega},
                              {"preimage_intervals", intervals}});
    }
    if (q.source) j["source"] = curvature_to_json(*q.source);
    return j;
}

inline SignatureQuiver quiver_from_json(const json& j) {
    SignatureQuiver q;
    q.ell = j.at("ell").get<double>();
    q.m = j.at("m").get<int>();
    q.xi = j.at("xi").get<int>();
    q.closed = j.at("closed").get<bool>();
    q.diag = j.at("diag").get<double>();
    q.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    q.interval_edges = j.at("interval_edges").get<std::vector<int>>();
    q.interval_vertex = j.at("interval_vertex").get<std::vector<int>>();
    for (const json& vj : j.at("vertices")) {
        QuiverVertex v;
        v.id = vj.at("id").get<int>();
        v.location = {vj.at("location").at(0).get<double>(), vj.at("location").at(1).get<double>()};
        v.preimages = vj.at("preimages").get<std::vector<double>>();
        v.on_axis = vj.value("on_axis", false);
        q.vertices.push_back(std::move(v));
    }
    for (const json& ej : j.at("edges")) {
        QuiverEdge e;
        e.id = ej.at("letter").get<std::string>()[0] - 'a';
        e.from_vertex = ej.at("from").get<int>();
        e.to_vertex = ej.at("to").get<int>();
        e.rep_a = ej.at("interval").at(0).get<double>();
        e.rep_b = ej.at("interval").at(1).get<double>();
        e.multiplicity_mu = ej.at("mu").get<int>();
        e.weight_omega = ej.at("omega").get<double>();
        for (const json& ij : ej.value("preimage_intervals", json::array()))
            e.preimage_intervals.push_back({ij.at(0).get<double>(), ij.at(1).get<double>()});
        q.edges.push_back(std::move(e));
    }
    std::sort(q.edges.begin(), q.edges.end(),
              [](const QuiverEdge& a, const QuiverEdge& b) { return a.id < b.id; });
    if (j.contains("source"))
        q.source = std::make_shared<CurvatureFunction>(curvature_from_json(j.at("source")));
    return q;
}

// ---- verdicts -------------------------------------------------------------------

inline json verdict_to_json(const CongruenceResult& r) {
    return {{"congruent", r.congruent}, {"shift", r.shift_c},   {"residual", r.residual},
            {"periods", {r.period1, r.period2}}, {"method", r.method}};
}

inline json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail("io-error", "cannot open: " + path);
    json j;
    f >> j;
    return j;
}

inline void save_json_file(const std::string& path, const json& j) {
    std::ofstream f(path);
    if (!f) fail("io-error", "cannot open for writing: " + path);
    f << j.dump(2) << '\n';
}

}  // namespace sigq
