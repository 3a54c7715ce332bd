// sigq: Euclidean signatures, signature quivers, and curve synthesis for
// planar curves given by periodic curvature functions.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sigq/congruence.hpp"
#include "sigq/formats.hpp"
#include "sigq/gallery.hpp"
#include "sigq/json_io.hpp"
#include "sigq/quiver.hpp"
#include "sigq/reconstruct.hpp"
#include "sigq/signature.hpp"
#include "sigq/synthesis.hpp"
#include "sigq/verify.hpp"
#include "sigq/words.hpp"

namespace {

using namespace sigq;

struct ResolvedInput {
    std::optional<CurvatureFunction> kappa;
    std::optional<PlaneCurve> curve;
    std::optional<SignatureQuiver> quiver;
};

std::string extension_of(const std::string& path) {
    const size_t dot = path.rfind('.');
    return dot == std::string::npos ? "" : path.substr(dot + 1);
}

// gallery:NAME | curvature .json | quiver .json | polyline .csv
ResolvedInput resolve_input(const std::string& spec) {
    ResolvedInput out;
    if (spec.rfind("gallery:", 0) == 0) {
        GalleryItem item = gallery_item(spec.substr(8));
        out.kappa = std::move(item.kappa);
        out.curve = std::move(item.curve);
        return out;
    }
    const std::string ext = extension_of(spec);
    if (ext == "json") {
        json j = load_json_file(spec);
        if (j.contains("pieces"))
            out.kappa = curvature_from_json(j);
        else if (j.contains("edges"))
            out.quiver = quiver_from_json(j);
        else
            fail("invalid-spec", "JSON input is neither a curvature nor a quiver: " + spec);
        return out;
    }
    if (ext == "csv") {
        std::ifstream f(spec);
        if (!f) fail("io-error", "cannot open: " + spec);
        out.curve = read_polyline_csv(f);
        return out;
    }
    fail("invalid-spec", "input must be gallery:NAME, a .json spec, or a .csv polyline");
}

PlaneCurve curve_of(const ResolvedInput& in, int samples, double smax_override) {
    if (in.curve) return *in.curve;
    if (!in.kappa) fail("invalid-spec", "this input does not describe a curve");
    const CurvatureFunction& f = *in.kappa;
    double s_max = smax_override;
    if (s_max <= 0.0) {
        ClosureInfo ci = closure_info(f);
        s_max = ci.closed ? ci.total_length_L : 2.0 * f.period();
    }
    return integrate_frenet(f, s_max, s_max / samples);
}

SignatureQuiver quiver_of(const ResolvedInput& in, int samples) {
    if (in.quiver) return *in.quiver;
    if (in.kappa) {
        QuiverOptions opts;
        opts.samples_per_period = samples;
        return build_quiver(*in.kappa, opts);
    }
    fail("invalid-spec", "quiver construction needs a curvature source "
                         "(gallery item or curvature JSON)");
}

void write_by_extension(const std::string& path, const std::function<void(std::ostream&)>& csv,
                        const std::function<void(std::ostream&)>& svg) {
    const std::string ext = extension_of(path);
    std::ofstream f(path);
    if (!f) fail("io-error", "cannot open for writing: " + path);
    if (ext == "csv")
        csv(f);
    else if (ext == "svg")
        svg(f);
    else
        fail("invalid-spec", "unsupported output extension ." + ext + " (use .csv or .svg)");
}

std::vector<int> parse_multiplicities(const std::string& text, const SignatureQuiver& q) {
    std::vector<int> mult(q.edges.size(), 0);
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const size_t eq = item.find('=');
        if (eq == std::string::npos)
            fail("invalid-spec", "multiplicities look like a=1,b=2 or all=1");
        const std::string key = item.substr(0, eq);
        const int value = std::stoi(item.substr(eq + 1));
        if (key == "all") {
            std::fill(mult.begin(), mult.end(), value);
        } else if (key.size() == 1) {
            mult[q.edge_by_letter(key[0])] = value;
        } else {
            fail("invalid-spec", "unknown multiplicity key: " + key);
        }
    }
    return mult;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Euclidean signature quivers of planar curves"};
    app.require_subcommand(1);
    int samples = 8192;
    app.add_option("--samples", samples, "samples per period for traces and reconstruction")
        ->capture_default_str();

    // curve
    auto* cmd_curve = app.add_subcommand("curve", "reconstruct a curve and export csv/svg");
    std::string curve_in, curve_out;
    double curve_smax = 0.0;
    cmd_curve->add_option("input", curve_in)->required();
    cmd_curve->add_option("--out", curve_out, "output file (.csv or .svg)")->required();
    cmd_curve->add_option("--smax", curve_smax, "arc length to integrate (open inputs)");

    // signature
    auto* cmd_sig = app.add_subcommand("signature", "signature trace as csv/svg");
    std::string sig_in, sig_out;
    cmd_sig->add_option("input", sig_in)->required();
    cmd_sig->add_option("--out", sig_out, "output file (.csv or .svg)")->required();

    // quiver
    auto* cmd_quiver = app.add_subcommand("quiver", "signature quiver as dot/json");
    std::string quiver_in, quiver_out;
    cmd_quiver->add_option("input", quiver_in)->required();
    cmd_quiver->add_option("--out", quiver_out, "output file (.dot or .json)")->required();

    // words enumerate
    auto* cmd_words = app.add_subcommand("words", "word operations");
    auto* cmd_enum = cmd_words->add_subcommand("enumerate", "closed paths with given multiplicities");
    std::string enum_in, enum_mult = "all=1";
    bool count_only = false;
    size_t enum_max = 100000;
    cmd_enum->add_option("input", enum_in)->required();
    cmd_enum->add_option("--mult", enum_mult, "per-period multiplicities, e.g. a=1,b=2 or all=1");
    cmd_enum->add_flag("--count-only", count_only, "print only the number of cyclic classes");
    cmd_enum->add_option("--max", enum_max, "stop after this many classes");

    // synth
    auto* cmd_synth = app.add_subcommand("synth", "synthesize a curve from a word");
    std::string synth_in, synth_word, synth_out, synth_batch;
    int synth_xi = 0;
    cmd_synth->add_option("input", synth_in)->required();
    cmd_synth->add_option("--word", synth_word, "word, e.g. \"(cadb)^6\"");
    auto* xi_opt = cmd_synth->add_option("--xi", synth_xi, "turning number for the closure test");
    cmd_synth->add_option("--out", synth_out, "output file (.csv or .svg)");
    cmd_synth->add_option("--batch", synth_batch,
                          "file with one word per line; writes result rows as CSV to --out");

    // congruent
    auto* cmd_cong = app.add_subcommand("congruent", "decide SE(2) congruence (exit 0/1/2)");
    std::string cong_a, cong_b;
    bool cong_reversed = false;
    cmd_cong->add_option("A", cong_a)->required();
    cmd_cong->add_option("B", cong_b)->required();
    cmd_cong->add_flag("--reversed", cong_reversed, "reverse B's orientation first");

    // indices
    auto* cmd_idx = app.add_subcommand("indices", "symmetry/signature indices and edge data");
    std::string idx_in;
    cmd_idx->add_option("input", idx_in)->required();

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run the acceptance suite");
    uint32_t seed = 12345;
    cmd_verify->add_option("--seed", seed, "seed for randomized checks")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (cmd_curve->parsed()) {
        ResolvedInput in = resolve_input(curve_in);
        PlaneCurve c = curve_of(in, samples, curve_smax);
        write_by_extension(
            curve_out, [&](std::ostream& os) { write_curve_csv(os, c); },
            [&](std::ostream& os) { write_curve_svg(os, c); });
        std::printf("wrote %s (%zu samples, length %.9g, closure gap %.9g)\n", curve_out.c_str(),
                    c.samples.size(), total_length(c), closure_gap(c));
        return 0;
    }

    if (cmd_sig->parsed()) {
        ResolvedInput in = resolve_input(sig_in);
        if (!in.kappa && !in.curve)
            fail("invalid-spec", "signature needs a curvature or curve input");
        Signature sig = in.curve && !in.kappa ? signature_of_curve(*in.curve)
                                              : signature_of(*in.kappa, samples);
        write_by_extension(
            sig_out, [&](std::ostream& os) { write_signature_csv(os, sig); },
            [&](std::ostream& os) { write_signature_svg(os, sig); });
        std::printf("wrote %s (%zu points, diag %.9g)\n", sig_out.c_str(), sig.trace.size(),
                    sig.bbox_diag);
        return 0;
    }

    if (cmd_quiver->parsed()) {
        ResolvedInput in = resolve_input(quiver_in);
        SignatureQuiver q = quiver_of(in, samples);
        const std::string ext = extension_of(quiver_out);
        if (ext == "dot")
            write_text_file(quiver_out, export_dot(q));
        else if (ext == "json")
            save_json_file(quiver_out, quiver_to_json(q));
        else
            fail("invalid-spec", "quiver output must be .dot or .json");
        std::printf("wrote %s (%zu vertices, %zu edges, m=%d, xi=%d)\n", quiver_out.c_str(),
                    q.vertices.size(), q.edges.size(), q.m, q.xi);
        if (q.tangential_events > 0)
            std::printf("note: %d tangential intersection events were merged conservatively\n",
                        q.tangential_events);
        return 0;
    }

    if (cmd_enum->parsed()) {
        ResolvedInput in = resolve_input(enum_in);
        SignatureQuiver q = quiver_of(in, samples);
        const std::vector<int> mult = parse_multiplicities(enum_mult, q);
        EnumerationResult en = enumerate_words(q, mult, enum_max);
        if (count_only) {
            std::printf("%zu%s\n", en.words.size(), en.truncated ? " (truncated)" : "");
        } else {
            for (const Word& w : en.words) std::printf("%s\n", word_string(w).c_str());
            std::printf("%zu cyclic classes%s\n", en.words.size(),
                        en.truncated ? " (truncated)" : "");
        }
        return 0;
    }

    if (cmd_synth->parsed()) {
        ResolvedInput in = resolve_input(synth_in);
        SignatureQuiver q = quiver_of(in, samples);
        if (!q.source) fail("invalid-spec", "quiver JSON lacks the embedded curvature source");
        if (synth_batch.empty() && synth_word.empty())
            fail("invalid-spec", "synth needs --word or --batch");
        std::optional<int> xi =
            xi_opt->count() > 0 ? std::optional<int>(synth_xi) : std::nullopt;
        if (!synth_batch.empty()) {
            std::ifstream bf(synth_batch);
            if (!bf) fail("io-error", "cannot open: " + synth_batch);
            std::ostringstream rows;
            rows << "word,closed,m,sig_index,length,closure_gap\n";
            std::string line;
            while (std::getline(bf, line)) {
                if (line.empty()) continue;
                SynthesisResult r = synthesize_curve(q, parse_word(line), xi, samples);
                char buf[256];
                std::snprintf(buf, sizeof(buf), "%s,%d,%d,%d,%.9g,%.9g\n", line.c_str(),
                              (int)r.closed, r.sym_index_m, r.sig_index,
                              r.breakpoints_c.back(), r.endpoint_gap);
                rows << buf;
            }
            if (synth_out.empty())
                std::cout << rows.str();
            else
                write_text_file(synth_out, rows.str());
            return 0;
        }
        SynthesisResult r = synthesize_curve(q, parse_word(synth_word), xi, samples);
        std::printf("word %s: closed=%d m=%d sig-index=%d length=%.9g gap=%.9g "
                    "self-intersections=%d\n",
                    synth_word.c_str(), (int)r.closed, r.sym_index_m, r.sig_index,
                    r.breakpoints_c.back(), r.endpoint_gap, r.curve_self_intersections);
        if (!synth_out.empty())
            write_by_extension(
                synth_out, [&](std::ostream& os) { write_curve_csv(os, r.curve); },
                [&](std::ostream& os) { write_curve_svg(os, r.curve, r.breakpoints_c); });
        return 0;
    }

    if (cmd_cong->parsed()) {
        ResolvedInput a = resolve_input(cong_a);
        ResolvedInput b = resolve_input(cong_b);
        CongruenceResult r;
        if (a.kappa && b.kappa) {
            CurvatureFunction fb = cong_reversed ? b.kappa->reversed() : *b.kappa;
            r = find_shift(*a.kappa, fb, samples);
        } else {
            PlaneCurve ca = curve_of(a, samples, 0.0);
            PlaneCurve cb = curve_of(b, samples, 0.0);
            if (cong_reversed) cb = reversed(cb);
            r = are_congruent(ca, cb, samples);
        }
        std::cout << verdict_to_json(r).dump(2) << '\n';
        return r.congruent ? 0 : 1;
    }

    if (cmd_idx->parsed()) {
        ResolvedInput in = resolve_input(idx_in);
        try {
            SignatureQuiver q = quiver_of(in, samples);
            int sig_index = 1 << 30;
            for (const QuiverEdge& e : q.edges) sig_index = std::min(sig_index, e.multiplicity_mu);
            std::printf("m=%d\nsig-index=%d\nxi=%d\n", q.m, sig_index, q.xi);
            for (const QuiverEdge& e : q.edges)
                std::printf("edge %c: q%d->q%d mu=%d omega=%.9g\n", e.letter(), e.from_vertex,
                            e.to_vertex, e.multiplicity_mu, e.weight_omega);
        } catch (const Error& e) {
            if (std::string(e.code()) != "simple-signature") throw;
            if (!in.kappa) throw;
            ClosureInfo ci = closure_info(*in.kappa);
            std::printf("signature is simple (no self-intersections)\nm=%d\nxi=%d\n", ci.m, ci.xi);
        }
        return 0;
    }

    if (cmd_verify->parsed()) {
        auto results = run_acceptance(seed);
        return print_acceptance(std::cout, results) == 0 ? 0 : 1;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const sigq::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
