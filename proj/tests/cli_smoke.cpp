// End-to-end checks of the CLI surface: exit codes, output files, formats.
// The binary path comes from the build (SIGQ_CLI_PATH).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    std::printf("%s  %s\n", ok ? "ok  " : "FAIL", what.c_str());
    if (!ok) ++failures;
}

int run(const std::string& args, std::string* output = nullptr) {
    const std::string out_path = "cli_smoke_stdout.txt";
    const std::string cmd = std::string(SIGQ_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    const int rc = std::system(cmd.c_str());
    if (output) {
        std::ifstream f(out_path);
        std::stringstream ss;
        ss << f.rdbuf();
        *output = ss.str();
    }
    if (rc == -1) return -1;
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    expect(run("congruent gallery:cinf1 gallery:cinf2") == 1,
           "congruent cinf1 cinf2 exits 1 (not congruent)");
    expect(run("congruent gallery:cinf1 gallery:cinf1") == 0, "congruent cinf1 cinf1 exits 0");
    expect(run("congruent gallery:cinf1 no-such-file.xyz") == 2, "bad input exits 2");
    expect(run("definitely-not-a-command") == 2, "unknown command exits 2");

    {
        std::string out;
        run("indices gallery:cinf1", &out);
        expect(out.find("m=6") != std::string::npos &&
                   out.find("sig-index=6") != std::string::npos,
               "indices cinf1 prints m=6 and sig-index=6");
    }
    {
        std::string out;
        run("indices gallery:simple-sig", &out);
        expect(out.find("simple") != std::string::npos && out.find("m=5") != std::string::npos,
               "indices simple-sig reports the simple signature and m=5");
    }

    expect(run("quiver gallery:mn --out mn_quiver.json") == 0, "quiver mn -> json");
    {
        std::string out;
        run("words enumerate mn_quiver.json --mult all=1 --count-only", &out);
        expect(out.find("5") != std::string::npos, "words enumerate mn --mult all=1 counts 5");
    }
    expect(run("quiver gallery:cinf1 --out q1.dot") == 0, "quiver cinf1 -> dot");
    expect(slurp("q1.dot").find("digraph") != std::string::npos, "dot output is a digraph");

    expect(run("quiver gallery:cinf1 --out q1.json") == 0, "quiver cinf1 -> json");
    expect(run("synth q1.json --word \"(abcd)^6\" --out synth.csv") == 0,
           "synth (abcd)^6 from quiver json");
    expect(slurp("synth.csv").rfind("s,x,y,kappa,kappa_dot", 0) == 0,
           "synth csv has the curve header");
    {
        std::ofstream batch("batch_words.txt");
        batch << "(abcd)^6\nabc\n";
        batch.close();
        expect(run("synth q1.json --batch batch_words.txt --out batch.csv") == 0, "batch synth");
        const std::string rows = slurp("batch.csv");
        expect(rows.rfind("word,closed,m,sig_index,length,closure_gap", 0) == 0,
               "batch csv header");
        expect(rows.find("(abcd)^6,1,6,6,48") != std::string::npos, "batch row for (abcd)^6");
    }

    expect(run("signature gallery:simple-sig --out ss.csv") == 0, "signature -> csv");
    expect(slurp("ss.csv").rfind("s,kappa,kappa_dot", 0) == 0, "signature csv header");
    expect(run("curve gallery:cinf1 --out g1.svg") == 0, "curve -> svg");
    expect(slurp("g1.svg").rfind("<svg", 0) == 0, "svg document");
    expect(run("signature gallery:mn --out bad.pdf") == 2, "unsupported extension exits 2");

    // determinism: repeated runs are byte-identical
    {
        run("signature gallery:mn --out det1.csv");
        run("signature gallery:mn --out det2.csv");
        expect(slurp("det1.csv") == slurp("det2.csv"), "repeated runs are byte-identical");
    }

    std::printf("%d failures\n", failures);
    return failures == 0 ? 0 : 1;
}
