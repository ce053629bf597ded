// squadk command line: windows in, presentations and verdicts out.
// Talks to the core exclusively through the public C API.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "squadk.h"

namespace {

struct StringGuard {
    char* s = nullptr;
    ~StringGuard() { sqk_string_free(s); }
};

int fail_io(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

long env_budget(long cli_budget) {
    if (cli_budget > 0) return cli_budget;
    const char* env = getenv("SQUADK_BUDGET");
    if (env && *env) {
        long v = atol(env);
        if (v > 0) return v;
    }
    return 0;  // library default
}

bool write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return true;
    }
    std::ofstream out(path);
    if (!out) return false;
    out << text;
    return true;
}

// "key = value" lines into a map, preserving report lines
std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        size_t sep = line.find(" = ");
        if (sep != std::string::npos) kv[line.substr(0, sep)] = line.substr(sep + 3);
    }
    return kv;
}

int print_report(const std::string& rep, bool kv_mode, const char* what) {
    if (kv_mode) {
        int violations = 0;
        std::istringstream is(rep);
        std::string line;
        std::ostringstream os;
        while (std::getline(is, line)) {
            if (line.rfind("V ", 0) == 0) {
                os << "violation = " << line.substr(2) << "\n";
                ++violations;
            } else if (line.rfind("I ", 0) == 0) {
                os << "info = " << line.substr(2) << "\n";
            }
        }
        std::cout << what << ".violations = " << violations << "\n" << os.str();
        return violations == 0 ? 0 : 1;
    }
    int violations = 0;
    std::istringstream is(rep);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("V ", 0) == 0) {
            std::cout << "violation: " << line.substr(2) << "\n";
            ++violations;
        } else if (line.rfind("I ", 0) == 0) {
            std::cout << "note: " << line.substr(2) << "\n";
        }
    }
    if (violations == 0) std::cout << what << ": OK\n";
    return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"squadk: stable quadratic modules from Waldhausen-category windows"};
    app.require_subcommand(1);
    std::string report_mode = "text";
    long budget = 0;
    app.add_option("--report", report_mode, "report format: text or kv")
        ->check(CLI::IsMember({"text", "kv"}));
    app.add_option("--budget", budget, "enumeration budget (or env SQUADK_BUDGET)");

    std::string in_path, out_path, flavor = "w", degrees = "0:1";
    int prime = 2, max_dim = 1;
    bool flag_pi0 = false, flag_pi1 = false, flag_k = false, lemma_la = false;

    CLI::App* c_validate = app.add_subcommand("validate", "check the window axioms");
    c_validate->add_option("file", in_path, "window file (.wcat)")->required();

    CLI::App* c_present = app.add_subcommand("present", "emit a presentation (.sqpres)");
    c_present->add_option("file", in_path, "window file (.wcat)")->required();
    c_present->add_option("--flavor", flavor, "w = D*W, d = DD*W")
        ->check(CLI::IsMember({"w", "d"}));
    c_present->add_option("-o,--output", out_path, "output path (default stdout)");

    CLI::App* c_homotopy = app.add_subcommand("homotopy", "pi0, pi1 and the k-invariant");
    c_homotopy->add_option("file", in_path, "presentation file (.sqpres)")->required();
    c_homotopy->add_flag("--pi0", flag_pi0);
    c_homotopy->add_flag("--pi1", flag_pi1);
    c_homotopy->add_flag("--k", flag_k);

    CLI::App* c_compare = app.add_subcommand("compare", "build D*, DD*, mu, nu and verify");
    c_compare->add_option("file", in_path, "window file (.wcat)")->required();

    CLI::App* c_verify = app.add_subcommand("verify", "window-level verifications");
    c_verify->add_option("file", in_path, "window file (.wcat)")->required();
    c_verify->add_flag("--lemma-la", lemma_la, "homotopic weak equivalences coincide in D*_1");

    CLI::App* c_gen = app.add_subcommand("gen-chain", "generate a chain-complex window");
    c_gen->add_option("--p", prime, "field characteristic (prime)")->required();
    c_gen->add_option("--degrees", degrees, "LO:HI degree range")->required();
    c_gen->add_option("--max-dim", max_dim, "total dimension cap")->required();
    c_gen->add_option("-o,--output", out_path, "output path (default stdout)");

    CLI::App* c_snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
    c_snf->add_option("file", in_path, "matrix file: 'rows cols' then entries")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit with 2
    }
    const bool kv = report_mode == "kv";
    budget = env_budget(budget);

    if (c_snf->parsed()) {
        std::ifstream in(in_path);
        if (!in) return fail_io("cannot open " + in_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        StringGuard out, err;
        if (sqk_snf(buf.str().c_str(), &out.s, &err.s) != SQK_OK)
            return fail_io(err.s ? err.s : "snf failed");
        std::cout << out.s;
        return 0;
    }

    if (c_gen->parsed()) {
        int lo, hi;
        if (sscanf(degrees.c_str(), "%d:%d", &lo, &hi) != 2)
            return fail_io("bad --degrees, expected LO:HI");
        sqk_window* w = nullptr;
        StringGuard err;
        if (sqk_chain_window_build(prime, lo, hi, max_dim, &w, &err.s) != SQK_OK)
            return fail_io(err.s ? err.s : "generation failed");
        StringGuard text;
        sqk_window_serialize(w, &text.s);
        sqk_window_free(w);
        if (!write_output(out_path, text.s)) return fail_io("cannot write " + out_path);
        return 0;
    }

    // remaining commands read a window or presentation file
    if (c_homotopy->parsed()) {
        sqk_presentation* p = nullptr;
        StringGuard err;
        sqk_status st = sqk_presentation_load(in_path.c_str(), &p, &err.s);
        if (st != SQK_OK) return fail_io(err.s ? err.s : "cannot load presentation");
        StringGuard rep, herr;
        st = sqk_homotopy(p, &rep.s, &herr.s);
        sqk_presentation_free(p);
        if (st != SQK_OK) return fail_io(herr.s ? herr.s : "homotopy computation failed");
        if (kv) {
            std::cout << rep.s;
            return 0;
        }
        auto kvs = parse_kv(rep.s);
        bool all = !flag_pi0 && !flag_pi1 && !flag_k;
        std::vector<std::string> parts;
        if (all || flag_pi0) parts.push_back("pi0: " + kvs["pi0"]);
        if (all || flag_pi1) parts.push_back("pi1: " + kvs["pi1"]);
        if (all || flag_k) parts.push_back("k: " + kvs["k"]);
        for (size_t i = 0; i < parts.size(); ++i)
            std::cout << parts[i] << (i + 1 < parts.size() ? "; " : "\n");
        return 0;
    }

    sqk_window* w = nullptr;
    StringGuard err;
    if (sqk_window_load(in_path.c_str(), &w, &err.s) != SQK_OK)
        return fail_io(err.s ? err.s : "cannot load window");

    int rc = 2;
    if (c_validate->parsed()) {
        StringGuard rep;
        sqk_status st = sqk_window_validate(w, budget, &rep.s);
        rc = st == SQK_OK || st == SQK_FINDINGS ? print_report(rep.s, kv, "validate") : 2;
    } else if (c_present->parsed()) {
        sqk_presentation* p = nullptr;
        StringGuard perr;
        sqk_status st = sqk_present(w, flavor[0], budget, &p, &perr.s);
        if (st != SQK_OK) {
            sqk_window_free(w);
            return fail_io(perr.s ? perr.s : "presentation failed");
        }
        StringGuard text;
        sqk_presentation_serialize(p, &text.s);
        sqk_presentation_free(p);
        rc = write_output(out_path, text.s) ? 0 : 2;
    } else if (c_compare->parsed()) {
        StringGuard rep, cerr;
        sqk_status st = sqk_compare(w, budget, &rep.s, &cerr.s);
        if (st == SQK_OK || st == SQK_FINDINGS) {
            if (kv) {
                std::cout << rep.s;
            } else {
                auto kvs = parse_kv(rep.s);
                std::cout << "mu0: " << kvs["mu0"] << "; mu1: " << kvs["mu1"]
                          << "; theorem-el: " << kvs["theorem_el"] << "\n";
                std::istringstream is(rep.s);
                std::string line;
                while (std::getline(is, line))
                    if (line.rfind("V ", 0) == 0) std::cout << "violation: " << line.substr(2) << "\n";
            }
            rc = st == SQK_OK ? 0 : 1;
        } else {
            sqk_window_free(w);
            return fail_io(cerr.s ? cerr.s : "comparison failed");
        }
    } else if (c_verify->parsed()) {
        if (!lemma_la) {
            sqk_window_free(w);
            return fail_io("verify: choose a check (--lemma-la)");
        }
        StringGuard rep;
        sqk_status st = sqk_window_verify_lemma_la(w, budget, &rep.s);
        rc = st == SQK_OK || st == SQK_FINDINGS ? print_report(rep.s, kv, "lemma-la") : 2;
    }
    sqk_window_free(w);
    return rc;
}
