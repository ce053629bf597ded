#include "squadk.h"

#include <cstring>
#include <sstream>

#include "chain.hpp"
#include "homotopy.hpp"
#include "sqpres_io.hpp"
#include "wcat_io.hpp"

using namespace squadk;

struct sqk_window {
    WaldhausenWindow w;
};
struct sqk_presentation {
    SquadPresentation p;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(malloc(s.size() + 1));
    memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_err(char** err, const std::string& msg) {
    if (err) *err = dup_string(msg);
}

std::string report_text(const Report& rep) {
    std::ostringstream os;
    for (const std::string& v : rep.violations) os << "V " << v << "\n";
    for (const std::string& i : rep.info) os << "I " << i << "\n";
    return os.str();
}

template <typename F>
sqk_status guarded(char** err, F&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        set_err(err, e.what());
        return SQK_ERR_PARSE;
    } catch (const std::exception& e) {
        set_err(err, e.what());
        return SQK_ERR_INVALID;
    }
}

std::string group_text(const InvariantFactors& f) { return f.text(); }

}  // namespace

extern "C" {

void sqk_string_free(char* s) { free(s); }

const char* sqk_version(void) { return "squadk 1.0.0"; }

sqk_status sqk_window_parse(const char* text, sqk_window** out, char** err) {
    if (!text || !out) return SQK_ERR_INVALID;
    return guarded(err, [&] {
        auto* w = new sqk_window{parse_wcat(text)};
        *out = w;
        return SQK_OK;
    });
}

sqk_status sqk_window_load(const char* path, sqk_window** out, char** err) {
    if (!path || !out) return SQK_ERR_INVALID;
    return guarded(err, [&] {
        auto* w = new sqk_window{load_wcat_file(path)};
        *out = w;
        return SQK_OK;
    });
}

sqk_status sqk_window_serialize(const sqk_window* w, char** text) {
    if (!w || !text) return SQK_ERR_INVALID;
    return guarded(nullptr, [&] {
        *text = dup_string(to_wcat(w->w));
        return SQK_OK;
    });
}

void sqk_window_free(sqk_window* w) { delete w; }

sqk_status sqk_chain_window_build(int p, int lo, int hi, int max_dim, sqk_window** out,
                                  char** err) {
    if (!out) return SQK_ERR_INVALID;
    return guarded(err, [&] {
        if (p < 2 || hi < lo || max_dim < 0) throw WindowError("bad chain window parameters");
        for (int q = 2; q < p; ++q)
            if (p % q == 0) throw WindowError("p must be prime");
        auto* w = new sqk_window{build_window(p, lo, hi, max_dim).window};
        *out = w;
        return SQK_OK;
    });
}

sqk_status sqk_window_validate(const sqk_window* w, long budget, char** report) {
    if (!w || !report) return SQK_ERR_INVALID;
    return guarded(nullptr, [&] {
        Report rep = validate_window(w->w, budget > 0 ? budget : 1000000);
        *report = dup_string(report_text(rep));
        return rep.ok() ? SQK_OK : SQK_FINDINGS;
    });
}

sqk_status sqk_window_check_saturation(const sqk_window* w, long budget, char** report) {
    if (!w || !report) return SQK_ERR_INVALID;
    return guarded(nullptr, [&] {
        Report rep = check_saturation(w->w, budget > 0 ? budget : 1000000);
        *report = dup_string(report_text(rep));
        return rep.ok() ? SQK_OK : SQK_FINDINGS;
    });
}

sqk_status sqk_window_verify_lemma_la(const sqk_window* w, long budget, char** report) {
    if (!w || !report) return SQK_ERR_INVALID;
    return guarded(nullptr, [&] {
        Report rep = verify_lemma_la(w->w, PresentOptions{budget > 0 ? budget : 30000});
        *report = dup_string(report_text(rep));
        return rep.ok() ? SQK_OK : SQK_FINDINGS;
    });
}

sqk_status sqk_present(const sqk_window* w, char flavor, long budget, sqk_presentation** out,
                       char** err) {
    if (!w || !out) return SQK_ERR_INVALID;
    return guarded(err, [&] {
        long b = budget > 0 ? budget : 30000;
        if (flavor == 'w') {
            WindowPresentation d = present_Dstar(w->w, PresentOptions{b});
            *out = new sqk_presentation{*d.pres};
        } else if (flavor == 'd') {
            DDstarPresentation dd = present_DDstar(w->w, DDstarOptions{1, b});
            *out = new sqk_presentation{*dd.pres};
        } else {
            throw SquadError("unknown flavor (use 'w' or 'd')");
        }
        return SQK_OK;
    });
}

sqk_status sqk_presentation_parse(const char* text, sqk_presentation** out, char** err) {
    if (!text || !out) return SQK_ERR_INVALID;
    return guarded(err, [&] {
        *out = new sqk_presentation{parse_sqpres(text)};
        return SQK_OK;
    });
}

sqk_status sqk_presentation_load(const char* path, sqk_presentation** out, char** err) {
    if (!path || !out) return SQK_ERR_INVALID;
    return guarded(err, [&] {
        *out = new sqk_presentation{load_sqpres_file(path)};
        return SQK_OK;
    });
}

sqk_status sqk_presentation_serialize(const sqk_presentation* p, char** text) {
    if (!p || !text) return SQK_ERR_INVALID;
    return guarded(nullptr, [&] {
        *text = dup_string(to_sqpres(p->p));
        return SQK_OK;
    });
}

void sqk_presentation_free(sqk_presentation* p) { delete p; }

sqk_status sqk_homotopy(const sqk_presentation* p, char** report, char** err) {
    if (!p || !report) return SQK_ERR_INVALID;
    return guarded(err, [&] {
        std::ostringstream os;
        FgAbGroup p0 = pi0(p->p);
        Pi1Result p1 = pi1(p->p);
        AbHom k = k_invariant(p->p);
        os << "pi0 = " << group_text(invariant_factors(p0)) << "\n";
        os << "pi1 = " << group_text(invariant_factors(p1.group)) << "\n";
        bool nonzero = false;
        for (int j = 0; j < k.matrix.cols; ++j)
            if (!k.codomain.is_trivial_class(k.matrix.col(j))) nonzero = true;
        os << "k = " << (nonzero ? "nonzero" : "zero") << "\n";
        os << "k.matrix = " << k.matrix.rows << " " << k.matrix.cols;
        for (const Int& v : k.matrix.a) os << " " << v;
        os << "\n";
        *report = dup_string(os.str());
        return SQK_OK;
    });
}

sqk_status sqk_compare(const sqk_window* w, long budget, char** report, char** err) {
    if (!w || !report) return SQK_ERR_INVALID;
    return guarded(err, [&] {
        ComparisonData cd = build_comparison(w->w, DDstarOptions{1, budget > 0 ? budget : 30000});
        TheoremElResult el = verify_theorem_el_full(cd);
        const Report& rep = el.report;
        std::ostringstream os;
        os << "mu0 = " << (el.mu0_iso ? "iso" : "not-iso") << "\n";
        os << "mu1 = " << (el.mu1_iso ? "iso" : "not-iso") << "\n";
        os << "pi0 = " << group_text(invariant_factors(pi0(*cd.d.pres))) << "\n";
        os << "pi1 = " << group_text(invariant_factors(pi1(*cd.d.pres).group)) << "\n";
        os << "theorem_el = " << (rep.ok() ? "PASS" : "FAIL") << "\n";
        for (const std::string& v : rep.violations) os << "V " << v << "\n";
        *report = dup_string(os.str());
        return rep.ok() ? SQK_OK : SQK_FINDINGS;
    });
}

sqk_status sqk_snf(const char* matrix_text, char** result, char** err) {
    if (!matrix_text || !result) return SQK_ERR_INVALID;
    return guarded(err, [&] {
        std::istringstream is(matrix_text);
        int rows, cols;
        if (!(is >> rows >> cols) || rows < 0 || cols < 0)
            throw ParseError("snf: expected 'rows cols' header");
        IntMat m(rows, cols);
        for (Int& v : m.a) {
            std::string tok;
            if (!(is >> tok)) throw ParseError("snf: not enough matrix entries");
            v = Int(tok);
        }
        SnfResult f = smith_normal_form(m);
        std::string out = to_string(f.u) + to_string(f.s) + to_string(f.v);
        *result = dup_string(out);
        return SQK_OK;
    });
}

}  // extern "C"
