/* squadk -- stable quadratic modules from Waldhausen-category windows.
 *
 * C interface over the C++ core: opaque handles, integer status codes,
 * text in and out.  Every char* output is owned by the library and must be
 * released with sqk_string_free; every handle has a matching _free.
 * Functions are thread-safe on distinct handles.
 */

#ifndef SQUADK_H
#define SQUADK_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    SQK_OK = 0,
    SQK_ERR_IO = 1,
    SQK_ERR_PARSE = 2,
    SQK_ERR_INVALID = 3, /* bad arguments or ill-formed data */
    SQK_FINDINGS = 4     /* operation ran, report lists violations */
} sqk_status;

typedef struct sqk_window sqk_window;
typedef struct sqk_presentation sqk_presentation;

void sqk_string_free(char* s);
const char* sqk_version(void);

/* ---- windows ---------------------------------------------------------- */

sqk_status sqk_window_parse(const char* text, sqk_window** out, char** err);
sqk_status sqk_window_load(const char* path, sqk_window** out, char** err);
sqk_status sqk_window_serialize(const sqk_window* w, char** text);
void sqk_window_free(sqk_window* w);

/* All complexes over F_p on [lo, hi] with total dimension <= max_dim,
 * plus cylinder objects where they fit. */
sqk_status sqk_chain_window_build(int p, int lo, int hi, int max_dim, sqk_window** out,
                                  char** err);

/* Validation report: one finding per line, "V <text>" for violations and
 * "I <text>" for informational flags.  Returns SQK_FINDINGS when any
 * violation is present. */
sqk_status sqk_window_validate(const sqk_window* w, long budget, char** report);

/* Saturation check, same report conventions. */
sqk_status sqk_window_check_saturation(const sqk_window* w, long budget, char** report);

/* Homotopic pairs of weak equivalences represent equal classes in D*_1. */
sqk_status sqk_window_verify_lemma_la(const sqk_window* w, long budget, char** report);

/* ---- presentations ----------------------------------------------------- */

/* flavor: 'w' for D*W (weak equivalences), 'd' for DD*W (Ho-isomorphisms). */
sqk_status sqk_present(const sqk_window* w, char flavor, long budget, sqk_presentation** out,
                       char** err);

sqk_status sqk_presentation_parse(const char* text, sqk_presentation** out, char** err);
sqk_status sqk_presentation_load(const char* path, sqk_presentation** out, char** err);
sqk_status sqk_presentation_serialize(const sqk_presentation* p, char** text);
void sqk_presentation_free(sqk_presentation* p);

/* Key-value report: pi0/pi1 invariant factors and the k-invariant matrix.
 * Lines: pi0 = ..., pi1 = ..., k = zero|nonzero, k.matrix = r c e11 e12 ... */
sqk_status sqk_homotopy(const sqk_presentation* p, char** report, char** err);

/* ---- comparison -------------------------------------------------------- */

/* Builds D*W, DD*W, the comparison morphism and its inverse, verifies
 * mu nu = 1, nu mu = 1 and that the induced maps are isomorphisms.
 * Report lines: mu0 = iso|not-iso, mu1 = iso|not-iso,
 * theorem_el = PASS|FAIL, then one line per violation. */
sqk_status sqk_compare(const sqk_window* w, long budget, char** report, char** err);

/* ---- integer linear algebra -------------------------------------------- */

/* Input: "rows cols" then rows*cols integers, whitespace separated.
 * Output: U, S, V in the same format with U*M*V = S in Smith normal form. */
sqk_status sqk_snf(const char* matrix_text, char** result, char** err);

#ifdef __cplusplus
}
#endif

#endif /* SQUADK_H */
