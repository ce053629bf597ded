// Exercises the shared-library C interface end to end.

#include <cassert>
#include <cstdio>
#include <cstring>
#include <string>

#include "squadk.h"

static int failures = 0;

#define CHECK(cond)                                                  \
    do {                                                             \
        if (!(cond)) {                                               \
            ++failures;                                              \
            fprintf(stderr, "FAILED %s:%d: %s\n", __FILE__, __LINE__, #cond); \
        }                                                            \
    } while (0)

int main() {
    CHECK(sqk_version() != nullptr);

    // snf round trip
    {
        char *out = nullptr, *err = nullptr;
        CHECK(sqk_snf("2 2\n2 4\n6 8\n", &out, &err) == SQK_OK);
        CHECK(out && std::string(out).find("2 0") != std::string::npos);
        sqk_string_free(out);
        sqk_string_free(err);
        out = err = nullptr;
        CHECK(sqk_snf("junk", &out, &err) == SQK_ERR_PARSE);
        CHECK(err != nullptr);
        sqk_string_free(err);
    }

    // presentation: parse, homotopy, serialize
    {
        const char* text = "gens0:\n  e\ngens1:\nrels0:\nrels1:\n";
        sqk_presentation* p = nullptr;
        char* err = nullptr;
        CHECK(sqk_presentation_parse(text, &p, &err) == SQK_OK);
        char* rep = nullptr;
        CHECK(sqk_homotopy(p, &rep, &err) == SQK_OK);
        std::string r = rep;
        CHECK(r.find("pi0 = Z\n") != std::string::npos);
        CHECK(r.find("pi1 = Z/2") != std::string::npos);
        CHECK(r.find("k = nonzero") != std::string::npos);
        sqk_string_free(rep);
        char* ser = nullptr;
        CHECK(sqk_presentation_serialize(p, &ser) == SQK_OK);
        sqk_presentation* q = nullptr;
        CHECK(sqk_presentation_parse(ser, &q, &err) == SQK_OK);
        char* ser2 = nullptr;
        CHECK(sqk_presentation_serialize(q, &ser2) == SQK_OK);
        CHECK(strcmp(ser, ser2) == 0);
        sqk_string_free(ser);
        sqk_string_free(ser2);
        sqk_presentation_free(p);
        sqk_presentation_free(q);
    }

    // window: generate, validate, serialize, present, compare
    {
        sqk_window* w = nullptr;
        char* err = nullptr;
        CHECK(sqk_chain_window_build(2, 0, 1, 1, &w, &err) == SQK_OK);
        char* rep = nullptr;
        CHECK(sqk_window_validate(w, 0, &rep) == SQK_OK);
        sqk_string_free(rep);
        rep = nullptr;
        CHECK(sqk_window_check_saturation(w, 0, &rep) == SQK_OK);
        sqk_string_free(rep);
        rep = nullptr;
        CHECK(sqk_window_verify_lemma_la(w, 0, &rep) == SQK_OK);
        sqk_string_free(rep);

        char* text = nullptr;
        CHECK(sqk_window_serialize(w, &text) == SQK_OK);
        sqk_window* w2 = nullptr;
        CHECK(sqk_window_parse(text, &w2, &err) == SQK_OK);
        char* text2 = nullptr;
        CHECK(sqk_window_serialize(w2, &text2) == SQK_OK);
        CHECK(strcmp(text, text2) == 0);
        sqk_string_free(text);
        sqk_string_free(text2);
        sqk_window_free(w2);

        sqk_presentation* d = nullptr;
        CHECK(sqk_present(w, 'w', 0, &d, &err) == SQK_OK);
        char* hrep = nullptr;
        CHECK(sqk_homotopy(d, &hrep, &err) == SQK_OK);
        CHECK(std::string(hrep).find("pi0 = Z") != std::string::npos);
        sqk_string_free(hrep);
        sqk_presentation_free(d);

        char* crep = nullptr;
        CHECK(sqk_compare(w, 0, &crep, &err) == SQK_OK);
        std::string c = crep;
        CHECK(c.find("mu0 = iso") != std::string::npos);
        CHECK(c.find("mu1 = iso") != std::string::npos);
        CHECK(c.find("theorem_el = PASS") != std::string::npos);
        sqk_string_free(crep);
        sqk_window_free(w);
    }

    // error paths
    {
        sqk_window* w = nullptr;
        char* err = nullptr;
        CHECK(sqk_window_load("/nonexistent/path.wcat", &w, &err) != SQK_OK);
        sqk_string_free(err);
        err = nullptr;
        CHECK(sqk_chain_window_build(4, 0, 1, 1, &w, &err) == SQK_ERR_INVALID);
        sqk_string_free(err);
    }

    if (failures == 0) printf("capi_tests: all checks passed\n");
    return failures;
}
