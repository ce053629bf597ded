#include "doctest.h"

#include "homotopy.hpp"
#include "window_fixtures.hpp"

using namespace squadk;
using namespace squadk::testutil;

TEST_CASE("strict homotopy basics") {
    ChainWindow cw = build_window(2, 0, 1, 2);
    const WaldhausenWindow& w = cw.window;
    // f is strictly homotopic to itself via f p
    for (const auto& [a, row] : w.cylinders) {
        for (int b = 0; b < w.cat.n_objects(); ++b)
            for (int f : w.cat.hom(a, b)) {
                auto h = strictly_homotopic(w, f, f);
                CHECK(h.has_value());
            }
    }
}

TEST_CASE("zeta and fraction equality") {
    ChainWindow cw = build_window(2, 0, 1, 1);
    const WaldhausenWindow& w = cw.window;
    for (int f = 0; f < w.cat.n_morphisms() && f < 40; ++f) {
        Fraction zf = zeta(w, f);
        auto self = fractions_equal(w, zf, zf);
        CHECK(self.has_value());
    }
}

TEST_CASE("compose fractions: functoriality of zeta") {
    ChainWindow cw = build_window(2, 0, 1, 1);
    const WaldhausenWindow& w = cw.window;
    const FiniteCategory& c = w.cat;
    int checked = 0;
    for (int f = 0; f < c.n_morphisms() && checked < 25; ++f) {
        for (int g = 0; g < c.n_morphisms() && checked < 25; ++g) {
            if (!c.composable(g, f) || !w.is_cof[g]) continue;
            // with g a cofibration the pushout route applies directly
            if (!w.pushouts.count({g, c.identity[c.morphisms[f].dst]})) continue;
            Fraction comp = compose_fractions(w, zeta(w, f), zeta(w, g));
            Fraction direct = zeta(w, c.compose(g, f));
            auto witness = fractions_equal(w, comp, direct);
            CHECK(witness.has_value());
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("zeta inverse composes to identity") {
    ChainWindow cw = build_window(2, 0, 1, 1);
    const WaldhausenWindow& w = cw.window;
    const FiniteCategory& c = w.cat;
    int checked = 0;
    for (int f = 0; f < c.n_morphisms() && checked < 10; ++f) {
        if (!w.is_we[f] || !w.is_cof[f]) continue;
        int a = c.morphisms[f].src;
        // zeta(f)^{-1} zeta(f) = (f, f) ~ identity fraction
        Fraction round{f, f};
        auto witness = fractions_equal(w, round, Fraction{c.identity[a], c.identity[a]});
        CHECK(witness.has_value());
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("ho iso classes on the trivial window") {
    WaldhausenWindow w = trivial_window();
    HoIsoTable t = enumerate_ho_isos(w);
    CHECK(t.classes.size() == 1);
}

TEST_CASE("ho iso enumeration on a chain window") {
    ChainWindow cw = build_window(2, 0, 1, 2);
    const WaldhausenWindow& w = cw.window;
    HoIsoTable t = enumerate_ho_isos(w);
    // identity classes exist
    for (int a = 0; a < w.cat.n_objects(); ++a) {
        int cls = t.find(Fraction{w.cat.identity[a], w.cat.identity[a]});
        CHECK(cls >= 0);
    }
    // every weak equivalence appears through zeta
    for (int f = 0; f < w.cat.n_morphisms(); ++f)
        if (w.is_we[f]) CHECK(t.find(zeta(w, f)) >= 0);
    // a Ho-iso not arising from any isomorphism of the window: the
    // quasi-isomorphism T -> 0 for the acyclic complex T
    int acyclic = -1;
    for (int i = 0; i < static_cast<int>(cw.complexes.size()); ++i) {
        if (cw.complexes[i].total_dim() == 2 && i != w.zero) {
            std::vector<int> h = homology_ranks(cw.p, cw.complexes[i]);
            bool zero_h = true;
            for (int v : h) zero_h &= v == 0;
            if (zero_h) acyclic = i;
        }
    }
    REQUIRE(acyclic >= 0);
    int tz = w.to_zero(acyclic);
    CHECK(w.is_we[tz]);
    CHECK(!w.iso(tz));
    CHECK(t.find(zeta(w, tz)) >= 0);
}

TEST_CASE("saturation: generated window clean, fixture detected") {
    ChainWindow cw = build_window(2, 0, 1, 1);
    Report rep = check_saturation(cw.window);
    CHECK(rep.ok());

    auto [bad, name] = unsaturated_fixture();
    Report rep2 = check_saturation(bad);
    REQUIRE(!rep2.ok());
    CHECK(rep2.violations.front().find(name) != std::string::npos);
}

TEST_CASE("theorem el on the trivial window") {
    WaldhausenWindow w = trivial_window();
    Report rep = verify_theorem_el(w);
    for (const std::string& v : rep.violations) MESSAGE(v);
    CHECK(rep.ok());
}

TEST_CASE("theorem el on the smallest chain window") {
    ChainWindow cw = build_window(2, 0, 0, 1);
    Report rep = verify_theorem_el(cw.window);
    for (const std::string& v : rep.violations) MESSAGE(v);
    CHECK(rep.ok());
}

TEST_CASE("lemma la on a cylinder-bearing window") {
    ChainWindow cw = build_window(2, 0, 1, 2);
    Report rep = verify_lemma_la(cw.window);
    for (const std::string& v : rep.violations) MESSAGE(v);
    CHECK(rep.ok());
}

TEST_CASE("compose through the mapping cylinder") {
    ChainWindow cw = build_window(2, 0, 1, 2);
    const WaldhausenWindow& w = cw.window;
    const FiniteCategory& c = w.cat;
    int checked = 0;
    for (const auto& [b_obj, row] : w.cylinders) {
        for (int t = 0; t < c.n_objects(); ++t)
            for (int g : c.hom(b_obj, t)) {
                if (w.is_cof[g]) continue;  // force the factorization path
                for (int s = 0; s < c.n_objects() && checked < 8; ++s)
                    for (int f : c.hom(s, b_obj)) {
                        Fraction comp = compose_fractions(w, zeta(w, f), zeta(w, g));
                        Fraction direct = zeta(w, c.compose(g, f));
                        auto witness = fractions_equal(w, comp, direct);
                        CHECK(witness.has_value());
                        if (++checked >= 8) break;
                    }
            }
    }
    CHECK(checked > 0);
}

TEST_CASE("compose_fractions reports missing closure data") {
    auto [w, name] = unsaturated_fixture();  // tables were cleared
    const FiniteCategory& c = w.cat;
    int f = c.morphism_index(name);
    REQUIRE(f >= 0);
    CHECK_THROWS_WITH_AS(compose_fractions(w, zeta(w, f), zeta(w, c.identity[c.morphisms[f].dst])),
                         doctest::Contains("window-not-closed"), WindowError);
}

TEST_CASE("witness logs are printable") {
    ChainWindow cw = build_window(2, 0, 0, 1);
    const WaldhausenWindow& w = cw.window;
    HoIsoTable t = enumerate_ho_isos(w);
    REQUIRE(!t.classes.empty());
    for (const HoIso& iso : t.classes) {
        std::string left = describe(w, iso.left_identity);
        std::string right = describe(w, iso.right_identity);
        CHECK(left.find("Z=") != std::string::npos);
        CHECK(right.find("g=") != std::string::npos);
    }
}

TEST_CASE("associativity of fraction composition up to witness") {
    ChainWindow cw = build_window(2, 0, 0, 1);
    const WaldhausenWindow& w = cw.window;
    const FiniteCategory& c = w.cat;
    int checked = 0;
    for (int f = 0; f < c.n_morphisms() && checked < 6; ++f)
        for (int g = 0; g < c.n_morphisms() && checked < 6; ++g) {
            if (!c.composable(g, f) || !w.is_cof[g]) continue;
            for (int h = 0; h < c.n_morphisms() && checked < 6; ++h) {
                if (!c.composable(h, g) || !w.is_cof[h]) continue;
                Fraction a = zeta(w, f), b = zeta(w, g), cc = zeta(w, h);
                Fraction left = compose_fractions(w, compose_fractions(w, a, b), cc);
                Fraction right = compose_fractions(w, a, compose_fractions(w, b, cc));
                auto witness = fractions_equal(w, left, right);
                CHECK(witness.has_value());
                ++checked;
            }
        }
    CHECK(checked > 0);
}

TEST_CASE("strict homotopy matches the chain-homotopy solver") {
    // H : IA -> B with H i0 = f, H i1 = g corresponds exactly to a chain
    // homotopy s with g - f = d s + s d; solve for s independently
    ChainWindow cw = build_window(2, 0, 1, 2);
    const WaldhausenWindow& w = cw.window;
    const FiniteCategory& c = w.cat;
    int agree = 0, homotopic_found = 0;
    for (const auto& [a_obj, row] : w.cylinders) {
        const BoundedComplex& A = cw.complexes[a_obj];
        for (int b_obj = 0; b_obj < c.n_objects(); ++b_obj) {
            const BoundedComplex& B = cw.complexes[b_obj];
            const std::vector<int>& h = c.hom(a_obj, b_obj);
            for (size_t i = 0; i < h.size(); ++i)
                for (size_t j = 0; j < h.size(); ++j) {
                    const ChainMap& f = cw.maps[h[i]];
                    const ChainMap& g = cw.maps[h[j]];
                    // assemble the linear system for s: A^{k+1} -> B^k
                    std::vector<int> var_off(A.len() + 1, 0);
                    for (int k = 0; k + 1 < A.len(); ++k)
                        var_off[k + 1] = var_off[k] + B.dims[k] * A.dims[k + 1];
                    int nvars = var_off[A.len() - 1 < 0 ? 0 : A.len() - 1];
                    if (A.len() >= 1) nvars = var_off[A.len() - 1];
                    std::vector<std::vector<int>> rows;
                    std::vector<int> rhs;
                    for (int k = 0; k < A.len(); ++k)
                        for (int r = 0; r < B.dims[k]; ++r)
                            for (int col = 0; col < A.dims[k]; ++col) {
                                std::vector<int> eq(nvars, 0);
                                // d_B s_k contribution: s_{k}: A^{k+1} -> B^k missing here;
                                // equation at degree k: (d_B s_k... ) use s_k: A^{k+1}->B^k and
                                // s_{k-1}: A^k -> B^{k-1}: g-f = d_B s_{k-1} + s_k d_A
                                if (k > 0) {
                                    // d_B[k-1] * s_{k-1}, s_{k-1} vars at var_off[k-1]
                                    for (int t = 0; t < B.dims[k - 1]; ++t) {
                                        int coeff = B.d[k - 1].at(r, t);
                                        if (coeff)
                                            eq[var_off[k - 1] + t * A.dims[k] + col] =
                                                (eq[var_off[k - 1] + t * A.dims[k] + col] + coeff) % cw.p;
                                    }
                                }
                                if (k + 1 < A.len()) {
                                    // s_k * d_A[k]
                                    for (int t = 0; t < A.dims[k + 1]; ++t) {
                                        int coeff = A.d[k].at(t, col);
                                        if (coeff)
                                            eq[var_off[k] + r * A.dims[k + 1] + t] =
                                                (eq[var_off[k] + r * A.dims[k + 1] + t] + coeff) % cw.p;
                                    }
                                }
                                rows.push_back(std::move(eq));
                                rhs.push_back(((g.comp[k].at(r, col) - f.comp[k].at(r, col)) % cw.p +
                                               cw.p) % cw.p);
                            }
                    FpMat sys(static_cast<int>(rows.size()), nvars);
                    for (size_t r2 = 0; r2 < rows.size(); ++r2)
                        for (int c2 = 0; c2 < nvars; ++c2) sys.at(static_cast<int>(r2), c2) = rows[r2][c2];
                    bool solver = fp_solve(cw.p, sys, rhs).has_value();
                    bool window = strictly_homotopic(w, h[i], h[j]).has_value();
                    CHECK(solver == window);
                    if (solver == window) ++agree;
                    if (window && i != j) ++homotopic_found;
                }
        }
    }
    CHECK(agree > 0);
    CHECK(homotopic_found > 0);  // genuinely distinct homotopic maps exist
}

TEST_CASE("fractions with different homology classes have no witness") {
    ChainWindow cw = build_window(3, 0, 0, 1);
    const WaldhausenWindow& w = cw.window;
    const FiniteCategory& c = w.cat;
    // F3 in degree 0: scalars 1 and 2 are distinct automorphisms in Ho
    int obj = -1;
    for (int i = 0; i < static_cast<int>(cw.complexes.size()); ++i)
        if (cw.complexes[i].total_dim() == 1) obj = i;
    REQUIRE(obj >= 0);
    std::vector<int> autos;
    for (int f : c.hom(obj, obj))
        if (w.is_we[f] && f != c.identity[obj]) autos.push_back(f);
    REQUIRE(!autos.empty());
    auto witness = fractions_equal(w, zeta(w, autos[0]), zeta(w, c.identity[obj]));
    CHECK(!witness.has_value());
}

TEST_CASE("present_DDstar refuses unsaturated windows") {
    auto [bad, name] = unsaturated_fixture();
    CHECK_THROWS_WITH_AS(present_DDstar(bad), doctest::Contains("not saturated"), WindowError);
}

TEST_CASE("saturation and DD* on windows without cylinders") {
    WaldhausenWindow w = pointed_window(2);
    CHECK(check_saturation(w).ok());
    DDstarPresentation dd = present_DDstar(w);
    CHECK(invariant_factors(pi0(*dd.pres)) == InvariantFactors{1, {}});
    CHECK(enumerate_ho_isos(trivial_window()).classes.size() == 1);
    CHECK_THROWS_AS(enumerate_ho_isos(w, 0), WindowError);
}

TEST_CASE("DD* degenerate identities hold via equal") {
    ChainWindow cw = build_window(2, 0, 0, 1);
    DDstarPresentation dd = present_DDstar(cw.window);
    const WaldhausenWindow& w = cw.window;
    // [1_A] = 0 for every identity class
    for (int a = 0; a < w.cat.n_objects(); ++a) {
        int cls = dd.table.find(Fraction{w.cat.identity[a], w.cat.identity[a]});
        REQUIRE(cls >= 0);
        CHECK(is_identity1(*dd.pres, eval1(*dd.pres, Expr1::gen1(dd.ho_gen[cls]))));
    }
    // [beta alpha] = [beta] + [alpha] for zeta-composable weak equivalences
    const FiniteCategory& c = w.cat;
    int checked = 0;
    for (int f = 0; f < c.n_morphisms() && checked < 12; ++f) {
        if (!w.is_we[f]) continue;
        for (int b = 0; b < c.n_objects(); ++b)
            for (int g : c.hom(c.morphisms[f].dst, b)) {
                if (!w.is_we[g]) continue;
                int alpha = dd.table.find(zeta(w, f));
                int beta = dd.table.find(zeta(w, g));
                int gamma = dd.table.find(zeta(w, c.compose(g, f)));
                REQUIRE(alpha >= 0);
                REQUIRE(beta >= 0);
                REQUIRE(gamma >= 0);
                C1Element lhs = eval1(*dd.pres, Expr1::gen1(dd.ho_gen[gamma]));
                C1Element rhs = eval1(*dd.pres, Expr1::sum({Expr1::gen1(dd.ho_gen[beta]),
                                                            Expr1::gen1(dd.ho_gen[alpha])}));
                CHECK(equal1(*dd.pres, lhs, rhs));
                ++checked;
            }
    }
    CHECK(checked > 0);
}

TEST_CASE("theorem el where all weak equivalences are isomorphisms") {
    // pointed sets: Ho(W) = W, so DD* and D* coincide through mu up to the
    // zeta renaming of generators
    WaldhausenWindow w = pointed_window(2);
    TheoremElResult el = verify_theorem_el_full(build_comparison(w));
    for (const std::string& v : el.report.violations) MESSAGE(v);
    CHECK(el.report.ok());
    CHECK(el.mu0_iso);
    CHECK(el.mu1_iso);
}
