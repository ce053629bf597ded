#include "doctest.h"

#include <random>

#include "abelian.hpp"

using namespace squadk;

namespace {

IntMat from_cols_l(int rows, std::vector<std::vector<long>> cols) {
    IntMat m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols; ++j)
        for (int i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    return m;
}

}  // namespace

TEST_CASE("invariant factors") {
    CHECK(invariant_factors(FgAbGroup(1, from_cols_l(1, {{2}}))) ==
          InvariantFactors{0, {Int(2)}});
    CHECK(invariant_factors(FgAbGroup(2, from_cols_l(2, {{2, 0}, {0, 3}}))) ==
          InvariantFactors{0, {Int(6)}});
    CHECK(invariant_factors(FgAbGroup(1, IntMat(1, 0))) == InvariantFactors{1, {}});
    CHECK(invariant_factors(FgAbGroup(0, IntMat(0, 0))).is_trivial());
}

TEST_CASE("invariant factors under unimodular change") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> ent(-4, 4);
    for (int trial = 0; trial < 30; ++trial) {
        IntMat rel(3, 3);
        for (Int& x : rel.a) x = ent(rng);
        FgAbGroup g(3, rel);
        SnfResult f = smith_normal_form(rel);
        // u*rel*v presents an isomorphic group
        FgAbGroup h(3, mul(mul(f.u, rel), f.v));
        CHECK(invariant_factors(g) == invariant_factors(h));
    }
}

TEST_CASE("quotient") {
    FgAbGroup z(1, IntMat(1, 0));
    CHECK(invariant_factors(quotient(z, IntMat(1, 0))) == InvariantFactors{1, {}});
    CHECK(invariant_factors(quotient(z, from_cols_l(1, {{2}}))) == InvariantFactors{0, {Int(2)}});
    FgAbGroup z2(2, IntMat(2, 0));
    CHECK(invariant_factors(quotient(z2, from_cols_l(2, {{1, 1}}))) == InvariantFactors{1, {}});
}

TEST_CASE("quotient matches concatenated presentation") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> ent(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        IntMat rel(3, 2), extra(3, 2);
        for (Int& x : rel.a) x = ent(rng);
        for (Int& x : extra.a) x = ent(rng);
        FgAbGroup g(3, rel);
        CHECK(invariant_factors(quotient(g, extra)) ==
              invariant_factors(FgAbGroup(3, hstack(rel, extra))));
    }
}

TEST_CASE("hom kernel") {
    FgAbGroup z(1, IntMat(1, 0));
    // identity on Z
    CHECK(invariant_factors(hom_kernel(AbHom::identity(z)).group).is_trivial());
    // zero map Z -> Z
    AbHom zero(z, z, from_cols_l(1, {{0}}));
    CHECK(invariant_factors(hom_kernel(zero).group) == InvariantFactors{1, {}});
    // x2 : Z -> Z
    AbHom twice(z, z, from_cols_l(1, {{2}}));
    CHECK(invariant_factors(hom_kernel(twice).group).is_trivial());
    // reduction Z -> Z/2: kernel is Z, generated by 2
    FgAbGroup z2(1, from_cols_l(1, {{2}}));
    AbHom red(z, z2, from_cols_l(1, {{1}}));
    KernelResult k = hom_kernel(red);
    CHECK(invariant_factors(k.group) == InvariantFactors{1, {}});
    // inclusion image is the even sublattice
    bool has_two = false;
    for (int j = 0; j < k.inclusion.matrix.cols; ++j) {
        Int v = k.inclusion.matrix.at(0, j);
        if (v == 2 || v == -2) has_two = true;
        CHECK(v % 2 == 0);
    }
    CHECK(has_two);
}

TEST_CASE("element equality and canonical reps") {
    FgAbGroup g(2, from_cols_l(2, {{2, 0}, {0, 3}}));
    CHECK(g.equal({Int(1), Int(1)}, {Int(3), Int(4)}));
    CHECK(!g.equal({Int(1), Int(0)}, {Int(0), Int(0)}));
    CHECK(g.rep({Int(5), Int(7)}) == g.rep({Int(1), Int(1)}));
}

TEST_CASE("iso check") {
    FgAbGroup z(1, IntMat(1, 0));
    CHECK(is_isomorphism(AbHom::identity(z)));
    CHECK(!is_isomorphism(AbHom(z, z, from_cols_l(1, {{2}}))));
    FgAbGroup z2(1, from_cols_l(1, {{2}}));
    // Z/2 -> Z/2 by identity matrix
    CHECK(is_isomorphism(AbHom(z2, z2, from_cols_l(1, {{1}}))));
    CHECK(!is_isomorphism(AbHom(z2, z2, from_cols_l(1, {{2}}))));
}

TEST_CASE("quotient dimension mismatch") {
    FgAbGroup g(2, IntMat(2, 0));
    CHECK_THROWS_AS(quotient(g, IntMat(3, 1)), std::invalid_argument);
}
