#include "doctest.h"

#include <random>

#include "chain.hpp"
#include "window_fixtures.hpp"

using namespace squadk;
using namespace squadk::testutil;

namespace {

BoundedComplex concentrated(int deg, int dim) {
    BoundedComplex c;
    c.lo = deg;
    c.hi = deg;
    c.dims = {dim};
    return c;
}

BoundedComplex pad_to(const BoundedComplex& c, int lo, int hi) {
    BoundedComplex r;
    r.lo = lo;
    r.hi = hi;
    r.dims.resize(hi - lo + 1);
    for (int deg = lo; deg <= hi; ++deg) r.dims[deg - lo] = c.dim(deg);
    r.d.resize(hi - lo);
    for (int k = 0; k + 1 <= hi - lo; ++k) {
        int deg = lo + k;
        if (deg >= c.lo && deg < c.hi)
            r.d[k] = c.d[deg - c.lo];
        else
            r.d[k] = FpMat(r.dims[k + 1], r.dims[k]);
    }
    return r;
}

}  // namespace

TEST_CASE("homology of small complexes") {
    BoundedComplex z{0, 1, {0, 0}, {FpMat(0, 0)}};
    CHECK(homology_ranks(2, z) == std::vector<int>{0, 0});
    BoundedComplex t{0, 1, {1, 1}, {FpMat::identity(1)}};
    CHECK(homology_ranks(2, t) == std::vector<int>{0, 0});
    BoundedComplex s{0, 1, {1, 1}, {FpMat(1, 1)}};
    CHECK(homology_ranks(2, s) == std::vector<int>{1, 1});
}

TEST_CASE("quasi-isomorphism detection") {
    BoundedComplex a = concentrated(0, 1);
    ChainMap id{{FpMat::identity(1)}};
    CHECK(is_quasi_iso(2, a, a, id));

    BoundedComplex t{0, 1, {1, 1}, {FpMat::identity(1)}};
    ChainMap zmap{{FpMat(1, 1), FpMat(1, 1)}};
    CHECK(is_quasi_iso(2, t, t, zmap));  // acyclic to acyclic

    ChainMap z1{{FpMat(1, 1)}};
    CHECK(!is_quasi_iso(2, a, a, z1));
}

TEST_CASE("cylinder contract on random complexes") {
    std::mt19937_64 rng(11);
    for (int p : {2, 3}) {
        for (int trial = 0; trial < 30; ++trial) {
            std::uniform_int_distribution<int> dim(0, 3), ent(0, p - 1);
            BoundedComplex a{0, 1, {dim(rng), dim(rng)}, {}};
            FpMat d(a.dims[1], a.dims[0]);
            for (int& v : d.a) v = ent(rng);
            a.d = {d};
            CylinderComplex cc = cylinder_complex(p, a);
            CHECK(complex_valid(p, cc.ia));  // d^2 = 0 on IA
            BoundedComplex apad = pad_to(a, cc.ia.lo, cc.ia.hi);
            CHECK(chain_map_valid(p, apad, cc.ia, cc.i0));
            CHECK(chain_map_valid(p, apad, cc.ia, cc.i1));
            CHECK(chain_map_valid(p, cc.ia, apad, cc.p));
            for (int k = 0; k < apad.len(); ++k) {
                CHECK(fp_mul(p, cc.p.comp[k], cc.i0.comp[k]) == FpMat::identity(apad.dims[k]));
                CHECK(fp_mul(p, cc.p.comp[k], cc.i1.comp[k]) == FpMat::identity(apad.dims[k]));
            }
            for (int k = 0; k < apad.len(); ++k) {
                FpMat joint(cc.ia.dims[k], 2 * apad.dims[k]);
                for (int i = 0; i < cc.ia.dims[k]; ++i)
                    for (int j = 0; j < apad.dims[k]; ++j) {
                        joint.at(i, j) = cc.i0.comp[k].at(i, j);
                        joint.at(i, apad.dims[k] + j) = cc.i1.comp[k].at(i, j);
                    }
                CHECK(fp_rank(p, joint) == 2 * apad.dims[k]);
            }
            CHECK(is_quasi_iso(p, cc.ia, apad, cc.p));
        }
    }
}

TEST_CASE("cylinder of a one-dimensional complex") {
    BoundedComplex a = concentrated(0, 1);
    CylinderComplex cc = cylinder_complex(2, a);
    CHECK(cc.ia.dim(-1) == 1);
    CHECK(cc.ia.dim(0) == 2);
    FpMat d = cc.ia.d[0];
    CHECK(d.rows == 2);
    CHECK(d.cols == 1);
    CHECK(d.at(0, 0) == 1);
    CHECK(d.at(1, 0) == 1);
    std::vector<int> h = homology_ranks(2, cc.ia);
    CHECK(h == std::vector<int>{0, 1});  // H^{-1} = 0, H^0 = F2
}

TEST_CASE("pushout along mono") {
    int p = 2;
    BoundedComplex x{0, 1, {2, 1}, {FpMat(1, 2)}};
    x.d[0].at(0, 0) = 1;
    ChainMap idx{{FpMat::identity(2), FpMat::identity(1)}};
    ChainPushout po = pushout_along_mono(p, x, x, x, idx, idx);
    CHECK(po.obj == x);

    BoundedComplex zero{0, 1, {0, 0}, {FpMat(0, 0)}};
    ChainMap incl{{FpMat(2, 0), FpMat(1, 0)}};
    ChainMap tozero{{FpMat(0, 0), FpMat(0, 0)}};
    ChainPushout cof = pushout_along_mono(p, zero, x, zero, incl, tozero);
    CHECK(cof.obj == x);
    CHECK(cof.leg_b.comp[0] == FpMat::identity(2));

    ChainPushout cof2 = pushout_along_mono(p, x, x, zero, idx, tozero);
    CHECK(cof2.obj.total_dim() == 0);

    // lower leg stays levelwise injective
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> ent(0, p - 1);
    for (int trial = 0; trial < 30; ++trial) {
        BoundedComplex a = concentrated(0, 1), b = concentrated(0, 2);
        FpMat f(2, 1);
        f.at(trial % 2, 0) = 1;
        BoundedComplex xx = concentrated(0, 1);
        FpMat g(1, 1);
        g.at(0, 0) = ent(rng);
        ChainPushout r = pushout_along_mono(p, a, b, xx, ChainMap{{f}}, ChainMap{{g}});
        CHECK(fp_rank(p, r.leg_x.comp[0]) == 1);
    }
}

TEST_CASE("build_window smallest case") {
    ChainWindow cw = build_window(2, 0, 0, 1);
    int core = 0;
    for (const BoundedComplex& c : cw.complexes)
        if (c.total_dim() <= 1) ++core;
    CHECK(core == 2);  // 0 and F2
    Report rep = validate_window(cw.window);
    for (const std::string& v : rep.violations) MESSAGE(v);
    CHECK(rep.ok());
}

TEST_CASE("generated windows self-validate") {
    for (int p : {2, 3}) {
        ChainWindow cw = build_window(p, 0, 1, 1);
        Report rep = validate_window(cw.window);
        for (const std::string& v : rep.violations) MESSAGE(v);
        CHECK(rep.ok());
        for (const std::string& i : rep.info) CHECK(i.find("2-out-of-3") == std::string::npos);
    }
}

TEST_CASE("unsaturated fixture is otherwise valid") {
    auto [w, name] = unsaturated_fixture();
    Report rep = validate_window(w);
    for (const std::string& v : rep.violations) MESSAGE(v);
    CHECK(rep.ok());
}
