#pragma once

#include <functional>
#include <set>
#include <sstream>

#include "chain.hpp"
#include "window.hpp"

namespace squadk::testutil {

/// The one-object window {0}.
inline WaldhausenWindow trivial_window() {
    WaldhausenWindow w;
    w.cat.objects = {"Z"};
    w.cat.morphisms = {{"id", 0, 0}};
    w.cat.identity = {0};
    w.cat.comp = {0};
    w.cat.build_index();
    w.zero = 0;
    w.is_cof = {1};
    w.is_we = {1};
    w.pushouts[{0, 0}] = PushoutRow{0, 0, 0, 0, 0};
    w.coproducts[{0, 0}] = CoproductRow{0, 0, 0, 0, 0, 0, 0};
    w.cylinders[0] = CylinderRow{0, 0, 0, 0, 0};
    return w;
}

/// Finite pointed sets S0, ..., Sk (card <= k+1), injections as cofibrations
/// and bijections as weak equivalences.  Elements are 0 (base), 1..i.
inline WaldhausenWindow pointed_window(int k) {
    WaldhausenWindow w;
    FiniteCategory& c = w.cat;
    for (int i = 0; i <= k; ++i) {
        std::ostringstream os;
        os << "S" << i;
        c.objects.push_back(os.str());
    }
    // morphism = vector of images of 1..src
    struct PM {
        int src, dst;
        std::vector<int> img;
    };
    std::vector<PM> maps;
    std::map<std::tuple<int, int, std::vector<int>>, int> idx;
    for (int a = 0; a <= k; ++a)
        for (int b = 0; b <= k; ++b) {
            std::vector<int> img(a, 0);
            std::function<void(int)> rec = [&](int pos) {
                if (pos == a) {
                    int id = static_cast<int>(maps.size());
                    idx[{a, b, img}] = id;
                    maps.push_back({a, b, img});
                    std::ostringstream os;
                    os << "p" << a << "_" << b << "_";
                    for (int v : img) os << v;
                    if (img.empty()) os << "e";
                    c.morphisms.push_back({os.str(), a, b});
                    return;
                }
                for (int v = 0; v <= b; ++v) {
                    img[pos] = v;
                    rec(pos + 1);
                }
            };
            rec(0);
        }
    const int m = static_cast<int>(maps.size());
    c.comp.assign(static_cast<size_t>(m) * m, -1);
    c.identity.assign(k + 1, -1);
    for (int i = 0; i < m; ++i) {
        bool is_id = maps[i].src == maps[i].dst;
        if (is_id)
            for (int x = 0; x < maps[i].src; ++x)
                if (maps[i].img[x] != x + 1) is_id = false;
        if (is_id) c.identity[maps[i].src] = i;
    }
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) {
            if (maps[f].dst != maps[g].src) continue;
            std::vector<int> img(maps[f].src);
            for (int x = 0; x < maps[f].src; ++x) {
                int v = maps[f].img[x];
                img[x] = v == 0 ? 0 : maps[g].img[v - 1];
            }
            c.set_compose(g, f, idx.at({maps[f].src, maps[g].dst, img}));
        }
    c.build_index();
    w.zero = 0;
    w.is_cof.assign(m, 0);
    w.is_we.assign(m, 0);
    for (int i = 0; i < m; ++i) {
        std::vector<char> seen(maps[i].dst + 1, 0);
        bool inj = true;
        for (int v : maps[i].img) {
            if (v == 0 || seen[v]) inj = false;
            if (v > 0) seen[v] = 1;
        }
        w.is_cof[i] = inj;
        w.is_we[i] = inj && maps[i].src == maps[i].dst;
    }

    // canonical pushout: glue classes, order X's elements first then B's
    auto make_pushout = [&](int f, int g) -> std::optional<PushoutRow> {
        const PM& pf = maps[f];
        const PM& pg = maps[g];
        int nb = pf.dst, nx = pg.dst;
        // union-find over 1..nb (B side) and nb+1..nb+nx (X side); 0 = base
        std::vector<int> up(nb + nx + 1);
        for (size_t i = 0; i < up.size(); ++i) up[i] = static_cast<int>(i);
        std::function<int(int)> find = [&](int x) {
            while (up[x] != x) x = up[x] = up[up[x]];
            return x;
        };
        auto unite = [&](int a, int b) { up[find(a)] = find(b); };
        for (int x = 0; x < pf.src; ++x) {
            int fb = pf.img[x];
            int gx = pg.img[x];
            unite(fb == 0 ? 0 : fb, gx == 0 ? 0 : nb + gx);
        }
        // order classes: X elements first, then B
        std::map<int, int> cls;
        int next = 0;
        int base = find(0);
        for (int x = 1; x <= nx; ++x) {
            int r = find(nb + x);
            if (r == base || cls.count(r)) continue;
            cls[r] = ++next;
        }
        for (int b = 1; b <= nb; ++b) {
            int r = find(b);
            if (r == base || cls.count(r)) continue;
            cls[r] = ++next;
        }
        if (next > k) return std::nullopt;
        std::vector<int> leg_b(nb), leg_x(nx);
        for (int b = 1; b <= nb; ++b) {
            int r = find(b);
            leg_b[b - 1] = r == base ? 0 : cls.at(r);
        }
        for (int x = 1; x <= nx; ++x) {
            int r = find(nb + x);
            leg_x[x - 1] = r == base ? 0 : cls.at(r);
        }
        return PushoutRow{f, g, next, idx.at({nb, next, leg_b}), idx.at({nx, next, leg_x})};
    };
    for (int f = 0; f < m; ++f) {
        if (!w.is_cof[f]) continue;
        int a = maps[f].src;
        // cofiber
        int tz = idx.at({a, 0, std::vector<int>(a, 0)});
        if (auto row = make_pushout(f, tz)) w.pushouts[{f, tz}] = *row;
        for (int g = 0; g < m; ++g) {
            if (maps[g].src != a || !w.is_we[g]) continue;
            if (auto row = make_pushout(f, g)) w.pushouts[{f, g}] = *row;
        }
    }
    for (int a = 0; a <= k; ++a)
        for (int b = 0; a + b <= k; ++b) {
            std::vector<int> i1(a), i2(b), p1(a + b), p2(a + b);
            for (int x = 0; x < a; ++x) i1[x] = x + 1;
            for (int x = 0; x < b; ++x) i2[x] = a + x + 1;
            for (int x = 0; x < a; ++x) p1[x] = x + 1;
            for (int x = 0; x < b; ++x) p2[a + x] = x + 1;
            CoproductRow row{a, b, a + b, idx.at({a, a + b, i1}), idx.at({b, a + b, i2}),
                             idx.at({a + b, a, p1}), idx.at({a + b, b, p2})};
            w.coproducts[{a, b}] = row;
            int tza = idx.at({a, 0, std::vector<int>(a, 0)});
            int tzb = idx.at({b, 0, std::vector<int>(b, 0)});
            if (auto r1 = make_pushout(row.i1, tza)) w.pushouts.insert({{row.i1, tza}, *r1});
            if (auto r2 = make_pushout(row.i2, tzb)) w.pushouts.insert({{row.i2, tzb}, *r2});
        }
    return w;
}

/// Keep only the composition closure of `gens` (identities always kept);
/// table rows touching dropped morphisms are removed.
inline WaldhausenWindow restrict_window(const WaldhausenWindow& w, std::vector<int> gens) {
    const FiniteCategory& c = w.cat;
    std::set<int> keep(gens.begin(), gens.end());
    for (int e : c.identity) keep.insert(e);
    for (;;) {
        bool grew = false;
        std::vector<int> cur(keep.begin(), keep.end());
        for (int g : cur)
            for (int f : cur)
                if (c.composable(g, f) && keep.insert(c.compose(g, f)).second) grew = true;
        if (!grew) break;
    }
    WaldhausenWindow r;
    std::map<int, int> remap;
    r.cat.objects = c.objects;
    for (int f = 0; f < c.n_morphisms(); ++f) {
        if (!keep.count(f)) continue;
        remap[f] = r.cat.n_morphisms();
        r.cat.morphisms.push_back(c.morphisms[f]);
    }
    const int M = r.cat.n_morphisms();
    r.cat.comp.assign(static_cast<size_t>(M) * M, -1);
    r.cat.identity.resize(c.n_objects());
    for (int a = 0; a < c.n_objects(); ++a) r.cat.identity[a] = remap.at(c.identity[a]);
    for (int g : keep)
        for (int f : keep)
            if (c.composable(g, f)) r.cat.set_compose(remap[g], remap[f], remap.at(c.compose(g, f)));
    r.cat.build_index();
    r.zero = w.zero;
    r.is_cof.assign(M, 0);
    r.is_we.assign(M, 0);
    for (int f : keep) {
        r.is_cof[remap[f]] = w.is_cof[f];
        r.is_we[remap[f]] = w.is_we[f];
    }
    for (const auto& [key, row] : w.pushouts) {
        if (!keep.count(row.cof) || !keep.count(row.along) || !keep.count(row.leg_b) ||
            !keep.count(row.leg_x))
            continue;
        r.pushouts[{remap[row.cof], remap[row.along]}] =
            PushoutRow{remap[row.cof], remap[row.along], row.obj, remap[row.leg_b],
                       remap[row.leg_x]};
    }
    for (const auto& [key, row] : w.coproducts) {
        if (!keep.count(row.i1) || !keep.count(row.i2) || !keep.count(row.p1) ||
            !keep.count(row.p2))
            continue;
        r.coproducts[key] = CoproductRow{row.a, row.b, row.obj, remap[row.i1], remap[row.i2],
                                         remap[row.p1], remap[row.p2]};
    }
    for (const auto& [a, row] : w.cylinders) {
        if (!keep.count(row.i0) || !keep.count(row.i1) || !keep.count(row.p)) continue;
        r.cylinders[a] = CylinderRow{a, row.obj, remap[row.i0], remap[row.i1], remap[row.p]};
    }
    return r;
}

/// Acyclic complexes 0, T = (F2 -1-> F2) and T2 = (F2^2 -id-> F2^2),
/// restricted to the subcategory generated by the split inclusion T -> T2
/// and its retraction; the inclusion's weak-equivalence flag is deliberately
/// dropped.  It is invertible in Ho(W), so check_saturation must report it.
inline std::pair<WaldhausenWindow, std::string> unsaturated_fixture() {
    int p = 2;
    BoundedComplex zero{-1, 1, {0, 0, 0}, {FpMat(0, 0), FpMat(0, 0)}};
    BoundedComplex t{-1, 1, {0, 1, 1}, {FpMat(1, 0), FpMat::identity(1)}};
    BoundedComplex t2{-1, 1, {0, 2, 2}, {FpMat(2, 0), FpMat::identity(2)}};
    ChainWindow cw = assemble_window(p, {zero, t, t2});
    const FiniteCategory& c = cw.window.cat;
    FpMat incl(2, 1), retr(1, 2);
    incl.at(0, 0) = 1;
    retr.at(0, 0) = 1;
    int m = -1, rr = -1;
    std::vector<int> zeros;
    for (int f = 0; f < c.n_morphisms(); ++f) {
        if (cw.complexes[c.morphisms[f].src] == t && cw.complexes[c.morphisms[f].dst] == t2 &&
            cw.maps[f].comp[1] == incl && cw.maps[f].comp[2] == incl)
            m = f;
        if (cw.complexes[c.morphisms[f].src] == t2 && cw.complexes[c.morphisms[f].dst] == t &&
            cw.maps[f].comp[1] == retr && cw.maps[f].comp[2] == retr)
            rr = f;
        if (c.morphisms[f].src == cw.window.zero || c.morphisms[f].dst == cw.window.zero)
            zeros.push_back(f);
    }
    if (m < 0 || rr < 0) throw WindowError("fixture: inclusion/retraction not found");
    std::vector<int> gens = zeros;
    gens.push_back(m);
    gens.push_back(rr);
    WaldhausenWindow w = restrict_window(cw.window, gens);
    w.pushouts.clear();
    w.coproducts.clear();
    w.cylinders.clear();
    int mm = w.cat.morphism_index(c.morphisms[m].name);
    w.is_we[mm] = 0;
    return {w, w.cat.morphisms[mm].name};
}

}  // namespace squadk::testutil
