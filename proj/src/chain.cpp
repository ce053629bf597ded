#include "chain.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace squadk {

namespace {

int fp_inv(int p, int a) {
    int r = 1, b = a % p, e = p - 2;  // Fermat
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// row echelon in place; returns pivot columns
std::vector<int> fp_echelon(int p, FpMat& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int pr = -1;
        for (int i = row; i < m.rows; ++i)
            if (m.at(i, col) != 0) { pr = i; break; }
        if (pr < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(row, j), m.at(pr, j));
        int inv = fp_inv(p, m.at(row, col));
        for (int j = 0; j < m.cols; ++j) m.at(row, j) = m.at(row, j) * inv % p;
        for (int i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            int c = m.at(i, col);
            for (int j = 0; j < m.cols; ++j)
                m.at(i, j) = ((m.at(i, j) - c * m.at(row, j)) % p + p) % p;
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

FpMat FpMat::identity(int n) {
    FpMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FpMat fp_mul(int p, const FpMat& x, const FpMat& y) {
    FpMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            int v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j)
                r.at(i, j) = (r.at(i, j) + v * y.at(k, j)) % p;
        }
    return r;
}

int fp_rank(int p, FpMat m) { return static_cast<int>(fp_echelon(p, m).size()); }

FpMat fp_kernel(int p, const FpMat& m) {
    FpMat e = m;
    std::vector<int> pivots = fp_echelon(p, e);
    std::vector<char> is_pivot(m.cols, 0);
    for (int c : pivots) is_pivot[c] = 1;
    FpMat k(m.cols, m.cols - static_cast<int>(pivots.size()));
    int col = 0;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        k.at(free, col) = 1;
        for (int r = 0; r < static_cast<int>(pivots.size()); ++r)
            k.at(pivots[r], col) = (p - e.at(r, free)) % p;
        ++col;
    }
    return k;
}

std::optional<std::vector<int>> fp_solve(int p, const FpMat& m, const std::vector<int>& v) {
    FpMat aug(m.rows, m.cols + 1);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = ((v[i] % p) + p) % p;
    }
    std::vector<int> pivots = fp_echelon(p, aug);
    std::vector<int> x(m.cols, 0);
    for (int r = 0; r < static_cast<int>(pivots.size()); ++r) {
        if (pivots[r] == m.cols) return std::nullopt;  // inconsistent
        x[pivots[r]] = aug.at(r, m.cols);
    }
    return x;
}

int BoundedComplex::total_dim() const {
    int t = 0;
    for (int d : dims) t += d;
    return t;
}

bool complex_valid(int p, const BoundedComplex& a) {
    if (static_cast<int>(a.dims.size()) != a.len() || a.len() < 0) return false;
    if (static_cast<int>(a.d.size()) != std::max(0, a.len() - 1)) return false;
    for (int k = 0; k + 1 < a.len(); ++k)
        if (a.d[k].rows != a.dims[k + 1] || a.d[k].cols != a.dims[k]) return false;
    for (int k = 0; k + 2 < a.len(); ++k) {
        FpMat dd = fp_mul(p, a.d[k + 1], a.d[k]);
        for (int v : dd.a)
            if (v != 0) return false;
    }
    return true;
}

bool chain_map_valid(int p, const BoundedComplex& a, const BoundedComplex& b, const ChainMap& f) {
    if (a.lo != b.lo || a.hi != b.hi) return false;
    if (static_cast<int>(f.comp.size()) != a.len()) return false;
    for (int k = 0; k < a.len(); ++k)
        if (f.comp[k].rows != b.dims[k] || f.comp[k].cols != a.dims[k]) return false;
    for (int k = 0; k + 1 < a.len(); ++k)
        if (fp_mul(p, b.d[k], f.comp[k]) != fp_mul(p, f.comp[k + 1], a.d[k])) return false;
    return true;
}

std::vector<int> homology_ranks(int p, const BoundedComplex& a) {
    std::vector<int> h(a.len());
    for (int k = 0; k < a.len(); ++k) {
        int ker = k + 1 < a.len() ? a.dims[k] - fp_rank(p, a.d[k]) : a.dims[k];
        int im = k > 0 ? fp_rank(p, a.d[k - 1]) : 0;
        h[k] = ker - im;
    }
    return h;
}

bool is_levelwise_mono(int p, const BoundedComplex& a, const ChainMap& f) {
    for (int k = 0; k < a.len(); ++k)
        if (fp_rank(p, f.comp[k]) != a.dims[k]) return false;
    return true;
}

namespace {

// basis of ker(d^k) completed over im(d^{k-1}): returns (cycleBasis, imageBasis)
std::pair<FpMat, FpMat> cycle_space(int p, const BoundedComplex& a, int k) {
    FpMat ker = k + 1 < a.len() ? fp_kernel(p, a.d[k]) : FpMat::identity(a.dims[k]);
    FpMat im(a.dims[k], k > 0 ? a.d[k - 1].cols : 0);
    if (k > 0) im = a.d[k - 1];
    return {ker, im};
}

// coordinates of v in H^k: reduce modulo image, then express in a chosen
// complement basis; returns empty when H^k = 0
std::optional<std::vector<int>> h_coords(int p, const FpMat& ker, const FpMat& im,
                                         const std::vector<int>& v, const std::vector<int>& compl_cols) {
    // solve [im | ker(compl_cols)] x = v; coordinates are the ker-part
    int n = static_cast<int>(v.size());
    FpMat m(n, im.cols + static_cast<int>(compl_cols.size()));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < im.cols; ++j) m.at(i, j) = im.at(i, j);
        for (size_t j = 0; j < compl_cols.size(); ++j)
            m.at(i, im.cols + static_cast<int>(j)) = ker.at(i, compl_cols[j]);
    }
    auto x = fp_solve(p, m, v);
    if (!x) return std::nullopt;
    return std::vector<int>(x->begin() + im.cols, x->end());
}

// columns of ker forming a complement of im inside the cycle space
std::vector<int> complement_columns(int p, const FpMat& ker, const FpMat& im) {
    std::vector<int> chosen;
    FpMat acc(ker.rows, im.cols + ker.cols);
    for (int i = 0; i < ker.rows; ++i)
        for (int j = 0; j < im.cols; ++j) acc.at(i, j) = im.at(i, j);
    int rank = fp_rank(p, [&] {
        FpMat m(ker.rows, im.cols);
        for (int i = 0; i < ker.rows; ++i)
            for (int j = 0; j < im.cols; ++j) m.at(i, j) = im.at(i, j);
        return m;
    }());
    int cols = im.cols;
    for (int j = 0; j < ker.cols; ++j) {
        for (int i = 0; i < ker.rows; ++i) acc.at(i, cols) = ker.at(i, j);
        FpMat test(ker.rows, cols + 1);
        for (int i = 0; i < ker.rows; ++i)
            for (int c = 0; c <= cols; ++c) test.at(i, c) = acc.at(i, c);
        int r = fp_rank(p, test);
        if (r > rank) {
            rank = r;
            chosen.push_back(j);
            ++cols;
        }
    }
    return chosen;
}

}  // namespace

bool is_quasi_iso(int p, const BoundedComplex& a, const BoundedComplex& b, const ChainMap& f) {
    for (int k = 0; k < a.len(); ++k) {
        auto [ker_a, im_a] = cycle_space(p, a, k);
        auto [ker_b, im_b] = cycle_space(p, b, k);
        std::vector<int> ca = complement_columns(p, ker_a, im_a);
        std::vector<int> cb = complement_columns(p, ker_b, im_b);
        if (ca.size() != cb.size()) return false;
        if (ca.empty()) continue;
        // matrix of H(f) in the chosen complements
        FpMat hf(static_cast<int>(cb.size()), static_cast<int>(ca.size()));
        for (size_t j = 0; j < ca.size(); ++j) {
            std::vector<int> v(a.dims[k]);
            for (int i = 0; i < a.dims[k]; ++i) v[i] = ker_a.at(i, ca[j]);
            std::vector<int> fv(b.dims[k], 0);
            for (int i = 0; i < b.dims[k]; ++i) {
                int s = 0;
                for (int c = 0; c < a.dims[k]; ++c) s = (s + f.comp[k].at(i, c) * v[c]) % p;
                fv[i] = s;
            }
            auto coords = h_coords(p, ker_b, im_b, fv, cb);
            if (!coords) return false;  // image not a cycle: cannot happen for chain maps
            for (size_t i = 0; i < cb.size(); ++i) hf.at(static_cast<int>(i), static_cast<int>(j)) = (*coords)[i];
        }
        if (fp_rank(p, hf) != static_cast<int>(ca.size())) return false;
    }
    return true;
}

CylinderComplex cylinder_complex(int p, const BoundedComplex& a) {
    CylinderComplex r;
    BoundedComplex& ia = r.ia;
    ia.lo = a.lo - 1;
    ia.hi = a.hi;
    ia.dims.resize(ia.len());
    for (int deg = ia.lo; deg <= ia.hi; ++deg)
        ia.dims[deg - ia.lo] = 2 * a.dim(deg) + a.dim(deg + 1);
    ia.d.resize(std::max(0, ia.len() - 1));
    auto ad = [&](int deg) -> FpMat {
        if (deg < a.lo || deg >= a.hi) return FpMat(a.dim(deg + 1), a.dim(deg));
        return a.d[deg - a.lo];
    };
    // block layout per degree n: A^n | A^{n+1} | A^n
    for (int deg = ia.lo; deg < ia.hi; ++deg) {
        int an = a.dim(deg), an1 = a.dim(deg + 1), an2 = a.dim(deg + 2);
        FpMat m(ia.dims[deg + 1 - ia.lo], ia.dims[deg - ia.lo]);
        FpMat d0 = ad(deg), d1 = ad(deg + 1);
        for (int i = 0; i < an1; ++i) {
            for (int j = 0; j < an; ++j) m.at(i, j) = d0.at(i, j);               // d
            for (int j = 0; j < an1; ++j) m.at(i, an + j) = (i == j) ? p - 1 : 0;  // -1
        }
        for (int i = 0; i < an2; ++i)
            for (int j = 0; j < an1; ++j) m.at(an1 + i, an + j) = (p - d1.at(i, j)) % p;  // -d
        for (int i = 0; i < an1; ++i) {
            for (int j = 0; j < an1; ++j) m.at(an2 + an1 + i, an + j) = (i == j) ? 1 : 0;  // +1
            for (int j = 0; j < an; ++j) m.at(an2 + an1 + i, j) = 0;
        }
        for (int i = 0; i < an1; ++i)
            for (int j = 0; j < an; ++j) m.at(an2 + an1 + i, an + an1 + j) = d0.at(i, j);  // d
        ia.d[deg - ia.lo] = std::move(m);
    }
    // i0, i1, p over the cylinder's (extended) range
    r.i0.comp.resize(ia.len());
    r.i1.comp.resize(ia.len());
    r.p.comp.resize(ia.len());
    for (int deg = ia.lo; deg <= ia.hi; ++deg) {
        int an = a.dim(deg), an1 = a.dim(deg + 1);
        FpMat mi0(ia.dims[deg - ia.lo], an), mi1(ia.dims[deg - ia.lo], an),
            mp(an, ia.dims[deg - ia.lo]);
        for (int i = 0; i < an; ++i) {
            mi0.at(i, i) = 1;
            mi1.at(an + an1 + i, i) = 1;
            mp.at(i, i) = 1;
            mp.at(i, an + an1 + i) = 1;
        }
        r.i0.comp[deg - ia.lo] = std::move(mi0);
        r.i1.comp[deg - ia.lo] = std::move(mi1);
        r.p.comp[deg - ia.lo] = std::move(mp);
    }
    return r;
}

ChainPushout pushout_along_mono(int p, const BoundedComplex& a, const BoundedComplex& b,
                                const BoundedComplex& x, const ChainMap& f, const ChainMap& g) {
    ChainPushout r;
    int len = b.len();
    r.obj.lo = b.lo;
    r.obj.hi = b.hi;
    r.obj.dims.resize(len);
    std::vector<FpMat> proj(len), sect(len);
    for (int k = 0; k < len; ++k) {
        int nb = b.dims[k], nx = x.dims[k], na = a.dims[k];
        // subspace S = span{(f(v), -g(v))}
        FpMat s(nb + nx, na);
        for (int j = 0; j < na; ++j) {
            for (int i = 0; i < nb; ++i) s.at(i, j) = f.comp[k].at(i, j);
            for (int i = 0; i < nx; ++i) s.at(nb + i, j) = (p - g.comp[k].at(i, j)) % p;
        }
        FpMat e = s;
        std::vector<int> pivots_cols = fp_echelon(p, e);
        if (static_cast<int>(pivots_cols.size()) != na)
            throw WindowError("pushout_along_mono: cofibration is not levelwise injective");
        // pivot rows of the column space: echelonize the transpose
        FpMat st(na, nb + nx);
        for (int i = 0; i < nb + nx; ++i)
            for (int j = 0; j < na; ++j) st.at(j, i) = s.at(i, j);
        FpMat ste = st;
        std::vector<int> prows = fp_echelon(p, ste);  // pivot rows of S
        std::vector<char> is_p(nb + nx, 0);
        for (int c : prows) is_p[c] = 1;
        int q = nb + nx - na;
        r.obj.dims[k] = q;
        // projection: subtract the S-combination matching the pivot rows
        FpMat sp(na, na);
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < na; ++j) sp.at(i, j) = s.at(prows[i], j);
        // invert sp
        FpMat aug(na, 2 * na);
        for (int i = 0; i < na; ++i) {
            for (int j = 0; j < na; ++j) aug.at(i, j) = sp.at(i, j);
            aug.at(i, na + i) = 1;
        }
        fp_echelon(p, aug);
        FpMat spinv(na, na);
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < na; ++j) spinv.at(i, j) = aug.at(i, na + j);
        FpMat pi(q, nb + nx);
        {
            // full projection I - S * spinv * restrict(prows), rows restricted to non-pivots
            FpMat sel(na, nb + nx);
            for (int i = 0; i < na; ++i) sel.at(i, prows[i]) = 1;
            FpMat corr = fp_mul(p, s, fp_mul(p, spinv, sel));
            int row = 0;
            for (int i = 0; i < nb + nx; ++i) {
                if (is_p[i]) continue;
                for (int j = 0; j < nb + nx; ++j)
                    pi.at(row, j) = (((i == j ? 1 : 0) - corr.at(i, j)) % p + p) % p;
                ++row;
            }
        }
        proj[k] = std::move(pi);
        FpMat sc(nb + nx, q);
        {
            int row = 0;
            for (int i = 0; i < nb + nx; ++i) {
                if (is_p[i]) continue;
                sc.at(i, row) = 1;
                ++row;
            }
        }
        sect[k] = std::move(sc);
    }
    r.obj.d.resize(std::max(0, len - 1));
    for (int k = 0; k + 1 < len; ++k) {
        int nb = b.dims[k], nx = x.dims[k];
        int nb1 = b.dims[k + 1], nx1 = x.dims[k + 1];
        FpMat dsum(nb1 + nx1, nb + nx);
        for (int i = 0; i < nb1; ++i)
            for (int j = 0; j < nb; ++j) dsum.at(i, j) = b.d[k].at(i, j);
        for (int i = 0; i < nx1; ++i)
            for (int j = 0; j < nx; ++j) dsum.at(nb1 + i, nb + j) = x.d[k].at(i, j);
        r.obj.d[k] = fp_mul(p, proj[k + 1], fp_mul(p, dsum, sect[k]));
    }
    r.leg_b.comp.resize(len);
    r.leg_x.comp.resize(len);
    for (int k = 0; k < len; ++k) {
        int nb = b.dims[k], nx = x.dims[k];
        FpMat ib(nb + nx, nb), ix(nb + nx, nx);
        for (int i = 0; i < nb; ++i) ib.at(i, i) = 1;
        for (int i = 0; i < nx; ++i) ix.at(nb + i, i) = 1;
        r.leg_b.comp[k] = fp_mul(p, proj[k], ib);
        r.leg_x.comp[k] = fp_mul(p, proj[k], ix);
    }
    return r;
}

// ---------------------------------------------------------------------------

namespace {

// enumerate all matrices of the given shape over F_p
void all_matrices(int p, int rows, int cols, std::vector<FpMat>& out) {
    long total = 1;
    for (int i = 0; i < rows * cols; ++i) total *= p;
    for (long code = 0; code < total; ++code) {
        FpMat m(rows, cols);
        long c = code;
        for (int i = 0; i < rows * cols; ++i) {
            m.a[i] = static_cast<int>(c % p);
            c /= p;
        }
        out.push_back(std::move(m));
    }
}

void enumerate_dims(int len, int max_total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == len) {
        out.push_back(cur);
        return;
    }
    int used = 0;
    for (int v : cur) used += v;
    for (int v = 0; v <= max_total - used; ++v) {
        cur.push_back(v);
        enumerate_dims(len, max_total, cur, out);
        cur.pop_back();
    }
}

}  // namespace

ChainWindow assemble_window(int p, std::vector<BoundedComplex> complexes,
                            const std::vector<std::pair<int, std::optional<CylinderComplex>>>&
                                cylinder_rows) {
    ChainWindow cw;
    cw.p = p;
    if (complexes.empty()) throw WindowError("assemble_window: no objects");
    int alo = complexes[0].lo, ahi = complexes[0].hi;
    int alen = ahi - alo + 1;
    cw.lo = alo + 1;
    cw.hi = ahi;
    WaldhausenWindow& w = cw.window;

    std::map<BoundedComplex, int> obj_of;
    for (const BoundedComplex& c : complexes) {
        if (c.lo != alo || c.hi != ahi)
            throw WindowError("assemble_window: objects must share a degree range");
        if (!complex_valid(p, c)) throw WindowError("assemble_window: invalid complex");
        if (obj_of.count(c)) throw WindowError("assemble_window: duplicate object");
        obj_of.emplace(c, static_cast<int>(cw.complexes.size()));
        cw.complexes.push_back(c);
    }

    const int n_obj = static_cast<int>(cw.complexes.size());
    FiniteCategory& cat = w.cat;
    for (int i = 0; i < n_obj; ++i) {
        std::ostringstream os;
        os << "o" << i;
        cat.objects.push_back(os.str());
    }
    std::map<std::tuple<int, int, ChainMap>, int> mor_of;
    auto add_map = [&](int src, int dst, const ChainMap& f) -> int {
        auto key = std::make_tuple(src, dst, f);
        auto it = mor_of.find(key);
        if (it != mor_of.end()) return it->second;
        int idx = static_cast<int>(cat.morphisms.size());
        std::ostringstream os;
        os << "m" << idx;
        cat.morphisms.push_back({os.str(), src, dst});
        cw.maps.push_back(f);
        mor_of.emplace(key, idx);
        return idx;
    };
    for (int i = 0; i < n_obj; ++i)
        for (int j = 0; j < n_obj; ++j) {
            const BoundedComplex& a = cw.complexes[i];
            const BoundedComplex& b = cw.complexes[j];
            std::vector<std::vector<FpMat>> per_deg(alen);
            for (int k = 0; k < alen; ++k) all_matrices(p, b.dims[k], a.dims[k], per_deg[k]);
            std::vector<FpMat> cur(alen);
            std::function<void(int)> rec = [&](int k) {
                if (k == alen) {
                    add_map(i, j, ChainMap{cur});
                    return;
                }
                for (const FpMat& m : per_deg[k]) {
                    cur[k] = m;
                    if (k > 0 &&
                        fp_mul(p, b.d[k - 1], cur[k - 1]) != fp_mul(p, cur[k], a.d[k - 1]))
                        continue;
                    rec(k + 1);
                }
            };
            rec(0);
        }

    const int M = cat.n_morphisms();
    cat.comp.assign(static_cast<size_t>(M) * M, -1);
    cat.identity.assign(n_obj, -1);
    for (int i = 0; i < n_obj; ++i) {
        ChainMap idm;
        idm.comp.resize(alen);
        for (int k = 0; k < alen; ++k) idm.comp[k] = FpMat::identity(cw.complexes[i].dims[k]);
        cat.identity[i] = mor_of.at(std::make_tuple(i, i, idm));
    }
    for (int g = 0; g < M; ++g)
        for (int f = 0; f < M; ++f) {
            if (cat.morphisms[f].dst != cat.morphisms[g].src) continue;
            ChainMap h;
            h.comp.resize(alen);
            for (int k = 0; k < alen; ++k)
                h.comp[k] = fp_mul(p, cw.maps[g].comp[k], cw.maps[f].comp[k]);
            cat.set_compose(g, f,
                            mor_of.at(std::make_tuple(cat.morphisms[f].src,
                                                      cat.morphisms[g].dst, h)));
        }
    cat.build_index();

    w.is_cof.assign(M, 0);
    w.is_we.assign(M, 0);
    for (int f = 0; f < M; ++f) {
        const BoundedComplex& a = cw.complexes[cat.morphisms[f].src];
        const BoundedComplex& b = cw.complexes[cat.morphisms[f].dst];
        w.is_cof[f] = is_levelwise_mono(p, a, cw.maps[f]);
        w.is_we[f] = is_quasi_iso(p, a, b, cw.maps[f]);
    }
    BoundedComplex zeroc;
    zeroc.lo = alo;
    zeroc.hi = ahi;
    zeroc.dims.assign(alen, 0);
    zeroc.d.assign(alen - 1, FpMat(0, 0));
    auto zit = obj_of.find(zeroc);
    if (zit == obj_of.end()) throw WindowError("assemble_window: zero complex missing");
    w.zero = zit->second;

    auto find_map = [&](int src, int dst, const ChainMap& f) -> int {
        auto it = mor_of.find(std::make_tuple(src, dst, f));
        return it == mor_of.end() ? -1 : it->second;
    };

    auto record_pushout = [&](int cof, int along) {
        if (w.pushouts.count({cof, along})) return;
        int ai = cat.morphisms[cof].src;
        int bi = cat.morphisms[cof].dst;
        int xi = cat.morphisms[along].dst;
        ChainPushout po = pushout_along_mono(p, cw.complexes[ai], cw.complexes[bi],
                                             cw.complexes[xi], cw.maps[cof], cw.maps[along]);
        auto it = obj_of.find(po.obj);
        if (it == obj_of.end()) {
            w.notes.push_back("pushout omitted for (" + cat.morphisms[cof].name + ", " +
                              cat.morphisms[along].name + "): object outside the window");
            return;
        }
        int qi = it->second;
        int lb = find_map(bi, qi, po.leg_b);
        int lx = find_map(xi, qi, po.leg_x);
        if (lb < 0 || lx < 0) throw WindowError("assemble_window: pushout legs not enumerated");
        w.pushouts[{cof, along}] = PushoutRow{cof, along, qi, lb, lx};
    };
    for (int f = 0; f < M; ++f) {
        if (!w.is_cof[f]) continue;
        int a = cat.morphisms[f].src;
        record_pushout(f, w.to_zero(a));
        for (int b = 0; b < n_obj; ++b)
            for (int g : cat.hom(a, b))
                if (w.is_we[g]) record_pushout(f, g);
    }

    for (int i = 0; i < n_obj; ++i)
        for (int j = 0; j < n_obj; ++j) {
            const BoundedComplex& a = cw.complexes[i];
            const BoundedComplex& b = cw.complexes[j];
            BoundedComplex c;
            c.lo = alo;
            c.hi = ahi;
            c.dims.resize(alen);
            c.d.resize(alen - 1);
            for (int k = 0; k < alen; ++k) c.dims[k] = a.dims[k] + b.dims[k];
            for (int k = 0; k + 1 < alen; ++k) {
                FpMat m(c.dims[k + 1], c.dims[k]);
                for (int r = 0; r < a.dims[k + 1]; ++r)
                    for (int s2 = 0; s2 < a.dims[k]; ++s2) m.at(r, s2) = a.d[k].at(r, s2);
                for (int r = 0; r < b.dims[k + 1]; ++r)
                    for (int s2 = 0; s2 < b.dims[k]; ++s2)
                        m.at(a.dims[k + 1] + r, a.dims[k] + s2) = b.d[k].at(r, s2);
                c.d[k] = std::move(m);
            }
            auto it = obj_of.find(c);
            if (it == obj_of.end()) {
                w.notes.push_back("coproduct omitted for (" + cat.objects[i] + ", " +
                                  cat.objects[j] + "): object outside the window");
                continue;
            }
            int ci = it->second;
            ChainMap i1, i2, p1, p2;
            i1.comp.resize(alen);
            i2.comp.resize(alen);
            p1.comp.resize(alen);
            p2.comp.resize(alen);
            for (int k = 0; k < alen; ++k) {
                FpMat m1(c.dims[k], a.dims[k]), m2(c.dims[k], b.dims[k]);
                FpMat q1(a.dims[k], c.dims[k]), q2(b.dims[k], c.dims[k]);
                for (int r = 0; r < a.dims[k]; ++r) {
                    m1.at(r, r) = 1;
                    q1.at(r, r) = 1;
                }
                for (int r = 0; r < b.dims[k]; ++r) {
                    m2.at(a.dims[k] + r, r) = 1;
                    q2.at(r, a.dims[k] + r) = 1;
                }
                i1.comp[k] = std::move(m1);
                i2.comp[k] = std::move(m2);
                p1.comp[k] = std::move(q1);
                p2.comp[k] = std::move(q2);
            }
            CoproductRow row{i, j, ci, find_map(i, ci, i1), find_map(j, ci, i2),
                             find_map(ci, i, p1), find_map(ci, j, p2)};
            if (row.i1 < 0 || row.i2 < 0 || row.p1 < 0 || row.p2 < 0)
                throw WindowError("assemble_window: coproduct structure maps not enumerated");
            w.coproducts[{i, j}] = row;
            record_pushout(row.i1, w.to_zero(i));
            record_pushout(row.i2, w.to_zero(j));
        }

    for (const auto& [i, cco] : cylinder_rows) {
        if (!cco) continue;
        const CylinderComplex& cc = *cco;
        BoundedComplex padded;
        padded.lo = alo;
        padded.hi = ahi;
        padded.dims.resize(alen);
        padded.d.resize(alen - 1);
        for (int deg = alo; deg <= ahi; ++deg) padded.dims[deg - alo] = cc.ia.dim(deg);
        for (int k = 0; k + 1 < alen; ++k) {
            int deg = alo + k;
            if (deg >= cc.ia.lo && deg < cc.ia.hi)
                padded.d[k] = cc.ia.d[deg - cc.ia.lo];
            else
                padded.d[k] = FpMat(padded.dims[k + 1], padded.dims[k]);
        }
        int ia_idx = obj_of.at(padded);
        auto pad_map = [&](const ChainMap& f) {
            ChainMap r;
            r.comp.resize(alen);
            for (int k = 0; k < alen; ++k) r.comp[k] = f.comp[alo + k - cc.ia.lo];
            return r;
        };
        int fi0 = find_map(i, ia_idx, pad_map(cc.i0));
        int fi1 = find_map(i, ia_idx, pad_map(cc.i1));
        int fp = find_map(ia_idx, i, pad_map(cc.p));
        if (fi0 < 0 || fi1 < 0 || fp < 0)
            throw WindowError("assemble_window: cylinder maps not enumerated");
        w.cylinders[i] = CylinderRow{i, ia_idx, fi0, fi1, fp};
        for (int b = 0; b < n_obj; ++b)
            for (int g : cat.hom(i, b)) record_pushout(fi1, g);
    }

    return cw;
}

ChainWindow build_window(int p, int lo, int hi, int max_dim) {
    if (hi < lo) throw WindowError("build_window: empty degree range");

    // ambient range leaves one slot below for cylinder inflation
    int alo = lo - 1, ahi = hi;
    int alen = ahi - alo + 1;

    // core objects: all complexes supported on [lo, hi] with total dim <= max_dim
    std::vector<std::vector<int>> dim_choices;
    {
        std::vector<int> cur;
        enumerate_dims(hi - lo + 1, max_dim, cur, dim_choices);
    }
    std::sort(dim_choices.begin(), dim_choices.end(), [](const auto& a, const auto& b) {
        int sa = 0, sb = 0;
        for (int v : a) sa += v;
        for (int v : b) sb += v;
        if (sa != sb) return sa < sb;
        return a < b;
    });
    std::vector<BoundedComplex> objects;
    std::map<BoundedComplex, int> seen;
    auto pad = [&](const BoundedComplex& c) {
        BoundedComplex r;
        r.lo = alo;
        r.hi = ahi;
        r.dims.resize(alen);
        for (int deg = alo; deg <= ahi; ++deg) r.dims[deg - alo] = c.dim(deg);
        r.d.resize(alen - 1);
        for (int k = 0; k + 1 < alen; ++k) {
            int deg = alo + k;
            if (deg >= c.lo && deg < c.hi)
                r.d[k] = c.d[deg - c.lo];
            else
                r.d[k] = FpMat(r.dims[k + 1], r.dims[k]);
        }
        return r;
    };
    auto add_object = [&](const BoundedComplex& c) -> int {
        auto it = seen.find(c);
        if (it != seen.end()) return it->second;
        int idx = static_cast<int>(objects.size());
        objects.push_back(c);
        seen.emplace(c, idx);
        return idx;
    };
    for (const std::vector<int>& dims : dim_choices) {
        BoundedComplex base;
        base.lo = lo;
        base.hi = hi;
        base.dims = dims;
        std::vector<std::vector<FpMat>> choices(std::max(0, base.len() - 1));
        for (int k = 0; k + 1 < base.len(); ++k) all_matrices(p, dims[k + 1], dims[k], choices[k]);
        std::vector<FpMat> cur(std::max(0, base.len() - 1));
        std::function<void(int)> rec = [&](int k) {
            if (k == static_cast<int>(choices.size())) {
                BoundedComplex c = base;
                c.d = cur;
                if (complex_valid(p, c)) add_object(pad(c));
                return;
            }
            for (const FpMat& m : choices[k]) {
                cur[k] = m;
                if (k == 0 || fp_rank(p, fp_mul(p, cur[k], cur[k - 1])) == 0) rec(k + 1);
            }
        };
        if (choices.empty())
            add_object(pad(base));
        else
            rec(0);
    }

    // cylinder rows where the inflated object fits (one extra dimension)
    int n_core = static_cast<int>(objects.size());
    std::vector<std::pair<int, std::optional<CylinderComplex>>> cyl_rows;
    std::vector<std::string> notes;
    for (int i = 0; i < n_core; ++i) {
        CylinderComplex cc = cylinder_complex(p, objects[i]);
        bool in_range = true;
        for (int deg = cc.ia.lo; deg <= cc.ia.hi; ++deg)
            if (cc.ia.dim(deg) > 0 && (deg < alo || deg > ahi)) in_range = false;
        if (!in_range) {
            notes.push_back("cylinder omitted for object " + std::to_string(i) +
                            ": support leaves the window range");
            continue;
        }
        if (cc.ia.total_dim() > max_dim + 1) {
            notes.push_back("cylinder omitted for object " + std::to_string(i) +
                            ": dimension cap exceeded");
            continue;
        }
        BoundedComplex padded;
        padded.lo = alo;
        padded.hi = ahi;
        padded.dims.resize(alen);
        padded.d.resize(alen - 1);
        for (int deg = alo; deg <= ahi; ++deg) padded.dims[deg - alo] = cc.ia.dim(deg);
        for (int k = 0; k + 1 < alen; ++k) {
            int deg = alo + k;
            if (deg >= cc.ia.lo && deg < cc.ia.hi)
                padded.d[k] = cc.ia.d[deg - cc.ia.lo];
            else
                padded.d[k] = FpMat(padded.dims[k + 1], padded.dims[k]);
        }
        add_object(padded);
        cyl_rows.emplace_back(i, std::move(cc));
    }

    ChainWindow cw = assemble_window(p, objects, cyl_rows);
    cw.lo = lo;
    cw.hi = hi;
    cw.max_dim = max_dim;
    for (const std::string& n : notes) cw.window.notes.push_back(n);
    return cw;
}

}  // namespace squadk
