#include "squad.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <sstream>

namespace squadk {

namespace {

// index of the basis commutator [g_i, g_j], i < j
int comm_index(int i, int j, int n) {
    assert(0 <= i && i < j && j < n);
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

Int binom2(const Int& e) {
    Int r = e * (e - 1);
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), 2);
    return r;
}

}  // namespace

Word0 Word0::inverse() const {
    Word0 r;
    r.syms.reserve(syms.size());
    for (auto it = syms.rbegin(); it != syms.rend(); ++it) r.syms.emplace_back(it->first, -it->second);
    return r;
}

Word0 Word0::concat(const Word0& w) const {
    Word0 r = *this;
    r.syms.insert(r.syms.end(), w.syms.begin(), w.syms.end());
    return r;
}

Expr1 Expr1::gen1(int i) {
    Expr1 e;
    e.kind = Kind::Gen;
    e.gen = i;
    return e;
}
Expr1 Expr1::bracket(Word0 a, Word0 b) {
    Expr1 e;
    e.kind = Kind::Bracket;
    e.w1 = std::move(a);
    e.w2 = std::move(b);
    return e;
}
Expr1 Expr1::action(Expr1 base, Word0 w) {
    Expr1 e;
    e.kind = Kind::Action;
    e.args.push_back(std::move(base));
    e.w1 = std::move(w);
    return e;
}
Expr1 Expr1::sum(std::vector<Expr1> parts) {
    Expr1 e;
    e.kind = Kind::Sum;
    e.args = std::move(parts);
    return e;
}
Expr1 Expr1::neg(Expr1 x) {
    Expr1 e;
    e.kind = Kind::Neg;
    e.args.push_back(std::move(x));
    return e;
}

CentralExt::Elem CentralExt::mul(const Elem& a, const Elem& b) const {
    Elem r{std::vector<Int>(k), a.second};
    for (int i = 0; i < k; ++i) r.first[i] = a.first[i] + b.first[i];
    for (int i = 0; i < c; ++i) r.second[i] += b.second[i];
    if (tau) tau(a.first, b.first, 1, r.second);
    return r;
}

CentralExt::Elem CentralExt::inv(const Elem& a) const {
    Elem r{std::vector<Int>(k), std::vector<Int>(c)};
    for (int i = 0; i < k; ++i) r.first[i] = -a.first[i];
    for (int i = 0; i < c; ++i) r.second[i] = -a.second[i];
    if (tau) tau(a.first, a.first, 1, r.second);
    return r;
}

CentralExt::Elem CentralExt::pow(const Elem& a, const Int& e) const {
    Elem r{std::vector<Int>(k), std::vector<Int>(c)};
    for (int i = 0; i < k; ++i) r.first[i] = e * a.first[i];
    for (int i = 0; i < c; ++i) r.second[i] = e * a.second[i];
    if (tau) tau(a.first, a.first, binom2(e), r.second);
    return r;
}

CentralSubgroup::Pivot CentralSubgroup::make_pivot(CentralExt::Elem e) const {
    Pivot p{std::move(e), std::vector<Int>(ext_.c)};
    if (ext_.tau) ext_.tau(p.e.first, p.e.first, 1, p.tau_uu);
    return p;
}

void CentralSubgroup::apply(CentralExt::Elem& x, const Pivot& p, const Int& q) const {
    if (q == 0) return;
    // tau(x.u, q*p.u) = q * tau(x.u, p.u), accumulated before x.u changes
    if (ext_.tau) ext_.tau(x.first, p.e.first, q, x.second);
    for (int i = 0; i < ext_.k; ++i)
        if (p.e.first[i] != 0) x.first[i] += q * p.e.first[i];
    Int b2 = binom2(q);
    for (int i = 0; i < ext_.c; ++i) {
        if (p.e.second[i] != 0) x.second[i] += q * p.e.second[i];
        if (b2 != 0 && p.tau_uu[i] != 0) x.second[i] += b2 * p.tau_uu[i];
    }
}

void CentralSubgroup::insert(CentralExt::Elem z) {
    std::vector<CentralExt::Elem> work;
    work.push_back(std::move(z));
    while (!work.empty()) {
        CentralExt::Elem w = std::move(work.back());
        work.pop_back();
        for (;;) {
            int r = -1;
            for (int i = 0; i < ext_.k; ++i)
                if (w.first[i] != 0) { r = i; break; }
            if (r < 0) {
                if (!is_zero(w.second)) central_.insert(std::move(w.second));
                break;
            }
            auto it = piv_.find(r);
            if (it == piv_.end()) {
                if (w.first[r] < 0) w = ext_.inv(w);
                piv_.emplace(r, make_pivot(std::move(w)));
                break;
            }
            Pivot& p = it->second;
            Int g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), p.e.first[r].get_mpz_t(),
                       w.first[r].get_mpz_t());
            if (g == p.e.first[r]) {
                Int q;
                mpz_divexact(q.get_mpz_t(), w.first[r].get_mpz_t(), p.e.first[r].get_mpz_t());
                apply(w, p, -q);
            } else {
                Int cp, cw;
                mpz_divexact(cp.get_mpz_t(), p.e.first[r].get_mpz_t(), g.get_mpz_t());
                mpz_divexact(cw.get_mpz_t(), w.first[r].get_mpz_t(), g.get_mpz_t());
                CentralExt::Elem comb = ext_.mul(ext_.pow(p.e, x), ext_.pow(w, y));
                Pivot combp = make_pivot(std::move(comb));
                CentralExt::Elem oldp = p.e;
                apply(oldp, combp, -cp);
                apply(w, combp, -cw);
                it->second = std::move(combp);
                work.push_back(std::move(oldp));
            }
        }
    }
}

CentralExt::Elem CentralSubgroup::reduce(CentralExt::Elem x) const {
    for (const auto& [r, p] : piv_) {
        if (x.first[r] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), x.first[r].get_mpz_t(), p.e.first[r].get_mpz_t());
        if (q == 0) continue;
        apply(x, p, -q);
    }
    x.second = central_.reduce(std::move(x.second));
    return x;
}

bool CentralSubgroup::contains(CentralExt::Elem x) const {
    CentralExt::Elem r = reduce(std::move(x));
    return is_zero(r.first) && is_zero(r.second);
}

std::optional<CentralExt::Elem> CentralSubgroup::lift(const std::vector<Int>& u) const {
    CentralExt::Elem x{u, std::vector<Int>(ext_.c)};
    CentralExt::Elem r = reduce(x);
    if (!is_zero(r.first)) return std::nullopt;
    for (Int& b : r.second) b = -b;
    return CentralExt::Elem{u, std::move(r.second)};
}

IntMat CentralSubgroup::pivot_u_matrix() const {
    std::vector<std::vector<Int>> cols;
    for (const auto& [r, p] : piv_) cols.push_back(p.e.first);
    return IntMat::from_cols(ext_.k, cols);
}

// ---------------------------------------------------------------------------
// presentation compilation

struct SquadPresentation::Pi1Data {
    IntMat kv;                                // m x t, basis of {u : D u in L}
    std::vector<CentralExt::Elem> lifts;      // t boundary-trivial lifts
    std::optional<KernelResult> kb;           // ker of del on the bracket group
    IntMat lambda_b;                          // central lattice basis of closure1
    IntMat express_mat;                       // [kb.inclusion | lambda_b]
    Pi1Result result;
};

SquadPresentation::SquadPresentation(std::vector<std::string> g0,
                                     std::vector<std::pair<std::string, Word0>> g1,
                                     std::vector<Word0> r0, std::vector<Expr1> r1)
    : gens0_(std::move(g0)), gens1_(std::move(g1)), rels0_(std::move(r0)), rels1_(std::move(r1)) {
    n_ = static_cast<int>(gens0_.size());
    m_ = static_cast<int>(gens1_.size());
    ncomm_ = n_ * (n_ - 1) / 2;
    nbr_ = n_ * n_;

    for (int i = 0; i < n_; ++i)
        if (!idx0_.emplace(gens0_[i], i).second)
            throw SquadError("duplicate degree-0 generator name: " + gens0_[i]);
    for (int i = 0; i < m_; ++i)
        if (!idx1_.emplace(gens1_[i].first, i).second)
            throw SquadError("duplicate degree-1 generator name: " + gens1_[i].first);

    const int n = n_;
    ext0_.k = n;
    ext0_.c = ncomm_;
    // collecting g^a g^b picks up [g_i,g_j]^(-a_j b_i) for i < j
    ext0_.tau = [n](const std::vector<Int>& a, const std::vector<Int>& b, const Int& scale,
                    std::vector<Int>& acc) {
        if (scale == 0) return;
        for (int j = 1; j < n; ++j) {
            if (a[j] == 0) continue;
            Int f = scale * a[j];
            for (int i = 0; i < j; ++i) {
                if (b[i] == 0) continue;
                acc[comm_index(i, j, n)] -= f * b[i];
            }
        }
    };

    auto dx_owned = std::make_shared<std::vector<std::vector<Int>>>(m_);
    dx_nf_.reserve(m_);
    for (int i = 0; i < m_; ++i) {
        (*dx_owned)[i] = word_ab(gens1_[i].second);
        CentralExt::Elem e = ext0_.one();
        for (auto [g, s] : gens1_[i].second.syms) {
            CentralExt::Elem unit = ext0_.one();
            unit.first[g] = 1;
            e = ext0_.mul(e, s > 0 ? unit : ext0_.inv(unit));
        }
        dx_nf_.push_back(std::move(e));
    }
    dx_ab_ = dx_owned;

    std::shared_ptr<const std::vector<std::vector<Int>>> dx = dx_owned;
    const int m = m_;
    ext1_.k = m_;
    ext1_.c = nbr_;
    // collecting x^u x^v picks up <del x_i, del x_j>^(u_j v_i) for i < j
    ext1_.tau = [n, m, dx](const std::vector<Int>& u, const std::vector<Int>& v, const Int& scale,
                           std::vector<Int>& acc) {
        if (n == 0 || scale == 0) return;
        std::vector<Int> pre(n);
        bool pre_nonzero = false;
        for (int j = 0; j < m; ++j) {
            const std::vector<Int>& dj = (*dx)[j];
            if (pre_nonzero && u[j] != 0) {
                for (int p = 0; p < n; ++p) {
                    if (pre[p] == 0) continue;
                    Int f = scale * u[j] * pre[p];
                    for (int q = 0; q < n; ++q) {
                        if (dj[q] == 0) continue;
                        acc[p * n + q] += f * dj[q];
                    }
                }
            }
            if (v[j] != 0)
                for (int p = 0; p < n; ++p)
                    if (dj[p] != 0) {
                        pre[p] += v[j] * dj[p];
                        pre_nonzero = true;
                    }
        }
    };

    // degree-0 closure: relation normal forms plus conjugation corrections
    closure0_ = CentralSubgroup(ext0_);
    std::vector<std::vector<Int>> rel0_ab;
    for (const Word0& r : rels0_) {
        for (auto [g, s] : r.syms)
            if (g < 0 || g >= n_) throw SquadError("relation uses unknown degree-0 symbol");
        rel0_ab.push_back(word_ab(r));
    }
    for (const std::vector<Int>& rb : rel0_ab) {
        for (int p = 0; p < n_; ++p) {
            std::vector<Int> corr(ncomm_);
            bool nz = false;
            for (int i = 0; i < p; ++i)
                if (rb[i] != 0) { corr[comm_index(i, p, n_)] += rb[i]; nz = true; }
            for (int j = p + 1; j < n_; ++j)
                if (rb[j] != 0) { corr[comm_index(p, j, n_)] -= rb[j]; nz = true; }
            if (nz) closure0_.add_central(std::move(corr));
        }
    }
    for (const Word0& r : rels0_) {
        CentralExt::Elem e = ext0_.one();
        for (auto [g, s] : r.syms) {
            CentralExt::Elem unit = ext0_.one();
            unit.first[g] = 1;
            e = ext0_.mul(e, s > 0 ? unit : ext0_.inv(unit));
        }
        closure0_.insert(std::move(e));
    }

    // well-formedness: every degree-1 relation must have identity boundary
    std::vector<C1Element> rel1_nf;
    for (size_t k = 0; k < rels1_.size(); ++k) {
        C1Element z = eval1_raw(*this, rels1_[k]);
        C0Element b = boundary(*this, z);
        if (!is_zero(b.vec) || !is_zero(b.comm)) {
            std::ostringstream os;
            os << "ill-formed presentation: degree-1 relation #" << k
               << " has nontrivial boundary";
            throw SquadError(os.str());
        }
        rel1_nf.push_back(std::move(z));
    }

    // degree-1 closure: antisymmetry, bilinearity over the degree-0 relation
    // lattice, the forced diagonal <del x, del x> = 0, then the relations.
    closure1_ = CentralSubgroup(ext1_);
    for (int p = 0; p < n_; ++p)
        for (int q = p; q < n_; ++q) {
            std::vector<Int> v(nbr_);
            v[p * n_ + q] += 1;
            v[q * n_ + p] += 1;
            closure1_.add_central(std::move(v));
        }
    for (const std::vector<Int>& rb : rel0_ab)
        for (int p = 0; p < n_; ++p) {
            std::vector<Int> left(nbr_), right(nbr_);
            bool nz = false;
            for (int q = 0; q < n_; ++q) {
                if (rb[q] == 0) continue;
                left[p * n_ + q] = rb[q];
                right[q * n_ + p] = rb[q];
                nz = true;
            }
            if (nz) {
                closure1_.add_central(std::move(left));
                closure1_.add_central(std::move(right));
            }
        }
    for (int i = 0; i < m_; ++i) {
        std::vector<Int> v(nbr_);
        bool nz = false;
        for (int p = 0; p < n_; ++p) {
            if ((*dx_ab_)[i][p] == 0) continue;
            for (int q = 0; q < n_; ++q) {
                if ((*dx_ab_)[i][q] == 0) continue;
                v[p * n_ + q] += (*dx_ab_)[i][p] * (*dx_ab_)[i][q];
                nz = true;
            }
        }
        if (nz) closure1_.add_central(std::move(v));
    }
    for (const C1Element& z : rel1_nf) closure1_.insert({z.gen, z.br});
}

int SquadPresentation::gen0_index(const std::string& name) const {
    auto it = idx0_.find(name);
    if (it == idx0_.end()) throw SquadError("unknown degree-0 generator: " + name);
    return it->second;
}

int SquadPresentation::gen1_index(const std::string& name) const {
    auto it = idx1_.find(name);
    if (it == idx1_.end()) throw SquadError("unknown degree-1 generator: " + name);
    return it->second;
}

std::vector<Int> SquadPresentation::word_ab(const Word0& w) const {
    std::vector<Int> v(n_);
    for (auto [g, s] : w.syms) {
        if (g < 0 || g >= n_) throw SquadError("word uses unknown degree-0 symbol");
        v[g] += s;
    }
    return v;
}

// ---------------------------------------------------------------------------
// element operations

C0Element normalize0(const SquadPresentation& p, const Word0& w) {
    CentralExt::Elem e = p.ext0().one();
    for (auto [g, s] : w.syms) {
        if (g < 0 || g >= p.n()) throw SquadError("normalize0: unknown symbol");
        CentralExt::Elem unit = p.ext0().one();
        unit.first[g] = 1;
        e = p.ext0().mul(e, s > 0 ? unit : p.ext0().inv(unit));
    }
    e = p.closure0().reduce(std::move(e));
    return C0Element{std::move(e.first), std::move(e.second)};
}

namespace {

CentralExt::Elem eval1_impl(const SquadPresentation& p, const Expr1& e) {
    const CentralExt& x1 = p.ext1();
    switch (e.kind) {
        case Expr1::Kind::Zero:
            return x1.one();
        case Expr1::Kind::Gen: {
            if (e.gen < 0 || e.gen >= p.m()) throw SquadError("eval1: unknown degree-1 symbol");
            CentralExt::Elem r = x1.one();
            r.first[e.gen] = 1;
            return r;
        }
        case Expr1::Kind::Bracket: {
            std::vector<Int> a = p.word_ab(e.w1), b = p.word_ab(e.w2);
            CentralExt::Elem r = x1.one();
            int n = p.n();
            for (int i = 0; i < n; ++i) {
                if (a[i] == 0) continue;
                for (int j = 0; j < n; ++j) {
                    if (b[j] == 0) continue;
                    r.second[i * n + j] += a[i] * b[j];
                }
            }
            return r;
        }
        case Expr1::Kind::Action: {
            CentralExt::Elem r = eval1_impl(p, e.args[0]);
            std::vector<Int> w = p.word_ab(e.w1);
            int n = p.n();
            std::vector<Int> dz(n);
            for (int i = 0; i < p.m(); ++i) {
                if (r.first[i] == 0) continue;
                const std::vector<Int>& d = p.boundary_ab(i);
                for (int q = 0; q < n; ++q) dz[q] += r.first[i] * d[q];
            }
            // x^w = x + <w, del x>
            for (int i = 0; i < n; ++i) {
                if (w[i] == 0) continue;
                for (int j = 0; j < n; ++j) {
                    if (dz[j] == 0) continue;
                    r.second[i * n + j] += w[i] * dz[j];
                }
            }
            return r;
        }
        case Expr1::Kind::Sum: {
            CentralExt::Elem r = x1.one();
            for (const Expr1& a : e.args) r = x1.mul(r, eval1_impl(p, a));
            return r;
        }
        case Expr1::Kind::Neg:
            return x1.inv(eval1_impl(p, e.args[0]));
    }
    throw SquadError("eval1: bad expression");
}

}  // namespace

C1Element eval1_raw(const SquadPresentation& p, const Expr1& e) {
    CentralExt::Elem r = eval1_impl(p, e);
    return C1Element{std::move(r.first), std::move(r.second)};
}

C1Element eval1(const SquadPresentation& p, const Expr1& e) {
    CentralExt::Elem r = p.closure1().reduce(eval1_impl(p, e));
    return C1Element{std::move(r.first), std::move(r.second)};
}

C0Element boundary(const SquadPresentation& p, const C1Element& x) {
    CentralExt::Elem acc = p.ext0_.one();
    for (int i = 0; i < p.m_; ++i)
        if (x.gen[i] != 0) acc = p.ext0_.mul(acc, p.ext0_.pow(p.dx_nf_[i], x.gen[i]));
    // del<e_p, e_q> = [e_q, e_p]
    int n = p.n_;
    for (int q = 0; q < n; ++q)
        for (int pp = q + 1; pp < n; ++pp) {
            // ordered pair (pp, q) with pp > q contributes +[g_q, g_pp]; (q, pp) contributes -.
            const Int& plus = x.br[pp * n + q];
            const Int& minus = x.br[q * n + pp];
            if (plus != 0 || minus != 0) acc.second[comm_index(q, pp, n)] += plus - minus;
        }
    acc = p.closure0_.reduce(std::move(acc));
    return C0Element{std::move(acc.first), std::move(acc.second)};
}

C0Element c0_mul(const SquadPresentation& p, const C0Element& x, const C0Element& y) {
    CentralExt::Elem r = p.ext0().mul({x.vec, x.comm}, {y.vec, y.comm});
    r = p.closure0().reduce(std::move(r));
    return C0Element{std::move(r.first), std::move(r.second)};
}

C0Element c0_inv(const SquadPresentation& p, const C0Element& x) {
    CentralExt::Elem r = p.closure0().reduce(p.ext0().inv({x.vec, x.comm}));
    return C0Element{std::move(r.first), std::move(r.second)};
}

C1Element c1_mul(const SquadPresentation& p, const C1Element& x, const C1Element& y) {
    CentralExt::Elem r = p.ext1().mul({x.gen, x.br}, {y.gen, y.br});
    r = p.closure1().reduce(std::move(r));
    return C1Element{std::move(r.first), std::move(r.second)};
}

C1Element c1_inv(const SquadPresentation& p, const C1Element& x) {
    CentralExt::Elem r = p.closure1().reduce(p.ext1().inv({x.gen, x.br}));
    return C1Element{std::move(r.first), std::move(r.second)};
}

C1Element c1_action(const SquadPresentation& p, const C1Element& x, const Word0& w) {
    std::vector<Int> wab = p.word_ab(w);
    int n = p.n();
    std::vector<Int> dz(n);
    for (int i = 0; i < p.m(); ++i) {
        if (x.gen[i] == 0) continue;
        const std::vector<Int>& d = p.boundary_ab(i);
        for (int q = 0; q < n; ++q) dz[q] += x.gen[i] * d[q];
    }
    C1Element r = x;
    for (int i = 0; i < n; ++i) {
        if (wab[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (dz[j] == 0) continue;
            r.br[i * n + j] += wab[i] * dz[j];
        }
    }
    CentralExt::Elem e = p.closure1().reduce({std::move(r.gen), std::move(r.br)});
    return C1Element{std::move(e.first), std::move(e.second)};
}

C1Element c1_bracket(const SquadPresentation& p, const Word0& a, const Word0& b) {
    return eval1(p, Expr1::bracket(a, b));
}

C0Element c0_commutator(const SquadPresentation& p, const C0Element& x, const C0Element& y) {
    C0Element r = c0_mul(p, c0_mul(p, c0_inv(p, x), c0_inv(p, y)), c0_mul(p, x, y));
    return r;
}

C1Element c1_commutator(const SquadPresentation& p, const C1Element& x, const C1Element& y) {
    return c1_mul(p, c1_mul(p, c1_inv(p, x), c1_inv(p, y)), c1_mul(p, x, y));
}

bool equal0(const SquadPresentation& p, const C0Element& x, const C0Element& y) {
    CentralExt::Elem d = p.ext0().mul({x.vec, x.comm}, p.ext0().inv({y.vec, y.comm}));
    return p.closure0().contains(std::move(d));
}

bool equal1(const SquadPresentation& p, const C1Element& x, const C1Element& y) {
    CentralExt::Elem d = p.ext1().mul({x.gen, x.br}, p.ext1().inv({y.gen, y.br}));
    return p.closure1().contains(std::move(d));
}

bool is_identity0(const SquadPresentation& p, const C0Element& x) {
    return p.closure0().contains({x.vec, x.comm});
}

bool is_identity1(const SquadPresentation& p, const C1Element& x) {
    return p.closure1().contains({x.gen, x.br});
}

// ---------------------------------------------------------------------------
// homotopy groups

FgAbGroup pi0(const SquadPresentation& p) {
    std::vector<std::vector<Int>> cols;
    for (const Word0& r : p.rels0()) cols.push_back(p.word_ab(r));
    for (int i = 0; i < p.m(); ++i) cols.push_back(p.boundary_ab(i));
    return FgAbGroup(p.n(), IntMat::from_cols(p.n(), cols));
}

const SquadPresentation::Pi1Data& SquadPresentation::pi1_data() const {
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (pi1_) return *pi1_;

    auto data = std::make_shared<Pi1Data>();

    // lattice of degree-1 exponent vectors with abelianized boundary in the
    // degree-0 relation lattice
    std::vector<std::vector<Int>> dcols;
    for (int i = 0; i < m_; ++i) dcols.push_back((*dx_ab_)[i]);
    IntMat dmat = IntMat::from_cols(n_, dcols);
    std::vector<std::vector<Int>> r0cols;
    for (const Word0& r : rels0_) r0cols.push_back(word_ab(r));
    IntMat r0mat = IntMat::from_cols(n_, r0cols);
    IntMat ker = kernel_basis(hstack(dmat, r0mat));
    Lattice kv(m_);
    for (int j = 0; j < ker.cols; ++j) {
        std::vector<Int> v(m_);
        for (int i = 0; i < m_; ++i) v[i] = ker.at(i, j);
        kv.insert(std::move(v));
    }
    data->kv = kv.basis();
    int t = data->kv.cols;

    // lift each basis vector: cancel the collection correction of its
    // boundary with a bracket part (possible since every commutator is the
    // boundary of a bracket)
    for (int j = 0; j < t; ++j) {
        std::vector<Int> u = data->kv.col(j);
        CentralExt::Elem b = ext0_.one();
        for (int i = 0; i < m_; ++i)
            if (u[i] != 0) b = ext0_.mul(b, ext0_.pow(dx_nf_[i], u[i]));
        CentralExt::Elem red = closure0_.reduce(std::move(b));
        if (!is_zero(red.first)) throw SquadError("pi1: kernel lattice lift failed");
        std::vector<Int> br(nbr_);
        for (int pp = 0; pp < n_; ++pp)
            for (int q = pp + 1; q < n_; ++q) {
                const Int& g = red.second[comm_index(pp, q, n_)];
                if (g != 0) br[pp * n_ + q] = g;  // del<e_p,e_q> = -[g_p,g_q] for p<q
            }
        CentralExt::Elem z{std::move(u), std::move(br)};
        data->lifts.push_back(z);
    }

    // kernel of del restricted to the bracket group
    data->lambda_b = closure1_.central().basis();
    FgAbGroup bbar(nbr_, data->lambda_b);
    FgAbGroup commbar(ncomm_, closure0_.central().basis());
    IntMat delb(ncomm_, nbr_);
    for (int pp = 0; pp < n_; ++pp)
        for (int q = 0; q < n_; ++q) {
            if (pp == q) continue;
            if (pp < q)
                delb.at(comm_index(pp, q, n_), pp * n_ + q) = -1;
            else
                delb.at(comm_index(q, pp, n_), pp * n_ + q) = 1;
        }
    data->kb.emplace(hom_kernel(AbHom(bbar, commbar, delb)));
    int z = data->kb->group.n_gens;

    data->express_mat = hstack(data->kb->inclusion.matrix, data->lambda_b);

    // relations: combinations of the lifts that fall into the degree-1
    // closure get pushed onto the bracket generators; plus the bracket
    // kernel's own relations
    std::vector<std::vector<Int>> rel_cols;
    IntMat upiv = closure1_.pivot_u_matrix();
    IntMat tker = kernel_basis(hstack(data->kv, upiv));
    Lattice tlat(t);
    for (int j = 0; j < tker.cols; ++j) {
        std::vector<Int> v(t);
        for (int i = 0; i < t; ++i) v[i] = tker.at(i, j);
        tlat.insert(std::move(v));
    }
    IntMat tbasis = tlat.basis();
    for (int j = 0; j < tbasis.cols; ++j) {
        CentralExt::Elem g = ext1_.one();
        for (int i = 0; i < t; ++i)
            if (tbasis.at(i, j) != 0) g = ext1_.mul(g, ext1_.pow(data->lifts[i], tbasis.at(i, j)));
        CentralExt::Elem red = closure1_.reduce(std::move(g));
        if (!is_zero(red.first)) throw SquadError("pi1: torsion pushback failed");
        auto s = solve(data->express_mat, red.second);
        if (!s) throw SquadError("pi1: residue not expressible in bracket kernel");
        std::vector<Int> col(t + z);
        for (int i = 0; i < t; ++i) col[i] = tbasis.at(i, j);
        for (int i = 0; i < z; ++i) col[t + i] = -(*s)[i];
        rel_cols.push_back(std::move(col));
    }
    for (int j = 0; j < data->kb->group.relations.cols; ++j) {
        std::vector<Int> col(t + z);
        for (int i = 0; i < z; ++i) col[t + i] = data->kb->group.relations.at(i, j);
        rel_cols.push_back(std::move(col));
    }

    data->result.group = FgAbGroup(t + z, IntMat::from_cols(t + z, rel_cols));
    for (const CentralExt::Elem& l : data->lifts) data->result.gens.push_back(C1Element{l.first, l.second});
    for (int j = 0; j < z; ++j) {
        C1Element e{std::vector<Int>(m_), std::vector<Int>(nbr_)};
        for (int i = 0; i < nbr_; ++i) e.br[i] = data->kb->inclusion.matrix.at(i, j);
        data->result.gens.push_back(std::move(e));
    }

    pi1_ = std::move(data);
    return *pi1_;
}

Pi1Result pi1(const SquadPresentation& p) { return p.pi1_data().result; }

std::optional<std::vector<Int>> express_in_pi1(const SquadPresentation& p, const C1Element& x) {
    const auto& d = p.pi1_data();
    int t = d.kv.cols, z = d.kb->group.n_gens;
    auto tc = solve(d.kv, x.gen);
    if (!tc) return std::nullopt;
    CentralExt::Elem g = p.ext1().one();
    for (int i = 0; i < t; ++i)
        if ((*tc)[i] != 0) g = p.ext1().mul(g, p.ext1().pow(d.lifts[i], (*tc)[i]));
    CentralExt::Elem delta = p.ext1().mul({x.gen, x.br}, p.ext1().inv(g));
    delta = p.closure1().reduce(std::move(delta));
    if (!is_zero(delta.first)) return std::nullopt;
    auto s = solve(d.express_mat, delta.second);
    if (!s) return std::nullopt;
    std::vector<Int> coords(t + z);
    for (int i = 0; i < t; ++i) coords[i] = (*tc)[i];
    for (int i = 0; i < z; ++i) coords[t + i] = (*s)[i];
    return coords;
}

AbHom k_invariant(const SquadPresentation& p) {
    FgAbGroup dom = tensor_z2(pi0(p));
    Pi1Result k = pi1(p);
    IntMat mat(k.group.n_gens, p.n());
    for (int g = 0; g < p.n(); ++g) {
        C1Element sq{std::vector<Int>(p.m()), std::vector<Int>(p.n() * p.n())};
        sq.br[g * p.n() + g] = 1;
        auto coords = express_in_pi1(p, sq);
        if (!coords) throw SquadError("k_invariant: <x,x> not in pi1");
        for (int i = 0; i < k.group.n_gens; ++i) mat.at(i, g) = (*coords)[i];
    }
    return AbHom(dom, k.group, mat);
}

// ---------------------------------------------------------------------------
// morphisms

Word0 map_word(const SquadMorphism& f, const Word0& w) {
    Word0 r;
    for (auto [g, s] : w.syms) {
        const Word0& img = f.image0.at(g);
        r = r.concat(s > 0 ? img : img.inverse());
    }
    return r;
}

Expr1 map_expr(const SquadMorphism& f, const Expr1& e) {
    switch (e.kind) {
        case Expr1::Kind::Zero:
            return e;
        case Expr1::Kind::Gen:
            return f.image1.at(e.gen);
        case Expr1::Kind::Bracket:
            return Expr1::bracket(map_word(f, e.w1), map_word(f, e.w2));
        case Expr1::Kind::Action:
            return Expr1::action(map_expr(f, e.args[0]), map_word(f, e.w1));
        case Expr1::Kind::Sum: {
            std::vector<Expr1> parts;
            parts.reserve(e.args.size());
            for (const Expr1& a : e.args) parts.push_back(map_expr(f, a));
            return Expr1::sum(std::move(parts));
        }
        case Expr1::Kind::Neg:
            return Expr1::neg(map_expr(f, e.args[0]));
    }
    throw SquadError("map_expr: bad expression");
}

C1Element apply1(const SquadMorphism& f, const C1Element& x) {
    const SquadPresentation& src = *f.src;
    const SquadPresentation& dst = *f.dst;
    CentralExt::Elem acc = dst.ext1().one();
    for (int i = 0; i < src.m(); ++i) {
        if (x.gen[i] == 0) continue;
        C1Element gi = eval1_raw(dst, f.image1.at(i));
        acc = dst.ext1().mul(acc, dst.ext1().pow({gi.gen, gi.br}, x.gen[i]));
    }
    int ns = src.n(), nd = dst.n();
    for (int p = 0; p < ns; ++p)
        for (int q = 0; q < ns; ++q) {
            const Int& c = x.br[p * ns + q];
            if (c == 0) continue;
            std::vector<Int> fa = dst.word_ab(f.image0.at(p)), fb = dst.word_ab(f.image0.at(q));
            for (int i = 0; i < nd; ++i) {
                if (fa[i] == 0) continue;
                for (int j = 0; j < nd; ++j) {
                    if (fb[j] == 0) continue;
                    acc.second[i * nd + j] += c * fa[i] * fb[j];
                }
            }
        }
    acc = dst.closure1().reduce(std::move(acc));
    return C1Element{std::move(acc.first), std::move(acc.second)};
}

SquadMorphism compose(const SquadMorphism& g, const SquadMorphism& f) {
    SquadMorphism r;
    r.src = f.src;
    r.dst = g.dst;
    for (const Word0& w : f.image0) r.image0.push_back(map_word(g, w));
    for (const Expr1& e : f.image1) r.image1.push_back(map_expr(g, e));
    return r;
}

SquadMorphism identity_morphism(std::shared_ptr<const SquadPresentation> p) {
    SquadMorphism r;
    r.src = r.dst = p;
    for (int i = 0; i < p->n(); ++i) r.image0.push_back(Word0{{i, 1}});
    for (int i = 0; i < p->m(); ++i) r.image1.push_back(Expr1::gen1(i));
    return r;
}

MorphismReport verify_morphism(const SquadMorphism& f) {
    MorphismReport rep;
    const SquadPresentation& src = *f.src;
    const SquadPresentation& dst = *f.dst;
    if (static_cast<int>(f.image0.size()) != src.n() ||
        static_cast<int>(f.image1.size()) != src.m()) {
        rep.violations.push_back("generator image lists have wrong length");
        return rep;
    }

    for (size_t k = 0; k < src.rels0().size(); ++k) {
        C0Element img = normalize0(dst, map_word(f, src.rels0()[k]));
        if (!is_identity0(dst, img)) {
            std::ostringstream os;
            os << "degree-0 relation #" << k << " maps to a nontrivial element";
            rep.violations.push_back(os.str());
        }
    }

    for (int i = 0; i < src.m(); ++i) {
        C0Element lhs = normalize0(dst, map_word(f, src.gens1()[i].second));
        C0Element rhs = boundary(dst, eval1(dst, f.image1[i]));
        if (!equal0(dst, lhs, rhs)) {
            std::ostringstream os;
            os << "boundary compatibility fails for degree-1 generator '"
               << src.gens1()[i].first << "'";
            rep.violations.push_back(os.str());
        }
    }

    // the induced bracket map must kill the source bracket-relation lattice
    int ns = src.n();
    IntMat lam = src.closure1().central().basis();
    for (int j = 0; j < lam.cols; ++j) {
        C1Element img{std::vector<Int>(dst.m()), std::vector<Int>(dst.n() * dst.n())};
        int nd = dst.n();
        for (int p = 0; p < ns; ++p)
            for (int q = 0; q < ns; ++q) {
                const Int& c = lam.at(p * ns + q, j);
                if (c == 0) continue;
                std::vector<Int> fa = dst.word_ab(f.image0[p]), fb = dst.word_ab(f.image0[q]);
                for (int a = 0; a < nd; ++a) {
                    if (fa[a] == 0) continue;
                    for (int b = 0; b < nd; ++b) {
                        if (fb[b] == 0) continue;
                        img.br[a * nd + b] += c * fa[a] * fb[b];
                    }
                }
            }
        if (!is_identity1(dst, img)) {
            std::ostringstream os;
            os << "bracket compatibility fails on bracket-lattice vector #" << j;
            rep.violations.push_back(os.str());
        }
    }

    for (size_t k = 0; k < src.rels1().size(); ++k) {
        C1Element img = eval1(dst, map_expr(f, src.rels1()[k]));
        if (!is_identity1(dst, img)) {
            std::ostringstream os;
            os << "degree-1 relation #" << k << " maps to a nontrivial element";
            rep.violations.push_back(os.str());
        }
    }
    return rep;
}

InducedMaps homotopy_group_map(const SquadMorphism& f, bool check) {
    if (check) {
        MorphismReport rep = verify_morphism(f);
        if (!rep.ok())
            throw SquadError("homotopy_group_map: invalid morphism: " + rep.violations.front());
    }
    const SquadPresentation& src = *f.src;
    const SquadPresentation& dst = *f.dst;

    FgAbGroup p0s = pi0(src), p0d = pi0(dst);
    IntMat m0(dst.n(), src.n());
    for (int g = 0; g < src.n(); ++g) m0.set_col(g, dst.word_ab(f.image0[g]));
    AbHom on_pi0(p0s, p0d, m0);

    Pi1Result p1s = pi1(src), p1d = pi1(dst);
    IntMat m1(p1d.group.n_gens, p1s.group.n_gens);
    for (int g = 0; g < p1s.group.n_gens; ++g) {
        C1Element img = apply1(f, p1s.gens[g]);
        auto coords = express_in_pi1(dst, img);
        if (!coords) throw SquadError("homotopy_group_map: image of pi1 generator escapes pi1");
        m1.set_col(g, *coords);
    }
    AbHom on_pi1(p1s.group, p1d.group, m1);
    return InducedMaps{std::move(on_pi0), std::move(on_pi1)};
}

}  // namespace squadk
