#include "intmat.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace squadk {

std::vector<Int> IntMat::col(int j) const {
    std::vector<Int> v(rows);
    for (int i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
}

void IntMat::set_col(int j, const std::vector<Int>& v) {
    for (int i = 0; i < rows; ++i) at(i, j) = v[i];
}

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::from_cols(int rows, const std::vector<std::vector<Int>>& cols) {
    IntMat m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols; ++j) {
        assert(static_cast<int>(cols[j].size()) == rows);
        m.set_col(j, cols[j]);
    }
    return m;
}

IntMat mul(const IntMat& x, const IntMat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mul: shape mismatch");
    IntMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Int& xv = x.at(i, k);
            if (xv == 0) continue;
            for (int j = 0; j < y.cols; ++j) r.at(i, j) += xv * y.at(k, j);
        }
    return r;
}

std::vector<Int> mul_vec(const IntMat& m, const std::vector<Int>& v) {
    if (m.cols != static_cast<int>(v.size())) throw std::invalid_argument("mul_vec: shape mismatch");
    std::vector<Int> r(m.rows);
    for (int j = 0; j < m.cols; ++j) {
        if (v[j] == 0) continue;
        for (int i = 0; i < m.rows; ++i) r[i] += m.at(i, j) * v[j];
    }
    return r;
}

IntMat transpose(const IntMat& m) {
    IntMat r(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

IntMat hstack(const IntMat& x, const IntMat& y) {
    if (x.rows != y.rows) throw std::invalid_argument("hstack: row mismatch");
    IntMat r(x.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
        for (int j = 0; j < y.cols; ++j) r.at(i, x.cols + j) = y.at(i, j);
    }
    return r;
}

bool is_zero(const std::vector<Int>& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

Int det(const IntMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("det: not square");
    int n = m.rows;
    if (n == 0) return 1;
    IntMat a = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

namespace {

void swap_rows(IntMat& m, int i, int j) {
    for (int k = 0; k < m.cols; ++k) std::swap(m.at(i, k), m.at(j, k));
}
void swap_cols(IntMat& m, int i, int j) {
    for (int k = 0; k < m.rows; ++k) std::swap(m.at(k, i), m.at(k, j));
}
// row_i -= q*row_j
void row_sub(IntMat& m, int i, int j, const Int& q) {
    if (q == 0) return;
    for (int k = 0; k < m.cols; ++k) m.at(i, k) -= q * m.at(j, k);
}
void col_sub(IntMat& m, int i, int j, const Int& q) {
    if (q == 0) return;
    for (int k = 0; k < m.rows; ++k) m.at(k, i) -= q * m.at(k, j);
}

}  // namespace

SnfResult smith_normal_form(const IntMat& m) {
    SnfResult r{IntMat::identity(m.rows), m, IntMat::identity(m.cols)};
    IntMat& s = r.s;
    int n = std::min(m.rows, m.cols);
    for (int t = 0; t < n; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing submatrix -> (t,t)
            int pi = -1, pj = -1;
            for (int i = t; i < s.rows; ++i)
                for (int j = t; j < s.cols; ++j) {
                    if (s.at(i, j) == 0) continue;
                    if (pi < 0 ||
                        mpz_cmpabs(s.at(i, j).get_mpz_t(), s.at(pi, pj).get_mpz_t()) < 0) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) { t = n; break; }  // trailing block is zero
            if (pi != t) { swap_rows(s, t, pi); swap_rows(r.u, t, pi); }
            if (pj != t) { swap_cols(s, t, pj); swap_cols(r.v, t, pj); }

            bool clean = true;
            for (int i = t + 1; i < s.rows; ++i) {
                if (s.at(i, t) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), s.at(i, t).get_mpz_t(), s.at(t, t).get_mpz_t());
                row_sub(s, i, t, q);
                row_sub(r.u, i, t, q);
                if (s.at(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < s.cols; ++j) {
                if (s.at(t, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), s.at(t, j).get_mpz_t(), s.at(t, t).get_mpz_t());
                col_sub(s, j, t, q);
                col_sub(r.v, j, t, q);
                if (s.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // pivot must divide the rest of the submatrix
            bool divides = true;
            for (int i = t + 1; i < s.rows && divides; ++i)
                for (int j = t + 1; j < s.cols; ++j)
                    if (s.at(i, j) % s.at(t, t) != 0) {
                        row_sub(s, t, i, Int(-1));
                        row_sub(r.u, t, i, Int(-1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (t >= n) break;
    }
    for (int t = 0; t < n; ++t)
        if (s.at(t, t) < 0) {
            for (int k = 0; k < s.cols; ++k) s.at(t, k) = -s.at(t, k);
            for (int k = 0; k < r.u.cols; ++k) r.u.at(t, k) = -r.u.at(t, k);
        }
    return r;
}

std::optional<std::vector<Int>> solve(const IntMat& m, const std::vector<Int>& v) {
    if (static_cast<int>(v.size()) != m.rows) throw std::invalid_argument("solve: dimension mismatch");
    SnfResult f = smith_normal_form(m);
    std::vector<Int> w = mul_vec(f.u, v);
    std::vector<Int> y(m.cols);
    int n = std::min(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i) {
        if (i < n && f.s.at(i, i) != 0) {
            Int rem;
            mpz_fdiv_qr(y[i].get_mpz_t(), rem.get_mpz_t(), w[i].get_mpz_t(), f.s.at(i, i).get_mpz_t());
            if (rem != 0) return std::nullopt;
        } else if (w[i] != 0) {
            return std::nullopt;
        }
    }
    return mul_vec(f.v, y);
}

IntMat kernel_basis(const IntMat& m) {
    SnfResult f = smith_normal_form(m);
    int n = std::min(m.rows, m.cols);
    std::vector<std::vector<Int>> cols;
    for (int j = 0; j < m.cols; ++j)
        if (j >= n || f.s.at(j, j) == 0) cols.push_back(f.v.col(j));
    return IntMat::from_cols(m.cols, cols);
}

void Lattice::insert(std::vector<Int> v) {
    if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("Lattice::insert: dimension mismatch");
    std::vector<std::vector<Int>> work;
    work.push_back(std::move(v));
    while (!work.empty()) {
        std::vector<Int> w = std::move(work.back());
        work.pop_back();
        for (;;) {
            int r = -1;
            for (int i = 0; i < dim_; ++i)
                if (w[i] != 0) { r = i; break; }
            if (r < 0) break;
            auto it = piv_.find(r);
            if (it == piv_.end()) {
                if (w[r] < 0)
                    for (Int& x : w) x = -x;
                piv_.emplace(r, std::move(w));
                break;
            }
            std::vector<Int>& p = it->second;
            Int g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), p[r].get_mpz_t(), w[r].get_mpz_t());
            if (g == p[r] || g == -p[r]) {
                Int q;
                mpz_divexact(q.get_mpz_t(), w[r].get_mpz_t(), p[r].get_mpz_t());
                for (int i = 0; i < dim_; ++i) w[i] -= q * p[i];
            } else {
                // combine pivot and w into a column with leading entry g
                Int cp, cw;  // p[r]/g, w[r]/g
                mpz_divexact(cp.get_mpz_t(), p[r].get_mpz_t(), g.get_mpz_t());
                mpz_divexact(cw.get_mpz_t(), w[r].get_mpz_t(), g.get_mpz_t());
                std::vector<Int> comb(dim_), oldp(dim_);
                for (int i = 0; i < dim_; ++i) {
                    comb[i] = x * p[i] + y * w[i];
                    oldp[i] = p[i];
                }
                for (int i = 0; i < dim_; ++i) {
                    oldp[i] -= cp * comb[i];
                    w[i] -= cw * comb[i];
                }
                p = std::move(comb);
                if (!is_zero(oldp)) work.push_back(std::move(oldp));
            }
        }
    }
}

void Lattice::insert_cols(const IntMat& m) {
    if (m.rows != dim_) throw std::invalid_argument("Lattice::insert_cols: dimension mismatch");
    for (int j = 0; j < m.cols; ++j) insert(m.col(j));
}

std::vector<Int> Lattice::reduce(std::vector<Int> v) const {
    if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("Lattice::reduce: dimension mismatch");
    for (const auto& [r, p] : piv_) {
        if (v[r] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v[r].get_mpz_t(), p[r].get_mpz_t());
        if (q == 0) continue;
        for (int i = 0; i < dim_; ++i) v[i] -= q * p[i];
    }
    return v;
}

bool Lattice::contains(const std::vector<Int>& v) const { return is_zero(reduce(v)); }

IntMat Lattice::basis() const {
    std::vector<std::vector<Int>> cols;
    for (const auto& [r, p] : piv_) cols.push_back(p);
    return IntMat::from_cols(dim_, cols);
}

std::string to_string(const IntMat& m) {
    std::ostringstream os;
    os << m.rows << ' ' << m.cols << '\n';
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            if (j) os << ' ';
            os << m.at(i, j);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace squadk
