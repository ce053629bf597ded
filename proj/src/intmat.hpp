#pragma once

#include <gmpxx.h>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace squadk {

using Int = mpz_class;

/// Dense matrix of arbitrary-precision integers, row-major.
struct IntMat {
    int rows = 0, cols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    std::vector<Int> col(int j) const;
    void set_col(int j, const std::vector<Int>& v);

    static IntMat identity(int n);
    static IntMat from_cols(int rows, const std::vector<std::vector<Int>>& cols);

    bool operator==(const IntMat&) const = default;
};

IntMat mul(const IntMat& x, const IntMat& y);
std::vector<Int> mul_vec(const IntMat& m, const std::vector<Int>& v);
IntMat transpose(const IntMat& m);
IntMat hstack(const IntMat& x, const IntMat& y);
bool is_zero(const std::vector<Int>& v);

/// Determinant by fraction-free (Bareiss) elimination.
Int det(const IntMat& m);

struct SnfResult {
    IntMat u, s, v;  // u*m*v = s
};

/// Smith normal form: S diagonal, d_i >= 0, d_i | d_{i+1}, U and V unimodular.
/// Pivots are chosen as the smallest nonzero entry of the working submatrix
/// to keep intermediate growth down.
SnfResult smith_normal_form(const IntMat& m);

/// Some x with M*x = v, or nullopt when v is outside the column image.
std::optional<std::vector<Int>> solve(const IntMat& m, const std::vector<Int>& v);

/// Membership of v in the column lattice of M, with a witness combination.
inline std::optional<std::vector<Int>> lattice_member(const IntMat& m,
                                                      const std::vector<Int>& v) {
    return solve(m, v);
}

/// Basis of the integer kernel {x : M*x = 0}, returned as columns.
IntMat kernel_basis(const IntMat& m);

/// Integer column lattice accumulated incrementally.
///
/// Columns are kept in echelon form keyed by leading row; reduce() gives the
/// canonical coset representative with entries floor-reduced at pivot rows,
/// so membership is reduce(v) == 0 and representatives are deterministic for
/// a fixed insertion history.
class Lattice {
public:
    explicit Lattice(int dim) : dim_(dim) {}

    void insert(std::vector<Int> v);
    void insert_cols(const IntMat& m);

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(piv_.size()); }

    std::vector<Int> reduce(std::vector<Int> v) const;
    bool contains(const std::vector<Int>& v) const;

    /// Pivot columns, ascending by leading row.
    IntMat basis() const;

private:
    int dim_;
    std::map<int, std::vector<Int>> piv_;  // leading row -> column
};

std::string to_string(const IntMat& m);

}  // namespace squadk
