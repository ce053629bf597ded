#pragma once

#include <optional>

#include "window.hpp"

namespace squadk {

/// Matrix over a prime field, entries in [0, p).
struct FpMat {
    int rows = 0, cols = 0;
    std::vector<int> a;

    FpMat() = default;
    FpMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    int at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    static FpMat identity(int n);
    bool operator==(const FpMat&) const = default;
    auto operator<=>(const FpMat&) const = default;
};

FpMat fp_mul(int p, const FpMat& x, const FpMat& y);
int fp_rank(int p, FpMat m);
FpMat fp_kernel(int p, const FpMat& m);  // kernel basis as columns
/// One solution x of M x = v, if any.
std::optional<std::vector<int>> fp_solve(int p, const FpMat& m, const std::vector<int>& v);

/// Bounded cochain complex over F_p on the degree range [lo, hi], with
/// differentials d[k] : degree lo+k -> lo+k+1 and d*d = 0.
struct BoundedComplex {
    int lo = 0, hi = -1;
    std::vector<int> dims;   // length hi-lo+1
    std::vector<FpMat> d;    // length hi-lo (may be empty)

    int len() const { return hi - lo + 1; }
    int dim(int deg) const { return (deg < lo || deg > hi) ? 0 : dims[deg - lo]; }
    int total_dim() const;
    bool operator==(const BoundedComplex&) const = default;
    auto operator<=>(const BoundedComplex&) const = default;
};

/// Check d*d = 0 and shape consistency.
bool complex_valid(int p, const BoundedComplex& a);

struct ChainMap {
    std::vector<FpMat> comp;  // one matrix per degree of the ambient range
    bool operator==(const ChainMap&) const = default;
    auto operator<=>(const ChainMap&) const = default;
};

bool chain_map_valid(int p, const BoundedComplex& a, const BoundedComplex& b, const ChainMap& f);

/// Ranks of H^k, k over the ambient range.
std::vector<int> homology_ranks(int p, const BoundedComplex& a);

bool is_levelwise_mono(int p, const BoundedComplex& a, const ChainMap& f);
bool is_quasi_iso(int p, const BoundedComplex& a, const BoundedComplex& b, const ChainMap& f);

struct CylinderComplex {
    BoundedComplex ia;
    ChainMap i0, i1, p;
};

/// (IA)^n = A^n + A^{n+1} + A^n with the standard differential; i0/i1 the
/// outer inclusions, p the fold onto A.
CylinderComplex cylinder_complex(int p, const BoundedComplex& a);

struct ChainPushout {
    BoundedComplex obj;
    ChainMap leg_b, leg_x;
};

/// Degreewise canonical cokernel (B + X)/(f(a), -g(a)) with induced
/// differential; f must be levelwise injective.
ChainPushout pushout_along_mono(int p, const BoundedComplex& a, const BoundedComplex& b,
                                const BoundedComplex& x, const ChainMap& f, const ChainMap& g);

/// Generated chain window: every complex on the given range with total
/// dimension at most max_dim, all chain maps, quasi-isomorphisms as weak
/// equivalences, levelwise monomorphisms as cofibrations, plus cylinder
/// objects where they fit (one extra dimension of slack).  Tables are
/// populated where the results stay inside the window; omitted rows are
/// recorded in window.notes.
struct ChainWindow {
    int p = 2, lo = 0, hi = 0, max_dim = 1;
    WaldhausenWindow window;
    std::vector<BoundedComplex> complexes;  // per window object
    std::vector<ChainMap> maps;             // per window morphism
};

ChainWindow build_window(int p, int lo, int hi, int max_dim);

/// Window over an explicit object list (all complexes padded to a common
/// range): all chain maps, flags, and the standard tables.  Used by
/// build_window and by hand-picked fixtures.
ChainWindow assemble_window(int p, std::vector<BoundedComplex> complexes,
                            const std::vector<std::pair<int, std::optional<CylinderComplex>>>&
                                cylinder_rows = {});

}  // namespace squadk
