#pragma once

#include "intmat.hpp"

namespace squadk {

/// Finitely generated abelian group presented by an integer relation matrix:
/// n_gens generators, one relation per column.  Element classes are integer
/// vectors modulo the column lattice of `relations`.
struct FgAbGroup {
    int n_gens = 0;
    IntMat relations;  // n_gens rows

    FgAbGroup() = default;
    FgAbGroup(int n, IntMat rels);

    /// Canonical representative of the class of v.
    std::vector<Int> rep(const std::vector<Int>& v) const;
    bool equal(const std::vector<Int>& v, const std::vector<Int>& w) const;
    bool is_trivial_class(const std::vector<Int>& v) const;

    const Lattice& lattice() const { return lat_; }

private:
    Lattice lat_{0};
};

struct InvariantFactors {
    int free_rank = 0;
    std::vector<Int> torsion;  // t_i > 1, t_i | t_{i+1}

    bool operator==(const InvariantFactors&) const = default;
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    /// Group order; 0 when infinite, 1 when trivial.
    Int order() const;
    std::string text() const;  // "Z^2 + Z/6", "Z", "0", ...
};

/// Canonical isomorphism invariant: free rank plus the SNF diagonal with
/// units dropped.
InvariantFactors invariant_factors(const FgAbGroup& g);

/// Append extra relation columns.
FgAbGroup quotient(const FgAbGroup& g, const IntMat& extra);

/// G tensor Z/2.
FgAbGroup tensor_z2(const FgAbGroup& g);

/// Homomorphism of presented groups, given on generators by `matrix`
/// (codomain.n_gens x domain.n_gens).
struct AbHom {
    FgAbGroup domain, codomain;
    IntMat matrix;

    AbHom(FgAbGroup dom, FgAbGroup cod, IntMat m);

    /// Every domain relation must land in the codomain relation lattice.
    bool well_defined() const;
    std::vector<Int> apply(const std::vector<Int>& v) const;

    static AbHom identity(const FgAbGroup& g);
};

struct KernelResult {
    FgAbGroup group;
    AbHom inclusion;  // group -> domain of f
};

/// Kernel of f as a presented group with its inclusion.
KernelResult hom_kernel(const AbHom& f);

/// Cokernel: codomain / image columns.
FgAbGroup cokernel(const AbHom& f);

bool is_isomorphism(const AbHom& f);

}  // namespace squadk
