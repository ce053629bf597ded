#include "abelian.hpp"

#include <sstream>
#include <stdexcept>

namespace squadk {

FgAbGroup::FgAbGroup(int n, IntMat rels) : n_gens(n), relations(std::move(rels)), lat_(n) {
    if (relations.rows == 0 && relations.cols == 0) relations = IntMat(n, 0);
    if (relations.rows != n) throw std::invalid_argument("FgAbGroup: relation rows != n_gens");
    lat_.insert_cols(relations);
}

std::vector<Int> FgAbGroup::rep(const std::vector<Int>& v) const { return lat_.reduce(v); }

bool FgAbGroup::equal(const std::vector<Int>& v, const std::vector<Int>& w) const {
    std::vector<Int> d(n_gens);
    for (int i = 0; i < n_gens; ++i) d[i] = v[i] - w[i];
    return lat_.contains(d);
}

bool FgAbGroup::is_trivial_class(const std::vector<Int>& v) const { return lat_.contains(v); }

Int InvariantFactors::order() const {
    if (free_rank > 0) return 0;
    Int o = 1;
    for (const Int& t : torsion) o *= t;
    return o;
}

std::string InvariantFactors::text() const {
    std::ostringstream os;
    bool first = true;
    if (free_rank == 1) { os << "Z"; first = false; }
    else if (free_rank > 1) { os << "Z^" << free_rank; first = false; }
    for (const Int& t : torsion) {
        if (!first) os << " + ";
        os << "Z/" << t;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

InvariantFactors invariant_factors(const FgAbGroup& g) {
    SnfResult f = smith_normal_form(g.relations);
    InvariantFactors r;
    int n = std::min(g.relations.rows, g.relations.cols);
    int rank = 0;
    for (int i = 0; i < n; ++i) {
        const Int& d = f.s.at(i, i);
        if (d == 0) continue;
        ++rank;
        if (d > 1) r.torsion.push_back(d);
    }
    r.free_rank = g.n_gens - rank;
    return r;
}

FgAbGroup quotient(const FgAbGroup& g, const IntMat& extra) {
    if (extra.cols == 0) return g;
    if (extra.rows != g.n_gens) throw std::invalid_argument("quotient: dimension mismatch");
    return FgAbGroup(g.n_gens, hstack(g.relations, extra));
}

FgAbGroup tensor_z2(const FgAbGroup& g) {
    IntMat two = IntMat::identity(g.n_gens);
    for (int i = 0; i < g.n_gens; ++i) two.at(i, i) = 2;
    return quotient(g, two);
}

AbHom::AbHom(FgAbGroup dom, FgAbGroup cod, IntMat m)
    : domain(std::move(dom)), codomain(std::move(cod)), matrix(std::move(m)) {
    if (matrix.rows != codomain.n_gens || matrix.cols != domain.n_gens)
        throw std::invalid_argument("AbHom: matrix shape mismatch");
    if (!well_defined()) throw std::invalid_argument("AbHom: not well defined on classes");
}

bool AbHom::well_defined() const {
    for (int j = 0; j < domain.relations.cols; ++j)
        if (!codomain.is_trivial_class(mul_vec(matrix, domain.relations.col(j)))) return false;
    return true;
}

std::vector<Int> AbHom::apply(const std::vector<Int>& v) const { return mul_vec(matrix, v); }

AbHom AbHom::identity(const FgAbGroup& g) { return AbHom(g, g, IntMat::identity(g.n_gens)); }

KernelResult hom_kernel(const AbHom& f) {
    // v is in the kernel iff f(v) lies in the codomain relation lattice:
    // solve [matrix | cod.rels] * (v; y) = 0 and project to v.
    IntMat combined = hstack(f.matrix, f.codomain.relations);
    IntMat ker = kernel_basis(combined);
    std::vector<std::vector<Int>> gens;
    Lattice seen(f.domain.n_gens);
    for (int j = 0; j < ker.cols; ++j) {
        std::vector<Int> v(f.domain.n_gens);
        for (int i = 0; i < f.domain.n_gens; ++i) v[i] = ker.at(i, j);
        if (!seen.contains(v)) {
            seen.insert(v);
            gens.push_back(std::move(v));
        }
    }
    IntMat gen_mat = IntMat::from_cols(f.domain.n_gens, gens);
    // relations among the kernel generators: combinations landing in dom.rels
    IntMat rel_combined = hstack(gen_mat, f.domain.relations);
    IntMat rel_ker = kernel_basis(rel_combined);
    IntMat rels(gen_mat.cols, rel_ker.cols);
    for (int j = 0; j < rel_ker.cols; ++j)
        for (int i = 0; i < gen_mat.cols; ++i) rels.at(i, j) = rel_ker.at(i, j);
    FgAbGroup k(gen_mat.cols, rels);
    return KernelResult{k, AbHom(k, f.domain, gen_mat)};
}

FgAbGroup cokernel(const AbHom& f) { return quotient(f.codomain, f.matrix); }

bool is_isomorphism(const AbHom& f) {
    return invariant_factors(hom_kernel(f).group).is_trivial() &&
           invariant_factors(cokernel(f)).is_trivial();
}

}  // namespace squadk
