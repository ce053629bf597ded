#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "abelian.hpp"

namespace squadk {

struct SquadError : std::runtime_error {
    explicit SquadError(const std::string& what) : std::runtime_error(what) {}
};

/// Word in degree-0 generators: sequence of (generator index, +-1).
struct Word0 {
    std::vector<std::pair<int, int>> syms;

    Word0() = default;
    Word0(std::initializer_list<std::pair<int, int>> s) : syms(s) {}
    Word0 inverse() const;
    Word0 concat(const Word0& w) const;
    bool operator==(const Word0&) const = default;
};

/// Expression in degree one: degree-1 generators, brackets <w|w'>, the right
/// C0-action x^w, formal sums and negation.
struct Expr1 {
    enum class Kind { Zero, Gen, Bracket, Action, Sum, Neg };
    Kind kind = Kind::Zero;
    int gen = -1;
    Word0 w1, w2;             // Bracket operands; Action exponent in w1
    std::vector<Expr1> args;  // Sum children; single child for Action/Neg

    static Expr1 zero() { return {}; }
    static Expr1 gen1(int i);
    static Expr1 bracket(Word0 a, Word0 b);
    static Expr1 action(Expr1 base, Word0 w);
    static Expr1 sum(std::vector<Expr1> parts);
    static Expr1 neg(Expr1 e);
    bool operator==(const Expr1&) const = default;
};

/// Normal form in C0: generator exponent vector plus central commutator part
/// over the basis [g_i, g_j], i < j.
struct C0Element {
    std::vector<Int> vec;   // size n
    std::vector<Int> comm;  // size n*(n-1)/2
    bool operator==(const C0Element&) const = default;
};

/// Normal form in C1: degree-1 exponent vector plus central bracket part over
/// the basis <e_p, e_q> (all ordered pairs).
struct C1Element {
    std::vector<Int> gen;  // size m
    std::vector<Int> br;   // size n*n
    bool operator==(const C1Element&) const = default;
};

/// Central extension Z^k x_tau Z^c: pairs (u, b) with
///   (u,b)*(u',b') = (u+u', b+b'+tau(u,u')),
/// tau bilinear.  Powers have the closed form
///   (u,b)^e = (e*u, e*b + binom(e,2)*tau(u,u)).
struct CentralExt {
    int k = 0, c = 0;
    // acc += scale * tau(u, v)
    std::function<void(const std::vector<Int>&, const std::vector<Int>&, const Int&,
                       std::vector<Int>&)>
        tau;

    using Elem = std::pair<std::vector<Int>, std::vector<Int>>;
    Elem one() const { return {std::vector<Int>(k), std::vector<Int>(c)}; }
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    Elem pow(const Elem& a, const Int& e) const;
};

/// Subgroup of a central extension, accumulated from generators.  Columns are
/// kept in echelon form on the u-part (all reductions are honest group
/// operations, so the quadratic collection corrections are tracked exactly);
/// members that reduce to the centre land in a plain lattice.
class CentralSubgroup {
public:
    CentralSubgroup() : central_(0) {}
    explicit CentralSubgroup(CentralExt ext) : ext_(std::move(ext)), central_(ext_.c) {}

    void add_central(std::vector<Int> b) { central_.insert(std::move(b)); }
    void insert(CentralExt::Elem z);

    /// Canonical coset representative of an ambient element.
    CentralExt::Elem reduce(CentralExt::Elem x) const;
    bool contains(CentralExt::Elem x) const;

    /// The subgroup element with the given u-part (which must lie in the
    /// pivot lattice).
    std::optional<CentralExt::Elem> lift(const std::vector<Int>& u) const;

    const Lattice& central() const { return central_; }
    IntMat pivot_u_matrix() const;

private:
    struct Pivot {
        CentralExt::Elem e;
        std::vector<Int> tau_uu;  // cached tau(u, u) of the pivot
    };
    // x <- x * p^q, in place
    void apply(CentralExt::Elem& x, const Pivot& p, const Int& q) const;
    Pivot make_pivot(CentralExt::Elem e) const;

    CentralExt ext_;
    std::map<int, Pivot> piv_;
    Lattice central_;
};

struct Pi1Result;

/// Finitely presented stable quadratic module.
///
/// C0 is the free class-2 nilpotent group on gens0 modulo the closure of
/// rels0; C1 is Z^gens1 extended by the bracket group, with commutators
/// prescribed by [d1,c1] = <del c1, del d1>, modulo the closure of rels1.
/// Degree-1 generators carry prescribed boundary words; construction fails
/// if any degree-1 relation has a nontrivial boundary.
class SquadPresentation {
public:
    SquadPresentation(std::vector<std::string> gens0,
                      std::vector<std::pair<std::string, Word0>> gens1,
                      std::vector<Word0> rels0, std::vector<Expr1> rels1);

    // source data
    const std::vector<std::string>& gens0() const { return gens0_; }
    const std::vector<std::pair<std::string, Word0>>& gens1() const { return gens1_; }
    const std::vector<Word0>& rels0() const { return rels0_; }
    const std::vector<Expr1>& rels1() const { return rels1_; }

    int n() const { return n_; }  // #gens0
    int m() const { return m_; }  // #gens1
    int gen0_index(const std::string& name) const;
    int gen1_index(const std::string& name) const;

    // compiled structure
    const CentralExt& ext0() const { return ext0_; }
    const CentralExt& ext1() const { return ext1_; }
    const CentralSubgroup& closure0() const { return closure0_; }
    const CentralSubgroup& closure1() const { return closure1_; }
    const std::vector<Int>& boundary_ab(int gen1) const { return (*dx_ab_)[gen1]; }

    std::vector<Int> word_ab(const Word0& w) const;  // abelianized word, length n

private:
    std::vector<std::string> gens0_;
    std::vector<std::pair<std::string, Word0>> gens1_;
    std::vector<Word0> rels0_;
    std::vector<Expr1> rels1_;

    int n_ = 0, m_ = 0, ncomm_ = 0, nbr_ = 0;
    std::map<std::string, int> idx0_, idx1_;
    std::shared_ptr<const std::vector<std::vector<Int>>> dx_ab_;  // owned by the tau closure too
    std::vector<CentralExt::Elem> dx_nf_;  // free collected boundary words
    CentralExt ext0_, ext1_;
    CentralSubgroup closure0_, closure1_;

    // lazy homotopy data
    struct Pi1Data;
    mutable std::shared_ptr<const Pi1Data> pi1_;
    const Pi1Data& pi1_data() const;

    friend C0Element boundary(const SquadPresentation&, const C1Element&);
    friend Pi1Result pi1(const SquadPresentation&);
    friend std::optional<std::vector<Int>> express_in_pi1(const SquadPresentation&, const C1Element&);
};

/// Hall collection to the canonical form, then reduction modulo the degree-0
/// relation closure.
C0Element normalize0(const SquadPresentation& p, const Word0& w);

/// Evaluate a degree-1 expression to its canonical form modulo the degree-1
/// relation closure.  Brackets expand bilinearly over abelianized words, the
/// action uses c1^c0 = c1 + <c0, del c1>, commutators of degree-1 generators
/// are resolved through the prescribed boundaries.
C1Element eval1(const SquadPresentation& p, const Expr1& e);
C1Element eval1_raw(const SquadPresentation& p, const Expr1& e);  // no closure reduction

C0Element boundary(const SquadPresentation& p, const C1Element& x);

bool equal0(const SquadPresentation& p, const C0Element& x, const C0Element& y);
bool equal1(const SquadPresentation& p, const C1Element& x, const C1Element& y);
bool is_identity0(const SquadPresentation& p, const C0Element& x);
bool is_identity1(const SquadPresentation& p, const C1Element& x);

C0Element c0_mul(const SquadPresentation& p, const C0Element& x, const C0Element& y);
C0Element c0_inv(const SquadPresentation& p, const C0Element& x);
C1Element c1_mul(const SquadPresentation& p, const C1Element& x, const C1Element& y);
C1Element c1_inv(const SquadPresentation& p, const C1Element& x);
C1Element c1_action(const SquadPresentation& p, const C1Element& x, const Word0& w);
C1Element c1_bracket(const SquadPresentation& p, const Word0& a, const Word0& b);
C0Element c0_commutator(const SquadPresentation& p, const C0Element& x, const C0Element& y);
C1Element c1_commutator(const SquadPresentation& p, const C1Element& x, const C1Element& y);

/// pi0 = C0 / del(C1), presented on the degree-0 generators.
FgAbGroup pi0(const SquadPresentation& p);

struct Pi1Result {
    FgAbGroup group;
    std::vector<C1Element> gens;  // inclusion into C1 classes
};

/// pi1 = ker(del), assembled from the lattice of degree-1 exponent vectors
/// with boundary in the degree-0 relation lattice (each basis vector lifted
/// by cancelling its collection correction with a bracket part) together
/// with the kernel of del on the bracket group.
Pi1Result pi1(const SquadPresentation& p);

/// Coordinates of a kernel class in the pi1 generators.
std::optional<std::vector<Int>> express_in_pi1(const SquadPresentation& p, const C1Element& x);

/// k : pi0 (x) Z/2 -> pi1, x |-> <x,x>.
AbHom k_invariant(const SquadPresentation& p);

struct SquadMorphism {
    std::shared_ptr<const SquadPresentation> src, dst;
    std::vector<Word0> image0;  // per src degree-0 generator
    std::vector<Expr1> image1;  // per src degree-1 generator
};

Word0 map_word(const SquadMorphism& f, const Word0& w);
Expr1 map_expr(const SquadMorphism& f, const Expr1& e);
C1Element apply1(const SquadMorphism& f, const C1Element& x);
SquadMorphism compose(const SquadMorphism& g, const SquadMorphism& f);
SquadMorphism identity_morphism(std::shared_ptr<const SquadPresentation> p);

struct MorphismReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks boundary compatibility per degree-1 generator, well-definedness of
/// the induced bracket map, and that every source relation maps to the
/// identity.  An empty report certifies a valid morphism.
MorphismReport verify_morphism(const SquadMorphism& f);

struct InducedMaps {
    AbHom on_pi0, on_pi1;
};

/// Maps induced on pi0 and pi1.  `check` re-verifies the morphism first;
/// callers that already hold an empty verify_morphism report may skip it.
InducedMaps homotopy_group_map(const SquadMorphism& f, bool check = true);

}  // namespace squadk
