#pragma once

#include "window.hpp"

namespace squadk {

/// Left-fraction representative A -> X <- B of a morphism A -> B in Ho(W);
/// a2 is a weak equivalence into the common target X.
struct Fraction {
    int a1 = -1, a2 = -1;
    bool operator==(const Fraction&) const = default;
    auto operator<=>(const Fraction&) const = default;
};

/// Witness for a strict homotopy H i = (f, g), or the weak equivalence h
/// with h f, h g strictly homotopic.
struct HomotopyWitness {
    int h = -1;  // identity for strict homotopies
    int H = -1;  // IA -> B'
};

/// Witness that two fractions represent the same Ho-morphism: an object Z
/// with weak equivalences g : X -> Z, gp : Y -> Z closing the comparison
/// diagram, strictly or up to recorded homotopies.
struct EqWitness {
    int z = -1;
    int g = -1, gp = -1;
    bool strict = true;
    HomotopyWitness hw1, hw2;  // used when !strict
};

struct HoMorphism {
    int src = -1, dst = -1;
    Fraction rep;
    std::vector<EqWitness> log;
};

/// Ho-isomorphism: representative with verified two-sided inverse.
struct HoIso {
    HoMorphism fwd;
    Fraction inverse_rep;
    EqWitness left_identity, right_identity;
};

std::string describe(const WaldhausenWindow& w, const EqWitness& e);

/// H : IA -> B with H i0 = f and H i1 = g, if any.  Requires a recorded
/// cylinder for the source.
std::optional<int> strictly_homotopic(const WaldhausenWindow& w, int f, int g);

/// Weak equivalence h with hf, hg strictly homotopic.
std::optional<HomotopyWitness> homotopic(const WaldhausenWindow& w, int f, int g);

/// Search for a comparison diagram; empty means no witness found within the
/// window, not a proof of inequality.  Strict witnesses are preferred;
/// homotopy-commuting ones are searched where cylinders exist.
std::optional<EqWitness> fractions_equal(const WaldhausenWindow& w, const Fraction& a,
                                         const Fraction& b);

Fraction zeta(const WaldhausenWindow& w, int f);

/// Composition by pushout when the first leg is a cofibration, otherwise
/// through the mapping cylinder factorization.  Throws WindowError
/// ("window-not-closed") when the required pushout or cylinder is absent.
Fraction compose_fractions(const WaldhausenWindow& w, const Fraction& a, const Fraction& b);

/// The Ho-isomorphism classes representable inside the window, with verified
/// inverses; class_of maps every pooled both-weak-equivalence fraction to
/// its class.
struct HoIsoTable {
    std::vector<HoIso> classes;
    std::map<Fraction, int> class_of;
    std::vector<std::vector<Fraction>> members;

    int find(const Fraction& f) const {
        auto it = class_of.find(f);
        return it == class_of.end() ? -1 : it->second;
    }
};

HoIsoTable enumerate_ho_isos(const WaldhausenWindow& w, int depth_cap = 1);

/// Morphisms inverted in Ho(W) must already be weak equivalences; reports
/// every witnessed counterexample.
Report check_saturation(const WaldhausenWindow& w, long budget = 1000000);

struct DDstarOptions {
    int depth_cap = 1;
    long budget = 30000;
};

struct DDstarPresentation {
    std::shared_ptr<const SquadPresentation> pres;
    HoIsoTable table;
    std::vector<int> ho_gen;     // class -> gens1 index
    std::map<int, int> seq_gen;  // cofibration -> gens1 index
    WindowPresentation dstar;    // the D* shell whose instance lists are shared
};

/// The presentation DD*W.  Refuses unsaturated windows.
DDstarPresentation present_DDstar(const WaldhausenWindow& w, const DDstarOptions& opt = {});

struct ComparisonData {
    WindowPresentation d;
    DDstarPresentation dd;
    SquadMorphism mu, nu;
};

ComparisonData build_comparison(const WaldhausenWindow& w, const DDstarOptions& opt = {});

SquadMorphism mu_bar(const ComparisonData& c);
SquadMorphism nu_bar(const ComparisonData& c);

/// Homotopic weak equivalences represent the same element of D*_1.
Report verify_lemma_la(const WaldhausenWindow& w, const PresentOptions& opt = {});

struct TheoremElResult {
    Report report;
    bool mu0_iso = false, mu1_iso = false;
};

/// nu mu = 1 and mu nu = 1 on every generator, plus both induced maps of mu
/// are isomorphisms.
TheoremElResult verify_theorem_el_full(const ComparisonData& c);
Report verify_theorem_el(const WaldhausenWindow& w, const DDstarOptions& opt = {});
Report verify_theorem_el(const ComparisonData& c);

}  // namespace squadk
