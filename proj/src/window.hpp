#pragma once

#include <memory>
#include <optional>

#include "category.hpp"
#include "squad.hpp"

namespace squadk {

/// Chosen pushout of a cofibration `cof : A >-> B` along `along : A -> X`:
/// object P with legs B -> P and X -> P.
struct PushoutRow {
    int cof = -1, along = -1;
    int obj = -1;
    int leg_b = -1, leg_x = -1;
};

struct CoproductRow {
    int a = -1, b = -1;
    int obj = -1;
    int i1 = -1, i2 = -1, p1 = -1, p2 = -1;
};

struct CylinderRow {
    int a = -1;
    int obj = -1;
    int i0 = -1, i1 = -1, p = -1;
};

/// Finite Waldhausen-category fragment: a finite category with zero object,
/// cofibration/weak-equivalence flags and chosen pushouts, coproducts and
/// cylinders stored as tables.
struct WaldhausenWindow {
    FiniteCategory cat;
    int zero = -1;
    std::vector<char> is_cof, is_we;
    std::map<std::pair<int, int>, PushoutRow> pushouts;
    std::map<std::pair<int, int>, CoproductRow> coproducts;
    std::map<int, CylinderRow> cylinders;
    std::vector<std::string> notes;  // generation notes (omitted rows etc.)

    /// The unique morphism A -> 0 -> B (zero must be initial and terminal).
    int zero_morphism(int a, int b) const;
    int to_zero(int a) const;
    int from_zero(int b) const;

    bool iso(int f) const;                  // two-sided inverse exists
    std::optional<int> iso_inverse(int f) const;
};

/// Axiom and closure validation.  Saturation and 2-out-of-3 findings are
/// informational; universal-property checks stop at `budget` candidate cones
/// (a truncation note is emitted when the budget is hit).
Report validate_window(const WaldhausenWindow& w, long budget = 1000000);

struct CofiberSeq {
    int cof = -1;   // A >-> B
    int quot = -1;  // object B/A
    int proj = -1;  // B ->> B/A
    bool operator==(const CofiberSeq&) const = default;
};

/// The recorded cofiber sequence of a cofibration (pushout along A -> 0).
CofiberSeq cofiber_of(const WaldhausenWindow& w, int cof);

/// One sequence per cofibration with a recorded pushout to zero; ordered by
/// cofibration index.
std::vector<CofiberSeq> enumerate_cofiber_sequences(const WaldhausenWindow& w);

/// Weak equivalence of cofiber sequences: source and target sequences plus
/// the three commuting weak equivalences.
struct WeOfCofSeq {
    int src_seq = -1, dst_seq = -1;
    int a = -1, b = -1, c = -1;
};

std::vector<WeOfCofSeq> enumerate_we_of_cofseq(const WaldhausenWindow& w,
                                               const std::vector<CofiberSeq>& seqs,
                                               long budget = 1000000);

/// Pair of composable cofibrations with its four recorded cofiber sequences
/// and comparison maps.
struct CofPair {
    int f = -1, g = -1;                              // A >-> B >-> C
    int seq_f = -1, seq_g = -1, seq_gf = -1, seq_j = -1;  // indices into the sequence list
    int j = -1, q = -1;                              // B/A >-> C/A ->> C/B
};

std::vector<CofPair> enumerate_cof_pairs(const WaldhausenWindow& w,
                                         const std::vector<CofiberSeq>& seqs,
                                         long budget = 1000000);

struct PresentOptions {
    long budget = 30000;  // per relation family
};

/// Presentation together with the generator dictionary used to build it.
struct WindowPresentation {
    std::shared_ptr<const SquadPresentation> pres;
    std::vector<int> obj_gen;                  // object -> gens0 index
    std::map<int, int> we_gen;                 // we morphism -> gens1 index
    std::vector<CofiberSeq> seqs;              // sequence list (shared with DD*)
    std::map<int, int> seq_gen;                // cofibration -> gens1 index
    std::vector<WeOfCofSeq> wecs;              // enumerated instances
    std::vector<CofPair> cof_pairs;
};

/// The presentation D*W: one degree-0 generator per object, one degree-1
/// generator per weak equivalence and per cofiber sequence, relations from
/// the degenerate simplices, composites of weak equivalences, weak
/// equivalences of cofiber sequences, composable cofibration pairs and
/// coproducts.
WindowPresentation present_Dstar(const WaldhausenWindow& w, const PresentOptions& opt = {});

}  // namespace squadk
