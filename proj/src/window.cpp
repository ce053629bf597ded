#include "window.hpp"

#include <algorithm>
#include <sstream>

namespace squadk {

namespace {

std::string mor_name(const WaldhausenWindow& w, int f) { return w.cat.morphisms[f].name; }

}  // namespace

int WaldhausenWindow::to_zero(int a) const {
    const std::vector<int>& h = cat.hom(a, zero);
    if (h.size() != 1) throw WindowError("zero object is not terminal at " + cat.objects[a]);
    return h[0];
}

int WaldhausenWindow::from_zero(int b) const {
    const std::vector<int>& h = cat.hom(zero, b);
    if (h.size() != 1) throw WindowError("zero object is not initial at " + cat.objects[b]);
    return h[0];
}

int WaldhausenWindow::zero_morphism(int a, int b) const {
    return cat.compose(from_zero(b), to_zero(a));
}

std::optional<int> WaldhausenWindow::iso_inverse(int f) const {
    int a = cat.morphisms[f].src, b = cat.morphisms[f].dst;
    for (int g : cat.hom(b, a))
        if (cat.compose(g, f) == cat.identity[a] && cat.compose(f, g) == cat.identity[b]) return g;
    return std::nullopt;
}

bool WaldhausenWindow::iso(int f) const { return iso_inverse(f).has_value(); }

// ---------------------------------------------------------------------------

Report validate_window(const WaldhausenWindow& w, long budget) {
    Report rep = w.cat.validate();
    if (!rep.ok()) return rep;
    const FiniteCategory& c = w.cat;
    const int m = c.n_morphisms();
    if (w.zero < 0 || w.zero >= c.n_objects()) {
        rep.violations.push_back("no zero object");
        return rep;
    }
    if (static_cast<int>(w.is_cof.size()) != m || static_cast<int>(w.is_we.size()) != m) {
        rep.violations.push_back("cofibration/weak-equivalence flag lists have wrong length");
        return rep;
    }

    // zero initial and terminal within the window
    for (int a = 0; a < c.n_objects(); ++a) {
        if (c.hom(w.zero, a).size() != 1)
            rep.violations.push_back("zero not initial at " + c.objects[a]);
        if (c.hom(a, w.zero).size() != 1)
            rep.violations.push_back("zero not terminal at " + c.objects[a]);
    }
    if (!rep.ok()) return rep;

    // subcategory closure for both classes
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) {
            if (!c.composable(g, f)) continue;
            int h = c.compose(g, f);
            if (w.is_cof[g] && w.is_cof[f] && !w.is_cof[h])
                rep.violations.push_back("cofibrations not closed under composition at " +
                                         mor_name(w, g) + "." + mor_name(w, f));
            if (w.is_we[g] && w.is_we[f] && !w.is_we[h])
                rep.violations.push_back("weak equivalences not closed under composition at " +
                                         mor_name(w, g) + "." + mor_name(w, f));
        }

    // every 0 -> A is a cofibration; isomorphisms are cofibrations and
    // weak equivalences
    for (int a = 0; a < c.n_objects(); ++a) {
        int f = w.from_zero(a);
        if (!w.is_cof[f]) rep.violations.push_back("initial morphism to " + c.objects[a] +
                                                   " not flagged as cofibration");
    }
    for (int f = 0; f < m; ++f)
        if (w.iso(f) && (!w.is_cof[f] || !w.is_we[f]))
            rep.violations.push_back("isomorphism " + mor_name(w, f) +
                                     " not flagged cofibration+weak equivalence");

    // pushout rows: typing, commutation, lower-leg cofibration, universal property
    long checks = 0;
    bool truncated = false;
    for (const auto& [key, row] : w.pushouts) {
        const auto& fm = c.morphisms[row.cof];
        const auto& gm = c.morphisms[row.along];
        std::string tag = "pushout(" + mor_name(w, row.cof) + " along " + mor_name(w, row.along) + ")";
        if (!w.is_cof[row.cof]) rep.violations.push_back(tag + ": not a cofibration");
        if (fm.src != gm.src) {
            rep.violations.push_back(tag + ": source mismatch");
            continue;
        }
        if (c.morphisms[row.leg_b].src != fm.dst || c.morphisms[row.leg_b].dst != row.obj ||
            c.morphisms[row.leg_x].src != gm.dst || c.morphisms[row.leg_x].dst != row.obj) {
            rep.violations.push_back(tag + ": ill-typed legs");
            continue;
        }
        if (c.compose(row.leg_b, row.cof) != c.compose(row.leg_x, row.along))
            rep.violations.push_back(tag + ": square does not commute");
        if (!w.is_cof[row.leg_x])
            rep.violations.push_back(tag + ": leg opposite the cofibration is not a cofibration");
        // universal property over in-window cones
        for (int q = 0; q < c.n_objects() && !truncated; ++q) {
            for (int h1 : c.hom(fm.dst, q)) {
                for (int h2 : c.hom(gm.dst, q)) {
                    if (++checks > budget) { truncated = true; break; }
                    if (c.compose(h1, row.cof) != c.compose(h2, row.along)) continue;
                    int found = -1;
                    for (int u : c.hom(row.obj, q))
                        if (c.compose(u, row.leg_b) == h1 && c.compose(u, row.leg_x) == h2) {
                            if (found >= 0) {
                                rep.violations.push_back(tag + ": mediating morphism not unique");
                                break;
                            }
                            found = u;
                        }
                    if (found < 0)
                        rep.violations.push_back(tag + ": universal property fails towards " +
                                                 c.objects[q]);
                }
                if (truncated) break;
            }
        }
    }

    // gluing: comparable recorded spans connected by levelwise weak
    // equivalences must induce a weak equivalence on pushouts
    for (const auto& [k1, r1] : w.pushouts) {
        if (truncated) break;
        for (const auto& [k2, r2] : w.pushouts) {
            if (truncated) break;
            const auto& f1 = c.morphisms[r1.cof];
            const auto& f2 = c.morphisms[r2.cof];
            const auto& g1 = c.morphisms[r1.along];
            const auto& g2 = c.morphisms[r2.along];
            for (int ea : c.hom(f1.src, f2.src)) {
                if (!w.is_we[ea]) continue;
                for (int eb : c.hom(f1.dst, f2.dst)) {
                    if (!w.is_we[eb] || c.compose(eb, r1.cof) != c.compose(r2.cof, ea)) continue;
                    for (int ex : c.hom(g1.dst, g2.dst)) {
                        if (!w.is_we[ex] || c.compose(ex, r1.along) != c.compose(r2.along, ea))
                            continue;
                        if (++checks > budget) { truncated = true; break; }
                        // induced map on the chosen pushouts
                        int h1 = c.compose(r2.leg_b, eb), h2 = c.compose(r2.leg_x, ex);
                        int induced = -1;
                        for (int u : c.hom(r1.obj, r2.obj))
                            if (c.compose(u, r1.leg_b) == h1 && c.compose(u, r1.leg_x) == h2) {
                                induced = u;
                                break;
                            }
                        if (induced < 0)
                            rep.violations.push_back("gluing: no induced map between pushouts of " +
                                                     mor_name(w, r1.cof) + " and " + mor_name(w, r2.cof));
                        else if (!w.is_we[induced])
                            rep.violations.push_back("gluing: induced map " + mor_name(w, induced) +
                                                     " is not a weak equivalence");
                    }
                    if (truncated) break;
                }
                if (truncated) break;
            }
        }
    }

    // coproduct rows
    for (const auto& [key, row] : w.coproducts) {
        std::string tag = "coproduct(" + c.objects[row.a] + ", " + c.objects[row.b] + ")";
        auto typed = [&](int f, int s, int d) {
            return c.morphisms[f].src == s && c.morphisms[f].dst == d;
        };
        if (!typed(row.i1, row.a, row.obj) || !typed(row.i2, row.b, row.obj) ||
            !typed(row.p1, row.obj, row.a) || !typed(row.p2, row.obj, row.b)) {
            rep.violations.push_back(tag + ": ill-typed structure maps");
            continue;
        }
        if (!w.is_cof[row.i1] || !w.is_cof[row.i2])
            rep.violations.push_back(tag + ": inclusions are not cofibrations");
        if (c.compose(row.p1, row.i1) != c.identity[row.a] ||
            c.compose(row.p2, row.i2) != c.identity[row.b])
            rep.violations.push_back(tag + ": projections do not retract the inclusions");
        if (c.compose(row.p2, row.i1) != w.zero_morphism(row.a, row.b) ||
            c.compose(row.p1, row.i2) != w.zero_morphism(row.b, row.a))
            rep.violations.push_back(tag + ": cross projections are not zero");
        // universal property of the pair (i1, i2)
        for (int q = 0; q < c.n_objects() && !truncated; ++q)
            for (int h1 : c.hom(row.a, q)) {
                for (int h2 : c.hom(row.b, q)) {
                    if (++checks > budget) { truncated = true; break; }
                    int found = -1;
                    for (int u : c.hom(row.obj, q))
                        if (c.compose(u, row.i1) == h1 && c.compose(u, row.i2) == h2) {
                            if (found >= 0) {
                                rep.violations.push_back(tag + ": mediating morphism not unique");
                                break;
                            }
                            found = u;
                        }
                    if (found < 0)
                        rep.violations.push_back(tag + ": universal property fails towards " +
                                                 c.objects[q]);
                }
                if (truncated) break;
            }
    }

    // cylinder rows factor the folding map
    for (const auto& [a, row] : w.cylinders) {
        std::string tag = "cylinder(" + c.objects[a] + ")";
        auto typed = [&](int f, int s, int d) {
            return c.morphisms[f].src == s && c.morphisms[f].dst == d;
        };
        if (!typed(row.i0, a, row.obj) || !typed(row.i1, a, row.obj) || !typed(row.p, row.obj, a)) {
            rep.violations.push_back(tag + ": ill-typed structure maps");
            continue;
        }
        if (!w.is_we[row.p]) rep.violations.push_back(tag + ": p is not a weak equivalence");
        if (c.compose(row.p, row.i0) != c.identity[a] || c.compose(row.p, row.i1) != c.identity[a])
            rep.violations.push_back(tag + ": p does not retract i0/i1");
        auto cp = w.coproducts.find({a, a});
        if (cp == w.coproducts.end()) {
            rep.info.push_back(tag + ": coproduct A v A missing, folding cofibration unchecked");
        } else {
            int mediating = -1;
            for (int u : c.hom(cp->second.obj, row.obj))
                if (c.compose(u, cp->second.i1) == row.i0 && c.compose(u, cp->second.i2) == row.i1) {
                    mediating = u;
                    break;
                }
            if (mediating < 0)
                rep.violations.push_back(tag + ": no induced map A v A -> IA in the window");
            else if (!w.is_cof[mediating])
                rep.violations.push_back(tag + ": folding factorization is not a cofibration");
        }
    }

    // informational: 2 out of 3
    long two_of_three = 0;
    for (int g = 0; g < m && !truncated; ++g)
        for (int f = 0; f < m; ++f) {
            if (!c.composable(g, f)) continue;
            if (++checks > budget) { truncated = true; break; }
            int h = c.compose(g, f);
            int wes = (w.is_we[f] ? 1 : 0) + (w.is_we[g] ? 1 : 0) + (w.is_we[h] ? 1 : 0);
            if (wes == 2) ++two_of_three;
        }
    if (two_of_three > 0) {
        std::ostringstream os;
        os << "2-out-of-3 fails on " << two_of_three << " triangle(s)";
        rep.info.push_back(os.str());
    }
    if (truncated) rep.info.push_back("universal-property checks truncated by budget");

    // closure gaps: coproduct rows whose R9 sequences are missing
    for (const auto& [key, row] : w.coproducts) {
        auto s1 = w.pushouts.find({row.i1, w.to_zero(row.a)});
        auto s2 = w.pushouts.find({row.i2, w.to_zero(row.b)});
        if (s1 == w.pushouts.end() || s2 == w.pushouts.end())
            rep.violations.push_back("closure gap: coproduct(" + c.objects[row.a] + ", " +
                                     c.objects[row.b] + ") lacks cofiber sequences for its inclusions");
    }
    return rep;
}

// ---------------------------------------------------------------------------

CofiberSeq cofiber_of(const WaldhausenWindow& w, int cof) {
    if (!w.is_cof[cof]) throw WindowError("cofiber_of: " + mor_name(w, cof) + " is not a cofibration");
    int a = w.cat.morphisms[cof].src;
    auto it = w.pushouts.find({cof, w.to_zero(a)});
    if (it == w.pushouts.end())
        throw WindowError("cofiber_of: missing pushout of " + mor_name(w, cof) + " along A -> 0");
    return CofiberSeq{cof, it->second.obj, it->second.leg_b};
}

std::vector<CofiberSeq> enumerate_cofiber_sequences(const WaldhausenWindow& w) {
    std::vector<CofiberSeq> seqs;
    for (int f = 0; f < w.cat.n_morphisms(); ++f) {
        if (!w.is_cof[f]) continue;
        auto it = w.pushouts.find({f, w.to_zero(w.cat.morphisms[f].src)});
        if (it == w.pushouts.end()) continue;
        seqs.push_back(CofiberSeq{f, it->second.obj, it->second.leg_b});
    }
    return seqs;
}

std::vector<WeOfCofSeq> enumerate_we_of_cofseq(const WaldhausenWindow& w,
                                               const std::vector<CofiberSeq>& seqs, long budget) {
    const FiniteCategory& c = w.cat;
    std::vector<WeOfCofSeq> out;
    // identity instances first so they are never lost to the budget
    for (int s = 0; s < static_cast<int>(seqs.size()); ++s) {
        const CofiberSeq& q = seqs[s];
        out.push_back(WeOfCofSeq{s, s, c.identity[c.morphisms[q.cof].src],
                                 c.identity[c.morphisms[q.cof].dst], c.identity[q.quot]});
    }
    long count = 0;
    for (int s = 0; s < static_cast<int>(seqs.size()); ++s) {
        for (int t = 0; t < static_cast<int>(seqs.size()); ++t) {
            const CofiberSeq& sq = seqs[s];
            const CofiberSeq& tq = seqs[t];
            int sa = c.morphisms[sq.cof].src, sb = c.morphisms[sq.cof].dst;
            int ta = c.morphisms[tq.cof].src, tb = c.morphisms[tq.cof].dst;
            for (int a : c.hom(sa, ta)) {
                if (!w.is_we[a]) continue;
                for (int b : c.hom(sb, tb)) {
                    if (!w.is_we[b]) continue;
                    if (c.compose(b, sq.cof) != c.compose(tq.cof, a)) continue;
                    // c is unique on the epi image; search the hom-set
                    int want = c.compose(tq.proj, b);
                    for (int cc : c.hom(sq.quot, tq.quot)) {
                        if (!w.is_we[cc]) continue;
                        if (c.compose(cc, sq.proj) != want) continue;
                        if (s == t && a == c.identity[sa] && b == c.identity[sb] &&
                            cc == c.identity[sq.quot])
                            continue;  // already listed
                        out.push_back(WeOfCofSeq{s, t, a, b, cc});
                        if (++count >= budget) return out;
                    }
                }
            }
        }
    }
    return out;
}

std::vector<CofPair> enumerate_cof_pairs(const WaldhausenWindow& w,
                                         const std::vector<CofiberSeq>& seqs, long budget) {
    const FiniteCategory& c = w.cat;
    std::map<int, int> seq_of_cof;
    for (int i = 0; i < static_cast<int>(seqs.size()); ++i) seq_of_cof[seqs[i].cof] = i;
    std::vector<CofPair> out;
    long count = 0;
    for (int f = 0; f < c.n_morphisms(); ++f) {
        if (!w.is_cof[f]) continue;
        auto itf = seq_of_cof.find(f);
        if (itf == seq_of_cof.end()) continue;
        for (int b = 0; b < c.n_objects(); ++b) {
            for (int g : c.hom(c.morphisms[f].dst, b)) {
                if (!w.is_cof[g]) continue;
                int gf = c.compose(g, f);
                if (!w.is_cof[gf]) continue;
                auto itg = seq_of_cof.find(g), itgf = seq_of_cof.find(gf);
                if (itg == seq_of_cof.end() || itgf == seq_of_cof.end()) continue;
                const CofiberSeq& sf = seqs[itf->second];
                const CofiberSeq& sg = seqs[itg->second];
                const CofiberSeq& sgf = seqs[itgf->second];
                // comparison maps: j : B/A >-> C/A with j p_f = p_gf g, and the
                // recorded cofiber of j must be (C/B, q) with q p_gf = p_g
                int want_j = c.compose(sgf.proj, g);
                for (int j : c.hom(sf.quot, sgf.quot)) {
                    if (!w.is_cof[j]) continue;
                    if (c.compose(j, sf.proj) != want_j) continue;
                    auto itj = seq_of_cof.find(j);
                    if (itj == seq_of_cof.end()) continue;
                    const CofiberSeq& sj = seqs[itj->second];
                    if (sj.quot != sg.quot) continue;
                    if (c.compose(sj.proj, sgf.proj) != sg.proj) continue;
                    out.push_back(CofPair{f, g, itf->second, itg->second, itgf->second,
                                          itj->second, j, sj.proj});
                    if (++count >= budget) return out;
                    break;  // one instance per (f, g)
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

WindowPresentation present_Dstar(const WaldhausenWindow& w, const PresentOptions& opt) {
    const FiniteCategory& c = w.cat;
    WindowPresentation res;

    std::vector<std::string> gens0;
    for (int a = 0; a < c.n_objects(); ++a) {
        res.obj_gen.push_back(a);
        gens0.push_back("obj:" + c.objects[a]);
    }

    std::vector<std::pair<std::string, Word0>> gens1;
    for (int f = 0; f < c.n_morphisms(); ++f) {
        if (!w.is_we[f]) continue;
        Word0 b{{c.morphisms[f].dst, -1}, {c.morphisms[f].src, 1}};
        res.we_gen[f] = static_cast<int>(gens1.size());
        gens1.emplace_back("we:" + mor_name(w, f), b);
    }
    res.seqs = enumerate_cofiber_sequences(w);
    for (int s = 0; s < static_cast<int>(res.seqs.size()); ++s) {
        const CofiberSeq& q = res.seqs[s];
        Word0 b{{c.morphisms[q.cof].dst, -1}, {q.quot, 1}, {c.morphisms[q.cof].src, 1}};
        res.seq_gen[q.cof] = static_cast<int>(gens1.size());
        gens1.emplace_back("cof:" + mor_name(w, q.cof) + "/" + c.objects[q.quot], b);
    }
    auto we_sym = [&](int f) { return Expr1::gen1(res.we_gen.at(f)); };
    auto seq_sym = [&](int s) { return Expr1::gen1(res.seq_gen.at(res.seqs[s].cof)); };
    auto obj_word = [&](int a) { return Word0{{a, 1}}; };

    std::vector<Word0> rels0;
    rels0.push_back(Word0{{w.zero, 1}});  // [0] = 0

    std::vector<Expr1> rels1;
    // identity weak equivalences die
    for (int a = 0; a < c.n_objects(); ++a)
        if (res.we_gen.count(c.identity[a])) rels1.push_back(we_sym(c.identity[a]));
    // degenerate cofiber sequences die
    for (int s = 0; s < static_cast<int>(res.seqs.size()); ++s) {
        const CofiberSeq& q = res.seqs[s];
        int a = c.morphisms[q.cof].src;
        if (q.cof == c.identity[a] && q.quot == w.zero) rels1.push_back(seq_sym(s));
        if (a == w.zero && q.proj == c.identity[q.quot]) rels1.push_back(seq_sym(s));
    }
    // composites of weak equivalences
    long count = 0;
    for (const auto& [f, fg] : res.we_gen) {
        for (int b = 0; b < c.n_objects() && count < opt.budget; ++b)
            for (int g : c.hom(c.morphisms[f].dst, b)) {
                if (!w.is_we[g]) continue;
                int h = c.compose(g, f);
                if (!w.is_we[h]) continue;  // 2-out-of-3 gap, flagged by validation
                rels1.push_back(Expr1::sum({Expr1::neg(we_sym(h)), we_sym(g), we_sym(f)}));
                ++count;
            }
    }
    // weak equivalences of cofiber sequences
    res.wecs = enumerate_we_of_cofseq(w, res.seqs, opt.budget);
    for (const WeOfCofSeq& i : res.wecs) {
        int a_obj = c.morphisms[res.seqs[i.src_seq].cof].src;
        Expr1 lhs = Expr1::sum({we_sym(i.a), Expr1::action(we_sym(i.c), obj_word(a_obj))});
        rels1.push_back(Expr1::sum({Expr1::neg(lhs), Expr1::neg(seq_sym(i.dst_seq)), we_sym(i.b),
                                    seq_sym(i.src_seq)}));
    }
    // pairs of composable cofibrations
    res.cof_pairs = enumerate_cof_pairs(w, res.seqs, opt.budget);
    for (const CofPair& i : res.cof_pairs) {
        int a_obj = c.morphisms[i.f].src;
        Expr1 lhs = Expr1::sum({seq_sym(i.seq_g), seq_sym(i.seq_f)});
        Expr1 rhs = Expr1::sum({seq_sym(i.seq_gf), Expr1::action(seq_sym(i.seq_j), obj_word(a_obj))});
        rels1.push_back(Expr1::sum({Expr1::neg(lhs), rhs}));
    }
    // brackets via coproducts
    std::map<int, int> seq_of_cof;
    for (int s = 0; s < static_cast<int>(res.seqs.size()); ++s) seq_of_cof[res.seqs[s].cof] = s;
    for (const auto& [key, row] : w.coproducts) {
        auto s1 = seq_of_cof.find(row.i1), s2 = seq_of_cof.find(row.i2);
        if (s1 == seq_of_cof.end() || s2 == seq_of_cof.end())
            throw WindowError("closure gap: missing cofiber sequences for coproduct inclusions of (" +
                              c.objects[row.a] + ", " + c.objects[row.b] + ")");
        const CofiberSeq& q1 = res.seqs[s1->second];
        const CofiberSeq& q2 = res.seqs[s2->second];
        if (q1.quot != row.b || q1.proj != row.p2 || q2.quot != row.a || q2.proj != row.p1)
            throw WindowError("closure gap: coproduct cofiber sequences of (" + c.objects[row.a] +
                              ", " + c.objects[row.b] + ") do not match the projections");
        rels1.push_back(Expr1::sum({Expr1::neg(Expr1::bracket(obj_word(row.a), obj_word(row.b))),
                                    Expr1::neg(seq_sym(s2->second)), seq_sym(s1->second)}));
    }

    res.pres = std::make_shared<SquadPresentation>(std::move(gens0), std::move(gens1),
                                                   std::move(rels0), std::move(rels1));
    return res;
}

}  // namespace squadk
