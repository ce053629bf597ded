#include "category.hpp"

#include <sstream>

namespace squadk {

int FiniteCategory::compose(int g, int f) const {
    int h = comp[static_cast<size_t>(g) * morphisms.size() + f];
    if (h < 0) {
        std::ostringstream os;
        os << "composite " << morphisms[g].name << "." << morphisms[f].name << " undefined";
        throw WindowError(os.str());
    }
    return h;
}

void FiniteCategory::set_compose(int g, int f, int h) {
    comp[static_cast<size_t>(g) * morphisms.size() + f] = h;
}

int FiniteCategory::object_index(const std::string& name) const {
    auto it = obj_idx_.find(name);
    return it == obj_idx_.end() ? -1 : it->second;
}

int FiniteCategory::morphism_index(const std::string& name) const {
    auto it = mor_idx_.find(name);
    return it == mor_idx_.end() ? -1 : it->second;
}

const std::vector<int>& FiniteCategory::hom(int a, int b) const { return hom_[a][b]; }

void FiniteCategory::build_index() {
    obj_idx_.clear();
    mor_idx_.clear();
    for (int i = 0; i < n_objects(); ++i) obj_idx_[objects[i]] = i;
    for (int i = 0; i < n_morphisms(); ++i) mor_idx_[morphisms[i].name] = i;
    hom_.assign(n_objects(), std::vector<std::vector<int>>(n_objects()));
    for (int i = 0; i < n_morphisms(); ++i) hom_[morphisms[i].src][morphisms[i].dst].push_back(i);
}

Report FiniteCategory::validate() const {
    Report rep;
    const int m = n_morphisms();
    if (static_cast<int>(identity.size()) != n_objects()) {
        rep.violations.push_back("identity list has wrong length");
        return rep;
    }
    for (int a = 0; a < n_objects(); ++a) {
        int e = identity[a];
        if (e < 0 || e >= m || morphisms[e].src != a || morphisms[e].dst != a) {
            rep.violations.push_back("object " + objects[a] + " has no valid identity");
            continue;
        }
    }
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) {
            int h = comp[static_cast<size_t>(g) * m + f];
            if (composable(g, f)) {
                if (h < 0) {
                    rep.violations.push_back("missing composite " + morphisms[g].name + "." +
                                             morphisms[f].name);
                    continue;
                }
                if (morphisms[h].src != morphisms[f].src || morphisms[h].dst != morphisms[g].dst)
                    rep.violations.push_back("ill-typed composite " + morphisms[g].name + "." +
                                             morphisms[f].name);
            } else if (h >= 0) {
                rep.violations.push_back("composite recorded for non-composable pair " +
                                         morphisms[g].name + "." + morphisms[f].name);
            }
        }
    if (!rep.ok()) return rep;
    for (int f = 0; f < m; ++f) {
        if (compose(identity[morphisms[f].dst], f) != f || compose(f, identity[morphisms[f].src]) != f) {
            rep.violations.push_back("identity law fails at " + morphisms[f].name);
        }
    }
    for (int g = 0; g < m; ++g) {
        const int gs = morphisms[g].src, gd = morphisms[g].dst;
        for (int c = 0; c < n_objects(); ++c) {
            for (int h : hom(gd, c)) {
                int hg = compose(h, g);
                for (int a = 0; a < n_objects(); ++a)
                    for (int f : hom(a, gs))
                        if (compose(hg, f) != compose(h, compose(g, f)))
                            rep.violations.push_back("associativity fails at " + morphisms[h].name +
                                                     "." + morphisms[g].name + "." +
                                                     morphisms[f].name);
            }
        }
    }
    return rep;
}

}  // namespace squadk
