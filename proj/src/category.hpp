#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace squadk {

struct WindowError : std::runtime_error {
    explicit WindowError(const std::string& what) : std::runtime_error(what) {}
};

/// Findings are split into hard violations and informational flags; a window
/// is valid when `violations` is empty.
struct Report {
    std::vector<std::string> violations;
    std::vector<std::string> info;
    bool ok() const { return violations.empty(); }
};

/// Finite category with a total composition table and per-object identities.
struct FiniteCategory {
    struct Mor {
        std::string name;
        int src = -1, dst = -1;
    };

    std::vector<std::string> objects;
    std::vector<Mor> morphisms;
    std::vector<int> identity;  // per object
    std::vector<int> comp;      // comp[g*M+f] = index of g o f, -1 if not composable

    int n_objects() const { return static_cast<int>(objects.size()); }
    int n_morphisms() const { return static_cast<int>(morphisms.size()); }

    int compose(int g, int f) const;
    void set_compose(int g, int f, int h);
    bool composable(int g, int f) const {
        return morphisms[f].dst == morphisms[g].src;
    }

    int object_index(const std::string& name) const;  // -1 when absent
    int morphism_index(const std::string& name) const;

    /// Morphism indices from a to b, ascending.
    const std::vector<int>& hom(int a, int b) const;

    void build_index();

    /// Identity and associativity laws over the full table.
    Report validate() const;

private:
    std::map<std::string, int> obj_idx_, mor_idx_;
    std::vector<std::vector<std::vector<int>>> hom_;
};

}  // namespace squadk
