#include "wcat_io.hpp"

#include <fstream>
#include <sstream>

namespace squadk {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    std::ostringstream os;
    os << "wcat parse error at line " << line << ": " << msg;
    throw ParseError(os.str());
}

std::vector<std::string> tokenize(const std::string& s) {
    // separators: whitespace, commas, parens; '.'/':'/'='/'->' become tokens
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    };
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '#') break;
        if (isspace(static_cast<unsigned char>(c)) || c == ',' || c == '(' || c == ')') {
            flush();
            continue;
        }
        if (c == ':' || c == '=' || c == '.') {
            flush();
            out.push_back(std::string(1, c));
            continue;
        }
        if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            flush();
            out.push_back("->");
            ++i;
            continue;
        }
        cur.push_back(c);
    }
    flush();
    return out;
}

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

}  // namespace

WaldhausenWindow parse_wcat(const std::string& text) {
    WaldhausenWindow w;
    FiniteCategory& cat = w.cat;
    std::map<std::string, int> obj_names, mor_names;

    enum Section { None, Objects, Zero, Morphisms, Compose, Cofib, We, Pushout, Coproduct, Cylinder };
    Section sec = None;
    std::string zero_name;
    struct ComposeLine { std::string g, f, h; int line; };
    struct FlagLine { std::string name; int line; };
    struct PushLine { std::string f, g, p, l1, l2; int line; };
    struct CopLine { std::string a, b, c, i1, i2, p1, p2; int line; };
    struct CylLine { std::string a, ia, i0, i1, p; int line; };
    std::vector<ComposeLine> compose_lines;
    std::vector<FlagLine> cof_lines, we_lines;
    std::vector<PushLine> push_lines;
    std::vector<CopLine> cop_lines;
    std::vector<CylLine> cyl_lines;

    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::vector<std::string> t = tokenize(raw);
        if (t.empty()) continue;
        if (t[0] == "[objects]") { sec = Objects; continue; }
        if (t[0] == "[zero]") { sec = Zero; continue; }
        if (t[0] == "[morphisms]") { sec = Morphisms; continue; }
        if (t[0] == "[compose]") { sec = Compose; continue; }
        if (t[0] == "[cofibrations]") { sec = Cofib; continue; }
        if (t[0] == "[weak_equivalences]") { sec = We; continue; }
        if (t[0] == "[pushout]") { sec = Pushout; continue; }
        if (t[0] == "[coproduct]") { sec = Coproduct; continue; }
        if (t[0] == "[cylinder]") { sec = Cylinder; continue; }
        if (t[0].size() > 1 && t[0][0] == '[') fail(line, "unknown section " + t[0]);
        switch (sec) {
            case None:
                fail(line, "content before any section header");
            case Objects:
                for (const std::string& name : t) {
                    if (!valid_name(name)) fail(line, "bad object name '" + name + "'");
                    if (!obj_names.emplace(name, cat.n_objects()).second)
                        fail(line, "duplicate object " + name);
                    cat.objects.push_back(name);
                }
                break;
            case Zero:
                if (t.size() != 1) fail(line, "expected a single object name");
                zero_name = t[0];
                break;
            case Morphisms: {
                // f : A -> B
                if (t.size() != 5 || t[1] != ":" || t[3] != "->") fail(line, "expected 'f: A -> B'");
                if (!valid_name(t[0])) fail(line, "bad morphism name '" + t[0] + "'");
                if (!obj_names.count(t[2])) fail(line, "unknown object " + t[2]);
                if (!obj_names.count(t[4])) fail(line, "unknown object " + t[4]);
                if (!mor_names.emplace(t[0], cat.n_morphisms()).second)
                    fail(line, "duplicate morphism " + t[0]);
                cat.morphisms.push_back({t[0], obj_names[t[2]], obj_names[t[4]]});
                break;
            }
            case Compose:
                // g . f = h
                if (t.size() != 5 || t[1] != "." || t[3] != "=") fail(line, "expected 'g.f = h'");
                compose_lines.push_back({t[0], t[2], t[4], line});
                break;
            case Cofib:
                for (const std::string& name : t) cof_lines.push_back({name, line});
                break;
            case We:
                for (const std::string& name : t) we_lines.push_back({name, line});
                break;
            case Pushout:
                // f along g = (P, l1, l2)
                if (t.size() != 7 || t[1] != "along" || t[3] != "=")
                    fail(line, "expected 'f along g = (P, l1, l2)'");
                push_lines.push_back({t[0], t[2], t[4], t[5], t[6], line});
                break;
            case Coproduct:
                // A B = (C, i1, i2, p1, p2)
                if (t.size() != 8 || t[2] != "=") fail(line, "expected 'A B = (C, i1, i2, p1, p2)'");
                cop_lines.push_back({t[0], t[1], t[3], t[4], t[5], t[6], t[7], line});
                break;
            case Cylinder:
                // A = (IA, i0, i1, p)
                if (t.size() != 6 || t[1] != "=") fail(line, "expected 'A = (IA, i0, i1, p)'");
                cyl_lines.push_back({t[0], t[2], t[3], t[4], t[5], line});
                break;
        }
    }

    if (zero_name.empty()) throw ParseError("wcat parse error: no [zero] section");
    cat.build_index();
    w.zero = cat.object_index(zero_name);
    if (w.zero < 0) throw ParseError("wcat parse error: unknown zero object " + zero_name);

    const int m = cat.n_morphisms();
    cat.comp.assign(static_cast<size_t>(m) * m, -1);
    auto mor = [&](const std::string& name, int line) {
        int i = cat.morphism_index(name);
        if (i < 0) fail(line, "unknown morphism " + name);
        return i;
    };
    auto obj = [&](const std::string& name, int line) {
        int i = cat.object_index(name);
        if (i < 0) fail(line, "unknown object " + name);
        return i;
    };
    for (const auto& cl : compose_lines) {
        int g = mor(cl.g, cl.line), f = mor(cl.f, cl.line), h = mor(cl.h, cl.line);
        if (!cat.composable(g, f)) fail(cl.line, "pair " + cl.g + "." + cl.f + " is not composable");
        cat.set_compose(g, f, h);
    }
    // infer identities: e acts neutrally on every recorded composite
    cat.identity.assign(cat.n_objects(), -1);
    for (int a = 0; a < cat.n_objects(); ++a) {
        for (int e : cat.hom(a, a)) {
            bool good = true;
            for (int f = 0; f < m && good; ++f) {
                if (cat.morphisms[f].dst == a && cat.comp[static_cast<size_t>(e) * m + f] != f)
                    good = false;
                if (cat.morphisms[f].src == a && cat.comp[static_cast<size_t>(f) * m + e] != f)
                    good = false;
            }
            if (good) {
                if (cat.identity[a] >= 0)
                    throw ParseError("wcat parse error: two identity candidates for object " +
                                     cat.objects[a]);
                cat.identity[a] = e;
            }
        }
        if (cat.identity[a] < 0)
            throw ParseError("wcat parse error: no identity morphism for object " + cat.objects[a] +
                             " (composition table incomplete?)");
    }

    w.is_cof.assign(m, 0);
    w.is_we.assign(m, 0);
    for (const auto& fl : cof_lines) w.is_cof[mor(fl.name, fl.line)] = 1;
    for (const auto& fl : we_lines) w.is_we[mor(fl.name, fl.line)] = 1;

    for (const auto& pl : push_lines) {
        int f = mor(pl.f, pl.line), g = mor(pl.g, pl.line);
        PushoutRow row{f, g, obj(pl.p, pl.line), mor(pl.l1, pl.line), mor(pl.l2, pl.line)};
        if (w.pushouts.count({f, g})) fail(pl.line, "duplicate pushout row");
        w.pushouts[{f, g}] = row;
    }
    for (const auto& cl : cop_lines) {
        int a = obj(cl.a, cl.line), b = obj(cl.b, cl.line);
        CoproductRow row{a, b, obj(cl.c, cl.line), mor(cl.i1, cl.line), mor(cl.i2, cl.line),
                         mor(cl.p1, cl.line), mor(cl.p2, cl.line)};
        if (w.coproducts.count({a, b})) fail(cl.line, "duplicate coproduct row");
        w.coproducts[{a, b}] = row;
    }
    for (const auto& cl : cyl_lines) {
        int a = obj(cl.a, cl.line);
        CylinderRow row{a, obj(cl.ia, cl.line), mor(cl.i0, cl.line), mor(cl.i1, cl.line),
                        mor(cl.p, cl.line)};
        if (w.cylinders.count(a)) fail(cl.line, "duplicate cylinder row");
        w.cylinders[a] = row;
    }
    return w;
}

std::string to_wcat(const WaldhausenWindow& w) {
    const FiniteCategory& c = w.cat;
    for (const std::string& n : c.objects)
        if (!valid_name(n)) throw WindowError("to_wcat: object name '" + n + "' not serializable");
    for (const auto& m : c.morphisms)
        if (!valid_name(m.name)) throw WindowError("to_wcat: morphism name '" + m.name + "' not serializable");
    std::ostringstream os;
    os << "[objects]\n";
    for (const std::string& n : c.objects) os << n << "\n";
    os << "[zero]\n" << c.objects[w.zero] << "\n";
    os << "[morphisms]\n";
    for (const auto& m : c.morphisms)
        os << m.name << ": " << c.objects[m.src] << " -> " << c.objects[m.dst] << "\n";
    os << "[compose]\n";
    for (int g = 0; g < c.n_morphisms(); ++g)
        for (int f = 0; f < c.n_morphisms(); ++f)
            if (c.composable(g, f))
                os << c.morphisms[g].name << "." << c.morphisms[f].name << " = "
                   << c.morphisms[c.compose(g, f)].name << "\n";
    os << "[cofibrations]\n";
    for (int f = 0; f < c.n_morphisms(); ++f)
        if (w.is_cof[f]) os << c.morphisms[f].name << "\n";
    os << "[weak_equivalences]\n";
    for (int f = 0; f < c.n_morphisms(); ++f)
        if (w.is_we[f]) os << c.morphisms[f].name << "\n";
    os << "[pushout]\n";
    for (const auto& [key, row] : w.pushouts)
        os << c.morphisms[row.cof].name << " along " << c.morphisms[row.along].name << " = ("
           << c.objects[row.obj] << ", " << c.morphisms[row.leg_b].name << ", "
           << c.morphisms[row.leg_x].name << ")\n";
    os << "[coproduct]\n";
    for (const auto& [key, row] : w.coproducts)
        os << c.objects[row.a] << " " << c.objects[row.b] << " = (" << c.objects[row.obj] << ", "
           << c.morphisms[row.i1].name << ", " << c.morphisms[row.i2].name << ", "
           << c.morphisms[row.p1].name << ", " << c.morphisms[row.p2].name << ")\n";
    os << "[cylinder]\n";
    for (const auto& [a, row] : w.cylinders)
        os << c.objects[a] << " = (" << c.objects[row.obj] << ", " << c.morphisms[row.i0].name
           << ", " << c.morphisms[row.i1].name << ", " << c.morphisms[row.p].name << ")\n";
    return os.str();
}

WaldhausenWindow load_wcat_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_wcat(os.str());
}

void save_wcat_file(const WaldhausenWindow& w, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw WindowError("cannot write " + path);
    out << to_wcat(w);
}

}  // namespace squadk
