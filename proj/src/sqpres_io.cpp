#include "sqpres_io.hpp"

#include <fstream>
#include <sstream>

#include "wcat_io.hpp"  // ParseError

namespace squadk {

namespace {

bool name_char(char c) {
    return isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '/' || c == '.';
}

bool valid_gen_name(const std::string& s) {
    if (s.empty() || !isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!name_char(c)) return false;
    return true;
}

std::string word_text(const SquadPresentation& p, const Word0& w) {
    std::ostringstream os;
    bool first = true;
    for (auto [g, s] : w.syms) {
        if (!first) os << ' ';
        os << (s > 0 ? '+' : '-') << p.gens0()[g];
        first = false;
    }
    return os.str();
}

void expr_text(const SquadPresentation& p, const Expr1& e, std::ostringstream& os, bool lead_sign);

void factor_text(const SquadPresentation& p, const Expr1& e, std::ostringstream& os) {
    switch (e.kind) {
        case Expr1::Kind::Zero:
            os << '0';
            return;
        case Expr1::Kind::Gen:
            os << p.gens1()[e.gen].first;
            return;
        case Expr1::Kind::Bracket:
            os << '<' << word_text(p, e.w1) << '|' << word_text(p, e.w2) << '>';
            return;
        case Expr1::Kind::Action:
            os << '(';
            expr_text(p, e.args[0], os, true);
            os << ")^(" << word_text(p, e.w1) << ')';
            return;
        default:
            os << '(';
            expr_text(p, e, os, true);
            os << ')';
            return;
    }
}

void expr_text(const SquadPresentation& p, const Expr1& e, std::ostringstream& os, bool lead_sign) {
    if (e.kind == Expr1::Kind::Sum) {
        bool first = true;
        for (const Expr1& a : e.args) {
            if (!first) os << ' ';
            if (a.kind == Expr1::Kind::Neg) {
                os << '-';
                factor_text(p, a.args[0], os);
            } else {
                os << '+';
                factor_text(p, a, os);
            }
            first = false;
        }
        if (first) os << '0';
        return;
    }
    if (e.kind == Expr1::Kind::Neg) {
        os << '-';
        factor_text(p, e.args[0], os);
        return;
    }
    if (lead_sign && e.kind != Expr1::Kind::Zero) os << '+';
    factor_text(p, e, os);
}

struct ExprParser {
    const std::string& s;
    size_t pos = 0;
    int line;
    const std::map<std::string, int>& g0;
    const std::map<std::string, int>& g1;

    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << "sqpres parse error at line " << line << ": " << msg;
        throw ParseError(os.str());
    }
    void skip_ws() {
        while (pos < s.size() && isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    std::string name() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && name_char(s[pos])) ++pos;
        if (start == pos) fail("expected a name");
        return s.substr(start, pos - start);
    }

    Word0 word(char terminator1, char terminator2) {
        Word0 w;
        for (;;) {
            char c = peek();
            if (c == terminator1 || c == terminator2 || c == '\0') return w;
            int sign;
            if (eat('+'))
                sign = 1;
            else if (eat('-'))
                sign = -1;
            else
                fail("expected '+' or '-' in word");
            std::string n = name();
            auto it = g0.find(n);
            if (it == g0.end()) fail("unknown degree-0 symbol '" + n + "'");
            w.syms.emplace_back(it->second, sign);
        }
    }

    Expr1 factor() {
        char c = peek();
        if (c == '0') {
            ++pos;
            return Expr1::zero();
        }
        if (c == '<') {
            ++pos;
            Word0 a = word('|', '>');
            if (!eat('|')) fail("expected '|' in bracket");
            Word0 b = word('>', '>');
            if (!eat('>')) fail("expected '>' closing bracket");
            return Expr1::bracket(std::move(a), std::move(b));
        }
        if (c == '(') {
            ++pos;
            Expr1 inner = expr();
            if (!eat(')')) fail("expected ')'");
            if (peek() == '^') {
                ++pos;
                if (!eat('(')) fail("expected '(' after '^'");
                Word0 wexp = word(')', ')');
                if (!eat(')')) fail("expected ')' closing action word");
                return Expr1::action(std::move(inner), std::move(wexp));
            }
            return inner;
        }
        std::string n = name();
        auto it = g1.find(n);
        if (it == g1.end()) fail("unknown degree-1 symbol '" + n + "'");
        return Expr1::gen1(it->second);
    }

    Expr1 expr() {
        std::vector<Expr1> terms;
        for (;;) {
            char c = peek();
            if (c == ')' || c == '\0') break;
            if (eat('+')) {
                terms.push_back(factor());
            } else if (eat('-')) {
                terms.push_back(Expr1::neg(factor()));
            } else if (terms.empty() && c == '0') {
                ++pos;
                terms.push_back(Expr1::zero());
                break;
            } else {
                fail("expected a signed term");
            }
        }
        if (terms.empty()) return Expr1::zero();
        if (terms.size() == 1) {
            // single positive factor or single negation collapses
            if (terms[0].kind == Expr1::Kind::Zero) return Expr1::zero();
            return std::move(terms[0]);
        }
        return Expr1::sum(std::move(terms));
    }
};

}  // namespace

std::string to_sqpres(const SquadPresentation& p) {
    for (const std::string& n : p.gens0())
        if (!valid_gen_name(n)) throw SquadError("to_sqpres: bad generator name '" + n + "'");
    for (const auto& [n, b] : p.gens1())
        if (!valid_gen_name(n)) throw SquadError("to_sqpres: bad generator name '" + n + "'");
    std::ostringstream os;
    os << "gens0:\n";
    for (const std::string& n : p.gens0()) os << "  " << n << "\n";
    os << "gens1:\n";
    for (const auto& [n, b] : p.gens1()) os << "  " << n << " := " << word_text(p, b) << "\n";
    os << "rels0:\n";
    for (const Word0& w : p.rels0()) os << "  " << word_text(p, w) << "\n";
    os << "rels1:\n";
    for (const Expr1& e : p.rels1()) {
        std::ostringstream line;
        expr_text(p, e, line, true);
        os << "  " << line.str() << "\n";
    }
    return os.str();
}

SquadPresentation parse_sqpres(const std::string& text) {
    enum Section { None, G0, G1, R0, R1 };
    Section sec = None;
    struct Line { std::string body; int no; };
    std::vector<std::string> gens0;
    std::vector<Line> g1_lines, r0_lines, r1_lines;
    std::map<std::string, int> g0_idx;

    std::istringstream is(text);
    std::string raw;
    int line = 0;
    auto strip = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        size_t b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    };
    while (std::getline(is, raw)) {
        ++line;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string t = strip(raw);
        if (t.empty()) continue;
        if (t == "gens0:") { sec = G0; continue; }
        if (t == "gens1:") { sec = G1; continue; }
        if (t == "rels0:") { sec = R0; continue; }
        if (t == "rels1:") { sec = R1; continue; }
        switch (sec) {
            case None: {
                std::ostringstream os;
                os << "sqpres parse error at line " << line << ": content before any section";
                throw ParseError(os.str());
            }
            case G0: {
                if (!valid_gen_name(t) || g0_idx.count(t)) {
                    std::ostringstream os;
                    os << "sqpres parse error at line " << line << ": bad or duplicate generator '"
                       << t << "'";
                    throw ParseError(os.str());
                }
                g0_idx[t] = static_cast<int>(gens0.size());
                gens0.push_back(t);
                break;
            }
            case G1:
                g1_lines.push_back({t, line});
                break;
            case R0:
                r0_lines.push_back({t, line});
                break;
            case R1:
                r1_lines.push_back({t, line});
                break;
        }
    }

    std::vector<std::pair<std::string, Word0>> gens1;
    std::map<std::string, int> g1_idx;
    for (const Line& l : g1_lines) {
        size_t sep = l.body.find(" :=");
        std::string n = sep == std::string::npos ? l.body : strip(l.body.substr(0, sep));
        std::string rest = sep == std::string::npos ? "" : l.body.substr(sep + 3);
        if (!valid_gen_name(n) || g1_idx.count(n)) {
            std::ostringstream os;
            os << "sqpres parse error at line " << l.no << ": bad or duplicate generator '" << n << "'";
            throw ParseError(os.str());
        }
        ExprParser ep{rest, 0, l.no, g0_idx, g1_idx};
        Word0 b = ep.word('\0', '\0');
        g1_idx[n] = static_cast<int>(gens1.size());
        gens1.emplace_back(n, std::move(b));
    }
    std::vector<Word0> rels0;
    for (const Line& l : r0_lines) {
        ExprParser ep{l.body, 0, l.no, g0_idx, g1_idx};
        rels0.push_back(ep.word('\0', '\0'));
    }
    std::vector<Expr1> rels1;
    for (const Line& l : r1_lines) {
        ExprParser ep{l.body, 0, l.no, g0_idx, g1_idx};
        rels1.push_back(ep.expr());
        ep.skip_ws();
        if (ep.pos != l.body.size()) {
            std::ostringstream os;
            os << "sqpres parse error at line " << l.no << ": trailing input";
            throw ParseError(os.str());
        }
    }
    return SquadPresentation(std::move(gens0), std::move(gens1), std::move(rels0), std::move(rels1));
}

SquadPresentation load_sqpres_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_sqpres(os.str());
}

void save_sqpres_file(const SquadPresentation& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SquadError("cannot write " + path);
    out << to_sqpres(p);
}

}  // namespace squadk
