#include "pearl/fo.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

namespace pearl {

struct FOFormula::Node {
    FOKind kind;
    std::vector<FOTerm> terms;
    std::vector<FOFormula> args;
    WorldVar bound;
    unsigned prop = 0;
    std::string name;
};

namespace {

std::string subscript(unsigned k) {
    static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
    std::string s;
    for (char c : std::to_string(k)) s += digits[c - '0'];
    return s;
}

std::string show_term(const FOTerm& t) {
    std::string s = var_name(t.var);
    for (unsigned k = 0; k < t.stars; ++k) s += "*";
    return s;
}

int level(const FOFormula& f) {
    switch (f.kind()) {
        case FOKind::Implies: return 1;
        case FOKind::Or: return 2;
        case FOKind::And: return 3;
        default: return 4;
    }
}

void show_into(std::string& out, const FOFormula& f) {
    auto sub = [&](const FOFormula& g, bool parens) {
        if (parens) out += "(";
        show_into(out, g);
        if (parens) out += ")";
    };
    const auto& t = f.terms();
    switch (f.kind()) {
        case FOKind::True: out += "⊤"; return;
        case FOKind::False: out += "⊥"; return;
        case FOKind::R: out += "R" + show_term(t[0]) + show_term(t[1]) + show_term(t[2]); return;
        case FOKind::O: out += "O" + show_term(t[0]); return;
        case FOKind::Leq: out += show_term(t[0]) + " ⪯ " + show_term(t[1]); return;
        case FOKind::Eq: out += show_term(t[0]) + " = " + show_term(t[1]); return;
        case FOKind::Prop: out += f.prop_name() + "(" + show_term(t[0]) + ")"; return;
        case FOKind::Not: {
            const auto& g = f.arg(0);
            if (g.kind() == FOKind::Leq) {
                out += show_term(g.terms()[0]) + " ⋠ " + show_term(g.terms()[1]);
                return;
            }
            out += "¬";
            sub(g, level(g) < 4 || g.kind() == FOKind::Eq);
            return;
        }
        case FOKind::And:
        case FOKind::Or:
        case FOKind::Implies: {
            const char* sym = f.kind() == FOKind::And ? " ∧ " : f.kind() == FOKind::Or ? " ∨ " : " → ";
            int l = level(f);
            bool imp = l == 1;
            sub(f.arg(0), imp ? level(f.arg(0)) <= l : level(f.arg(0)) < l);
            out += sym;
            sub(f.arg(1), level(f.arg(1)) <= l);
            return;
        }
        case FOKind::Forall:
        case FOKind::Exists: {
            out += f.kind() == FOKind::Forall ? "∀" : "∃";
            const FOFormula* cur = &f;
            while (cur->kind() == f.kind()) {
                out += var_name(cur->bound());
                cur = &cur->arg(0);
            }
            out += "(";
            show_into(out, *cur);
            out += ")";
            return;
        }
    }
}

void collect_free(const FOFormula& f, std::set<WorldVar>& bound, std::set<WorldVar>& out) {
    for (const auto& t : f.terms())
        if (!bound.count(t.var)) out.insert(t.var);
    if (f.is_quantifier()) {
        bool fresh = bound.insert(f.bound()).second;
        collect_free(f.arg(0), bound, out);
        if (fresh) bound.erase(f.bound());
        return;
    }
    for (const auto& g : f.args()) collect_free(g, bound, out);
}

bool alpha_rec(const FOFormula& a, const FOFormula& b, std::map<WorldVar, WorldVar>& ab,
               std::map<WorldVar, WorldVar>& ba) {
    if (a.kind() != b.kind()) return false;
    auto same_var = [&](const WorldVar& x, const WorldVar& y) {
        auto i = ab.find(x);
        auto j = ba.find(y);
        if (i == ab.end() && j == ba.end()) return x == y;
        return i != ab.end() && j != ba.end() && i->second == y && j->second == x;
    };
    if (a.terms().size() != b.terms().size()) return false;
    for (std::size_t k = 0; k < a.terms().size(); ++k) {
        const auto& s = a.terms()[k];
        const auto& t = b.terms()[k];
        if (s.stars != t.stars || !same_var(s.var, t.var)) return false;
    }
    if (a.kind() == FOKind::Prop && a.prop_index() != b.prop_index()) return false;
    if (a.is_quantifier()) {
        auto save_ab = ab.find(a.bound()) != ab.end() ? std::optional(ab[a.bound()]) : std::nullopt;
        auto save_ba = ba.find(b.bound()) != ba.end() ? std::optional(ba[b.bound()]) : std::nullopt;
        ab[a.bound()] = b.bound();
        ba[b.bound()] = a.bound();
        bool ok = alpha_rec(a.arg(0), b.arg(0), ab, ba);
        if (save_ab) ab[a.bound()] = *save_ab; else ab.erase(a.bound());
        if (save_ba) ba[b.bound()] = *save_ba; else ba.erase(b.bound());
        return ok;
    }
    if (a.args().size() != b.args().size()) return false;
    for (std::size_t k = 0; k < a.args().size(); ++k)
        if (!alpha_rec(a.arg(k), b.arg(k), ab, ba)) return false;
    return true;
}

unsigned max_index(const FOFormula& f, Family fam) {
    unsigned m = 0;
    for (const auto& t : f.terms())
        if (t.var.family == fam) m = std::max(m, t.var.index + 1);
    if (f.is_quantifier() && f.bound().family == fam) m = std::max(m, f.bound().index + 1);
    for (const auto& g : f.args()) m = std::max(m, max_index(g, fam));
    return m;
}

FOFormula map_atoms(const FOFormula& f, const std::function<FOFormula(const FOFormula&)>& fn) {
    switch (f.kind()) {
        case FOKind::Not: return FOFormula::negate(map_atoms(f.arg(0), fn));
        case FOKind::And: return FOFormula::conj(map_atoms(f.arg(0), fn), map_atoms(f.arg(1), fn));
        case FOKind::Or: return FOFormula::disj(map_atoms(f.arg(0), fn), map_atoms(f.arg(1), fn));
        case FOKind::Implies: return FOFormula::implies(map_atoms(f.arg(0), fn), map_atoms(f.arg(1), fn));
        case FOKind::Forall: return FOFormula::forall(f.bound(), map_atoms(f.arg(0), fn));
        case FOKind::Exists: return FOFormula::exists(f.bound(), map_atoms(f.arg(0), fn));
        default: return fn(f);
    }
}

nlohmann::json term_json(const FOTerm& t) {
    nlohmann::json j = {{"var", var_name(t.var)}};
    if (t.stars) j["stars"] = t.stars;
    return j;
}

}  // namespace

FOFormula FOFormula::build(FOKind k, std::vector<FOTerm> ts, std::vector<FOFormula> as, WorldVar v, unsigned prop,
                           std::string name) {
    return FOFormula(std::make_shared<const Node>(Node{k, std::move(ts), std::move(as), v, prop, std::move(name)}));
}

FOFormula::FOFormula() : FOFormula(truth()) {}

FOFormula FOFormula::truth() {
    static const FOFormula f = build(FOKind::True, {}, {});
    return f;
}
FOFormula FOFormula::falsity() {
    static const FOFormula f = build(FOKind::False, {}, {});
    return f;
}
FOFormula FOFormula::rel(FOTerm a, FOTerm b, FOTerm c) { return build(FOKind::R, {a, b, c}, {}); }
FOFormula FOFormula::normal(FOTerm a) { return build(FOKind::O, {a}, {}); }
FOFormula FOFormula::leq(FOTerm a, FOTerm b) { return build(FOKind::Leq, {a, b}, {}); }
FOFormula FOFormula::eq(FOTerm a, FOTerm b) { return build(FOKind::Eq, {a, b}, {}); }
FOFormula FOFormula::prop(unsigned var, std::string name, FOTerm a) {
    return build(FOKind::Prop, {a}, {}, {}, var, std::move(name));
}
FOFormula FOFormula::negate(FOFormula f) { return build(FOKind::Not, {}, {std::move(f)}); }
FOFormula FOFormula::conj(FOFormula a, FOFormula b) { return build(FOKind::And, {}, {std::move(a), std::move(b)}); }
FOFormula FOFormula::disj(FOFormula a, FOFormula b) { return build(FOKind::Or, {}, {std::move(a), std::move(b)}); }
FOFormula FOFormula::implies(FOFormula a, FOFormula b) {
    return build(FOKind::Implies, {}, {std::move(a), std::move(b)});
}
FOFormula FOFormula::forall(WorldVar v, FOFormula body) { return build(FOKind::Forall, {}, {std::move(body)}, v); }
FOFormula FOFormula::exists(WorldVar v, FOFormula body) { return build(FOKind::Exists, {}, {std::move(body)}, v); }

FOKind FOFormula::kind() const { return node_->kind; }
const std::vector<FOTerm>& FOFormula::terms() const { return node_->terms; }
const std::vector<FOFormula>& FOFormula::args() const { return node_->args; }
WorldVar FOFormula::bound() const {
    if (!is_quantifier()) throw std::logic_error("FOFormula::bound on a non-quantifier");
    return node_->bound;
}
unsigned FOFormula::prop_index() const { return node_->prop; }
const std::string& FOFormula::prop_name() const { return node_->name; }

bool operator==(const FOFormula& a, const FOFormula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.terms() != b.terms() || a.args() != b.args()) return false;
    if (a.is_quantifier() && !(a.bound() == b.bound())) return false;
    return a.kind() != FOKind::Prop || a.prop_index() == b.prop_index();
}

std::set<WorldVar> free_vars(const FOFormula& f) {
    std::set<WorldVar> bound, out;
    collect_free(f, bound, out);
    return out;
}

FOFormula close_universally(const FOFormula& f) {
    auto vars = free_vars(f);
    FOFormula out = f;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) out = FOFormula::forall(*it, out);
    return out;
}

FOFormula strip_universal_closure(const FOFormula& f) {
    const FOFormula* cur = &f;
    while (cur->kind() == FOKind::Forall) cur = &cur->arg(0);
    return *cur;
}

bool alpha_equivalent(const FOFormula& a, const FOFormula& b) {
    std::map<WorldVar, WorldVar> ab, ba;
    return alpha_rec(a, b, ab, ba);
}

FOFormula conjunction(const std::vector<FOFormula>& fs) {
    if (fs.empty()) return FOFormula::truth();
    FOFormula acc = fs.front();
    for (std::size_t k = 1; k < fs.size(); ++k) acc = FOFormula::conj(acc, fs[k]);
    return acc;
}

FOFormula expand_leq(const FOFormula& f) {
    unsigned next = max_index(f, Family::Z);
    return map_atoms(f, [&](const FOFormula& a) {
        if (a.kind() != FOKind::Leq) return a;
        WorldVar z{Family::Z, next++};
        return FOFormula::exists(
            z, FOFormula::conj(FOFormula::normal(z), FOFormula::rel(z, a.terms()[0], a.terms()[1])));
    });
}

FOFormula leq_as_equality(const FOFormula& f) {
    return map_atoms(f, [](const FOFormula& a) {
        return a.kind() == FOKind::Leq ? FOFormula::eq(a.terms()[0], a.terms()[1]) : a;
    });
}

std::string var_name(const WorldVar& v) {
    const char* base = v.family == Family::X ? "x" : v.family == Family::Y ? "y" : "z";
    return base + subscript(v.index);
}

std::string show(const FOFormula& f) {
    std::string out;
    show_into(out, f);
    return out;
}

nlohmann::json to_json(const FOFormula& f) {
    static const char* names[] = {"true", "false", "R",   "O",       "leq",    "eq",    "prop",
                                  "not",  "and",   "or",  "implies", "forall", "exists"};
    nlohmann::json j = {{"kind", names[static_cast<int>(f.kind())]}};
    if (!f.terms().empty()) {
        nlohmann::json ts = nlohmann::json::array();
        for (const auto& t : f.terms()) ts.push_back(term_json(t));
        j["terms"] = ts;
    }
    if (f.kind() == FOKind::Prop) j["name"] = f.prop_name();
    if (f.is_quantifier()) j["var"] = var_name(f.bound());
    if (!f.args().empty()) {
        nlohmann::json as = nlohmann::json::array();
        for (const auto& g : f.args()) as.push_back(to_json(g));
        j["args"] = as;
    }
    return j;
}

}  // namespace pearl
