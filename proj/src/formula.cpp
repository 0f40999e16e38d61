#include "pearl/formula.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pearl {

namespace detail {
struct Node {
    Op op;
    Atom atom;
    std::vector<Formula> args;
    std::size_t hash;
    std::size_t size;
    std::size_t depth;
};
}  // namespace detail

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

constexpr Sign kPos = Sign::Positive;
constexpr Sign kNeg = Sign::Negative;

const Sign kNone[] = {kPos};  // placeholder for nullary ops, never read
const Sign kUnaryNeg[] = {kNeg};
const Sign kMonoMono[] = {kPos, kPos};
const Sign kAntiMono[] = {kNeg, kPos};
const Sign kMonoAnti[] = {kPos, kNeg};

std::string subscript(unsigned k) {
    static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
    std::string s;
    for (char c : std::to_string(k)) s += digits[c - '0'];
    return s;
}

const char* unicode_op(Op op) {
    switch (op) {
        case Op::Neg: return "∼";
        case Op::NegFlat: return "∼♭";
        case Op::NegSharp: return "∼♯";
        case Op::And: return "∧";
        case Op::Or: return "∨";
        case Op::Fusion: return "∘";
        case Op::RelImp: return "→";
        case Op::CoImp: return "−<";
        case Op::IntImp: return "⇒";
        case Op::RightRes: return "↢";
        case Op::Unit: return "t";
        case Op::Top: return "⊤";
        case Op::Bottom: return "⊥";
        case Op::Atom: break;
    }
    return "?";
}

void show_into(std::string& out, const Formula& f) {
    switch (arity(f.op())) {
        case 0:
            out += f.is_atom() ? f.atom_value().display() : unicode_op(f.op());
            return;
        case 1: {
            out += unicode_op(f.op());
            bool p = needs_parens(f.op(), 0, f.arg(0));
            if (p) out += '(';
            show_into(out, f.arg(0));
            if (p) out += ')';
            return;
        }
        default:
            for (std::size_t k = 0; k < 2; ++k) {
                if (k == 1) out += unicode_op(f.op());
                bool p = needs_parens(f.op(), k, f.arg(k));
                if (p) out += '(';
                show_into(out, f.arg(k));
                if (p) out += ')';
            }
    }
}

void collect_occurrences(const Formula& f, const Atom& a, Path& path, Sign sign,
                         std::vector<Occurrence>& out) {
    if (f.is_atom()) {
        if (f.atom_value() == a) out.push_back({path, sign});
        return;
    }
    auto pol = polarity_type(f.op());
    for (std::size_t k = 0; k < f.args().size(); ++k) {
        path.push_back(static_cast<std::uint8_t>(k));
        collect_occurrences(f.arg(k), a, path, compose(sign, pol[k]), out);
        path.pop_back();
    }
}

void collect_atoms(const Formula& f, std::vector<Atom>& out) {
    if (f.is_atom()) {
        if (std::find(out.begin(), out.end(), f.atom_value()) == out.end())
            out.push_back(f.atom_value());
        return;
    }
    for (const auto& g : f.args()) collect_atoms(g, out);
}

}  // namespace

Atom Atom::var(unsigned index, std::string name) {
    return Atom{AtomKind::PropVar, index, std::move(name)};
}
Atom Atom::nominal(unsigned index) { return Atom{AtomKind::Nominal, index, {}}; }
Atom Atom::conominal(unsigned index) { return Atom{AtomKind::CoNominal, index, {}}; }

std::string Atom::display() const {
    switch (kind) {
        case AtomKind::PropVar:
            return name.empty() ? "p" + subscript(index) : name;
        case AtomKind::Nominal:
            return index == 0 ? "i" : "j" + subscript(index);
        case AtomKind::CoNominal:
            return index == 0 ? "m" : "n" + subscript(index);
    }
    return "?";
}

std::size_t arity(Op op) {
    switch (op) {
        case Op::Atom:
        case Op::Unit:
        case Op::Top:
        case Op::Bottom:
            return 0;
        case Op::Neg:
        case Op::NegFlat:
        case Op::NegSharp:
            return 1;
        default:
            return 2;
    }
}

std::span<const Sign> polarity_type(Op op) {
    switch (op) {
        case Op::Neg:
        case Op::NegFlat:
        case Op::NegSharp:
            return kUnaryNeg;
        case Op::And:
        case Op::Or:
        case Op::Fusion:
            return kMonoMono;
        case Op::RelImp:
        case Op::IntImp:
        case Op::RightRes:
            return kAntiMono;
        case Op::CoImp:
            return kMonoAnti;
        default:
            return std::span<const Sign>(kNone, 0);
    }
}

const char* op_name(Op op) {
    switch (op) {
        case Op::Atom: return "atom";
        case Op::Unit: return "t";
        case Op::Top: return "top";
        case Op::Bottom: return "bot";
        case Op::Neg: return "neg";
        case Op::NegFlat: return "negFlat";
        case Op::NegSharp: return "negSharp";
        case Op::And: return "and";
        case Op::Or: return "or";
        case Op::Fusion: return "fusion";
        case Op::RelImp: return "relImp";
        case Op::CoImp: return "coImp";
        case Op::IntImp: return "intImp";
        case Op::RightRes: return "rightRes";
    }
    return "?";
}

int binding_level(Op op) {
    switch (op) {
        case Op::RelImp:
        case Op::CoImp:
        case Op::IntImp:
        case Op::RightRes:
            return 1;
        case Op::Or: return 2;
        case Op::And: return 3;
        case Op::Fusion: return 4;
        case Op::Neg:
        case Op::NegFlat:
        case Op::NegSharp:
            return 5;
        default:
            return 6;
    }
}

bool needs_parens(Op parent, std::size_t place, const Formula& child) {
    int p = binding_level(parent);
    int c = binding_level(child.op());
    if (arity(parent) == 1) return c < 5;
    if (p == 1) {
        // implications associate to the right and do not mix
        if (place == 0) return c <= 1;
        return c < 1 || (c == 1 && child.op() != parent);
    }
    return place == 0 ? c < p : c <= p;
}

Formula::Formula() : Formula(bottom()) {}

Formula Formula::atom(Atom a) {
    std::size_t h = mix(mix(0, static_cast<std::size_t>(Op::Atom)),
                        (static_cast<std::size_t>(a.kind) << 32) ^ a.index);
    return Formula(std::make_shared<const detail::Node>(
        detail::Node{Op::Atom, std::move(a), {}, h, 1, 1}));
}

Formula Formula::var(unsigned index, std::string name) { return atom(Atom::var(index, std::move(name))); }
Formula Formula::nominal(unsigned index) { return atom(Atom::nominal(index)); }
Formula Formula::conominal(unsigned index) { return atom(Atom::conominal(index)); }

Formula Formula::make(Op op, std::vector<Formula> args) {
    if (op == Op::Atom) throw std::invalid_argument("Formula::make: use Formula::atom");
    if (args.size() != arity(op))
        throw std::invalid_argument(std::string("Formula::make: wrong arity for ") + op_name(op));
    std::size_t h = mix(0, static_cast<std::size_t>(op));
    std::size_t size = 1, depth = 0;
    for (const auto& a : args) {
        h = mix(h, a.hash());
        size += a.size();
        depth = std::max(depth, a.depth());
    }
    return Formula(std::make_shared<const detail::Node>(
        detail::Node{op, Atom{}, std::move(args), h, size, depth + 1}));
}

Formula Formula::unit() {
    static const Formula f = make(Op::Unit, {});
    return f;
}
Formula Formula::top() {
    static const Formula f = make(Op::Top, {});
    return f;
}
Formula Formula::bottom() {
    static const Formula f = make(Op::Bottom, {});
    return f;
}

Formula Formula::neg(Formula a) { return make(Op::Neg, {std::move(a)}); }
Formula Formula::neg_flat(Formula a) { return make(Op::NegFlat, {std::move(a)}); }
Formula Formula::neg_sharp(Formula a) { return make(Op::NegSharp, {std::move(a)}); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, {std::move(a), std::move(b)}); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, {std::move(a), std::move(b)}); }
Formula Formula::fusion(Formula a, Formula b) { return make(Op::Fusion, {std::move(a), std::move(b)}); }
Formula Formula::rel_imp(Formula a, Formula b) { return make(Op::RelImp, {std::move(a), std::move(b)}); }
Formula Formula::co_imp(Formula a, Formula b) { return make(Op::CoImp, {std::move(a), std::move(b)}); }
Formula Formula::int_imp(Formula a, Formula b) { return make(Op::IntImp, {std::move(a), std::move(b)}); }
Formula Formula::right_res(Formula a, Formula b) { return make(Op::RightRes, {std::move(a), std::move(b)}); }

Op Formula::op() const { return node_->op; }
bool Formula::is_atom(AtomKind k) const { return is_atom() && node_->atom.kind == k; }
bool Formula::is_constant() const {
    return op() == Op::Unit || op() == Op::Top || op() == Op::Bottom;
}

const Atom& Formula::atom_value() const {
    if (!is_atom()) throw std::logic_error("Formula::atom_value on a non-atom");
    return node_->atom;
}

std::span<const Formula> Formula::args() const { return node_->args; }

const Formula& Formula::arg(std::size_t i) const {
    if (i >= node_->args.size()) throw std::out_of_range("Formula::arg");
    return node_->args[i];
}

std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::depth() const { return node_->depth; }
std::size_t Formula::hash() const { return node_->hash; }

const Formula& Formula::at(const Path& p) const {
    const Formula* cur = this;
    for (auto k : p) cur = &cur->arg(k);
    return *cur;
}

Formula Formula::replace_at(const Path& p, const Formula& with) const {
    if (p.empty()) return with;
    std::vector<Formula> kids(args().begin(), args().end());
    Path rest(p.begin() + 1, p.end());
    kids.at(p.front()) = kids[p.front()].replace_at(rest, with);
    return make(op(), std::move(kids));
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.op() != b.op()) return false;
    if (a.is_atom()) return a.atom_value() == b.atom_value();
    auto x = a.args(), y = b.args();
    for (std::size_t k = 0; k < x.size(); ++k)
        if (x[k] != y[k]) return false;
    return true;
}

std::vector<Occurrence> occurrences(const Formula& f, const Atom& a) {
    std::vector<Occurrence> out;
    Path path;
    collect_occurrences(f, a, path, Sign::Positive, out);
    return out;
}

bool occurs_in(const Formula& f, const Atom& a) {
    if (f.is_atom()) return f.atom_value() == a;
    for (const auto& g : f.args())
        if (occurs_in(g, a)) return true;
    return false;
}

bool is_positive_in(const Formula& f, const Atom& a) {
    for (const auto& o : occurrences(f, a))
        if (o.sign != Sign::Positive) return false;
    return true;
}

bool is_negative_in(const Formula& f, const Atom& a) {
    for (const auto& o : occurrences(f, a))
        if (o.sign != Sign::Negative) return false;
    return true;
}

std::vector<Atom> atoms_of(const Formula& f) {
    std::vector<Atom> out;
    collect_atoms(f, out);
    return out;
}

std::vector<Atom> variables_of(const Formula& f) {
    auto all = atoms_of(f);
    std::erase_if(all, [](const Atom& a) { return a.is_pure(); });
    return all;
}

bool is_pure(const Formula& f) { return variables_of(f).empty(); }

Formula substitute(const Formula& f, const Atom& a, const Formula& by) {
    if (f.is_atom()) return f.atom_value() == a ? by : f;
    if (!occurs_in(f, a)) return f;
    std::vector<Formula> kids;
    kids.reserve(f.args().size());
    for (const auto& g : f.args()) kids.push_back(substitute(g, a, by));
    return Formula::make(f.op(), std::move(kids));
}

Atom fresh_atom(AtomKind kind, const std::set<Atom>& used) {
    unsigned k = 0;
    while (used.count(Atom{kind, k, {}})) ++k;
    return Atom{kind, k, {}};
}

Formula canonicalize_variables(const Formula& f) {
    std::map<unsigned, unsigned> renumber;
    for (const auto& a : variables_of(f)) renumber.emplace(a.index, renumber.size());
    std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
        if (g.is_atom(AtomKind::PropVar)) {
            const auto& a = g.atom_value();
            return Formula::var(renumber.at(a.index), a.name);
        }
        if (g.is_atom() || g.args().empty()) return g;
        std::vector<Formula> kids;
        for (const auto& h : g.args()) kids.push_back(go(h));
        return Formula::make(g.op(), std::move(kids));
    };
    return go(f);
}

bool is_positive_in(const Inequality& i, const Atom& a) {
    return is_negative_in(i.lhs, a) && is_positive_in(i.rhs, a);
}

bool is_negative_in(const Inequality& i, const Atom& a) {
    return is_positive_in(i.lhs, a) && is_negative_in(i.rhs, a);
}

bool occurs_in(const Inequality& i, const Atom& a) {
    return occurs_in(i.lhs, a) || occurs_in(i.rhs, a);
}

bool is_pure(const Inequality& i) { return is_pure(i.lhs) && is_pure(i.rhs); }

Inequality substitute(const Inequality& i, const Atom& a, const Formula& by) {
    return {substitute(i.lhs, a, by), substitute(i.rhs, a, by)};
}

std::set<Atom> atom_set(const Inequality& i) {
    std::set<Atom> out;
    for (const auto& a : atoms_of(i.lhs)) out.insert(a);
    for (const auto& a : atoms_of(i.rhs)) out.insert(a);
    return out;
}

std::set<Atom> atom_set(const QuasiInequality& q) {
    auto out = atom_set(q.conclusion);
    for (const auto& p : q.premises) out.merge(atom_set(p));
    return out;
}

bool is_pure(const QuasiInequality& q) {
    if (!is_pure(q.conclusion)) return false;
    return std::all_of(q.premises.begin(), q.premises.end(),
                       [](const Inequality& i) { return is_pure(i); });
}

bool contains_variable(const QuasiInequality& q) { return !is_pure(q); }

std::string show(const Formula& f) {
    std::string out;
    show_into(out, f);
    return out;
}

std::string show(const Inequality& i) { return show(i.lhs) + " ≤ " + show(i.rhs); }

std::string show(const QuasiInequality& q) {
    std::string out;
    for (std::size_t k = 0; k < q.premises.size(); ++k) {
        if (k) out += ", ";
        out += show(q.premises[k]);
    }
    out += q.premises.empty() ? "⊢ " : " ⊢ ";
    out += show(q.conclusion);
    return out;
}

std::string show(const std::vector<Inequality>& v) {
    std::string out = "[";
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out += ", ";
        out += show(v[k]);
    }
    return out + "]";
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << show(f); }
std::ostream& operator<<(std::ostream& os, const Inequality& i) { return os << show(i); }
std::ostream& operator<<(std::ostream& os, const QuasiInequality& q) { return os << show(q); }

}  // namespace pearl
