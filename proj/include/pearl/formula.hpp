#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace pearl {

enum class AtomKind : std::uint8_t { PropVar, Nominal, CoNominal };

// Identity is (kind, index). The name is only used for display.
struct Atom {
    AtomKind kind = AtomKind::PropVar;
    unsigned index = 0;
    std::string name;

    static Atom var(unsigned index, std::string name = {});
    static Atom nominal(unsigned index);
    static Atom conominal(unsigned index);

    bool is_pure() const { return kind != AtomKind::PropVar; }
    std::string display() const;

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.kind == b.kind && a.index == b.index;
    }
    friend bool operator<(const Atom& a, const Atom& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.index < b.index;
    }
};

enum class Op : std::uint8_t {
    Atom,
    Unit,      // t
    Top,
    Bottom,
    Neg,       // ~
    NegFlat,   // left adjoint of ~
    NegSharp,  // right adjoint of ~
    And,
    Or,
    Fusion,
    RelImp,    // ->
    CoImp,     // -<
    IntImp,    // =>
    RightRes,  // residual of fusion in its first argument
};

enum class Sign : std::uint8_t { Positive, Negative };

inline Sign flip(Sign s) { return s == Sign::Positive ? Sign::Negative : Sign::Positive; }
inline Sign compose(Sign a, Sign b) { return a == b ? Sign::Positive : Sign::Negative; }

class Formula;

std::size_t arity(Op op);
// Polarity type of each argument place.
std::span<const Sign> polarity_type(Op op);
const char* op_name(Op op);

// Binding strength, loosest first: implications, join, meet, fusion, unary, atoms.
int binding_level(Op op);
// Whether `child` printed in argument place `place` of `parent` needs parentheses.
bool needs_parens(Op parent, std::size_t place, const Formula& child);

using Path = std::vector<std::uint8_t>;

namespace detail {
struct Node;
}

// Immutable formula tree with shared subterms.
class Formula {
public:
    Formula();  // bottom

    static Formula atom(Atom a);
    static Formula var(unsigned index, std::string name = {});
    static Formula nominal(unsigned index);
    static Formula conominal(unsigned index);
    static Formula unit();
    static Formula top();
    static Formula bottom();
    static Formula make(Op op, std::vector<Formula> args);

    static Formula neg(Formula a);
    static Formula neg_flat(Formula a);
    static Formula neg_sharp(Formula a);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula fusion(Formula a, Formula b);
    static Formula rel_imp(Formula a, Formula b);
    static Formula co_imp(Formula a, Formula b);
    static Formula int_imp(Formula a, Formula b);
    static Formula right_res(Formula a, Formula b);

    Op op() const;
    bool is_atom() const { return op() == Op::Atom; }
    bool is_atom(AtomKind k) const;
    bool is_constant() const;
    const Atom& atom_value() const;
    std::span<const Formula> args() const;
    const Formula& arg(std::size_t i) const;
    const Formula& lhs() const { return arg(0); }
    const Formula& rhs() const { return arg(1); }

    std::size_t size() const;
    std::size_t depth() const;
    std::size_t hash() const;

    const Formula& at(const Path& p) const;
    Formula replace_at(const Path& p, const Formula& with) const;

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
    explicit Formula(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const detail::Node> node_;
};

struct Occurrence {
    Path path;
    Sign sign;
};

// All occurrences of an atom, in pre-order left to right.
std::vector<Occurrence> occurrences(const Formula& f, const Atom& a);
bool occurs_in(const Formula& f, const Atom& a);
bool is_positive_in(const Formula& f, const Atom& a);
bool is_negative_in(const Formula& f, const Atom& a);

// Atoms in order of first occurrence (pre-order, left to right).
std::vector<Atom> atoms_of(const Formula& f);
std::vector<Atom> variables_of(const Formula& f);
bool is_pure(const Formula& f);

Formula substitute(const Formula& f, const Atom& a, const Formula& by);

// Least index of the given kind not present in `used`.
Atom fresh_atom(AtomKind kind, const std::set<Atom>& used);

// Renumber PropVars by order of first occurrence, keeping names.
Formula canonicalize_variables(const Formula& f);

struct Inequality {
    Formula lhs;
    Formula rhs;

    friend bool operator==(const Inequality& a, const Inequality& b) {
        return a.lhs == b.lhs && a.rhs == b.rhs;
    }
};

// Positive in an atom: lhs negative and rhs positive in it.
bool is_positive_in(const Inequality& i, const Atom& a);
bool is_negative_in(const Inequality& i, const Atom& a);
bool occurs_in(const Inequality& i, const Atom& a);
bool is_pure(const Inequality& i);
Inequality substitute(const Inequality& i, const Atom& a, const Formula& by);

struct QuasiInequality {
    std::vector<Inequality> premises;
    Inequality conclusion;

    friend bool operator==(const QuasiInequality& a, const QuasiInequality& b) {
        return a.premises == b.premises && a.conclusion == b.conclusion;
    }
};

std::set<Atom> atom_set(const QuasiInequality& q);
std::set<Atom> atom_set(const Inequality& i);
bool is_pure(const QuasiInequality& q);
bool contains_variable(const QuasiInequality& q);

// Plain unicode rendering used by reports and diagnostics.
std::string show(const Formula& f);
std::string show(const Inequality& i);
std::string show(const QuasiInequality& q);
std::string show(const std::vector<Inequality>& v);

std::ostream& operator<<(std::ostream& os, const Formula& f);
std::ostream& operator<<(std::ostream& os, const Inequality& i);
std::ostream& operator<<(std::ostream& os, const QuasiInequality& q);

}  // namespace pearl

template <>
struct std::hash<pearl::Formula> {
    std::size_t operator()(const pearl::Formula& f) const { return f.hash(); }
};
