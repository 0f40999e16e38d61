#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace pearl {

// X: nominal worlds, Y: co-nominal worlds, Z: variables bound by the standard translation.
enum class Family : std::uint8_t { X, Y, Z };

struct WorldVar {
    Family family = Family::X;
    unsigned index = 0;

    friend bool operator==(const WorldVar&, const WorldVar&) = default;
    friend auto operator<=>(const WorldVar&, const WorldVar&) = default;
};

struct FOTerm {
    WorldVar var;
    unsigned stars = 0;  // number of star applications

    FOTerm() = default;
    FOTerm(WorldVar v, unsigned s = 0) : var(v), stars(s) {}
    FOTerm star() const { return FOTerm(var, stars + 1); }

    friend bool operator==(const FOTerm&, const FOTerm&) = default;
};

enum class FOKind : std::uint8_t { True, False, R, O, Leq, Eq, Prop, Not, And, Or, Implies, Forall, Exists };

class FOFormula {
public:
    FOFormula();  // True

    static FOFormula truth();
    static FOFormula falsity();
    static FOFormula rel(FOTerm a, FOTerm b, FOTerm c);
    static FOFormula normal(FOTerm a);
    static FOFormula leq(FOTerm a, FOTerm b);
    static FOFormula eq(FOTerm a, FOTerm b);
    // unary predicate for a propositional variable
    static FOFormula prop(unsigned var, std::string name, FOTerm a);
    static FOFormula negate(FOFormula f);
    static FOFormula conj(FOFormula a, FOFormula b);
    static FOFormula disj(FOFormula a, FOFormula b);
    static FOFormula implies(FOFormula a, FOFormula b);
    static FOFormula forall(WorldVar v, FOFormula body);
    static FOFormula exists(WorldVar v, FOFormula body);

    FOKind kind() const;
    const std::vector<FOTerm>& terms() const;
    const std::vector<FOFormula>& args() const;
    const FOFormula& arg(std::size_t k) const { return args().at(k); }
    WorldVar bound() const;        // quantifiers
    unsigned prop_index() const;   // Prop
    const std::string& prop_name() const;

    bool is_quantifier() const { return kind() == FOKind::Forall || kind() == FOKind::Exists; }

    friend bool operator==(const FOFormula& a, const FOFormula& b);

private:
    struct Node;
    explicit FOFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static FOFormula build(FOKind k, std::vector<FOTerm> ts, std::vector<FOFormula> as, WorldVar v = {},
                           unsigned prop = 0, std::string name = {});
    std::shared_ptr<const Node> node_;
};

std::set<WorldVar> free_vars(const FOFormula& f);
// Universal closure, quantifying X, then Y, then Z variables in index order.
FOFormula close_universally(const FOFormula& f);
// Drops a leading block of universal quantifiers.
FOFormula strip_universal_closure(const FOFormula& f);
bool alpha_equivalent(const FOFormula& a, const FOFormula& b);
FOFormula conjunction(const std::vector<FOFormula>& fs);

// Replaces each a <= b by exists z (O z and R z a b).
FOFormula expand_leq(const FOFormula& f);
// Replaces each a <= b by a = b (discrete frames).
FOFormula leq_as_equality(const FOFormula& f);

std::string var_name(const WorldVar& v);
std::string show(const FOFormula& f);

nlohmann::json to_json(const FOFormula& f);

}  // namespace pearl
