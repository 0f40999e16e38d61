#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pearl/formula.hpp"
#include "pearl/fo.hpp"
#include "pearl/parser.hpp"

namespace pearl::testing {

// Renumbers variables by name through a shared table, so separately parsed
// inequalities agree on which index each name gets.
inline Formula relabel(const Formula& f, std::map<std::string, unsigned>& table) {
    if (f.is_atom(AtomKind::PropVar)) {
        const std::string& name = f.atom_value().name;
        auto it = table.try_emplace(name, static_cast<unsigned>(table.size())).first;
        return Formula::var(it->second, name);
    }
    if (f.args().empty()) return f;
    std::vector<Formula> args;
    for (const auto& a : f.args()) args.push_back(relabel(a, table));
    return Formula::make(f.op(), std::move(args));
}

inline Inequality ineq(std::string_view text, std::map<std::string, unsigned>& table) {
    Inequality i = parse_inequality(text);
    return {relabel(i.lhs, table), relabel(i.rhs, table)};
}

inline Inequality ineq(std::string_view text) {
    std::map<std::string, unsigned> table;
    return ineq(text, table);
}

inline QuasiInequality quasi(const std::vector<std::string>& premises, std::string_view conclusion) {
    std::map<std::string, unsigned> table;
    QuasiInequality q;
    for (const auto& p : premises) q.premises.push_back(ineq(p, table));
    q.conclusion = ineq(conclusion, table);
    return q;
}

inline FOTerm X(unsigned k) { return WorldVar{Family::X, k}; }
inline FOTerm Y(unsigned k) { return WorldVar{Family::Y, k}; }
inline FOTerm Z(unsigned k) { return WorldVar{Family::Z, k}; }

inline const std::string kB2 = "(p \\to q) \\land (q \\to r) \\to (p \\to r)";
inline const std::string kExplosion = "A \\to (\\sim A \\to B)";

}  // namespace pearl::testing
