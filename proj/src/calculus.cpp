#include "pearl/calculus.hpp"

#include <algorithm>
#include <array>

#include "pearl/parser.hpp"

namespace pearl {

namespace {

struct RuleInfo {
    Rule rule;
    const char* name;
};

constexpr std::array kRules = {
    RuleInfo{Rule::FirstApproximation, "FirstApprox"},
    RuleInfo{Rule::SplitLeft, "SplitLeft"},
    RuleInfo{Rule::SplitRight, "SplitRight"},
    RuleInfo{Rule::ImpApproxLeft, "->Appr-L"},
    RuleInfo{Rule::ImpApproxRight, "->Appr-R"},
    RuleInfo{Rule::FusionApproxLeft, "oAppr-L"},
    RuleInfo{Rule::FusionApproxRight, "oAppr-R"},
    RuleInfo{Rule::NegApproxLeft, "~Appr-L"},
    RuleInfo{Rule::NegApproxRight, "~Appr-R"},
    RuleInfo{Rule::OrRes, "vRes"},
    RuleInfo{Rule::OrResUp, "vRes-up"},
    RuleInfo{Rule::AndRes, "^Res"},
    RuleInfo{Rule::AndResUp, "^Res-up"},
    RuleInfo{Rule::ImpRes, "->Res"},
    RuleInfo{Rule::ImpResUp, "->Res-up"},
    RuleInfo{Rule::RightResRes, "<-Res"},
    RuleInfo{Rule::RightResResUp, "<-Res-up"},
    RuleInfo{Rule::OrAdj, "vAdj"},
    RuleInfo{Rule::OrJoin, "vAdj-up"},
    RuleInfo{Rule::AndAdj, "^Adj"},
    RuleInfo{Rule::AndMeet, "^Adj-up"},
    RuleInfo{Rule::NegAdjLeft, "~Adj-L"},
    RuleInfo{Rule::NegAdjLeftUp, "~Adj-L-up"},
    RuleInfo{Rule::NegAdjRight, "~Adj-R"},
    RuleInfo{Rule::NegAdjRightUp, "~Adj-R-up"},
    RuleInfo{Rule::MonotoneBottom, "Mono-bot"},
    RuleInfo{Rule::MonotoneTop, "Mono-top"},
    RuleInfo{Rule::RightAckermann, "RAR"},
    RuleInfo{Rule::LeftAckermann, "LAR"},
    RuleInfo{Rule::SimplLeft, "Simpl-Left"},
    RuleInfo{Rule::SimplRight, "Simpl-Right"},
    RuleInfo{Rule::DropRedundant, "DropRedundant"},
    RuleInfo{Rule::TrivialConclusion, "TrivialConclusion"},
};

using calculus::Result;

bool premise_ok(const QuasiInequality& q, std::size_t k) { return k < q.premises.size(); }

// Replace premise k by `with`, in place.
QuasiInequality replace(const QuasiInequality& q, std::size_t k, std::vector<Inequality> with) {
    QuasiInequality r;
    r.conclusion = q.conclusion;
    r.premises.reserve(q.premises.size() + with.size());
    for (std::size_t n = 0; n < q.premises.size(); ++n) {
        if (n == k)
            for (auto& w : with) r.premises.push_back(std::move(w));
        else
            r.premises.push_back(q.premises[n]);
    }
    return r;
}

Result single(const QuasiInequality& q, std::size_t k, Inequality with) {
    return Applied{replace(q, k, {std::move(with)}), {}};
}

bool is_nominal(const Formula& f) { return f.is_atom(AtomKind::Nominal); }
bool is_conominal(const Formula& f) { return f.is_atom(AtomKind::CoNominal); }

// Sign-aware search for a splittable node. `left` selects the left-side rule.
bool transparent(Op op, Sign s, bool left) {
    switch (op) {
        case Op::And:
        case Op::Or:
        case Op::Neg:
            return true;
        case Op::Fusion:
            return left ? s == Sign::Positive : s == Sign::Negative;
        case Op::RelImp:
            return left ? s == Sign::Negative : s == Sign::Positive;
        default:
            return false;
    }
}

bool splittable(Op op, Sign s, bool left) {
    Op want_pos = left ? Op::Or : Op::And;
    Op want_neg = left ? Op::And : Op::Or;
    return (op == want_pos && s == Sign::Positive) || (op == want_neg && s == Sign::Negative);
}

bool find_split(const Formula& f, Sign s, bool left, Path& path) {
    if (splittable(f.op(), s, left)) return true;
    if (!transparent(f.op(), s, left)) return false;
    auto pol = polarity_type(f.op());
    for (std::size_t k = 0; k < f.args().size(); ++k) {
        path.push_back(static_cast<std::uint8_t>(k));
        if (find_split(f.arg(k), compose(s, pol[k]), left, path)) return true;
        path.pop_back();
    }
    return false;
}

Atom fresh_in(const QuasiInequality& q, AtomKind kind) { return fresh_atom(kind, atom_set(q)); }

bool occurs_in_any(const std::vector<Inequality>& v, const Atom& a, std::size_t skip) {
    for (std::size_t n = 0; n < v.size(); ++n)
        if (n != skip && occurs_in(v[n], a)) return true;
    return false;
}

std::vector<Inequality> substitute_all(const std::vector<Inequality>& v, const Atom& a, const Formula& by,
                                       std::size_t skip) {
    std::vector<Inequality> out;
    for (std::size_t n = 0; n < v.size(); ++n)
        if (n != skip) out.push_back(substitute(v[n], a, by));
    return out;
}

}  // namespace

const char* rule_name(Rule r) {
    for (const auto& info : kRules)
        if (info.rule == r) return info.name;
    return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
    for (const auto& info : kRules)
        if (name == info.name) return info.rule;
    return std::nullopt;
}

namespace calculus {

Split split_left(const Inequality& i) {
    Path path;
    if (!find_split(i.lhs, Sign::Positive, true, path)) return std::nullopt;
    const Formula& node = i.lhs.at(path);
    return std::make_pair(Inequality{i.lhs.replace_at(path, node.lhs()), i.rhs},
                          Inequality{i.lhs.replace_at(path, node.rhs()), i.rhs});
}

Split split_right(const Inequality& i) {
    Path path;
    if (!find_split(i.rhs, Sign::Positive, false, path)) return std::nullopt;
    const Formula& node = i.rhs.at(path);
    return std::make_pair(Inequality{i.lhs, i.rhs.replace_at(path, node.lhs())},
                          Inequality{i.lhs, i.rhs.replace_at(path, node.rhs())});
}

bool is_tautology(const Inequality& i) {
    return i.lhs == i.rhs || i.lhs.op() == Op::Bottom || i.rhs.op() == Op::Top;
}

Result first_approximation(const QuasiInequality& q) {
    auto used = atom_set(q);
    Atom j = fresh_atom(AtomKind::Nominal, used);
    Atom m = fresh_atom(AtomKind::CoNominal, used);
    QuasiInequality r;
    r.premises.push_back({Formula::atom(j), q.conclusion.lhs});
    r.premises.push_back({q.conclusion.rhs, Formula::atom(m)});
    for (const auto& p : q.premises) r.premises.push_back(p);
    r.conclusion = {Formula::atom(j), Formula::atom(m)};
    return Applied{std::move(r), {j, m}};
}

Result split_left(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    auto s = split_left(q.premises[k]);
    if (!s) return std::nullopt;
    return Applied{replace(q, k, {s->first, s->second}), {}};
}

Result split_right(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    auto s = split_right(q.premises[k]);
    if (!s) return std::nullopt;
    return Applied{replace(q, k, {s->first, s->second}), {}};
}

// chi -> phi <= m  ~>  j -> phi <= m, j <= chi
Result imp_approx_left(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (!is_conominal(p.rhs) || p.lhs.op() != Op::RelImp || is_nominal(p.lhs.lhs())) return std::nullopt;
    Formula j = Formula::atom(fresh_in(q, AtomKind::Nominal));
    return Applied{replace(q, k, {{Formula::rel_imp(j, p.lhs.rhs()), p.rhs}, {j, p.lhs.lhs()}}), {j.atom_value()}};
}

// chi -> phi <= m  ~>  chi -> n <= m, phi <= n
Result imp_approx_right(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (!is_conominal(p.rhs) || p.lhs.op() != Op::RelImp || is_conominal(p.lhs.rhs())) return std::nullopt;
    Formula n = Formula::atom(fresh_in(q, AtomKind::CoNominal));
    return Applied{replace(q, k, {{Formula::rel_imp(p.lhs.lhs(), n), p.rhs}, {p.lhs.rhs(), n}}), {n.atom_value()}};
}

// i <= chi o phi  ~>  i <= j o phi, j <= chi
Result fusion_approx_left(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (!is_nominal(p.lhs) || p.rhs.op() != Op::Fusion || is_nominal(p.rhs.lhs())) return std::nullopt;
    Formula j = Formula::atom(fresh_in(q, AtomKind::Nominal));
    return Applied{replace(q, k, {{p.lhs, Formula::fusion(j, p.rhs.rhs())}, {j, p.rhs.lhs()}}), {j.atom_value()}};
}

// i <= chi o phi  ~>  i <= chi o j, j <= phi
Result fusion_approx_right(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (!is_nominal(p.lhs) || p.rhs.op() != Op::Fusion || is_nominal(p.rhs.rhs())) return std::nullopt;
    Formula j = Formula::atom(fresh_in(q, AtomKind::Nominal));
    return Applied{replace(q, k, {{p.lhs, Formula::fusion(p.rhs.lhs(), j)}, {j, p.rhs.rhs()}}), {j.atom_value()}};
}

// ~phi <= m  ~>  ~j <= m, j <= phi
Result neg_approx_left(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (!is_conominal(p.rhs) || p.lhs.op() != Op::Neg || is_nominal(p.lhs.arg(0))) return std::nullopt;
    Formula j = Formula::atom(fresh_in(q, AtomKind::Nominal));
    return Applied{replace(q, k, {{Formula::neg(j), p.rhs}, {j, p.lhs.arg(0)}}), {j.atom_value()}};
}

// i <= ~phi  ~>  i <= ~n, phi <= n
Result neg_approx_right(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (!is_nominal(p.lhs) || p.rhs.op() != Op::Neg || is_conominal(p.rhs.arg(0))) return std::nullopt;
    Formula n = Formula::atom(fresh_in(q, AtomKind::CoNominal));
    return Applied{replace(q, k, {{p.lhs, Formula::neg(n)}, {p.rhs.arg(0), n}}), {n.atom_value()}};
}

// phi <= chi v psi  ~>  phi -< chi <= psi
Result or_res(const QuasiInequality& q, std::size_t k, bool commuted) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (p.rhs.op() != Op::Or) return std::nullopt;
    const Formula& chi = commuted ? p.rhs.rhs() : p.rhs.lhs();
    const Formula& psi = commuted ? p.rhs.lhs() : p.rhs.rhs();
    return single(q, k, {Formula::co_imp(p.lhs, chi), psi});
}

Result or_res_up(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (p.lhs.op() != Op::CoImp) return std::nullopt;
    return single(q, k, {p.lhs.lhs(), Formula::disj(p.lhs.rhs(), p.rhs)});
}

// phi ^ chi <= psi  ~>  phi <= chi => psi
Result and_res(const QuasiInequality& q, std::size_t k, bool commuted) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (p.lhs.op() != Op::And) return std::nullopt;
    const Formula& phi = commuted ? p.lhs.rhs() : p.lhs.lhs();
    const Formula& chi = commuted ? p.lhs.lhs() : p.lhs.rhs();
    return single(q, k, {phi, Formula::int_imp(chi, p.rhs)});
}

Result and_res_up(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (p.rhs.op() != Op::IntImp) return std::nullopt;
    return single(q, k, {Formula::conj(p.lhs, p.rhs.lhs()), p.rhs.rhs()});
}

// phi <= chi -> psi  ~>  phi o chi <= psi
Result imp_res(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (p.rhs.op() != Op::RelImp) return std::nullopt;
    return single(q, k, {Formula::fusion(p.lhs, p.rhs.lhs()), p.rhs.rhs()});
}

Result imp_res_up(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (p.lhs.op() != Op::Fusion) return std::nullopt;
    return single(q, k, {p.lhs.lhs(), Formula::rel_imp(p.lhs.rhs(), p.rhs)});
}

// psi <= phi <- chi  ~>  phi o psi <= chi
Result right_res_res(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (p.rhs.op() != Op::RightRes) return std::nullopt;
    return single(q, k, {Formula::fusion(p.rhs.lhs(), p.lhs), p.rhs.rhs()});
}

Result right_res_res_up(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (p.lhs.op() != Op::Fusion) return std::nullopt;
    return single(q, k, {p.lhs.rhs(), Formula::right_res(p.lhs.lhs(), p.rhs)});
}

Result or_adj(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (p.lhs.op() != Op::Or) return std::nullopt;
    return Applied{replace(q, k, {{p.lhs.lhs(), p.rhs}, {p.lhs.rhs(), p.rhs}}), {}};
}

Result or_join(const QuasiInequality& q, std::size_t k, std::size_t l) {
    if (!premise_ok(q, k) || !premise_ok(q, l) || k == l) return std::nullopt;
    const auto& a = q.premises[k];
    const auto& b = q.premises[l];
    if (a.rhs != b.rhs) return std::nullopt;
    QuasiInequality r = replace(q, k, {{Formula::disj(a.lhs, b.lhs), a.rhs}});
    r.premises.erase(r.premises.begin() + static_cast<std::ptrdiff_t>(l));
    return Applied{std::move(r), {}};
}

Result and_adj(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (p.rhs.op() != Op::And) return std::nullopt;
    return Applied{replace(q, k, {{p.lhs, p.rhs.lhs()}, {p.lhs, p.rhs.rhs()}}), {}};
}

Result and_meet(const QuasiInequality& q, std::size_t k, std::size_t l) {
    if (!premise_ok(q, k) || !premise_ok(q, l) || k == l) return std::nullopt;
    const auto& a = q.premises[k];
    const auto& b = q.premises[l];
    if (a.lhs != b.lhs) return std::nullopt;
    QuasiInequality r = replace(q, k, {{a.lhs, Formula::conj(a.rhs, b.rhs)}});
    r.premises.erase(r.premises.begin() + static_cast<std::ptrdiff_t>(l));
    return Applied{std::move(r), {}};
}

// ~phi <= psi  ~>  ~flat psi <= phi
Result neg_adj_left(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (p.lhs.op() != Op::Neg) return std::nullopt;
    return single(q, k, {Formula::neg_flat(p.rhs), p.lhs.arg(0)});
}

Result neg_adj_left_up(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (p.lhs.op() != Op::NegFlat) return std::nullopt;
    return single(q, k, {Formula::neg(p.rhs), p.lhs.arg(0)});
}

// phi <= ~psi  ~>  psi <= ~sharp phi
Result neg_adj_right(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (p.rhs.op() != Op::Neg) return std::nullopt;
    return single(q, k, {p.rhs.arg(0), Formula::neg_sharp(p.lhs)});
}

Result neg_adj_right_up(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k)) return std::nullopt;
    const auto& p = q.premises[k];
    if (p.rhs.op() != Op::NegSharp) return std::nullopt;
    return single(q, k, {p.rhs.arg(0), Formula::neg(p.lhs)});
}

Result monotone(const QuasiInequality& q, const Atom& p, Sign polarity) {
    if (p.is_pure() || !atom_set(q).count(p)) return std::nullopt;
    bool pos = polarity == Sign::Positive;
    for (const auto& prem : q.premises)
        if (pos ? !is_negative_in(prem, p) : !is_positive_in(prem, p)) return std::nullopt;
    if (pos ? !is_positive_in(q.conclusion, p) : !is_negative_in(q.conclusion, p)) return std::nullopt;
    Formula by = pos ? Formula::bottom() : Formula::top();
    QuasiInequality r{substitute_all(q.premises, p, by, q.premises.size()), substitute(q.conclusion, p, by)};
    return Applied{std::move(r), {}};
}

Result ackermann(const QuasiInequality& q, const Atom& p, Sign polarity) {
    if (p.is_pure()) return std::nullopt;
    bool pos = polarity == Sign::Positive;
    std::optional<std::size_t> solved;
    for (std::size_t n = 0; n < q.premises.size(); ++n) {
        const auto& prem = q.premises[n];
        const Formula& var_side = pos ? prem.rhs : prem.lhs;
        const Formula& other = pos ? prem.lhs : prem.rhs;
        if (var_side.is_atom() && var_side.atom_value() == p && !occurs_in(other, p)) {
            if (solved) return std::nullopt;
            solved = n;
        }
    }
    if (!solved) return std::nullopt;
    for (std::size_t n = 0; n < q.premises.size(); ++n) {
        if (n == *solved) continue;
        if (pos ? !is_negative_in(q.premises[n], p) : !is_positive_in(q.premises[n], p)) return std::nullopt;
    }
    if (pos ? !is_positive_in(q.conclusion, p) : !is_negative_in(q.conclusion, p)) return std::nullopt;
    const Inequality& s = q.premises[*solved];
    const Formula& alpha = pos ? s.lhs : s.rhs;
    QuasiInequality r{substitute_all(q.premises, p, alpha, *solved), substitute(q.conclusion, p, alpha)};
    return Applied{std::move(r), {}};
}

// Gamma, i <= phi |- i <= psi  ~>  Gamma |- phi <= psi
Result simpl_left(const QuasiInequality& q) {
    const Formula& i = q.conclusion.lhs;
    if (!is_nominal(i) || occurs_in(q.conclusion.rhs, i.atom_value())) return std::nullopt;
    const Atom& a = i.atom_value();
    for (std::size_t n = 0; n < q.premises.size(); ++n) {
        const auto& prem = q.premises[n];
        if (prem.lhs != i || occurs_in(prem.rhs, a) || occurs_in_any(q.premises, a, n)) continue;
        QuasiInequality r = q;
        r.premises.erase(r.premises.begin() + static_cast<std::ptrdiff_t>(n));
        r.conclusion = {prem.rhs, q.conclusion.rhs};
        return Applied{std::move(r), {}};
    }
    return std::nullopt;
}

// Gamma, psi <= m |- phi <= m  ~>  Gamma |- phi <= psi
Result simpl_right(const QuasiInequality& q) {
    const Formula& m = q.conclusion.rhs;
    if (!is_conominal(m) || occurs_in(q.conclusion.lhs, m.atom_value())) return std::nullopt;
    const Atom& a = m.atom_value();
    for (std::size_t n = 0; n < q.premises.size(); ++n) {
        const auto& prem = q.premises[n];
        if (prem.rhs != m || occurs_in(prem.lhs, a) || occurs_in_any(q.premises, a, n)) continue;
        QuasiInequality r = q;
        r.premises.erase(r.premises.begin() + static_cast<std::ptrdiff_t>(n));
        r.conclusion = {q.conclusion.lhs, prem.lhs};
        return Applied{std::move(r), {}};
    }
    return std::nullopt;
}

Result drop_redundant(const QuasiInequality& q, std::size_t k) {
    if (!premise_ok(q, k) || !is_tautology(q.premises[k])) return std::nullopt;
    QuasiInequality r = q;
    r.premises.erase(r.premises.begin() + static_cast<std::ptrdiff_t>(k));
    return Applied{std::move(r), {}};
}

Result trivial_conclusion(const QuasiInequality& q) {
    Inequality top{Formula::top(), Formula::top()};
    if (!is_tautology(q.conclusion) || (q.premises.empty() && q.conclusion == top)) return std::nullopt;
    return Applied{QuasiInequality{{}, top}, {}};
}

}  // namespace calculus

std::optional<Applied> apply(const QuasiInequality& q, const Step& s) {
    using namespace calculus;
    const std::size_t k = s.premise;
    switch (s.rule) {
        case Rule::FirstApproximation: return first_approximation(q);
        case Rule::SplitLeft: return split_left(q, k);
        case Rule::SplitRight: return split_right(q, k);
        case Rule::ImpApproxLeft: return imp_approx_left(q, k);
        case Rule::ImpApproxRight: return imp_approx_right(q, k);
        case Rule::FusionApproxLeft: return fusion_approx_left(q, k);
        case Rule::FusionApproxRight: return fusion_approx_right(q, k);
        case Rule::NegApproxLeft: return neg_approx_left(q, k);
        case Rule::NegApproxRight: return neg_approx_right(q, k);
        case Rule::OrRes: return or_res(q, k, s.commuted);
        case Rule::OrResUp: return or_res_up(q, k);
        case Rule::AndRes: return and_res(q, k, s.commuted);
        case Rule::AndResUp: return and_res_up(q, k);
        case Rule::ImpRes: return imp_res(q, k);
        case Rule::ImpResUp: return imp_res_up(q, k);
        case Rule::RightResRes: return right_res_res(q, k);
        case Rule::RightResResUp: return right_res_res_up(q, k);
        case Rule::OrAdj: return or_adj(q, k);
        case Rule::OrJoin: return or_join(q, k, s.other);
        case Rule::AndAdj: return and_adj(q, k);
        case Rule::AndMeet: return and_meet(q, k, s.other);
        case Rule::NegAdjLeft: return neg_adj_left(q, k);
        case Rule::NegAdjLeftUp: return neg_adj_left_up(q, k);
        case Rule::NegAdjRight: return neg_adj_right(q, k);
        case Rule::NegAdjRightUp: return neg_adj_right_up(q, k);
        case Rule::MonotoneBottom:
            return s.atom ? monotone(q, *s.atom, Sign::Positive) : std::nullopt;
        case Rule::MonotoneTop:
            return s.atom ? monotone(q, *s.atom, Sign::Negative) : std::nullopt;
        case Rule::RightAckermann:
            return s.atom ? ackermann(q, *s.atom, Sign::Positive) : std::nullopt;
        case Rule::LeftAckermann:
            return s.atom ? ackermann(q, *s.atom, Sign::Negative) : std::nullopt;
        case Rule::SimplLeft: return simpl_left(q);
        case Rule::SimplRight: return simpl_right(q);
        case Rule::DropRedundant: return drop_redundant(q, k);
        case Rule::TrivialConclusion: return trivial_conclusion(q);
    }
    return std::nullopt;
}

bool Trace::record(const Step& s) {
    auto r = apply(final_state(), s);
    if (!r) return false;
    entries.push_back({s, std::move(r->fresh), std::move(r->result)});
    return true;
}

std::optional<std::size_t> replay_mismatch(const Trace& t) {
    QuasiInequality cur = t.initial;
    for (std::size_t n = 0; n < t.entries.size(); ++n) {
        auto r = apply(cur, t.entries[n].step);
        if (!r || !(r->result == t.entries[n].state) || r->fresh != t.entries[n].fresh) return n;
        cur = std::move(r->result);
    }
    return std::nullopt;
}

nlohmann::json to_json(const Step& s) {
    nlohmann::json j = {{"rule", rule_name(s.rule)}, {"premise", s.premise}};
    if (s.rule == Rule::OrJoin || s.rule == Rule::AndMeet) j["other"] = s.other;
    if (s.atom) j["atom"] = to_json(Formula::atom(*s.atom));
    if (s.commuted) j["commuted"] = true;
    return j;
}

nlohmann::json to_json(const Trace& t) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : t.entries) {
        nlohmann::json fresh = nlohmann::json::array();
        for (const auto& a : e.fresh) fresh.push_back(to_json(Formula::atom(a)));
        entries.push_back({{"step", to_json(e.step)}, {"fresh", fresh}, {"state", to_json(e.state)}});
    }
    return {{"initial", to_json(t.initial)}, {"entries", entries}};
}

Step step_from_json(const nlohmann::json& j) {
    Step s;
    auto r = rule_from_name(j.at("rule").get<std::string>());
    if (!r) throw std::invalid_argument("unknown rule " + j.at("rule").dump());
    s.rule = *r;
    s.premise = j.value("premise", std::size_t{0});
    s.other = j.value("other", std::size_t{0});
    s.commuted = j.value("commuted", false);
    if (j.contains("atom")) s.atom = formula_from_json(j.at("atom")).atom_value();
    return s;
}

Trace trace_from_json(const nlohmann::json& j) {
    Trace t;
    t.initial = quasi_from_json(j.at("initial"));
    for (const auto& e : j.at("entries")) {
        TraceEntry entry;
        entry.step = step_from_json(e.at("step"));
        for (const auto& a : e.at("fresh")) entry.fresh.push_back(formula_from_json(a).atom_value());
        entry.state = quasi_from_json(e.at("state"));
        t.entries.push_back(std::move(entry));
    }
    return t;
}

}  // namespace pearl
