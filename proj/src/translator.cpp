#include "pearl/translator.hpp"

#include <algorithm>

namespace pearl {

namespace {

using F = FOFormula;

WorldVar xvar(const Formula& nominal) { return {Family::X, nominal.atom_value().index}; }
WorldVar yvar(const Formula& conominal) { return {Family::Y, conominal.atom_value().index}; }

bool nom(const Formula& f) { return f.is_atom(AtomKind::Nominal); }
bool conom(const Formula& f) { return f.is_atom(AtomKind::CoNominal); }

F and3(F a, F b, F c) { return F::conj(F::conj(std::move(a), std::move(b)), std::move(c)); }

class Translator {
public:
    Translator(unsigned next_x, unsigned next_y, TrLog* log) : next_x_(next_x), next_y_(next_y), log_(log) {}

    F run(const Inequality& i) {
        TrRule r = tr_rule(i);
        if (log_) log_->fired.push_back(r);
        const Formula& a = i.lhs;
        const Formula& b = i.rhs;
        switch (r) {
            case TrRule::NomNom: return F::leq(xvar(b), xvar(a));
            case TrRule::NomCoNom: return F::negate(F::leq(xvar(a), yvar(b)));
            case TrRule::NomUnit: return F::normal(xvar(a));
            case TrRule::NomBottom: return F::falsity();
            case TrRule::NomTop: return F::truth();
            case TrRule::NomNegCoNom: return F::leq(FOTerm(xvar(a)).star(), yvar(b.arg(0)));
            case TrRule::NomNegNom: return F::negate(F::leq(xvar(b.arg(0)), FOTerm(xvar(a)).star()));
            case TrRule::NomNeg: {
                Formula j = fresh_nominal();
                return F::forall(xvar(j), F::implies(run({j, b.arg(0)}),
                                                     F::negate(F::leq(xvar(j), FOTerm(xvar(a)).star()))));
            }
            case TrRule::NomFusionNomNom: return F::rel(xvar(b.lhs()), xvar(b.rhs()), xvar(a));
            case TrRule::NomFusionNom: {
                Formula k = fresh_nominal();
                return F::exists(xvar(k), F::conj(run({k, b.rhs()}), F::rel(xvar(b.lhs()), xvar(k), xvar(a))));
            }
            case TrRule::NomFusion: {
                Formula j = fresh_nominal();
                return F::exists(xvar(j), F::conj(run({j, b.lhs()}), run({a, Formula::fusion(j, b.rhs())})));
            }
            case TrRule::NomImp: return run({Formula::fusion(a, b.lhs()), b.rhs()});
            case TrRule::NomRightRes: return run({Formula::fusion(b.lhs(), a), b.rhs()});
            case TrRule::NomIntImp: return run({Formula::conj(a, b.lhs()), b.rhs()});
            case TrRule::NomAnd: return F::conj(run({a, b.lhs()}), run({a, b.rhs()}));
            case TrRule::NomOr: return F::disj(run({a, b.lhs()}), run({a, b.rhs()}));
            case TrRule::NomNegFlat: {
                Formula n = fresh_conominal();
                return F::exists(yvar(n), F::conj(run({b.arg(0), n}), F::leq(FOTerm(yvar(n)).star(), xvar(a))));
            }
            case TrRule::NomNegSharp: {
                Formula j = fresh_nominal();
                return F::forall(xvar(j), F::implies(run({j, b.arg(0)}),
                                                     F::negate(F::leq(xvar(a), FOTerm(xvar(j)).star()))));
            }
            case TrRule::NomCoImp: {
                Formula j = fresh_nominal();
                return F::exists(xvar(j), and3(F::leq(xvar(j), xvar(a)), run({j, b.lhs()}),
                                               F::negate(run({j, b.rhs()}))));
            }
            case TrRule::CoNomCoNom: return F::leq(yvar(b), yvar(a));
            case TrRule::UnitCoNom: return F::negate(F::normal(yvar(b)));
            case TrRule::BottomCoNom: return F::truth();
            case TrRule::TopCoNom: return F::falsity();
            case TrRule::NegCoNomCoNom: return F::negate(F::leq(FOTerm(yvar(b)).star(), yvar(a.arg(0))));
            case TrRule::NegNomCoNom: return F::leq(xvar(a.arg(0)), FOTerm(yvar(b)).star());
            case TrRule::NegCoNom: {
                Formula j = fresh_nominal();
                return F::exists(xvar(j), F::conj(run({j, a.arg(0)}), F::leq(xvar(j), FOTerm(yvar(b)).star())));
            }
            case TrRule::FusionNomNomCoNom: return F::negate(F::rel(xvar(a.lhs()), xvar(a.rhs()), yvar(b)));
            case TrRule::FusionNomCoNom: {
                Formula j = fresh_nominal();
                return F::forall(xvar(j), F::implies(run({j, a.rhs()}),
                                                     F::negate(F::rel(xvar(a.lhs()), xvar(j), yvar(b)))));
            }
            case TrRule::FusionCoNom: {
                Formula i = fresh_nominal();
                return F::forall(xvar(i), F::implies(run({i, a.lhs()}), run({Formula::fusion(i, a.rhs()), b})));
            }
            case TrRule::IntImpCoNom: {
                Formula i = fresh_nominal();
                return F::forall(xvar(i), F::implies(run({i, a}), run({i, b})));
            }
            case TrRule::CoImpCoNom: return run({a.lhs(), Formula::disj(a.rhs(), b)});
            case TrRule::AndCoNom: return F::disj(run({a.lhs(), b}), run({a.rhs(), b}));
            case TrRule::OrCoNom: return F::conj(run({a.lhs(), b}), run({a.rhs(), b}));
            case TrRule::Generic: {
                Formula j = fresh_nominal();
                return F::forall(xvar(j), F::implies(run({j, a}), run({j, b})));
            }
        }
        throw TranslationError("no translation rule for " + show(i));
    }

private:
    unsigned next_x_;
    unsigned next_y_;
    TrLog* log_;

    Formula fresh_nominal() { return Formula::nominal(next_x_++); }
    Formula fresh_conominal() { return Formula::conominal(next_y_++); }
};

unsigned next_index(const std::set<Atom>& atoms, AtomKind kind) {
    unsigned n = 0;
    for (const auto& a : atoms)
        if (a.kind == kind) n = std::max(n, a.index + 1);
    return n;
}

F st_rec(const Formula& f, const FOTerm& x, unsigned& next_z) {
    auto fresh = [&] { return WorldVar{Family::Z, next_z++}; };
    switch (f.op()) {
        case Op::Atom: {
            const Atom& a = f.atom_value();
            if (a.kind == AtomKind::PropVar) return F::prop(a.index, a.display(), x);
            if (a.kind == AtomKind::Nominal) return F::leq(WorldVar{Family::X, a.index}, x);
            return F::negate(F::leq(x, WorldVar{Family::Y, a.index}));
        }
        case Op::Unit: return F::normal(x);
        case Op::Top: return F::eq(x, x);
        case Op::Bottom: return F::negate(F::eq(x, x));
        case Op::Neg: {
            auto z = fresh();
            return F::exists(z, F::conj(F::eq(z, x.star()), F::negate(st_rec(f.arg(0), z, next_z))));
        }
        case Op::NegFlat: {
            auto z = fresh();
            return F::exists(z, F::conj(F::leq(FOTerm(z).star(), x), F::negate(st_rec(f.arg(0), z, next_z))));
        }
        case Op::NegSharp: {
            auto z = fresh();
            return F::forall(z, F::implies(F::leq(x, FOTerm(z).star()), F::negate(st_rec(f.arg(0), z, next_z))));
        }
        case Op::And: return F::conj(st_rec(f.lhs(), x, next_z), st_rec(f.rhs(), x, next_z));
        case Op::Or: return F::disj(st_rec(f.lhs(), x, next_z), st_rec(f.rhs(), x, next_z));
        case Op::Fusion: {
            auto u = fresh();
            auto v = fresh();
            return F::exists(u, F::exists(v, and3(F::rel(u, v, x), st_rec(f.lhs(), u, next_z),
                                                  st_rec(f.rhs(), v, next_z))));
        }
        case Op::RelImp: {
            auto u = fresh();
            auto v = fresh();
            return F::forall(u, F::forall(v, F::implies(F::conj(F::rel(x, u, v), st_rec(f.lhs(), u, next_z)),
                                                        st_rec(f.rhs(), v, next_z))));
        }
        case Op::RightRes: {
            auto u = fresh();
            auto v = fresh();
            return F::forall(u, F::forall(v, F::implies(F::conj(F::rel(u, x, v), st_rec(f.lhs(), u, next_z)),
                                                        st_rec(f.rhs(), v, next_z))));
        }
        case Op::CoImp: {
            auto z = fresh();
            return F::exists(z, and3(F::leq(z, x), st_rec(f.lhs(), z, next_z),
                                     F::negate(st_rec(f.rhs(), z, next_z))));
        }
        case Op::IntImp: {
            auto z = fresh();
            return F::forall(z, F::implies(F::conj(F::leq(x, z), st_rec(f.lhs(), z, next_z)),
                                           st_rec(f.rhs(), z, next_z)));
        }
    }
    throw TranslationError("standard translation: unknown connective");
}

bool is_true(const F& f) { return f.kind() == FOKind::True; }
bool is_false(const F& f) { return f.kind() == FOKind::False; }

// For a formula of shape Q v1..vn (G -> not H) with Q universal, returns
// exists v1..vn (G and H); nullopt otherwise.
std::optional<F> negate_universal_guard(const F& f) {
    std::vector<WorldVar> vs;
    const F* cur = &f;
    while (cur->kind() == FOKind::Forall) {
        vs.push_back(cur->bound());
        cur = &cur->arg(0);
    }
    if (vs.empty() || cur->kind() != FOKind::Implies || cur->arg(1).kind() != FOKind::Not) return std::nullopt;
    F body = F::conj(cur->arg(0), cur->arg(1).arg(0));
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = F::exists(*it, body);
    return body;
}

bool binds_free_of(const F& quantified, const F& other) {
    auto fv = free_vars(other);
    const F* cur = &quantified;
    while (cur->is_quantifier()) {
        if (fv.count(cur->bound())) return true;
        cur = &cur->arg(0);
    }
    return false;
}

F simplify_once(const F& f);

void conjuncts_into(const F& f, std::vector<F>& out) {
    if (f.kind() == FOKind::And) {
        conjuncts_into(f.arg(0), out);
        conjuncts_into(f.arg(1), out);
    } else {
        out.push_back(f);
    }
}

// Every conjunct of b is a conjunct of a.
bool entails_by_conjuncts(const F& a, const F& b) {
    std::vector<F> have, want;
    conjuncts_into(a, have);
    conjuncts_into(b, want);
    for (const auto& w : want)
        if (std::find(have.begin(), have.end(), w) == have.end()) return false;
    return true;
}

F simplify_node(const F& f) {
    switch (f.kind()) {
        case FOKind::Not: {
            const F& a = f.arg(0);
            if (a.kind() == FOKind::Not) return a.arg(0);
            if (is_true(a)) return F::falsity();
            if (is_false(a)) return F::truth();
            if (a.kind() == FOKind::Exists) return F::forall(a.bound(), simplify_node(F::negate(a.arg(0))));
            if (a.kind() == FOKind::And) {
                const F &l = a.arg(0), &r = a.arg(1);
                if (l.kind() == FOKind::Not) return F::implies(r, l.arg(0));
                if (r.kind() == FOKind::Not) return F::implies(l, r.arg(0));
            }
            return f;
        }
        case FOKind::And: {
            const F &a = f.arg(0), &b = f.arg(1);
            if (is_false(a) || is_false(b)) return F::falsity();
            if (is_true(a)) return b;
            if (is_true(b)) return a;
            if (a == b) return a;
            return f;
        }
        case FOKind::Or: {
            const F &a = f.arg(0), &b = f.arg(1);
            if (is_true(a) || is_true(b)) return F::truth();
            if (is_false(a)) return b;
            if (is_false(b)) return a;
            if (a == b) return a;
            return f;
        }
        case FOKind::Implies: {
            const F &a = f.arg(0), &b = f.arg(1);
            if (is_false(a) || is_true(b)) return F::truth();
            if (entails_by_conjuncts(a, b)) return F::truth();
            if (is_true(a)) return b;
            if (is_false(b)) return simplify_node(F::negate(a));
            if (b.kind() == FOKind::Not) {
                const F& k = b.arg(0);
                if (a.kind() == FOKind::Not) return F::implies(k, a.arg(0));
                if (!binds_free_of(a, k))
                    if (auto e = negate_universal_guard(a)) return F::implies(k, simplify_once(*e));
            }
            return f;
        }
        case FOKind::Forall:
        case FOKind::Exists: {
            const F& body = f.arg(0);
            if (is_true(body) || is_false(body)) return body;
            if (!free_vars(body).count(f.bound())) return body;
            return f;
        }
        default:
            return f;
    }
}

F simplify_once(const F& f) {
    switch (f.kind()) {
        case FOKind::Not: return simplify_node(F::negate(simplify_once(f.arg(0))));
        case FOKind::And: return simplify_node(F::conj(simplify_once(f.arg(0)), simplify_once(f.arg(1))));
        case FOKind::Or: return simplify_node(F::disj(simplify_once(f.arg(0)), simplify_once(f.arg(1))));
        case FOKind::Implies:
            return simplify_node(F::implies(simplify_once(f.arg(0)), simplify_once(f.arg(1))));
        case FOKind::Forall: return simplify_node(F::forall(f.bound(), simplify_once(f.arg(0))));
        case FOKind::Exists: return simplify_node(F::exists(f.bound(), simplify_once(f.arg(0))));
        default: return f;
    }
}

}  // namespace

int rule_number(TrRule r) {
    int n = static_cast<int>(r);
    return n <= static_cast<int>(TrRule::Generic) ? n : 0;
}

const char* rule_pattern(TrRule r) {
    switch (r) {
        case TrRule::NomNom: return "i <= j";
        case TrRule::NomCoNom: return "i <= m";
        case TrRule::NomUnit: return "i <= t";
        case TrRule::NomBottom: return "i <= bot";
        case TrRule::NomTop: return "i <= top";
        case TrRule::NomNegCoNom: return "i <= ~m";
        case TrRule::NomNegNom: return "i <= ~j";
        case TrRule::NomNeg: return "i <= ~A";
        case TrRule::NomFusionNomNom: return "i <= j o k";
        case TrRule::NomFusionNom: return "i <= j o B";
        case TrRule::NomFusion: return "i <= A o B";
        case TrRule::NomImp: return "i <= A -> B";
        case TrRule::NomRightRes: return "i <= A <- B";
        case TrRule::NomIntImp: return "i <= A => B";
        case TrRule::NomAnd: return "i <= A ^ B";
        case TrRule::NomOr: return "i <= A v B";
        case TrRule::CoNomCoNom: return "n <= m";
        case TrRule::UnitCoNom: return "t <= m";
        case TrRule::BottomCoNom: return "bot <= m";
        case TrRule::TopCoNom: return "top <= m";
        case TrRule::NegCoNomCoNom: return "~n <= m";
        case TrRule::NegNomCoNom: return "~j <= m";
        case TrRule::NegCoNom: return "~A <= m";
        case TrRule::FusionNomNomCoNom: return "i o j <= m";
        case TrRule::FusionNomCoNom: return "i o B <= m";
        case TrRule::FusionCoNom: return "A o B <= m";
        case TrRule::IntImpCoNom: return "A => B <= m";
        case TrRule::CoImpCoNom: return "A -< B <= m";
        case TrRule::AndCoNom: return "A ^ B <= m";
        case TrRule::OrCoNom: return "A v B <= m";
        case TrRule::Generic: return "A <= B";
        case TrRule::NomNegFlat: return "i <= ~flat A";
        case TrRule::NomNegSharp: return "i <= ~sharp A";
        case TrRule::NomCoImp: return "i <= A -< B";
    }
    return "?";
}

TrRule tr_rule(const Inequality& i) {
    const Formula& a = i.lhs;
    const Formula& b = i.rhs;
    if (!is_pure(i)) throw TranslationError("translation needs a pure inequality: " + show(i));
    if (nom(a)) {
        if (nom(b)) return TrRule::NomNom;
        if (conom(b)) return TrRule::NomCoNom;
        switch (b.op()) {
            case Op::Unit: return TrRule::NomUnit;
            case Op::Bottom: return TrRule::NomBottom;
            case Op::Top: return TrRule::NomTop;
            case Op::Neg:
                if (conom(b.arg(0))) return TrRule::NomNegCoNom;
                if (nom(b.arg(0))) return TrRule::NomNegNom;
                return TrRule::NomNeg;
            case Op::Fusion:
                if (nom(b.lhs()) && nom(b.rhs())) return TrRule::NomFusionNomNom;
                if (nom(b.lhs())) return TrRule::NomFusionNom;
                return TrRule::NomFusion;
            case Op::RelImp: return TrRule::NomImp;
            case Op::RightRes: return TrRule::NomRightRes;
            case Op::IntImp: return TrRule::NomIntImp;
            case Op::And: return TrRule::NomAnd;
            case Op::Or: return TrRule::NomOr;
            case Op::NegFlat: return TrRule::NomNegFlat;
            case Op::NegSharp: return TrRule::NomNegSharp;
            case Op::CoImp: return TrRule::NomCoImp;
            case Op::Atom: break;
        }
    }
    if (conom(b)) {
        if (conom(a)) return TrRule::CoNomCoNom;
        switch (a.op()) {
            case Op::Unit: return TrRule::UnitCoNom;
            case Op::Bottom: return TrRule::BottomCoNom;
            case Op::Top: return TrRule::TopCoNom;
            case Op::Neg:
                if (conom(a.arg(0))) return TrRule::NegCoNomCoNom;
                if (nom(a.arg(0))) return TrRule::NegNomCoNom;
                return TrRule::NegCoNom;
            case Op::Fusion:
                if (nom(a.lhs()) && nom(a.rhs())) return TrRule::FusionNomNomCoNom;
                if (nom(a.lhs())) return TrRule::FusionNomCoNom;
                return TrRule::FusionCoNom;
            case Op::IntImp: return TrRule::IntImpCoNom;
            case Op::CoImp: return TrRule::CoImpCoNom;
            case Op::And: return TrRule::AndCoNom;
            case Op::Or: return TrRule::OrCoNom;
            default: break;
        }
    }
    return TrRule::Generic;
}

FOFormula st(const Formula& f, const FOTerm& x, unsigned& next_z) { return st_rec(f, x, next_z); }

FOFormula st(const Formula& f, const FOTerm& x) {
    unsigned next_z = x.var.family == Family::Z ? x.var.index + 1 : 0;
    return st_rec(f, x, next_z);
}

FOFormula st_inequality(const Inequality& i) {
    WorldVar z{Family::Z, 0};
    unsigned next_z = 1;
    F l = st_rec(i.lhs, z, next_z);
    F r = st_rec(i.rhs, z, next_z);
    return F::forall(z, F::implies(l, r));
}

FOFormula tr(const Inequality& i, TrLog* log) {
    auto atoms = atom_set(i);
    Translator t(next_index(atoms, AtomKind::Nominal), next_index(atoms, AtomKind::CoNominal), log);
    return t.run(i);
}

FOFormula tr_quasi(const QuasiInequality& q, TrLog* log) {
    auto atoms = atom_set(q);
    Translator t(next_index(atoms, AtomKind::Nominal), next_index(atoms, AtomKind::CoNominal), log);
    std::vector<F> prem;
    for (const auto& p : q.premises) prem.push_back(t.run(p));
    F concl = t.run(q.conclusion);
    F body = prem.empty() ? concl : F::implies(conjunction(prem), concl);
    return close_universally(body);
}

FOFormula fo_simplify(const FOFormula& f) {
    F cur = f;
    for (int round = 0; round < 64; ++round) {
        F next = simplify_once(cur);
        if (next == cur) return next;
        cur = next;
    }
    return cur;
}

}  // namespace pearl
