#include "pearl/pipeline.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "pearl/parser.hpp"

namespace pearl {

namespace {

constexpr std::size_t kMaxAttempted = 256;

const Rule kApproximationRules[] = {
    Rule::SplitLeft,        Rule::SplitRight,        Rule::ImpApproxLeft, Rule::ImpApproxRight,
    Rule::FusionApproxLeft, Rule::FusionApproxRight, Rule::NegApproxLeft, Rule::NegApproxRight,
};

Step step_of(Rule r, std::size_t premise = 0) {
    Step s;
    s.rule = r;
    s.premise = premise;
    return s;
}

struct Count {
    std::size_t with_sign = 0;
    std::size_t total = 0;
};

Count count_in(const Inequality& i, const Atom& p, Sign s) {
    Count c;
    for (const auto& o : occurrences(i.lhs, p)) {
        ++c.total;
        if (flip(o.sign) == s) ++c.with_sign;
    }
    for (const auto& o : occurrences(i.rhs, p)) {
        ++c.total;
        if (o.sign == s) ++c.with_sign;
    }
    return c;
}

bool solved_form(const Inequality& i, const Atom& p, Sign s) {
    const Formula& var_side = s == Sign::Positive ? i.rhs : i.lhs;
    const Formula& other = s == Sign::Positive ? i.lhs : i.rhs;
    return var_side.is_atom() && var_side.atom_value() == p && !occurs_in(other, p);
}

// One residuation or adjunction step moving the single occurrence of p outwards.
std::optional<Step> solve_step(const Inequality& i, const Atom& p, std::size_t k) {
    auto step = [k](Rule r, bool commuted = false) {
        Step s;
        s.rule = r;
        s.premise = k;
        s.commuted = commuted;
        return std::optional<Step>(s);
    };
    if (occurs_in(i.rhs, p)) {
        const Formula& r = i.rhs;
        switch (r.op()) {
            case Op::Or: return step(Rule::OrRes, occurs_in(r.lhs(), p));
            case Op::And: return step(Rule::AndAdj);
            case Op::RelImp: return step(Rule::ImpRes);
            case Op::RightRes: return step(Rule::RightResRes);
            case Op::IntImp: return step(Rule::AndResUp);
            case Op::Neg: return step(Rule::NegAdjRight);
            case Op::NegSharp: return step(Rule::NegAdjRightUp);
            default: return std::nullopt;
        }
    }
    const Formula& l = i.lhs;
    switch (l.op()) {
        case Op::Or: return step(Rule::OrAdj);
        case Op::And: return step(Rule::AndRes, occurs_in(l.rhs(), p));
        case Op::Fusion: return step(occurs_in(l.lhs(), p) ? Rule::ImpResUp : Rule::RightResResUp);
        case Op::CoImp: return step(Rule::OrResUp);
        case Op::Neg: return step(Rule::NegAdjLeft);
        case Op::NegFlat: return step(Rule::NegAdjLeftUp);
        default: return std::nullopt;
    }
}

void append_atoms(const Formula& f, std::vector<Atom>& out) {
    for (const auto& a : variables_of(f))
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
}

struct Search {
    explicit Search(Elimination& e) : out(e) {}

    Elimination& out;
    std::vector<SignedVar> order;
    std::vector<TraceEntry> path;
    std::size_t fewest = static_cast<std::size_t>(-1);
    std::unordered_set<std::string> dead;

    bool run(const QuasiInequality& q) {
        auto cands = elimination_candidates(q);
        if (cands.empty()) {
            out.success = true;
            out.order = order;
            out.entries = path;
            out.result = q;
            return true;
        }
        std::string key = show(q);
        if (dead.count(key)) return false;
        bool moved = false;
        for (const auto& p : cands) {
            for (Sign s : {Sign::Positive, Sign::Negative}) {
                SignedVar v{p, s};
                auto e = eliminate_variable(q, v);
                if (!e) continue;
                moved = true;
                order.push_back(v);
                std::size_t mark = path.size();
                path.insert(path.end(), e->begin(), e->end());
                const QuasiInequality next = path.back().state;
                if (run(next)) return true;
                path.resize(mark);
                order.pop_back();
            }
        }
        if (!moved && out.attempted.size() < kMaxAttempted) out.attempted.push_back(order);
        if (cands.size() < fewest) {
            fewest = cands.size();
            out.order = order;
            out.entries = path;
            out.result = q;
        }
        dead.insert(key);
        return false;
    }
};

std::string show_premises(const std::vector<Inequality>& v) { return show(v); }

}  // namespace

std::string show(const SignedVar& s) { return (s.sign == Sign::Positive ? "+" : "-") + s.var.display(); }

std::string show(const std::vector<SignedVar>& order) {
    std::string out = "[";
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k) out += ", ";
        out += "'" + show(order[k]) + "'";
    }
    return out + "]";
}

Inequality initial_inequality(const Formula& f) {
    if (f.op() == Op::RelImp) return {f.lhs(), f.rhs()};
    return {Formula::unit(), f};
}

Preprocessed preprocess(const Formula& f) {
    Preprocessed out;
    out.initial = initial_inequality(f);
    std::vector<Inequality> goals{out.initial};
    for (bool changed = true; changed;) {
        changed = false;
        for (bool again = true; again;) {
            again = false;
            for (std::size_t k = 0; k < goals.size() && !again; ++k) {
                for (Rule r : {Rule::SplitLeft, Rule::SplitRight}) {
                    auto s = r == Rule::SplitLeft ? calculus::split_left(goals[k]) : calculus::split_right(goals[k]);
                    if (!s) continue;
                    auto before = goals;
                    goals[k] = s->first;
                    goals.insert(goals.begin() + static_cast<std::ptrdiff_t>(k) + 1, s->second);
                    out.steps.push_back({r, k, std::nullopt, before, goals});
                    again = changed = true;
                    break;
                }
            }
        }
        for (std::size_t k = 0; k < goals.size(); ++k) {
            std::vector<Atom> vars;
            append_atoms(goals[k].lhs, vars);
            append_atoms(goals[k].rhs, vars);
            for (const auto& p : vars) {
                for (Sign s : {Sign::Positive, Sign::Negative}) {
                    auto r = calculus::monotone(QuasiInequality{{}, goals[k]}, p, s);
                    if (!r) continue;
                    auto before = goals;
                    goals[k] = r->result.conclusion;
                    out.steps.push_back({s == Sign::Positive ? Rule::MonotoneBottom : Rule::MonotoneTop, k, p,
                                         before, goals});
                    changed = true;
                    break;
                }
            }
        }
    }
    out.goals = goals;
    return out;
}

void approximate_into(Trace& t) {
    std::size_t k = 0;
    while (k < t.final_state().premises.size()) {
        bool applied = false;
        for (Rule r : kApproximationRules) {
            Step s;
            s.rule = r;
            s.premise = k;
            if (t.record(s)) {
                applied = true;
                break;
            }
        }
        if (!applied) ++k;
    }
}

Trace approximate(const Inequality& goal) {
    Trace t;
    t.initial = QuasiInequality{{}, goal};
    t.record(step_of(Rule::FirstApproximation));
    approximate_into(t);
    return t;
}

std::vector<Atom> elimination_candidates(const QuasiInequality& q) {
    std::vector<Atom> out;
    for (std::size_t n = q.premises.size(); n-- > 0;) {
        append_atoms(q.premises[n].lhs, out);
        append_atoms(q.premises[n].rhs, out);
    }
    append_atoms(q.conclusion.lhs, out);
    append_atoms(q.conclusion.rhs, out);
    return out;
}

std::optional<std::vector<TraceEntry>> eliminate_variable(const QuasiInequality& q, const SignedVar& v) {
    const Atom& p = v.var;
    const Sign s = v.sign;
    bool any_solvable = false;
    for (const auto& prem : q.premises) {
        Count c = count_in(prem, p, s);
        if (c.with_sign == 0) continue;
        if (c.total != 1) return std::nullopt;
        any_solvable = true;
    }

    Trace t;
    t.initial = q;
    if (!any_solvable) {
        Step m;
        m.rule = s == Sign::Positive ? Rule::MonotoneBottom : Rule::MonotoneTop;
        m.atom = p;
        if (!t.record(m)) return std::nullopt;
        return t.entries;
    }

    for (;;) {
        const auto& cur = t.final_state();
        std::optional<std::size_t> target;
        for (std::size_t n = 0; n < cur.premises.size(); ++n) {
            if (count_in(cur.premises[n], p, s).with_sign > 0 && !solved_form(cur.premises[n], p, s)) {
                target = n;
                break;
            }
        }
        if (!target) break;
        auto step = solve_step(cur.premises[*target], p, *target);
        if (!step || !t.record(*step)) return std::nullopt;
    }

    for (;;) {
        const auto& cur = t.final_state();
        std::vector<std::size_t> solved;
        for (std::size_t n = 0; n < cur.premises.size(); ++n)
            if (solved_form(cur.premises[n], p, s)) solved.push_back(n);
        if (solved.size() < 2) break;
        Step j;
        j.rule = s == Sign::Positive ? Rule::OrJoin : Rule::AndMeet;
        j.premise = solved[0];
        j.other = solved[1];
        if (!t.record(j)) return std::nullopt;
    }

    Step a;
    a.rule = s == Sign::Positive ? Rule::RightAckermann : Rule::LeftAckermann;
    a.atom = p;
    if (!t.record(a)) return std::nullopt;
    return t.entries;
}

Elimination eliminate(const QuasiInequality& q) {
    Elimination out;
    out.result = q;
    Search search{out};
    search.run(q);
    return out;
}

void simplify_into(Trace& t) {
    for (;;) {
        if (t.record(step_of(Rule::TrivialConclusion))) return;
        bool dropped = false;
        for (std::size_t k = 0; k < t.final_state().premises.size(); ++k) {
            Step d;
            d.rule = Rule::DropRedundant;
            d.premise = k;
            if (t.record(d)) {
                dropped = true;
                break;
            }
        }
        if (dropped) continue;
        if (t.record(step_of(Rule::SimplRight))) continue;
        if (t.record(step_of(Rule::SimplLeft))) continue;
        return;
    }
}

QuasiInequality simplify(const QuasiInequality& q) {
    Trace t;
    t.initial = q;
    simplify_into(t);
    return t.final_state();
}

PearlResult run_pearl(const Formula& f) {
    PearlResult r;
    r.input = f;
    r.preprocessed = preprocess(f);
    bool all = true;
    std::vector<FOFormula> parts;
    for (const auto& goal : r.preprocessed.goals) {
        GoalResult g;
        g.goal = goal;
        g.trace = approximate(goal);
        g.approximated = g.trace.final_state();
        g.elimination = eliminate(g.approximated);
        for (const auto& e : g.elimination.entries) g.trace.entries.push_back(e);
        if (g.elimination.success) {
            simplify_into(g.trace);
            g.simplified = g.trace.final_state();
            g.translated = tr_quasi(*g.simplified, &g.tr_log);
            g.correspondent = fo_simplify(*g.translated);
            const bool seen = std::any_of(parts.begin(), parts.end(), [&](const FOFormula& x) {
                return alpha_equivalent(x, *g.correspondent);
            });
            if (!seen) parts.push_back(*g.correspondent);
        } else {
            all = false;
        }
        r.goals.push_back(std::move(g));
    }
    r.status = all ? Status::Success : Status::Failure;
    if (all) r.correspondent = fo_simplify(conjunction(parts));
    return r;
}

nlohmann::json to_json(const PearlResult& r) {
    nlohmann::json goals = nlohmann::json::array();
    for (const auto& g : r.goals) {
        nlohmann::json order = nlohmann::json::array();
        for (const auto& v : g.elimination.order) order.push_back(show(v));
        nlohmann::json attempted = nlohmann::json::array();
        for (const auto& a : g.elimination.attempted) {
            nlohmann::json one = nlohmann::json::array();
            for (const auto& v : a) one.push_back(show(v));
            attempted.push_back(one);
        }
        nlohmann::json j = {
            {"goal", show(g.goal)},
            {"approximated", show(g.approximated)},
            {"success", g.success()},
            {"order", order},
            {"trace", to_json(g.trace)},
        };
        if (g.success()) {
            j["eliminated"] = show(g.elimination.result);
            j["simplified"] = show(*g.simplified);
            j["translated"] = show(*g.translated);
            j["correspondent"] = show(*g.correspondent);
            j["correspondent_ast"] = to_json(*g.correspondent);
            nlohmann::json fired = nlohmann::json::array();
            for (auto rule : g.tr_log.fired) fired.push_back(rule_pattern(rule));
            j["tr_rules"] = fired;
        } else {
            j["stuck"] = show(g.elimination.result);
            j["stuck_ast"] = to_json(g.elimination.result);
            j["attempted"] = attempted;
        }
        goals.push_back(j);
    }
    nlohmann::json pre = nlohmann::json::array();
    for (const auto& s : r.preprocessed.steps)
        pre.push_back({{"rule", rule_name(s.rule)}, {"goal", s.goal}, {"after", show(s.after)}});
    nlohmann::json out = {
        {"status", r.status == Status::Success ? "success" : "failure"},
        {"input", show(r.input)},
        {"input_ast", to_json(r.input)},
        {"initial", show(r.preprocessed.initial)},
        {"preprocessing", pre},
        {"goals_after_preprocessing", show(r.preprocessed.goals)},
        {"goals", goals},
    };
    if (r.correspondent) {
        out["correspondent"] = show(*r.correspondent);
        out["correspondent_ast"] = to_json(*r.correspondent);
    }
    return out;
}

std::string report_text(const PearlResult& r) {
    std::ostringstream os;
    os << "Input: " << show(r.input) << "\n";
    os << "Initial inequality: " << show(std::vector<Inequality>{r.preprocessed.initial}) << "\n";
    os << "After preprocessing: " << show_premises(r.preprocessed.goals) << "\n";
    for (std::size_t k = 0; k < r.goals.size(); ++k) {
        const auto& g = r.goals[k];
        os << "\nGoal " << k + 1 << ": " << show(g.goal) << "\n";
        os << "  Approximation phase: " << show(g.approximated) << "\n";
        if (!g.success()) {
            os << "  Elimination failed; stuck at: " << show(g.elimination.result) << "\n";
            os << "  Orders tried: " << g.elimination.attempted.size() << "\n";
            continue;
        }
        os << "  Order of variables during the elimination phase: " << show(g.elimination.order) << "\n";
        os << "  Elimination phase: " << show(g.elimination.result) << "\n";
        os << "  Simplification: " << show(*g.simplified) << "\n";
        os << "  Translation: " << show(*g.translated) << "\n";
        os << "  Simplified translation: " << show(*g.correspondent) << "\n";
    }
    os << "\nResult: " << (r.status == Status::Success ? "success" : "failure") << "\n";
    if (r.correspondent) os << "First-order correspondent: " << show(*r.correspondent) << "\n";
    return os.str();
}

}  // namespace pearl
