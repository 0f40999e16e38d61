#include "pearl/oracle.hpp"

#include <algorithm>
#include <bit>

namespace pearl {

namespace {

bool bit(WorldSet s, unsigned w) { return (s >> w) & 1u; }

// Bit u*n+v is set iff u <= v.
std::uint32_t leq_bits(const Frame& f) {
    const unsigned nn = f.n * f.n;
    const std::uint64_t row = (std::uint64_t{1} << nn) - 1;
    std::uint64_t out = 0;
    for (unsigned o = 0; o < f.n; ++o)
        if (f.in_normal(o)) out |= (f.rel >> (o * nn)) & row;
    return static_cast<std::uint32_t>(out);
}

bool has_leq(std::uint32_t bits, unsigned n, unsigned u, unsigned v) { return (bits >> (u * n + v)) & 1u; }

bool reflexive_bits(std::uint32_t bits, unsigned n) {
    for (unsigned x = 0; x < n; ++x)
        if (!has_leq(bits, n, x, x)) return false;
    return true;
}

// Conditions 2-4 and 6, which do not involve the star.
bool relation_conditions(const Frame& f, std::uint32_t le) {
    const unsigned n = f.n;
    for (unsigned x = 0; x < n; ++x) {
        for (unsigned y = 0; y < n; ++y) {
            if (!has_leq(le, n, x, y)) continue;
            if (f.in_normal(x) && !f.in_normal(y)) return false;
            for (unsigned u = 0; u < n; ++u) {
                for (unsigned v = 0; v < n; ++v) {
                    if (f.R(y, u, v) && !f.R(x, u, v)) return false;
                    if (f.R(u, y, v) && !f.R(u, x, v)) return false;
                    if (f.R(u, v, x) && !f.R(u, v, y)) return false;
                }
            }
        }
    }
    return true;
}

bool star_condition(const Frame& f, std::uint32_t le) {
    for (unsigned x = 0; x < f.n; ++x)
        for (unsigned y = 0; y < f.n; ++y)
            if (has_leq(le, f.n, x, y) && !has_leq(le, f.n, f.star[y], f.star[x])) return false;
    return true;
}

WorldSet fusion_of(const Frame& f, WorldSet a, WorldSet b) {
    WorldSet out = 0;
    for (unsigned x = 0; x < f.n; ++x)
        for (unsigned y = 0; y < f.n && !bit(out, x); ++y)
            if (bit(a, y))
                for (unsigned z = 0; z < f.n; ++z)
                    if (bit(b, z) && f.R(y, z, x)) {
                        out |= WorldSet{1} << x;
                        break;
                    }
    return out;
}

unsigned apply_star(const Frame& f, unsigned w, unsigned times) {
    for (unsigned k = 0; k < times; ++k) w = f.star[w];
    return w;
}

void require_size(unsigned n, unsigned limit) {
    if (n == 0) throw OracleError("frames need at least one world");
    if (n > limit) throw BudgetError("frame size " + std::to_string(n) + " exceeds the limit " + std::to_string(limit));
}

}  // namespace

bool Frame::leq(unsigned u, unsigned v) const {
    for (unsigned o = 0; o < n; ++o)
        if (in_normal(o) && R(o, u, v)) return true;
    return false;
}

WorldSet Frame::up(unsigned w) const {
    WorldSet s = 0;
    for (unsigned v = 0; v < n; ++v)
        if (leq(w, v)) s |= WorldSet{1} << v;
    return s;
}

WorldSet Frame::down(unsigned w) const {
    WorldSet s = 0;
    for (unsigned v = 0; v < n; ++v)
        if (leq(v, w)) s |= WorldSet{1} << v;
    return s;
}

bool Frame::is_up_set(WorldSet s) const { return up_closure(s) == s; }

WorldSet Frame::up_closure(WorldSet s) const {
    WorldSet out = s;
    for (unsigned w = 0; w < n; ++w)
        if (bit(s, w)) out |= up(w);
    return out;
}

namespace frame_condition {

bool reflexive(const Frame& f) { return reflexive_bits(leq_bits(f), f.n); }

bool antitone_first(const Frame& f) {
    for (unsigned x = 0; x < f.n; ++x)
        for (unsigned y = 0; y < f.n; ++y)
            if (f.leq(x, y))
                for (unsigned u = 0; u < f.n; ++u)
                    for (unsigned v = 0; v < f.n; ++v)
                        if (f.R(y, u, v) && !f.R(x, u, v)) return false;
    return true;
}

bool antitone_second(const Frame& f) {
    for (unsigned x = 0; x < f.n; ++x)
        for (unsigned y = 0; y < f.n; ++y)
            if (f.leq(x, y))
                for (unsigned u = 0; u < f.n; ++u)
                    for (unsigned v = 0; v < f.n; ++v)
                        if (f.R(u, y, v) && !f.R(u, x, v)) return false;
    return true;
}

bool monotone_third(const Frame& f) {
    for (unsigned x = 0; x < f.n; ++x)
        for (unsigned y = 0; y < f.n; ++y)
            if (f.leq(x, y))
                for (unsigned u = 0; u < f.n; ++u)
                    for (unsigned v = 0; v < f.n; ++v)
                        if (f.R(u, v, x) && !f.R(u, v, y)) return false;
    return true;
}

bool star_antitone(const Frame& f) { return star_condition(f, leq_bits(f)); }

bool normal_up_closed(const Frame& f) {
    for (unsigned o = 0; o < f.n; ++o)
        for (unsigned v = 0; v < f.n; ++v)
            if (f.in_normal(o) && f.leq(o, v) && !f.in_normal(v)) return false;
    return true;
}

}  // namespace frame_condition

bool check_frame(const Frame& f) {
    if (f.n == 0 || f.n > kMaxWorlds) return false;
    for (unsigned w = 0; w < f.n; ++w)
        if (f.star[w] >= f.n) return false;
    return frame_condition::reflexive(f) && frame_condition::antitone_first(f) &&
           frame_condition::antitone_second(f) && frame_condition::monotone_third(f) &&
           frame_condition::star_antitone(f) && frame_condition::normal_up_closed(f);
}

bool is_antichain(const Frame& f) {
    for (unsigned u = 0; u < f.n; ++u)
        for (unsigned v = 0; v < f.n; ++v)
            if (f.leq(u, v) != (u == v)) return false;
    return true;
}

bool fusion_assoc_comm(const Frame& f) {
    auto ups = up_sets(f);
    for (WorldSet a : ups) {
        for (WorldSet b : ups) {
            WorldSet ab = fusion_of(f, a, b);
            if (ab != fusion_of(f, b, a)) return false;
            for (WorldSet c : ups)
                if (fusion_of(f, ab, c) != fusion_of(f, a, fusion_of(f, b, c))) return false;
        }
    }
    return true;
}

bool admits(const Frame& f, SyntaxMode mode) {
    switch (mode) {
        case SyntaxMode::Relevance: return true;
        case SyntaxMode::RA: return is_antichain(f);
        case SyntaxMode::BI: return fusion_assoc_comm(f);
    }
    return true;
}

void for_each_frame(unsigned n, SyntaxMode mode, const std::function<bool(const Frame&)>& fn) {
    require_size(n, kMaxEnumerated);
    const std::uint64_t rel_count = std::uint64_t{1} << (n * n * n);
    unsigned star_count = 1;
    for (unsigned k = 0; k < n; ++k) star_count *= n;
    Frame f;
    f.n = n;
    for (WorldSet o = 0; o < (WorldSet{1} << n); ++o) {
        f.normal = o;
        for (std::uint64_t r = 0; r < rel_count; ++r) {
            f.rel = r;
            const std::uint32_t le = leq_bits(f);
            if (!reflexive_bits(le, n) || !relation_conditions(f, le)) continue;
            for (unsigned s = 0; s < star_count; ++s) {
                // s read as a base-n numeral with star[0] as the leading digit
                unsigned rest = s;
                for (unsigned k = n; k-- > 0;) {
                    f.star[k] = static_cast<std::uint8_t>(rest % n);
                    rest /= n;
                }
                if (!star_condition(f, le) || !admits(f, mode)) continue;
                if (!fn(f)) return;
            }
        }
    }
}

std::vector<Frame> enumerate_frames(unsigned n, SyntaxMode mode) {
    std::vector<Frame> out;
    for_each_frame(n, mode, [&](const Frame& f) {
        out.push_back(f);
        return true;
    });
    return out;
}

Frame sample_frame(std::mt19937_64& rng, unsigned n, SyntaxMode mode) {
    require_size(n, kMaxWorlds);
    std::bernoulli_distribution sparse(0.3);
    std::bernoulli_distribution extra(0.2);
    std::uniform_int_distribution<unsigned> world(0, n - 1);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        // preorder
        bool P[kMaxWorlds][kMaxWorlds] = {};
        for (unsigned u = 0; u < n; ++u)
            for (unsigned v = 0; v < n; ++v) P[u][v] = u == v || (mode != SyntaxMode::RA && sparse(rng));
        for (unsigned k = 0; k < n; ++k)
            for (unsigned u = 0; u < n; ++u)
                for (unsigned v = 0; v < n; ++v) P[u][v] = P[u][v] || (P[u][k] && P[k][v]);

        Frame f;
        f.n = n;
        WorldSet o = 0;
        while (o == 0) o = static_cast<WorldSet>(rng() & ((WorldSet{1} << n) - 1));
        for (unsigned u = 0; u < n; ++u)
            if (bit(o, u))
                for (unsigned v = 0; v < n; ++v)
                    if (P[u][v]) o |= WorldSet{1} << v;
        f.normal = o;

        for (unsigned a = 0; a < n; ++a)
            for (unsigned b = 0; b < n; ++b)
                for (unsigned c = 0; c < n; ++c) {
                    if (bit(o, a) && P[b][c]) f.set_R(a, b, c);
                    else if (!bit(o, a) && extra(rng)) f.set_R(a, b, c);
                }
        for (bool changed = true; changed;) {
            changed = false;
            for (unsigned x = 0; x < n; ++x)
                for (unsigned y = 0; y < n; ++y) {
                    if (!P[x][y]) continue;
                    for (unsigned u = 0; u < n; ++u)
                        for (unsigned v = 0; v < n; ++v) {
                            if (f.R(y, u, v) && !f.R(x, u, v)) f.set_R(x, u, v), changed = true;
                            if (f.R(u, y, v) && !f.R(u, x, v)) f.set_R(u, x, v), changed = true;
                            if (f.R(u, v, x) && !f.R(u, v, y)) f.set_R(u, v, y), changed = true;
                        }
                }
        }

        const std::uint32_t le = leq_bits(f);
        bool starred = false;
        for (int tries = 0; tries < 32 && !starred; ++tries) {
            for (unsigned w = 0; w < n; ++w) f.star[w] = static_cast<std::uint8_t>(world(rng));
            starred = star_condition(f, le);
        }
        if (!starred) {
            const auto c = static_cast<std::uint8_t>(world(rng));
            for (unsigned w = 0; w < n; ++w) f.star[w] = c;
        }
        if (check_frame(f) && admits(f, mode)) return f;
    }
    throw OracleError("could not sample a frame for this mode");
}

std::vector<WorldSet> up_sets(const Frame& f) {
    std::vector<WorldSet> out;
    for (WorldSet s = 0; s <= f.all(); ++s)
        if (f.is_up_set(s)) out.push_back(s);
    return out;
}

void check_valuation(const Frame& f, const Valuation& v) {
    for (const auto& [a, s] : v) {
        bool ok = false;
        if (a.kind == AtomKind::PropVar) {
            ok = (s & ~f.all()) == 0 && f.is_up_set(s);
        } else {
            for (unsigned w = 0; w < f.n && !ok; ++w)
                ok = s == (a.kind == AtomKind::Nominal ? f.up(w) : (f.all() & ~f.down(w)));
        }
        if (!ok) throw OracleError("valuation of " + a.display() + " is outside its range");
    }
}

WorldSet extension(const Frame& f, const Valuation& v, const Formula& phi) {
    const unsigned n = f.n;
    const WorldSet all = f.all();
    auto sub = [&](std::size_t k) { return extension(f, v, phi.arg(k)); };
    WorldSet out = 0;
    auto add = [&](unsigned w) { out |= WorldSet{1} << w; };
    switch (phi.op()) {
        case Op::Atom: {
            auto it = v.find(phi.atom_value());
            if (it == v.end()) throw OracleError("unassigned atom " + phi.atom_value().display());
            return it->second;
        }
        case Op::Unit: return f.normal;
        case Op::Top: return all;
        case Op::Bottom: return 0;
        case Op::Neg: {
            WorldSet a = sub(0);
            for (unsigned w = 0; w < n; ++w)
                if (!bit(a, f.star[w])) add(w);
            return out;
        }
        case Op::NegFlat: {
            WorldSet a = sub(0);
            for (unsigned x = 0; x < n; ++x)
                for (unsigned w = 0; w < n; ++w)
                    if (!bit(a, w) && f.leq(f.star[w], x)) add(x);
            return out;
        }
        case Op::NegSharp: {
            WorldSet a = sub(0);
            for (unsigned x = 0; x < n; ++x) {
                bool ok = true;
                for (unsigned w = 0; w < n && ok; ++w)
                    if (bit(a, w) && f.leq(x, f.star[w])) ok = false;
                if (ok) add(x);
            }
            return out;
        }
        case Op::And: return sub(0) & sub(1);
        case Op::Or: return sub(0) | sub(1);
        case Op::Fusion: return fusion_of(f, sub(0), sub(1));
        case Op::RelImp:
        case Op::RightRes: {
            WorldSet a = sub(0), b = sub(1);
            const bool first = phi.op() == Op::RelImp;
            for (unsigned x = 0; x < n; ++x) {
                bool ok = true;
                for (unsigned y = 0; y < n && ok; ++y)
                    for (unsigned z = 0; z < n && ok; ++z)
                        if (bit(a, y) && !bit(b, z) && (first ? f.R(x, y, z) : f.R(y, x, z))) ok = false;
                if (ok) add(x);
            }
            return out;
        }
        case Op::CoImp: {
            WorldSet a = sub(0), b = sub(1);
            return f.up_closure(a & ~b);
        }
        case Op::IntImp: {
            WorldSet a = sub(0), b = sub(1);
            for (unsigned x = 0; x < n; ++x)
                if ((f.up(x) & a & ~b) == 0) add(x);
            return out;
        }
    }
    throw OracleError("unknown connective");
}

bool eval_formula(const Frame& f, const Valuation& v, const Formula& phi, unsigned w) {
    if (w >= f.n) throw OracleError("world out of range");
    return bit(extension(f, v, phi), w);
}

bool holds(const Frame& f, const Valuation& v, const Inequality& i) {
    return (extension(f, v, i.lhs) & ~extension(f, v, i.rhs)) == 0;
}

bool holds(const Frame& f, const Valuation& v, const QuasiInequality& q) {
    for (const auto& p : q.premises)
        if (!holds(f, v, p)) return true;
    return holds(f, v, q.conclusion);
}

bool for_each_valuation(const Frame& f, const std::set<Atom>& atoms, const std::function<bool(const Valuation&)>& fn) {
    std::vector<Atom> order(atoms.begin(), atoms.end());
    std::vector<std::vector<WorldSet>> choices;
    const auto ups = up_sets(f);
    for (const auto& a : order) {
        if (a.kind == AtomKind::PropVar) {
            choices.push_back(ups);
            continue;
        }
        std::vector<WorldSet> c;
        for (unsigned w = 0; w < f.n; ++w)
            c.push_back(a.kind == AtomKind::Nominal ? f.up(w) : (f.all() & ~f.down(w)));
        choices.push_back(std::move(c));
    }
    Valuation v;
    std::function<bool(std::size_t)> go = [&](std::size_t k) {
        if (k == order.size()) return fn(v);
        for (WorldSet s : choices[k]) {
            v[order[k]] = s;
            if (!go(k + 1)) return false;
        }
        return true;
    };
    return go(0);
}

bool frame_valid(const Frame& f, const Formula& phi) {
    const auto atoms = atoms_of(phi);
    return for_each_valuation(f, std::set<Atom>(atoms.begin(), atoms.end()), [&](const Valuation& v) {
        return (f.normal & ~extension(f, v, phi)) == 0;
    });
}

bool frame_valid(const Frame& f, const Inequality& i) {
    return for_each_valuation(f, atom_set(i), [&](const Valuation& v) { return holds(f, v, i); });
}

bool frame_valid(const Frame& f, const QuasiInequality& q) {
    return for_each_valuation(f, atom_set(q), [&](const Valuation& v) { return holds(f, v, q); });
}

namespace {

struct FOEval {
    const Frame& f;
    Environment env;
    const PropSets& props;

    unsigned term(const FOTerm& t) const {
        auto it = env.find(t.var);
        if (it == env.end()) throw OracleError("unbound variable " + var_name(t.var));
        return apply_star(f, it->second, t.stars);
    }

    bool quantify(const FOFormula& g, bool universal) {
        const WorldVar v = g.bound();
        auto saved = env.find(v) == env.end() ? std::optional<unsigned>() : std::optional<unsigned>(env[v]);
        bool result = universal;
        for (unsigned w = 0; w < f.n; ++w) {
            env[v] = w;
            if (eval(g.arg(0)) != universal) {
                result = !universal;
                break;
            }
        }
        if (saved) env[v] = *saved;
        else env.erase(v);
        return result;
    }

    bool eval(const FOFormula& g) {
        const auto& ts = g.terms();
        switch (g.kind()) {
            case FOKind::True: return true;
            case FOKind::False: return false;
            case FOKind::R: return f.R(term(ts[0]), term(ts[1]), term(ts[2]));
            case FOKind::O: return f.in_normal(term(ts[0]));
            case FOKind::Leq: return f.leq(term(ts[0]), term(ts[1]));
            case FOKind::Eq: return term(ts[0]) == term(ts[1]);
            case FOKind::Prop: {
                auto it = props.find(g.prop_index());
                if (it == props.end()) throw OracleError("no set for predicate " + g.prop_name());
                return bit(it->second, term(ts[0]));
            }
            case FOKind::Not: return !eval(g.arg(0));
            case FOKind::And: return eval(g.arg(0)) && eval(g.arg(1));
            case FOKind::Or: return eval(g.arg(0)) || eval(g.arg(1));
            case FOKind::Implies: return !eval(g.arg(0)) || eval(g.arg(1));
            case FOKind::Forall: return quantify(g, true);
            case FOKind::Exists: return quantify(g, false);
        }
        throw OracleError("unknown first-order connective");
    }
};

}  // namespace

bool eval_fo(const Frame& f, const FOFormula& g, const Environment& env, const PropSets& props) {
    FOEval e{f, env, props};
    return e.eval(g);
}

bool eval_closed(const Frame& f, const FOFormula& g) { return eval_fo(f, close_universally(g)); }

CorrespondenceReport correspondence_check(const Formula& phi, const FOFormula& g, unsigned n, SyntaxMode mode) {
    require_size(n, kMaxEnumerated);
    CorrespondenceReport report;
    for (unsigned size = 1; size <= n && report.agree; ++size) {
        for_each_frame(size, mode, [&](const Frame& f) {
            ++report.frames_checked;
            if (frame_valid(f, phi) != eval_closed(f, g)) {
                report.agree = false;
                report.counterexample = f;
                return false;
            }
            return true;
        });
    }
    return report;
}

nlohmann::json to_json(const Frame& f) {
    nlohmann::json normal = nlohmann::json::array(), rel = nlohmann::json::array(), star = nlohmann::json::array();
    for (unsigned w = 0; w < f.n; ++w) {
        if (f.in_normal(w)) normal.push_back(w);
        star.push_back(f.star[w]);
    }
    for (unsigned a = 0; a < f.n; ++a)
        for (unsigned b = 0; b < f.n; ++b)
            for (unsigned c = 0; c < f.n; ++c)
                if (f.R(a, b, c)) rel.push_back({a, b, c});
    return {{"n", f.n}, {"O", normal}, {"R", rel}, {"star", star}};
}

Frame frame_from_json(const nlohmann::json& j) {
    Frame f;
    f.n = j.at("n").get<unsigned>();
    require_size(f.n, kMaxWorlds);
    for (unsigned w : j.at("O")) f.normal |= WorldSet{1} << w;
    for (const auto& t : j.at("R")) f.set_R(t.at(0), t.at(1), t.at(2));
    unsigned k = 0;
    for (unsigned s : j.at("star")) f.star.at(k++) = static_cast<std::uint8_t>(s);
    return f;
}

}  // namespace pearl
