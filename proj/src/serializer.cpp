#include "pearl/serializer.hpp"

#include <cctype>
#include <vector>

namespace pearl {

namespace {

using F = FOFormula;

std::string family_letter(Family f, bool upper) {
    switch (f) {
        case Family::X: return upper ? "X" : "x";
        case Family::Y: return upper ? "Y" : "y";
        case Family::Z: return upper ? "Z" : "z";
    }
    return "v";
}

std::string plain_var(const WorldVar& v, bool upper) { return family_letter(v.family, upper) + std::to_string(v.index); }

// Quantifier block starting at f: the variables and the innermost body.
std::pair<std::vector<WorldVar>, const F*> block(const F& f) {
    std::vector<WorldVar> vs;
    const F* cur = &f;
    const FOKind k = f.kind();
    while (cur->kind() == k) {
        vs.push_back(cur->bound());
        cur = &cur->arg(0);
    }
    return {vs, cur};
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k) out += sep;
        out += parts[k];
    }
    return out;
}

// ---- TeX ----------------------------------------------------------------

std::string tex_term(const FOTerm& t) {
    std::string s = family_letter(t.var.family, false) + "_" +
                    (t.var.index < 10 ? std::to_string(t.var.index) : "{" + std::to_string(t.var.index) + "}");
    for (unsigned k = 0; k < t.stars; ++k) s = (k ? "{" + s + "}" : s) + "^*";
    return s;
}

int tex_level(const F& f) {
    switch (f.kind()) {
        case FOKind::Implies: return 1;
        case FOKind::Or: return 2;
        case FOKind::And: return 3;
        default: return 4;
    }
}

std::string tex(const F& f);

std::string tex_wrap(const F& f, bool paren) { return paren ? "(" + tex(f) + ")" : tex(f); }

std::string tex(const F& f) {
    const auto& ts = f.terms();
    switch (f.kind()) {
        case FOKind::True: return "\\top";
        case FOKind::False: return "\\bot";
        case FOKind::R: return "R" + tex_term(ts[0]) + tex_term(ts[1]) + tex_term(ts[2]);
        case FOKind::O: return "O" + tex_term(ts[0]);
        case FOKind::Leq: return tex_term(ts[0]) + " \\preceq " + tex_term(ts[1]);
        case FOKind::Eq: return tex_term(ts[0]) + " = " + tex_term(ts[1]);
        case FOKind::Prop: return "P_{" + f.prop_name() + "}" + tex_term(ts[0]);
        case FOKind::Not: {
            const F& a = f.arg(0);
            if (a.kind() == FOKind::Leq) return tex_term(a.terms()[0]) + " \\not\\preceq " + tex_term(a.terms()[1]);
            if (a.kind() == FOKind::Eq) return tex_term(a.terms()[0]) + " \\neq " + tex_term(a.terms()[1]);
            return "\\neg " + tex_wrap(a, tex_level(a) < 4);
        }
        case FOKind::And:
        case FOKind::Or: {
            const int l = tex_level(f);
            const char* op = f.kind() == FOKind::And ? " \\land " : " \\lor ";
            return tex_wrap(f.arg(0), tex_level(f.arg(0)) < l) + op + tex_wrap(f.arg(1), tex_level(f.arg(1)) <= l);
        }
        case FOKind::Implies:
            return tex_wrap(f.arg(0), tex_level(f.arg(0)) <= 1) + " \\implies " +
                   tex_wrap(f.arg(1), tex_level(f.arg(1)) < 1);
        case FOKind::Forall:
        case FOKind::Exists: {
            auto [vs, body] = block(f);
            std::string out;
            for (const auto& v : vs)
                out += std::string(f.kind() == FOKind::Forall ? "\\forall " : "\\exists ") +
                       tex_term(FOTerm(v)) + " ";
            return out + "(" + tex(*body) + ")";
        }
    }
    return {};
}

// ---- TPTP / Prover9 / SPASS -----------------------------------------------

struct Syntax {
    bool upper_vars;
    const char* truth;
    const char* falsity;
};

std::string fn_term(const FOTerm& t, bool upper) {
    std::string s = plain_var(t.var, upper);
    for (unsigned k = 0; k < t.stars; ++k) s = "s(" + s + ")";
    return s;
}

std::string pred(const F& f, bool upper, bool spass) {
    const auto& ts = f.terms();
    auto t = [&](std::size_t k) { return fn_term(ts[k], upper); };
    switch (f.kind()) {
        case FOKind::R: return "r(" + t(0) + "," + t(1) + "," + t(2) + ")";
        case FOKind::O: return "o(" + t(0) + ")";
        case FOKind::Leq: return "leq(" + t(0) + "," + t(1) + ")";
        case FOKind::Eq: return spass ? "equal(" + t(0) + "," + t(1) + ")" : t(0) + " = " + t(1);
        case FOKind::Prop: return "p" + std::to_string(f.prop_index()) + "(" + t(0) + ")";
        default: return {};
    }
}

bool is_predicate(const F& f) {
    switch (f.kind()) {
        case FOKind::R:
        case FOKind::O:
        case FOKind::Leq:
        case FOKind::Eq:
        case FOKind::Prop: return true;
        default: return false;
    }
}

std::string tptp(const F& f) {
    if (is_predicate(f)) return f.kind() == FOKind::Eq ? "(" + pred(f, true, false) + ")" : pred(f, true, false);
    switch (f.kind()) {
        case FOKind::True: return "$true";
        case FOKind::False: return "$false";
        case FOKind::Not: return "~ " + (is_predicate(f.arg(0)) && f.arg(0).kind() != FOKind::Eq
                                             ? tptp(f.arg(0))
                                             : "(" + tptp(f.arg(0)) + ")");
        case FOKind::And: return "(" + tptp(f.arg(0)) + " & " + tptp(f.arg(1)) + ")";
        case FOKind::Or: return "(" + tptp(f.arg(0)) + " | " + tptp(f.arg(1)) + ")";
        case FOKind::Implies: return "(" + tptp(f.arg(0)) + " => " + tptp(f.arg(1)) + ")";
        case FOKind::Forall:
        case FOKind::Exists: {
            auto [vs, body] = block(f);
            std::vector<std::string> names;
            for (const auto& v : vs) names.push_back(plain_var(v, true));
            return std::string(f.kind() == FOKind::Forall ? "! [" : "? [") + join(names, ",") + "] : (" +
                   tptp(*body) + ")";
        }
        default: return {};
    }
}

std::string prover9(const F& f) {
    if (is_predicate(f)) return f.kind() == FOKind::Eq ? "(" + pred(f, false, false) + ")" : pred(f, false, false);
    switch (f.kind()) {
        case FOKind::True: return "$T";
        case FOKind::False: return "$F";
        case FOKind::Not: return "-(" + prover9(f.arg(0)) + ")";
        case FOKind::And: return "(" + prover9(f.arg(0)) + " & " + prover9(f.arg(1)) + ")";
        case FOKind::Or: return "(" + prover9(f.arg(0)) + " | " + prover9(f.arg(1)) + ")";
        case FOKind::Implies: return "(" + prover9(f.arg(0)) + " -> " + prover9(f.arg(1)) + ")";
        case FOKind::Forall:
        case FOKind::Exists: {
            auto [vs, body] = block(f);
            std::string out;
            for (const auto& v : vs)
                out += std::string(f.kind() == FOKind::Forall ? "all " : "exists ") + plain_var(v, false) + " ";
            return "(" + out + prover9(*body) + ")";
        }
        default: return {};
    }
}

std::string spass(const F& f) {
    if (is_predicate(f)) return pred(f, true, true);
    switch (f.kind()) {
        case FOKind::True: return "true";
        case FOKind::False: return "false";
        case FOKind::Not: return "not(" + spass(f.arg(0)) + ")";
        case FOKind::And: return "and(" + spass(f.arg(0)) + "," + spass(f.arg(1)) + ")";
        case FOKind::Or: return "or(" + spass(f.arg(0)) + "," + spass(f.arg(1)) + ")";
        case FOKind::Implies: return "implies(" + spass(f.arg(0)) + "," + spass(f.arg(1)) + ")";
        case FOKind::Forall:
        case FOKind::Exists: {
            auto [vs, body] = block(f);
            std::vector<std::string> names;
            for (const auto& v : vs) names.push_back(plain_var(v, true));
            return std::string(f.kind() == FOKind::Forall ? "forall([" : "exists([") + join(names, ",") + "]," +
                   spass(*body) + ")";
        }
        default: return {};
    }
}

void require_closed(const F& f) {
    auto fv = free_vars(f);
    if (fv.empty()) return;
    std::vector<std::string> names;
    for (const auto& v : fv) names.push_back(var_name(v));
    throw SerializationError("formula has free variables: " + join(names, ", "));
}

}  // namespace

const char* format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::TexMath: return "tex";
        case OutputFormat::TPTP: return "tptp";
        case OutputFormat::Prover9: return "prover9";
        case OutputFormat::Spass: return "spass";
        case OutputFormat::Json: return "json";
    }
    return "?";
}

OutputFormat format_from_name(std::string_view name) {
    for (auto f : {OutputFormat::TexMath, OutputFormat::TPTP, OutputFormat::Prover9, OutputFormat::Spass,
                   OutputFormat::Json})
        if (name == format_name(f)) return f;
    throw SerializationError("unknown output format: " + std::string(name));
}

std::string sanitize_name(std::string_view raw) {
    std::string out;
    for (char c : raw) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u)) out += static_cast<char>(std::tolower(u));
        else if (!out.empty() && out.back() != '_') out += '_';
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    if (out.empty() || !std::islower(static_cast<unsigned char>(out.front()))) out = "f_" + out;
    return out;
}

std::string render(const FOFormula& f, OutputFormat fmt, const RenderOptions& options) {
    const F g = options.expand_leq ? expand_leq(f) : f;
    const std::string name = sanitize_name(options.name);
    switch (fmt) {
        case OutputFormat::TexMath: return tex(options.strip_closure ? strip_universal_closure(g) : g);
        case OutputFormat::TPTP: require_closed(g); return "fof(" + name + ", axiom, " + tptp(g) + ").";
        case OutputFormat::Prover9: require_closed(g); return prover9(g) + " # label(" + name + ").";
        case OutputFormat::Spass: require_closed(g); return "formula(" + spass(g) + "," + name + ").";
        case OutputFormat::Json: return nlohmann::json{{"name", options.name}, {"formula", to_json(g)}, {"text", show(g)}}.dump();
    }
    return {};
}

}  // namespace pearl
