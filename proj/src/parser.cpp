#include "pearl/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <vector>

namespace pearl {

namespace {

enum class Tok {
    End,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Ident,
    Atom,      // nominal or co-nominal
    Const,     // t, top, bot
    Binary,    // any binary connective
    Prefix,    // ~, ~flat, ~sharp, \neg
    Converse,  // postfix
    Leq,
};

struct Token {
    Tok kind = Tok::End;
    std::size_t pos = 0;
    std::string text;
    Op op = Op::Atom;     // Binary/Prefix/Const
    bool neg_sugar = false;  // \neg
    Atom atom;            // Atom
};

class Lexer {
public:
    Lexer(std::string_view s, SyntaxMode mode) : s_(s), mode_(mode) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t = next();
            out.push_back(t);
            if (t.kind == Tok::End) return out;
        }
    }

private:
    std::string_view s_;
    SyntaxMode mode_;
    std::size_t i_ = 0;

    bool at_end() const { return i_ >= s_.size(); }
    char peek(std::size_t k = 0) const { return i_ + k < s_.size() ? s_[i_ + k] : '\0'; }

    void skip_space() {
        while (!at_end()) {
            if (std::isspace(static_cast<unsigned char>(peek()))) {
                ++i_;
            } else if (peek() == '\\' && (peek(1) == ',' || peek(1) == ';' || peek(1) == '!' || peek(1) == ' ')) {
                i_ += 2;  // TeX spacing
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(std::size_t pos, const std::string& msg) const { throw ParseError(pos, msg); }

    std::string command() {
        std::size_t start = i_;
        while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) ++i_;
        return std::string(s_.substr(start, i_ - start));
    }

    bool eat(std::string_view lit) {
        if (s_.substr(i_, lit.size()) == lit) {
            i_ += lit.size();
            return true;
        }
        return false;
    }

    // _k, _{k}; returns nullopt when absent
    std::optional<unsigned> index_subscript() {
        std::size_t save = i_;
        skip_space();
        if (!eat("_")) {
            i_ = save;
            return std::nullopt;
        }
        skip_space();
        bool brace = eat("{");
        skip_space();
        std::size_t start = i_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
        if (start == i_) fail(start, "expected digits in subscript");
        unsigned k = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, i_ - start))));
        skip_space();
        if (brace && !eat("}")) fail(i_, "expected '}'");
        return k;
    }

    Token binary(std::size_t pos, Op op, std::string text) {
        Token t;
        t.kind = Tok::Binary;
        t.pos = pos;
        t.op = op;
        t.text = std::move(text);
        return t;
    }

    Token prefix(std::size_t pos, Op op, std::string text) {
        Token t;
        t.kind = Tok::Prefix;
        t.pos = pos;
        t.op = op;
        t.text = std::move(text);
        return t;
    }

    Token constant(std::size_t pos, Op op) {
        Token t;
        t.kind = Tok::Const;
        t.pos = pos;
        t.op = op;
        return t;
    }

    void require_not_bi(std::size_t pos, const std::string& what) const {
        if (mode_ == SyntaxMode::BI) fail(pos, what + " is not available in BI syntax");
    }

    Token mathbf(std::size_t pos) {
        skip_space();
        bool brace = eat("{");
        skip_space();
        char c = peek();
        if (!std::isalpha(static_cast<unsigned char>(c))) fail(i_, "expected a letter after \\mathbf");
        ++i_;
        skip_space();
        if (brace && !eat("}")) fail(i_, "expected '}'");
        auto sub = index_subscript();
        Token t;
        t.pos = pos;
        switch (c) {
            case 't':
            case 'I':
                if (sub) fail(pos, "unit takes no subscript");
                return constant(pos, Op::Unit);
            case 'i':
                if (sub) fail(pos, "\\mathbf i takes no subscript");
                t.kind = Tok::Atom;
                t.atom = Atom::nominal(0);
                return t;
            case 'j':
                t.kind = Tok::Atom;
                t.atom = Atom::nominal(sub.value_or(0));
                return t;
            case 'm':
            case 'n':
                t.kind = Tok::Atom;
                t.atom = Atom::conominal(sub.value_or(0));
                return t;
            default:
                fail(pos, std::string("unknown \\mathbf symbol '") + c + "'");
        }
    }

    bool superscript(std::string_view name) {
        std::size_t save = i_;
        skip_space();
        if (!eat("^")) {
            i_ = save;
            return false;
        }
        skip_space();
        bool brace = eat("{");
        skip_space();
        if (!eat("\\") || command() != name) {
            i_ = save;
            return false;
        }
        skip_space();
        if (brace && !eat("}")) {
            i_ = save;
            return false;
        }
        return true;
    }

    Token next() {
        std::size_t pos = i_;
        Token t;
        t.pos = pos;
        if (at_end()) return t;
        char c = peek();
        switch (c) {
            case '(': ++i_; t.kind = Tok::LParen; return t;
            case ')': ++i_; t.kind = Tok::RParen; return t;
            case '{': ++i_; t.kind = Tok::LBrace; return t;
            case '}': ++i_; t.kind = Tok::RBrace; return t;
            case '&': ++i_; return binary(pos, Op::And, "&");
            case '|': ++i_; return binary(pos, Op::Or, "|");
            case '~':
                ++i_;
                require_not_bi(pos, "negation");
                return prefix(pos, Op::Neg, "~");
            case '*':
                ++i_;
                if (mode_ != SyntaxMode::BI) fail(pos, "'*' is BI syntax; use \\circ");
                return binary(pos, Op::Fusion, "*");
            case '-':
                if (eat("->")) return binary(pos, mode_ == SyntaxMode::BI ? Op::IntImp : Op::RelImp, "->");
                if (eat("-<")) return binary(pos, Op::CoImp, "-<");
                if (eat("-*")) {
                    if (mode_ != SyntaxMode::BI) fail(pos, "'-*' is BI syntax");
                    return binary(pos, Op::RelImp, "-*");
                }
                fail(pos, "unexpected '-'");
            case '=':
                if (eat("=>")) {
                    require_not_bi(pos, "'=>'");
                    return binary(pos, Op::IntImp, "=>");
                }
                fail(pos, "unexpected '='");
            case '<':
                if (eat("<=")) {
                    t.kind = Tok::Leq;
                    return t;
                }
                fail(pos, "unexpected '<'");
            case '^':
                if (superscript("smallsmile") || superscript("smile")) {
                    if (mode_ != SyntaxMode::RA) fail(pos, "converse is only available in RA syntax");
                    t.kind = Tok::Converse;
                    return t;
                }
                fail(pos, "unexpected '^'");
            case '\\': {
                ++i_;
                std::string cmd = command();
                if (cmd.empty()) fail(pos, "expected a command after '\\'");
                if (cmd == "to" || cmd == "rightarrow")
                    return binary(pos, mode_ == SyntaxMode::BI ? Op::IntImp : Op::RelImp, "\\" + cmd);
                if (cmd == "Rightarrow") {
                    require_not_bi(pos, "\\Rightarrow");
                    return binary(pos, Op::IntImp, "\\Rightarrow");
                }
                if (cmd == "land" || cmd == "wedge") return binary(pos, Op::And, "\\" + cmd);
                if (cmd == "lor" || cmd == "vee") return binary(pos, Op::Or, "\\" + cmd);
                if (cmd == "circ") {
                    require_not_bi(pos, "\\circ");
                    return binary(pos, Op::Fusion, "\\circ");
                }
                if (cmd == "coimp") return binary(pos, Op::CoImp, "\\coimp");
                if (cmd == "leftarrowtail" || cmd == "furesfc") return binary(pos, Op::RightRes, "\\" + cmd);
                if (cmd == "wand") {
                    if (mode_ != SyntaxMode::BI) fail(pos, "\\wand is BI syntax");
                    return binary(pos, Op::RelImp, "\\wand");
                }
                if (cmd == "sim") {
                    require_not_bi(pos, "negation");
                    if (superscript("flat")) return prefix(pos, Op::NegFlat, "\\sim^\\flat");
                    if (superscript("sharp")) return prefix(pos, Op::NegSharp, "\\sim^\\sharp");
                    return prefix(pos, Op::Neg, "\\sim");
                }
                if (cmd == "neg") {
                    if (mode_ != SyntaxMode::RA) fail(pos, "\\neg is only available in RA syntax");
                    Token p = prefix(pos, Op::IntImp, "\\neg");
                    p.neg_sugar = true;
                    return p;
                }
                if (cmd == "top") return constant(pos, Op::Top);
                if (cmd == "bot") return constant(pos, Op::Bottom);
                if (cmd == "mathbf") return mathbf(pos);
                if (cmd == "leq" || cmd == "le") {
                    t.kind = Tok::Leq;
                    return t;
                }
                if (cmd == "left" || cmd == "right") return next_after_sizing(pos);
                fail(pos, "unknown command \\" + cmd);
            }
            default:
                break;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            ++i_;
            std::string name(1, c);
            std::size_t save = i_;
            if (eat("_")) {
                if (eat("{")) {
                    std::size_t start = i_;
                    while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) ++i_;
                    if (start == i_ || !eat("}")) fail(start, "malformed subscript");
                    name += "_{" + std::string(s_.substr(start, i_ - start - 1)) + "}";
                } else if (std::isalnum(static_cast<unsigned char>(peek()))) {
                    name += "_";
                    name += peek();
                    ++i_;
                } else {
                    i_ = save;
                }
            }
            while (peek() == '\'') {
                name += '\'';
                ++i_;
            }
            t.kind = Tok::Ident;
            t.text = name;
            return t;
        }
        fail(pos, std::string("unexpected character '") + c + "'");
    }

    // \left( and \right) are plain parentheses
    Token next_after_sizing(std::size_t pos) {
        skip_space();
        Token t = next();
        if (t.kind != Tok::LParen && t.kind != Tok::RParen) fail(pos, "\\left/\\right must precede a parenthesis");
        t.pos = pos;
        return t;
    }
};

class Parser {
public:
    Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Formula formula() { return implication(); }

    const Token& peek() const { return toks_[k_]; }
    void expect_end() const {
        if (peek().kind != Tok::End) throw ParseError(peek().pos, "unexpected trailing input");
    }
    void expect(Tok kind, const char* what) {
        if (peek().kind != kind) throw ParseError(peek().pos, std::string("expected ") + what);
        ++k_;
    }

private:
    std::vector<Token> toks_;
    std::size_t k_ = 0;
    std::map<std::string, unsigned> vars_;

    bool at_binary(int level) const {
        return peek().kind == Tok::Binary && binding_level(peek().op) == level;
    }

    Formula implication() {
        Formula left = disjunction();
        if (!at_binary(1)) return left;
        Op op = peek().op;
        std::vector<Formula> operands{left};
        while (at_binary(1)) {
            if (peek().op != op)
                throw ParseError(peek().pos, "mixed implication connectives need parentheses");
            ++k_;
            operands.push_back(disjunction());
        }
        Formula acc = operands.back();
        for (std::size_t n = operands.size() - 1; n-- > 0;) acc = Formula::make(op, {operands[n], acc});
        return acc;
    }

    Formula left_assoc(int level, Formula (Parser::*sub)()) {
        Formula acc = (this->*sub)();
        while (at_binary(level)) {
            Op op = peek().op;
            ++k_;
            acc = Formula::make(op, {acc, (this->*sub)()});
        }
        return acc;
    }

    Formula disjunction() { return left_assoc(2, &Parser::conjunction); }
    Formula conjunction() { return left_assoc(3, &Parser::fusion); }
    Formula fusion() { return left_assoc(4, &Parser::unary); }

    Formula unary() {
        if (peek().kind == Tok::Prefix) {
            Token t = peek();
            ++k_;
            Formula arg = unary();
            if (t.neg_sugar) return Formula::int_imp(arg, Formula::bottom());
            return Formula::make(t.op, {arg});
        }
        return postfix();
    }

    Formula postfix() {
        Formula f = primary();
        while (peek().kind == Tok::Converse) {
            ++k_;
            f = Formula::neg(Formula::int_imp(f, Formula::bottom()));
        }
        return f;
    }

    Formula primary() {
        const Token t = peek();
        switch (t.kind) {
            case Tok::LParen: {
                ++k_;
                Formula f = formula();
                expect(Tok::RParen, "')'");
                return f;
            }
            case Tok::LBrace: {
                ++k_;
                Formula f = formula();
                expect(Tok::RBrace, "'}'");
                return f;
            }
            case Tok::Ident: {
                ++k_;
                auto it = vars_.try_emplace(t.text, static_cast<unsigned>(vars_.size())).first;
                return Formula::var(it->second, t.text);
            }
            case Tok::Atom:
                ++k_;
                return Formula::atom(t.atom);
            case Tok::Const:
                ++k_;
                return Formula::make(t.op, {});
            case Tok::End:
                throw ParseError(t.pos, "unexpected end of input");
            default:
                throw ParseError(t.pos, "expected a formula");
        }
    }
};

struct Spelling {
    std::string unit, top = "\\top", bot = "\\bot";
    std::map<Op, std::string> ops;
};

Spelling spelling(SyntaxMode mode) {
    Spelling s;
    s.unit = mode == SyntaxMode::BI ? "\\mathbf I" : "\\mathbf t";
    s.ops = {{Op::And, "\\land"},          {Op::Or, "\\lor"},           {Op::CoImp, "\\coimp"},
             {Op::RightRes, "\\leftarrowtail"}};
    if (mode == SyntaxMode::BI) {
        s.ops[Op::RelImp] = "-*";
        s.ops[Op::Fusion] = "*";
        s.ops[Op::IntImp] = "\\to";
    } else {
        s.ops[Op::RelImp] = "\\to";
        s.ops[Op::Fusion] = "\\circ";
        s.ops[Op::IntImp] = "\\Rightarrow";
        s.ops[Op::Neg] = "\\sim";
        s.ops[Op::NegFlat] = "\\sim^\\flat";
        s.ops[Op::NegSharp] = "\\sim^\\sharp";
    }
    return s;
}

bool is_boolean_neg(const Formula& f) { return f.op() == Op::IntImp && f.rhs().op() == Op::Bottom; }
bool is_converse(const Formula& f) { return f.op() == Op::Neg && is_boolean_neg(f.arg(0)); }

// single digits go without braces
std::string subscript_text(unsigned k) {
    return k < 10 ? "_" + std::to_string(k) : "_{" + std::to_string(k) + "}";
}

std::string atom_text(const Atom& a) {
    switch (a.kind) {
        case AtomKind::Nominal:
            return a.index == 0 ? "\\mathbf i" : "\\mathbf j" + subscript_text(a.index);
        case AtomKind::CoNominal:
            return a.index == 0 ? "\\mathbf m" : "\\mathbf n" + subscript_text(a.index);
        case AtomKind::PropVar:
            break;
    }
    return a.name.empty() ? "p_{" + std::to_string(a.index) + "}" : a.name;
}

class Printer {
public:
    explicit Printer(SyntaxMode mode) : mode_(mode), sp_(spelling(mode)) {}

    std::string print(const Formula& f) {
        std::string out;
        go(out, f);
        return out;
    }

private:
    SyntaxMode mode_;
    Spelling sp_;

    // 7 marks postfix converse, 5 the \neg prefix
    int level(const Formula& f) const {
        if (mode_ == SyntaxMode::RA) {
            if (is_converse(f)) return 7;
            if (is_boolean_neg(f)) return 5;
        }
        return binding_level(f.op());
    }

    bool parens(const Formula& parent, std::size_t place, const Formula& child) const {
        int p = binding_level(parent.op());
        int c = level(child);
        if (arity(parent.op()) == 1) return c < 5;
        if (p == 1) {
            if (place == 0) return c <= 1;
            return c < 1 || (c == 1 && child.op() != parent.op());
        }
        return place == 0 ? c < p : c <= p;
    }

    void wrap(std::string& out, const Formula& f, bool p) {
        if (p) out += '(';
        go(out, f);
        if (p) out += ')';
    }

    const std::string& spell(Op op) const {
        auto it = sp_.ops.find(op);
        if (it == sp_.ops.end())
            throw UnsupportedConnective(std::string(op_name(op)) + " has no " + mode_name(mode_) + " syntax");
        return it->second;
    }

    void go(std::string& out, const Formula& f) {
        if (mode_ == SyntaxMode::RA) {
            if (is_converse(f)) {
                const Formula& x = f.arg(0).lhs();
                wrap(out, x, level(x) < 6);
                out += "^\\smallsmile";
                return;
            }
            if (is_boolean_neg(f)) {
                out += "\\neg ";
                wrap(out, f.lhs(), level(f.lhs()) < 5);
                return;
            }
        }
        switch (f.op()) {
            case Op::Atom: out += atom_text(f.atom_value()); return;
            case Op::Unit: out += sp_.unit; return;
            case Op::Top: out += sp_.top; return;
            case Op::Bottom: out += sp_.bot; return;
            default: break;
        }
        if (arity(f.op()) == 1) {
            out += spell(f.op());
            out += ' ';
            wrap(out, f.arg(0), parens(f, 0, f.arg(0)));
            return;
        }
        const std::string& sym = spell(f.op());
        wrap(out, f.lhs(), parens(f, 0, f.lhs()));
        out += ' ' + sym + ' ';
        wrap(out, f.rhs(), parens(f, 1, f.rhs()));
    }
};

const std::map<std::string, Op>& json_ops() {
    static const std::map<std::string, Op> m = {
        {"\\mathbf t", Op::Unit},    {"\\top", Op::Top},           {"\\bot", Op::Bottom},
        {"\\sim", Op::Neg},          {"\\sim^\\flat", Op::NegFlat}, {"\\sim^\\sharp", Op::NegSharp},
        {"\\land", Op::And},         {"\\lor", Op::Or},             {"\\circ", Op::Fusion},
        {"\\to", Op::RelImp},        {"\\coimp", Op::CoImp},        {"\\Rightarrow", Op::IntImp},
        {"\\leftarrowtail", Op::RightRes},
    };
    return m;
}

std::string json_id(Op op) {
    for (const auto& [k, v] : json_ops())
        if (v == op) return k;
    return "?";
}

Formula from_json_rec(const nlohmann::json& j, std::map<std::string, unsigned>& vars) {
    if (!j.is_object() || !j.contains("id")) throw std::invalid_argument("formula JSON needs an \"id\"");
    std::string id = j.at("id").get<std::string>();
    std::vector<Formula> kids;
    if (j.contains("a"))
        for (const auto& k : j.at("a")) kids.push_back(from_json_rec(k, vars));
    auto it = json_ops().find(id);
    if (it != json_ops().end()) return Formula::make(it->second, std::move(kids));
    if (!kids.empty()) throw std::invalid_argument("unknown connective \"" + id + "\"");
    if (id.rfind("\\mathbf", 0) == 0) {
        Formula f = parse(id);
        if (!f.is_atom()) throw std::invalid_argument("bad atom \"" + id + "\"");
        return f;
    }
    if (j.contains("index")) return Formula::var(j.at("index").get<unsigned>(), id);
    auto v = vars.try_emplace(id, static_cast<unsigned>(vars.size())).first;
    return Formula::var(v->second, id);
}

}  // namespace

const char* mode_name(SyntaxMode m) {
    switch (m) {
        case SyntaxMode::Relevance: return "relevance";
        case SyntaxMode::BI: return "bi";
        case SyntaxMode::RA: return "ra";
    }
    return "?";
}

SyntaxMode mode_from_name(std::string_view name) {
    if (name == "relevance") return SyntaxMode::Relevance;
    if (name == "bi") return SyntaxMode::BI;
    if (name == "ra") return SyntaxMode::RA;
    throw std::invalid_argument("unknown syntax mode: " + std::string(name));
}

Formula parse(std::string_view text, SyntaxMode mode) {
    Parser p(Lexer(text, mode).run());
    Formula f = p.formula();
    p.expect_end();
    return f;
}

Inequality parse_inequality(std::string_view text, SyntaxMode mode) {
    Parser p(Lexer(text, mode).run());
    Formula lhs = p.formula();
    p.expect(Tok::Leq, "'\\leq'");
    Formula rhs = p.formula();
    p.expect_end();
    return {lhs, rhs};
}

std::string to_text(const Formula& f, SyntaxMode mode) { return Printer(mode).print(f); }

nlohmann::json to_json(const Formula& f) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& g : f.args()) a.push_back(to_json(g));
    std::string id = f.is_atom() ? atom_text(f.atom_value()) : json_id(f.op());
    nlohmann::json j = {{"id", id}, {"a", a}};
    if (f.is_atom(AtomKind::PropVar)) j["index"] = f.atom_value().index;
    return j;
}

Formula formula_from_json(const nlohmann::json& j) {
    std::map<std::string, unsigned> vars;
    return from_json_rec(j, vars);
}

nlohmann::json to_json(const Inequality& i) { return {{"lhs", to_json(i.lhs)}, {"rhs", to_json(i.rhs)}}; }

nlohmann::json to_json(const QuasiInequality& q) {
    nlohmann::json ps = nlohmann::json::array();
    for (const auto& p : q.premises) ps.push_back(to_json(p));
    return {{"premises", ps}, {"conclusion", to_json(q.conclusion)}};
}

Inequality inequality_from_json(const nlohmann::json& j) {
    std::map<std::string, unsigned> vars;
    Formula l = from_json_rec(j.at("lhs"), vars);
    Formula r = from_json_rec(j.at("rhs"), vars);
    return {l, r};
}

QuasiInequality quasi_from_json(const nlohmann::json& j) {
    std::map<std::string, unsigned> vars;
    QuasiInequality q;
    for (const auto& p : j.at("premises"))
        q.premises.push_back({from_json_rec(p.at("lhs"), vars), from_json_rec(p.at("rhs"), vars)});
    q.conclusion = {from_json_rec(j.at("conclusion").at("lhs"), vars),
                    from_json_rec(j.at("conclusion").at("rhs"), vars)};
    return q;
}

}  // namespace pearl
