#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "pearl/parser.hpp"
#include "random_formula.hpp"

using namespace pearl;

namespace {

const Formula p = Formula::var(0, "p");
const Formula q = Formula::var(1, "q");
const Formula r = Formula::var(2, "r");

std::size_t error_position(std::string_view text, SyntaxMode mode = SyntaxMode::Relevance) {
    try {
        parse(text, mode);
    } catch (const ParseError& e) {
        return e.position();
    }
    FAIL("expected a parse error for ", std::string(text));
    return 0;
}

}  // namespace

TEST_CASE("parses implication over a conjunction with the unit") {
    CHECK(parse("p \\to q \\land \\mathbf t") == Formula::rel_imp(p, Formula::conj(q, Formula::unit())));
}

TEST_CASE("parses the conjunctive syllogism") {
    Formula expected = Formula::rel_imp(Formula::conj(Formula::rel_imp(p, q), Formula::rel_imp(q, r)),
                                        Formula::rel_imp(p, r));
    CHECK(parse(pearl::testing::kB2) == expected);
    CHECK(parse("p") == p);
}

TEST_CASE("variables are numbered by first occurrence") {
    Formula f = parse("z \\lor a");
    CHECK(f.lhs().atom_value().index == 0);
    CHECK(f.lhs().atom_value().name == "z");
    CHECK(f.rhs().atom_value().index == 1);
}

TEST_CASE("precedence and associativity") {
    CHECK(parse("a \\lor b \\land c") == parse("a \\lor (b \\land c)"));
    CHECK(parse("a \\land b \\circ c") == parse("a \\land (b \\circ c)"));
    CHECK(parse("a \\to b \\to c") == parse("a \\to (b \\to c)"));
    CHECK(parse("a \\lor b \\lor c") == parse("(a \\lor b) \\lor c"));
    CHECK(parse("\\sim a \\circ b") == parse("(\\sim a) \\circ b"));
    CHECK(parse("a \\lor b \\to c \\land d") == parse("(a \\lor b) \\to (c \\land d)"));
}

TEST_CASE("mixed implication chains need parentheses") {
    CHECK_THROWS_AS(parse("a \\to b \\Rightarrow c"), ParseError);
    CHECK_NOTHROW(parse("a \\to (b \\Rightarrow c)"));
}

TEST_CASE("constants, nominals and co-nominals") {
    CHECK(parse("\\top") == Formula::top());
    CHECK(parse("\\bot") == Formula::bottom());
    CHECK(parse("\\mathbf t") == Formula::unit());
    CHECK(parse("\\mathbf i") == Formula::nominal(0));
    CHECK(parse("\\mathbf j_1") == Formula::nominal(1));
    CHECK(parse("\\mathbf m") == Formula::conominal(0));
    CHECK(parse("\\mathbf n_{12}") == Formula::conominal(12));
    CHECK(parse("\\sim^\\flat a") == Formula::neg_flat(Formula::var(0)));
    CHECK(parse("\\sim^\\sharp a") == Formula::neg_sharp(Formula::var(0)));
}

TEST_CASE("printing") {
    CHECK(to_text(Formula::rel_imp(p, Formula::conj(q, Formula::unit()))) == "p \\to q \\land \\mathbf t");
    const Formula i = Formula::nominal(0);
    CHECK(to_text(Formula::fusion(i, Formula::fusion(i, Formula::nominal(1)))) ==
          "\\mathbf i \\circ (\\mathbf i \\circ \\mathbf j_1)");
    CHECK(to_text(Formula::rel_imp(Formula::rel_imp(p, q), r)) == "(p \\to q) \\to r");
    CHECK(to_text(Formula::rel_imp(p, Formula::rel_imp(q, r))) == "p \\to q \\to r");
}

TEST_CASE("BI notation") {
    const auto bi = SyntaxMode::BI;
    CHECK(parse("a -* b", bi).op() == Op::RelImp);
    CHECK(parse("a \\wand b", bi).op() == Op::RelImp);
    CHECK(parse("a * b", bi).op() == Op::Fusion);
    CHECK(parse("a \\to b", bi).op() == Op::IntImp);
    CHECK_THROWS_AS(parse("a \\Rightarrow b", bi), ParseError);
    CHECK_THROWS_AS(parse("\\sim a", bi), ParseError);
    std::string unit = to_text(Formula::unit(), bi);
    CHECK(parse(unit, bi) == Formula::unit());
    CHECK(to_text(parse("a * b \\to c", bi), bi) == "a * b \\to c");
}

TEST_CASE("relation-algebra notation") {
    const auto ra = SyntaxMode::RA;
    Formula x = Formula::var(0, "x");
    CHECK(parse("x^\\smallsmile", ra) == Formula::neg(Formula::int_imp(x, Formula::bottom())));
    CHECK(parse("\\neg x", ra) == Formula::int_imp(x, Formula::bottom()));
    CHECK_THROWS_AS(parse("\\neg x"), ParseError);
    CHECK(parse("(x \\circ y)^\\smallsmile", ra).op() == Op::Neg);
}

TEST_CASE("parse errors report a position inside the input") {
    CHECK(error_position("p \\to") == 5);
    CHECK(error_position("(p") == 2);
    CHECK(error_position("p \\foo q") == 2);
    CHECK(error_position("p q") == 2);
    CHECK_THROWS_AS(parse(""), ParseError);
    std::string text = "p \\land (q \\lor";
    CHECK(error_position(text) <= text.size());
}

TEST_CASE("inequalities") {
    Inequality i = parse_inequality("\\mathbf i \\leq \\mathbf j_1 \\to q");
    CHECK(i.lhs == Formula::nominal(0));
    CHECK(i.rhs == Formula::rel_imp(Formula::nominal(1), Formula::var(0, "q")));
    CHECK_THROWS_AS(parse_inequality("p \\to q"), ParseError);
}

TEST_CASE("JSON syntax tree") {
    Formula f = parse(pearl::testing::kB2);
    auto j = to_json(f);
    CHECK(j["id"] == "\\to");
    CHECK(j["a"].size() == 2);
    CHECK(formula_from_json(j) == f);
    CHECK_THROWS(formula_from_json(nlohmann::json{{"id", "\\nosuch"}, {"a", nlohmann::json::array({j})}}));

    QuasiInequality qi = pearl::testing::quasi({"\\mathbf i \\leq p \\to q", "\\mathbf j_1 \\leq p"},
                                               "\\mathbf i \\leq \\mathbf m");
    CHECK(quasi_from_json(to_json(qi)) == qi);
}

TEST_CASE("property: printing then parsing is the identity") {
    std::mt19937_64 rng(21);
    for (auto mode : {SyntaxMode::Relevance, SyntaxMode::BI, SyntaxMode::RA}) {
        auto ops = mode == SyntaxMode::BI
                       ? std::vector<Op>{Op::Unit, Op::Top, Op::Bottom, Op::And, Op::Or, Op::Fusion,
                                         Op::RelImp, Op::IntImp}
                       : pearl::testing::extended_ops();
        pearl::testing::RandomSpec shape{6, 4, ops};
        for (int k = 0; k < 500; ++k) {
            Formula f = canonicalize_variables(pearl::testing::random_formula(rng, shape));
            std::string text = to_text(f, mode);
            INFO(text);
            CHECK(parse(text, mode) == f);
            CHECK(formula_from_json(to_json(f)) == f);
        }
    }
}

TEST_CASE("unsupported connectives cannot be printed in BI notation") {
    CHECK_THROWS_AS(to_text(Formula::neg(p), SyntaxMode::BI), UnsupportedConnective);
}
