#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "pearl/oracle.hpp"
#include "pearl/parser.hpp"
#include "pearl/pipeline.hpp"
#include "random_formula.hpp"

using namespace pearl;
using pearl::testing::ineq;
using pearl::testing::quasi;

namespace {

const std::string kConclusion = "\\mathbf i \\leq \\mathbf m";

std::string correspondent_of(std::string_view text) {
    PearlResult r = run_pearl(parse(text));
    REQUIRE(r.status == Status::Success);
    REQUIRE(r.correspondent);
    return show(*r.correspondent);
}

}  // namespace

TEST_CASE("initial inequality") {
    CHECK(show(initial_inequality(parse("p \\to q"))) == "p ≤ q");
    CHECK(show(initial_inequality(parse("p \\land q"))) == "t ≤ p∧q");
}

TEST_CASE("preprocessing splits and removes monotone variables") {
    CHECK(show(preprocess(parse("p \\to q \\land \\mathbf t")).goals) == "[⊤ ≤ ⊥, ⊤ ≤ t]");
    CHECK(show(preprocess(parse(pearl::testing::kB2)).goals) == "[(p→q)∧(q→r) ≤ p→r]");
    CHECK(show(preprocess(parse(pearl::testing::kExplosion)).goals) == "[A ≤ ∼A→⊥]");
}

TEST_CASE("preprocessing records its steps") {
    Preprocessed pre = preprocess(parse("p \\to q \\land \\mathbf t"));
    REQUIRE_FALSE(pre.steps.empty());
    CHECK(pre.steps.front().rule == Rule::SplitRight);
    for (const auto& s : pre.steps)
        if (s.rule == Rule::MonotoneBottom || s.rule == Rule::MonotoneTop) CHECK(s.atom);
}

TEST_CASE("approximation phase") {
    CHECK(show(approximate(ineq("(p \\to q) \\land (q \\to r) \\leq p \\to r")).final_state()) ==
          "i ≤ p→q, i ≤ q→r, j₁→n₁ ≤ m, r ≤ n₁, j₁ ≤ p ⊢ i ≤ m");
    CHECK(show(approximate(ineq("A \\leq \\sim A \\to \\bot")).final_state()) ==
          "i ≤ A, j₁→n₁ ≤ m, ⊥ ≤ n₁, j₁ ≤ ∼n₂, A ≤ n₂ ⊢ i ≤ m");
    CHECK(show(approximate(ineq("\\mathbf t \\leq \\mathbf t")).final_state()) == "i ≤ t, t ≤ m ⊢ i ≤ m");
}

TEST_CASE("elimination phase") {
    Trace b2 = approximate(ineq("(p \\to q) \\land (q \\to r) \\leq p \\to r"));
    Elimination e = eliminate(b2.final_state());
    REQUIRE(e.success);
    CHECK(show(e.order) == "['+p', '+r', '+q']");
    CHECK(show(e.result) == "j₁→n₁ ≤ m, i∘(i∘j₁) ≤ n₁ ⊢ i ≤ m");
    CHECK(is_pure(e.result));

    Elimination x = eliminate(approximate(ineq("A \\leq \\sim A \\to \\bot")).final_state());
    REQUIRE(x.success);
    CHECK(show(x.order) == "['+A']");
    CHECK(show(x.result) == "j₁→n₁ ≤ m, ⊥ ≤ n₁, j₁ ≤ ∼n₂, i ≤ n₂ ⊢ i ≤ m");

    auto pure = quasi({"\\mathbf j_1 \\leq \\mathbf n_1"}, kConclusion);
    Elimination same = eliminate(pure);
    CHECK(same.success);
    CHECK(same.order.empty());
    CHECK(same.result == pure);
}

TEST_CASE("elimination candidates scan premises from the last") {
    auto q = quasi({"\\mathbf i \\leq a", "\\mathbf i \\leq b", "\\mathbf j_1 \\leq c"}, kConclusion);
    auto c = elimination_candidates(q);
    REQUIRE(c.size() == 3);
    CHECK(c[0].name == "c");
    CHECK(c[1].name == "b");
    CHECK(c[2].name == "a");
}

TEST_CASE("a stuck quasi-inequality reports its attempts") {
    PearlResult r = run_pearl(parse("((A \\to A) \\to B) \\to B"));
    CHECK(r.status == Status::Failure);
    CHECK_FALSE(r.correspondent);
    bool stuck = false;
    for (const auto& g : r.goals) {
        if (g.success()) continue;
        stuck = true;
        CHECK(contains_variable(g.elimination.result));
        CHECK_FALSE(g.elimination.attempted.empty());
    }
    CHECK(stuck);
}

TEST_CASE("simplification phase") {
    CHECK(show(simplify(quasi({"\\mathbf i \\circ (\\mathbf i \\circ \\mathbf j_1) \\leq \\mathbf n_1",
                               "\\mathbf j_1 \\to \\mathbf n_1 \\leq \\mathbf m"},
                              kConclusion))) == "i∘(i∘j₁) ≤ n₁ ⊢ i ≤ j₁→n₁");
    CHECK(show(simplify(quasi({"\\mathbf j_1 \\to \\mathbf n_1 \\leq \\mathbf m", "\\bot \\leq \\mathbf n_1",
                               "\\mathbf j_1 \\leq \\sim \\mathbf n_2", "\\mathbf i \\leq \\mathbf n_2"},
                              kConclusion))) == "j₁ ≤ ∼n₂ ⊢ n₂ ≤ j₁→n₁");
    CHECK(show(simplify(quasi({}, kConclusion))) == "⊢ i ≤ m");
}

TEST_CASE("end-to-end correspondents") {
    CHECK(correspondent_of(pearl::testing::kB2) == "∀x₀x₁y₁(Rx₀x₁y₁ → ∃x₂(Rx₀x₁x₂ ∧ Rx₀x₂y₁))");
    CHECK(correspondent_of(pearl::testing::kExplosion) == "∀x₁y₁y₂(x₁* ⪯ y₂ → ∀x₂(Rx₂x₁y₁ → x₂ ⪯ y₂))");
    CHECK(correspondent_of("\\mathbf t") == "⊤");
    CHECK(correspondent_of("p \\to p") == "⊤");
}

TEST_CASE("the unit alone is valid on every frame") {
    PearlResult r = run_pearl(parse("\\mathbf t"));
    REQUIRE(r.correspondent);
    CHECK(correspondence_check(parse("\\mathbf t"), *r.correspondent, 2).agree);
}

TEST_CASE("reports") {
    PearlResult r = run_pearl(parse(pearl::testing::kB2));
    std::string text = report_text(r);
    for (const char* line : {"Input:", "Initial inequality:", "After preprocessing:", "Approximation phase:",
                             "Order of variables during the elimination phase: ['+p', '+r', '+q']",
                             "Elimination phase:", "Simplification:", "Translation:", "Result: success"})
        CHECK(text.find(line) != std::string::npos);
    auto j = to_json(r);
    CHECK(j["status"] == "success");
    CHECK(j["goals"].size() == 1);
    CHECK(j["goals"][0]["order"].size() == 3);
}

TEST_CASE("property: runs are deterministic") {
    std::mt19937_64 rng(41);
    pearl::testing::RandomSpec shape{5, 3, pearl::testing::base_ops()};
    for (int k = 0; k < 60; ++k) {
        Formula f = pearl::testing::random_formula(rng, shape);
        CHECK(to_json(run_pearl(f)).dump() == to_json(run_pearl(f)).dump());
    }
}

TEST_CASE("property: successes are pure and one order entry per eliminated variable") {
    std::mt19937_64 rng(42);
    pearl::testing::RandomSpec shape{6, 4, pearl::testing::base_ops()};
    for (int k = 0; k < 300; ++k) {
        PearlResult r = run_pearl(pearl::testing::random_formula(rng, shape));
        for (const auto& g : r.goals) {
            if (g.success()) {
                CHECK(is_pure(g.elimination.result));
                REQUIRE(g.simplified);
                CHECK(is_pure(*g.simplified));
                std::set<Atom> vars;
                for (const auto& a : atom_set(g.approximated))
                    if (a.kind == AtomKind::PropVar) vars.insert(a);
                CHECK(g.elimination.order.size() == vars.size());
            } else {
                CHECK(contains_variable(g.elimination.result));
            }
        }
        CHECK((r.status == Status::Success) == r.correspondent.has_value());
    }
}
