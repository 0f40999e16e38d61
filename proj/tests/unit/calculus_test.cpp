#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "pearl/calculus.hpp"
#include "pearl/oracle.hpp"
#include "pearl/pipeline.hpp"
#include "random_formula.hpp"

using namespace pearl;
using pearl::testing::ineq;
using pearl::testing::quasi;

namespace {

std::string shown(const calculus::Result& r) { return r ? show(r->result) : std::string("n/a"); }

QuasiInequality goal(std::string_view text) { return {{}, ineq(text)}; }

const std::vector<Frame>& small_frames() {
    static const std::vector<Frame> frames = [] {
        auto v = enumerate_frames(1);
        auto two = enumerate_frames(2);
        v.insert(v.end(), two.begin(), two.end());
        return v;
    }();
    return frames;
}

// Same validity on every frame with at most two worlds.
bool equivalent_on_small_frames(const QuasiInequality& a, const QuasiInequality& b) {
    for (const Frame& f : small_frames())
        if (frame_valid(f, a) != frame_valid(f, b)) return false;
    return true;
}

const std::string kConclusion = "\\mathbf i \\leq \\mathbf m";

}  // namespace

TEST_CASE("first approximation") {
    CHECK(shown(calculus::first_approximation(goal("(p \\to q) \\land (q \\to r) \\leq p \\to r"))) ==
          "i ≤ (p→q)∧(q→r), p→r ≤ m ⊢ i ≤ m");
    CHECK(shown(calculus::first_approximation(goal("\\mathbf t \\leq \\mathbf t"))) == "i ≤ t, t ≤ m ⊢ i ≤ m");
    CHECK(shown(calculus::first_approximation(goal("A \\leq \\sim A \\to \\bot"))) ==
          "i ≤ A, ∼A→⊥ ≤ m ⊢ i ≤ m");
}

TEST_CASE("implication approximation on both sides") {
    auto q = quasi({"\\mathbf i \\leq p", "(p \\to r) \\leq \\mathbf m"}, kConclusion);
    auto left = calculus::imp_approx_left(q, 1);
    REQUIRE(left);
    CHECK(show(left->result) == "i ≤ p, j₁→r ≤ m, j₁ ≤ p ⊢ i ≤ m");
    REQUIRE(left->fresh.size() == 1);
    CHECK(left->fresh[0] == Atom::nominal(1));
    auto right = calculus::imp_approx_right(left->result, 1);
    CHECK(shown(right) == "i ≤ p, j₁→n₁ ≤ m, r ≤ n₁, j₁ ≤ p ⊢ i ≤ m");
    // the antecedent is already a nominal
    CHECK_FALSE(calculus::imp_approx_left(right->result, 1));
}

TEST_CASE("negation approximation introduces a co-nominal") {
    auto q = quasi({"\\sim A \\to \\bot \\leq \\mathbf m"}, kConclusion);
    auto a = calculus::imp_approx_left(q, 0);
    REQUIRE(a);
    auto b = calculus::imp_approx_right(a->result, 0);
    REQUIRE(b);
    CHECK(show(b->result) == "j₁→n₁ ≤ m, ⊥ ≤ n₁, j₁ ≤ ∼A ⊢ i ≤ m");
    CHECK_FALSE(calculus::neg_approx_right(b->result, 0));
    CHECK(shown(calculus::neg_approx_right(b->result, 2)) == "j₁→n₁ ≤ m, ⊥ ≤ n₁, j₁ ≤ ∼n₂, A ≤ n₂ ⊢ i ≤ m");
}

TEST_CASE("residuation") {
    CHECK(shown(calculus::imp_res(quasi({"\\mathbf i \\leq \\mathbf j_1 \\to q"}, kConclusion), 0)) ==
          "i∘j₁ ≤ q ⊢ i ≤ m");
    CHECK(shown(calculus::imp_res(quasi({"\\mathbf i \\leq (\\mathbf i \\circ \\mathbf j_1) \\to r"}, kConclusion),
                                  0)) == "i∘(i∘j₁) ≤ r ⊢ i ≤ m");
    CHECK(shown(calculus::and_res(quasi({"a \\land b \\leq c"}, kConclusion), 0)) == "a ≤ b⇒c ⊢ i ≤ m");
    CHECK_FALSE(calculus::imp_res(quasi({"a \\land b \\leq c"}, kConclusion), 0));
}

TEST_CASE("residuation and its upward direction are inverse") {
    auto q = quasi({"\\mathbf i \\leq \\mathbf j_1 \\to q"}, kConclusion);
    auto down = calculus::imp_res(q, 0);
    REQUIRE(down);
    auto up = calculus::imp_res_up(down->result, 0);
    REQUIRE(up);
    CHECK(up->result == q);

    auto a = quasi({"a \\land b \\leq c"}, kConclusion);
    auto ad = calculus::and_res(a, 0);
    REQUIRE(ad);
    auto au = calculus::and_res_up(ad->result, 0);
    REQUIRE(au);
    CHECK(au->result == a);
}

TEST_CASE("adjunction") {
    CHECK(shown(calculus::and_adj(quasi({"\\mathbf i \\leq (p \\to q) \\land (q \\to r)"}, kConclusion), 0)) ==
          "i ≤ p→q, i ≤ q→r ⊢ i ≤ m");
    CHECK(shown(calculus::neg_adj_right(quasi({"\\mathbf j_1 \\leq \\sim \\mathbf n_2"}, kConclusion), 0)) ==
          "n₂ ≤ ∼♯j₁ ⊢ i ≤ m");
    CHECK(shown(calculus::or_adj(quasi({"a \\lor b \\leq \\bot"}, kConclusion), 0)) == "a ≤ ⊥, b ≤ ⊥ ⊢ i ≤ m");
    auto joined = calculus::or_join(quasi({"a \\leq \\bot", "b \\leq \\bot"}, kConclusion), 0, 1);
    CHECK(shown(joined) == "a∨b ≤ ⊥ ⊢ i ≤ m");
}

TEST_CASE("adjunction for negation is sound on small frames") {
    auto before = quasi({"\\mathbf j_1 \\leq \\sim \\mathbf n_2"}, kConclusion);
    auto after = calculus::neg_adj_right(before, 0);
    REQUIRE(after);
    CHECK(equivalent_on_small_frames(before, after->result));
    auto left = quasi({"\\sim \\mathbf j_1 \\leq \\mathbf n_2"}, kConclusion);
    auto left_after = calculus::neg_adj_left(left, 0);
    REQUIRE(left_after);
    CHECK(equivalent_on_small_frames(left, left_after->result));
}

TEST_CASE("Ackermann elimination") {
    auto q = quasi({"\\mathbf j_1 \\leq p", "\\mathbf i \\leq p \\to q", "\\mathbf i \\leq q \\to r"}, kConclusion);
    const Atom p = q.premises[0].rhs.atom_value();
    auto r = calculus::ackermann(q, p, Sign::Positive);
    REQUIRE(r);
    CHECK(show(r->result) == "i ≤ j₁→q, i ≤ q→r ⊢ i ≤ m");
    CHECK(atom_set(r->result).count(p) == 0);
    CHECK_FALSE(calculus::ackermann(q, p, Sign::Negative));

    auto last = quasi({"\\mathbf i \\circ (\\mathbf i \\circ \\mathbf j_1) \\leq r", "r \\leq \\mathbf n_1",
                       "\\mathbf j_1 \\to \\mathbf n_1 \\leq \\mathbf m"},
                      kConclusion);
    auto done = calculus::ackermann(last, last.premises[0].rhs.atom_value(), Sign::Positive);
    CHECK(shown(done) == "i∘(i∘j₁) ≤ n₁, j₁→n₁ ≤ m ⊢ i ≤ m");
    CHECK(equivalent_on_small_frames(last, done->result));
}

TEST_CASE("Ackermann over two mutually bounding premises") {
    // p occurs negatively in q <= p, which is allowed among the remaining premises
    auto q = quasi({"p \\leq q", "q \\leq p"}, kConclusion);
    CHECK(shown(calculus::ackermann(q, Atom::var(0), Sign::Positive)) == "q ≤ q ⊢ i ≤ m");
}

TEST_CASE("monotone elimination") {
    CHECK(shown(calculus::monotone(goal("p \\leq q \\land \\mathbf t"), Atom::var(0), Sign::Negative)) ==
          "⊢ ⊤ ≤ q∧t");
    CHECK_FALSE(calculus::monotone(goal("p \\leq q \\land \\mathbf t"), Atom::var(0), Sign::Positive));
    CHECK_FALSE(calculus::monotone(goal("\\mathbf t \\leq p \\to p"), Atom::var(0), Sign::Positive));
    CHECK_FALSE(calculus::monotone(goal("\\mathbf t \\leq p \\to p"), Atom::var(0), Sign::Negative));
    CHECK(shown(calculus::monotone(goal("A \\leq \\sim A \\to B"), Atom::var(1), Sign::Positive)) ==
          "⊢ A ≤ ∼A→⊥");
}

TEST_CASE("simplification rules") {
    auto q = quasi({"\\mathbf i \\circ (\\mathbf i \\circ \\mathbf j_1) \\leq \\mathbf n_1",
                    "\\mathbf j_1 \\to \\mathbf n_1 \\leq \\mathbf m"},
                   kConclusion);
    CHECK(shown(calculus::simpl_right(q)) == "i∘(i∘j₁) ≤ n₁ ⊢ i ≤ j₁→n₁");
    CHECK_FALSE(calculus::simpl_left(q));
    CHECK(equivalent_on_small_frames(q, calculus::simpl_right(q)->result));

    auto bare = quasi({}, kConclusion);
    CHECK_FALSE(calculus::simpl_left(bare));
    CHECK_FALSE(calculus::simpl_right(bare));
    CHECK_FALSE(calculus::trivial_conclusion(bare));
}

TEST_CASE("splitting") {
    auto s = calculus::split_left(quasi({"a \\lor b \\leq c"}, kConclusion), 0);
    CHECK(shown(s) == "a ≤ c, b ≤ c ⊢ i ≤ m");
    auto t = calculus::split_right(quasi({"a \\leq b \\land c"}, kConclusion), 0);
    CHECK(shown(t) == "a ≤ b, a ≤ c ⊢ i ≤ m");
}

TEST_CASE("tautological premises are recognized") {
    CHECK(calculus::is_tautology(ineq("\\bot \\leq p")));
    CHECK(calculus::is_tautology(ineq("p \\leq \\top")));
    CHECK(calculus::is_tautology(ineq("p \\to q \\leq p \\to q")));
    CHECK_FALSE(calculus::is_tautology(ineq("p \\leq q")));
}

TEST_CASE("rule names round trip") {
    for (int k = 0; k <= static_cast<int>(Rule::TrivialConclusion); ++k) {
        Rule r = static_cast<Rule>(k);
        auto back = rule_from_name(rule_name(r));
        REQUIRE(back);
        CHECK(*back == r);
    }
    CHECK_FALSE(rule_from_name("NoSuchRule"));
}

TEST_CASE("steps apply through the generic entry point") {
    auto q = quasi({"\\mathbf i \\leq \\mathbf j_1 \\to q"}, kConclusion);
    Step s;
    s.rule = Rule::ImpRes;
    s.premise = 0;
    auto r = apply(q, s);
    REQUIRE(r);
    CHECK(show(r->result) == "i∘j₁ ≤ q ⊢ i ≤ m");
    s.premise = 3;
    CHECK_FALSE(apply(q, s));
}

TEST_CASE("traces replay and survive JSON") {
    Trace t = approximate(ineq("(p \\to q) \\land (q \\to r) \\leq p \\to r"));
    REQUIRE_FALSE(t.entries.empty());
    CHECK_FALSE(replay_mismatch(t));
    Trace back = trace_from_json(to_json(t));
    CHECK(back.initial == t.initial);
    REQUIRE(back.entries.size() == t.entries.size());
    for (std::size_t k = 0; k < t.entries.size(); ++k) {
        CHECK(back.entries[k].step == t.entries[k].step);
        CHECK(back.entries[k].state == t.entries[k].state);
    }
    CHECK_FALSE(replay_mismatch(back));

    Trace broken = t;
    broken.entries[1].state.premises.pop_back();
    auto bad = replay_mismatch(broken);
    REQUIRE(bad);
    CHECK(*bad == 1);
}

TEST_CASE("property: every recorded step is sound on small frames") {
    std::mt19937_64 rng(31);
    pearl::testing::RandomSpec shape{4, 2, pearl::testing::base_ops()};
    std::size_t steps = 0;
    for (int k = 0; k < 40; ++k) {
        PearlResult r = run_pearl(pearl::testing::random_formula(rng, shape));
        for (const auto& g : r.goals) {
            CHECK_FALSE(replay_mismatch(g.trace));
            const QuasiInequality* before = &g.trace.initial;
            for (const auto& e : g.trace.entries) {
                INFO(rule_name(e.step.rule), ": ", show(*before), "  =>  ", show(e.state));
                CHECK(equivalent_on_small_frames(*before, e.state));
                std::set<Atom> old = atom_set(*before);
                for (const Atom& a : e.fresh) CHECK(old.count(a) == 0);
                if (e.step.atom && (e.step.rule == Rule::RightAckermann || e.step.rule == Rule::LeftAckermann))
                    CHECK(atom_set(e.state).count(*e.step.atom) == 0);
                before = &e.state;
                ++steps;
            }
        }
    }
    CHECK(steps > 200);
}
