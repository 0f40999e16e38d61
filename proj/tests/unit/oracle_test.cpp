#include <doctest.h>

#include <algorithm>
#include <random>

#include "brute_frames.hpp"
#include "helpers.hpp"
#include "pearl/calculus.hpp"
#include "pearl/oracle.hpp"
#include "pearl/pipeline.hpp"
#include "pearl/translator.hpp"
#include "random_formula.hpp"

using namespace pearl;
using pearl::testing::X;

namespace {

Frame one_point(bool normal, bool rel) {
    Frame f;
    f.n = 1;
    f.normal = normal ? 1u : 0u;
    if (rel) f.set_R(0, 0, 0);
    return f;
}

Frame total_two() {
    Frame f;
    f.n = 2;
    f.normal = 3;
    for (unsigned a = 0; a < 2; ++a)
        for (unsigned b = 0; b < 2; ++b)
            for (unsigned c = 0; c < 2; ++c) f.set_R(a, b, c);
    f.star = {0, 1};
    return f;
}

pearl::testing::PlainFrame plain(const Frame& f) {
    pearl::testing::PlainFrame p;
    p.n = f.n;
    for (unsigned w = 0; w < f.n; ++w)
        if (f.in_normal(w)) p.normal.insert(w);
    for (unsigned a = 0; a < f.n; ++a)
        for (unsigned b = 0; b < f.n; ++b)
            for (unsigned c = 0; c < f.n; ++c)
                if (f.R(a, b, c)) p.rel.insert({a, b, c});
    p.star.assign(f.star.begin(), f.star.begin() + f.n);
    return p;
}

auto key(const pearl::testing::PlainFrame& p) { return std::tie(p.normal, p.rel, p.star); }

PropSets props_of(const Valuation& v) {
    PropSets out;
    for (const auto& [a, s] : v)
        if (a.kind == AtomKind::PropVar) out[a.index] = s;
    return out;
}

FOFormula correspondent(std::string_view text) {
    PearlResult r = run_pearl(parse(text));
    REQUIRE(r.correspondent);
    return *r.correspondent;
}

}  // namespace

TEST_CASE("frame conditions on small examples") {
    CHECK(check_frame(one_point(true, true)));
    CHECK_FALSE(check_frame(one_point(false, false)));
    CHECK_FALSE(frame_condition::reflexive(one_point(false, false)));
    CHECK(check_frame(total_two()));

    Frame bad = total_two();
    bad.normal = 1;  // O = {0} is not closed upward when 0 <= 1
    CHECK_FALSE(frame_condition::normal_up_closed(bad));
    CHECK_FALSE(check_frame(bad));
}

TEST_CASE("derived order and up-sets") {
    Frame f = total_two();
    CHECK(f.leq(0, 1));
    CHECK(f.leq(1, 0));
    CHECK(f.up(0) == 3u);
    CHECK(up_sets(f).size() == 2);
    CHECK(f.is_up_set(0));
    CHECK_FALSE(f.is_up_set(1));
    CHECK(f.up_closure(1) == 3u);
}

TEST_CASE("enumeration counts") {
    CHECK(enumerate_frames(1).size() == 1);
    CHECK(enumerate_frames(2).size() == 210);
    CHECK_THROWS_AS(enumerate_frames(4), BudgetError);
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(sample_frame(rng, kMaxWorlds + 1), BudgetError);
}

TEST_CASE("enumeration matches an independent brute filter") {
    for (unsigned n = 1; n <= 2; ++n) {
        auto ours = enumerate_frames(n);
        auto brute = pearl::testing::brute_frames(n);
        REQUIRE(ours.size() == brute.size());
        std::vector<pearl::testing::PlainFrame> mine;
        for (const Frame& f : ours) mine.push_back(plain(f));
        auto less = [](const auto& a, const auto& b) { return key(a) < key(b); };
        std::sort(mine.begin(), mine.end(), less);
        std::sort(brute.begin(), brute.end(), less);
        for (std::size_t k = 0; k < mine.size(); ++k) CHECK(key(mine[k]) == key(brute[k]));
        for (std::size_t k = 1; k < mine.size(); ++k) CHECK(less(mine[k - 1], mine[k]));
    }
}

TEST_CASE("restricted frame classes") {
    for (const Frame& f : enumerate_frames(2, SyntaxMode::RA)) {
        CHECK(is_antichain(f));
        CHECK(check_frame(f));
    }
    auto bi = enumerate_frames(2, SyntaxMode::BI);
    CHECK_FALSE(bi.empty());
    for (const Frame& f : bi) CHECK(fusion_assoc_comm(f));
    CHECK(enumerate_frames(2, SyntaxMode::RA).size() < enumerate_frames(2).size());
}

TEST_CASE("sampled frames satisfy the conditions of their class") {
    std::mt19937_64 rng(61);
    for (auto mode : {SyntaxMode::Relevance, SyntaxMode::BI, SyntaxMode::RA}) {
        for (unsigned n = 1; n <= kMaxWorlds; ++n) {
            for (int k = 0; k < 5; ++k) {
                Frame f = sample_frame(rng, n, mode);
                CHECK(f.n == n);
                CHECK(check_frame(f));
                CHECK(admits(f, mode));
            }
        }
    }
}

TEST_CASE("truth clauses") {
    Frame f = total_two();
    f.normal = 3;
    Frame g = one_point(true, true);
    CHECK(eval_formula(g, {}, Formula::unit(), 0));
    for (unsigned w = 0; w < 2; ++w) CHECK_FALSE(eval_formula(f, {}, Formula::bottom(), w));

    std::mt19937_64 rng(62);
    for (int k = 0; k < 20; ++k) {
        Frame h = sample_frame(rng, 3);
        auto ups = up_sets(h);
        Valuation v{{Atom::var(0), ups[k % ups.size()]}};
        const Formula a = Formula::var(0);
        for (unsigned w = 0; w < h.n; ++w) {
            CHECK(eval_formula(h, v, Formula::unit(), w) == h.in_normal(w));
            CHECK(eval_formula(h, v, Formula::neg(a), w) == !eval_formula(h, v, a, h.star[w]));
        }
    }
}

TEST_CASE("valuations must respect atom kinds") {
    Frame f;
    for (const Frame& c : enumerate_frames(2))
        if (up_sets(c).size() < 4) f = c;
    REQUIRE(up_sets(f).size() < 4);
    WorldSet not_up = 0;
    for (WorldSet s = 0; s < 4; ++s)
        if (!f.is_up_set(s)) not_up = s;
    CHECK_THROWS_AS(check_valuation(f, {{Atom::var(0), not_up}}), OracleError);
    CHECK_THROWS_AS(check_valuation(f, {{Atom::var(0), 8u}}), OracleError);
    CHECK_NOTHROW(check_valuation(f, {{Atom::nominal(1), f.up(0)}}));
    CHECK_THROWS_AS(check_valuation(f, {{Atom::nominal(1), 0u}}), OracleError);
    CHECK_NOTHROW(check_valuation(f, {{Atom::conominal(1), f.all() & ~f.down(1)}}));
}

TEST_CASE("complex-algebra truth of inequalities") {
    for (const Frame& f : enumerate_frames(2)) {
        CHECK(holds(f, {}, Inequality{Formula::unit(), Formula::unit()}));
        CHECK(frame_valid(f, parse("p \\to p")));
    }
}

TEST_CASE("first-order evaluation") {
    Frame f = total_two();
    f.normal = 3;
    CHECK(eval_fo(f, FOFormula::truth()));
    CHECK_FALSE(eval_fo(f, FOFormula::falsity()));
    Frame g = one_point(true, true);
    CHECK(eval_fo(g, FOFormula::normal(X(0)), {{WorldVar{Family::X, 0}, 0}}));
    for (const Frame& h : enumerate_frames(2))
        for (unsigned w = 0; w < 2; ++w)
            CHECK(eval_fo(h, FOFormula::normal(X(0)), {{WorldVar{Family::X, 0}, w}}) == h.in_normal(w));
}

TEST_CASE("correspondence checks") {
    auto b2 = correspondence_check(parse(pearl::testing::kB2), correspondent(pearl::testing::kB2), 2);
    CHECK(b2.agree);
    CHECK(b2.frames_checked == 211);

    auto id = correspondence_check(parse("p \\to p"), FOFormula::truth(), 2);
    CHECK(id.agree);

    auto wrong = correspondence_check(parse("p \\to p"), FOFormula::falsity(), 1);
    CHECK_FALSE(wrong.agree);
    REQUIRE(wrong.counterexample);
    CHECK(*wrong.counterexample == enumerate_frames(1).front());

    Frame g = one_point(true, true);
    Formula ex = parse(pearl::testing::kExplosion);
    CHECK(frame_valid(g, ex) == eval_closed(g, correspondent(pearl::testing::kExplosion)));
    for (const Frame& f : enumerate_frames(2))
        CHECK(frame_valid(f, parse(pearl::testing::kB2)) == eval_closed(f, correspondent(pearl::testing::kB2)));
}

TEST_CASE("frames survive JSON") {
    std::mt19937_64 rng(63);
    for (int k = 0; k < 20; ++k) {
        Frame f = sample_frame(rng, 1 + k % 4);
        auto j = to_json(f);
        CHECK(j["n"] == f.n);
        CHECK(frame_from_json(j) == f);
    }
    CHECK(to_json(one_point(true, true)).dump() == R"({"O":[0],"R":[[0,0,0]],"n":1,"star":[0]})");
}

TEST_CASE("first approximation is invertible on two-world frames") {
    std::mt19937_64 rng(64);
    pearl::testing::RandomSpec shape{3, 2, pearl::testing::base_ops()};
    auto frames = enumerate_frames(2);
    for (int k = 0; k < 25; ++k) {
        Inequality i{pearl::testing::random_formula(rng, shape), pearl::testing::random_formula(rng, shape)};
        auto qi = calculus::first_approximation(QuasiInequality{{}, i});
        REQUIRE(qi);
        for (std::size_t f = 0; f < frames.size(); f += 3)
            CHECK(frame_valid(frames[f], i) == frame_valid(frames[f], qi->result));
    }
}

TEST_CASE("an Ackermann step keeps frame validity") {
    auto before = pearl::testing::quasi({"\\mathbf j_1 \\leq p", "\\mathbf i \\leq p \\to q",
                                         "\\mathbf i \\leq q \\to r", "\\mathbf j_1 \\to \\mathbf n_1 \\leq \\mathbf m",
                                         "r \\leq \\mathbf n_1"},
                                        "\\mathbf i \\leq \\mathbf m");
    auto after = calculus::ackermann(before, before.premises[0].rhs.atom_value(), Sign::Positive);
    REQUIRE(after);
    for (const Frame& f : enumerate_frames(2)) CHECK(frame_valid(f, before) == frame_valid(f, after->result));
}

TEST_CASE("property: truth at a world matches the standard translation") {
    std::mt19937_64 rng(65);
    pearl::testing::RandomSpec shape{5, 2, pearl::testing::extended_ops()};
    std::size_t checked = 0;
    for (int k = 0; k < 150; ++k) {
        Frame f = sample_frame(rng, 1 + k % 3);
        Formula a = pearl::testing::random_formula(rng, shape);
        FOFormula g = st(a, X(0));
        std::set<Atom> atoms;
        for (const Atom& x : atoms_of(a)) atoms.insert(x);
        for_each_valuation(f, atoms, [&](const Valuation& v) {
            for (unsigned w = 0; w < f.n; ++w) {
                CHECK(eval_formula(f, v, a, w) == eval_fo(f, g, {{WorldVar{Family::X, 0}, w}}, props_of(v)));
                ++checked;
            }
            return true;
        });
    }
    CHECK(checked > 500);
}

TEST_CASE("property: extensions are up-sets") {
    std::mt19937_64 rng(66);
    pearl::testing::RandomSpec shape{5, 3, pearl::testing::extended_ops()};
    for (int k = 0; k < 200; ++k) {
        Frame f = sample_frame(rng, 1 + k % 3);
        Formula a = pearl::testing::random_formula(rng, shape);
        std::set<Atom> atoms;
        for (const Atom& x : atoms_of(a)) atoms.insert(x);
        for_each_valuation(f, atoms, [&](const Valuation& v) {
            CHECK(f.is_up_set(extension(f, v, a)));
            return true;
        });
    }
}
