#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pearl/calculus.hpp"
#include "pearl/fo.hpp"
#include "pearl/formula.hpp"
#include "pearl/translator.hpp"

namespace pearl {

// A variable together with the polarity it is eliminated in: +p uses the
// right Ackermann rule, -p the left one.
struct SignedVar {
    Atom var;
    Sign sign = Sign::Positive;

    friend bool operator==(const SignedVar& a, const SignedVar& b) { return a.var == b.var && a.sign == b.sign; }
};

std::string show(const SignedVar& s);
std::string show(const std::vector<SignedVar>& order);

struct PreprocessStep {
    Rule rule;                 // SplitLeft, SplitRight, MonotoneBottom, MonotoneTop
    std::size_t goal = 0;
    std::optional<Atom> atom;
    std::vector<Inequality> before;
    std::vector<Inequality> after;
};

struct Preprocessed {
    Inequality initial;        // psi <= theta for psi -> theta, t <= phi otherwise
    std::vector<PreprocessStep> steps;
    std::vector<Inequality> goals;
};

Inequality initial_inequality(const Formula& f);
Preprocessed preprocess(const Formula& f);

// Trace starts at |- goal; its final state is the approximated quasi-inequality.
Trace approximate(const Inequality& goal);
// Continues `t` with the approximation phase from its current final state.
void approximate_into(Trace& t);

struct Elimination {
    bool success = false;
    std::vector<SignedVar> order;
    std::vector<TraceEntry> entries;     // along the successful (or deepest) path
    QuasiInequality result;              // pure on success, stuck state otherwise
    std::vector<std::vector<SignedVar>> attempted;
};

// Candidate variables: scan premises from the last to the first, then the conclusion.
std::vector<Atom> elimination_candidates(const QuasiInequality& q);
// Solve for one signed variable and apply the Ackermann (or monotone) rule.
std::optional<std::vector<TraceEntry>> eliminate_variable(const QuasiInequality& q, const SignedVar& v);
Elimination eliminate(const QuasiInequality& q);

// Simplification steps appended to `t`.
void simplify_into(Trace& t);
QuasiInequality simplify(const QuasiInequality& q);

enum class Status { Success, Failure };

struct GoalResult {
    Inequality goal;
    QuasiInequality approximated;
    Elimination elimination;
    std::optional<QuasiInequality> simplified;
    std::optional<FOFormula> translated;     // raw translation
    std::optional<FOFormula> correspondent;  // after fo_simplify
    TrLog tr_log;
    Trace trace;                              // from |- goal to the last state reached

    bool success() const { return elimination.success; }
};

struct PearlResult {
    Status status = Status::Failure;
    Formula input;
    Preprocessed preprocessed;
    std::vector<GoalResult> goals;
    std::optional<FOFormula> correspondent;  // conjunction over goals, on success
};

PearlResult run_pearl(const Formula& f);

nlohmann::json to_json(const PearlResult& r);
std::string report_text(const PearlResult& r);

}  // namespace pearl
