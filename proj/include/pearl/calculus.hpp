#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pearl/formula.hpp"

namespace pearl {

// Rule names follow the calculus; "Up" marks the upward (inverse) direction.
enum class Rule : std::uint8_t {
    FirstApproximation,
    SplitLeft,   // positive join / negative meet in the left side
    SplitRight,  // positive meet / negative join in the right side
    ImpApproxLeft,
    ImpApproxRight,
    FusionApproxLeft,
    FusionApproxRight,
    NegApproxLeft,
    NegApproxRight,
    OrRes,
    OrResUp,
    AndRes,
    AndResUp,
    ImpRes,
    ImpResUp,
    RightResRes,
    RightResResUp,
    OrAdj,
    OrJoin,
    AndAdj,
    AndMeet,
    NegAdjLeft,
    NegAdjLeftUp,
    NegAdjRight,
    NegAdjRightUp,
    MonotoneBottom,
    MonotoneTop,
    RightAckermann,
    LeftAckermann,
    SimplLeft,
    SimplRight,
    DropRedundant,
    TrivialConclusion,
};

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);

// A replayable rule application.
struct Step {
    Rule rule = Rule::FirstApproximation;
    std::size_t premise = 0;
    std::size_t other = 0;       // second premise of OrJoin / AndMeet
    std::optional<Atom> atom;    // eliminated variable
    bool commuted = false;       // residuate on the other argument

    friend bool operator==(const Step&, const Step&) = default;
};

struct Applied {
    QuasiInequality result;
    std::vector<Atom> fresh;
};

namespace calculus {

using Result = std::optional<Applied>;
using Split = std::optional<std::pair<Inequality, Inequality>>;

// Distribution splits on a single inequality.
Split split_left(const Inequality& i);
Split split_right(const Inequality& i);

bool is_tautology(const Inequality& i);

Result first_approximation(const QuasiInequality& q);
Result split_left(const QuasiInequality& q, std::size_t k);
Result split_right(const QuasiInequality& q, std::size_t k);

Result imp_approx_left(const QuasiInequality& q, std::size_t k);
Result imp_approx_right(const QuasiInequality& q, std::size_t k);
Result fusion_approx_left(const QuasiInequality& q, std::size_t k);
Result fusion_approx_right(const QuasiInequality& q, std::size_t k);
Result neg_approx_left(const QuasiInequality& q, std::size_t k);
Result neg_approx_right(const QuasiInequality& q, std::size_t k);

Result or_res(const QuasiInequality& q, std::size_t k, bool commuted = false);
Result or_res_up(const QuasiInequality& q, std::size_t k);
Result and_res(const QuasiInequality& q, std::size_t k, bool commuted = false);
Result and_res_up(const QuasiInequality& q, std::size_t k);
Result imp_res(const QuasiInequality& q, std::size_t k);
Result imp_res_up(const QuasiInequality& q, std::size_t k);
Result right_res_res(const QuasiInequality& q, std::size_t k);
Result right_res_res_up(const QuasiInequality& q, std::size_t k);

Result or_adj(const QuasiInequality& q, std::size_t k);
Result or_join(const QuasiInequality& q, std::size_t k, std::size_t l);
Result and_adj(const QuasiInequality& q, std::size_t k);
Result and_meet(const QuasiInequality& q, std::size_t k, std::size_t l);
Result neg_adj_left(const QuasiInequality& q, std::size_t k);
Result neg_adj_left_up(const QuasiInequality& q, std::size_t k);
Result neg_adj_right(const QuasiInequality& q, std::size_t k);
Result neg_adj_right_up(const QuasiInequality& q, std::size_t k);

// Positive: substitute bottom (premises negative, conclusion positive in p).
// Negative: substitute top (premises positive, conclusion negative in p).
Result monotone(const QuasiInequality& q, const Atom& p, Sign polarity);

// Positive: right Ackermann on the unique premise alpha <= p.
// Negative: left Ackermann on the unique premise p <= alpha.
Result ackermann(const QuasiInequality& q, const Atom& p, Sign polarity);

Result simpl_left(const QuasiInequality& q);
Result simpl_right(const QuasiInequality& q);
Result drop_redundant(const QuasiInequality& q, std::size_t k);
Result trivial_conclusion(const QuasiInequality& q);

}  // namespace calculus

std::optional<Applied> apply(const QuasiInequality& q, const Step& s);

struct TraceEntry {
    Step step;
    std::vector<Atom> fresh;
    QuasiInequality state;  // after the step
};

struct Trace {
    QuasiInequality initial;
    std::vector<TraceEntry> entries;

    const QuasiInequality& final_state() const {
        return entries.empty() ? initial : entries.back().state;
    }
    // Applies `s`, records it and returns true; false if not applicable.
    bool record(const Step& s);
};

// Index of the first entry that does not reproduce, or nullopt when the whole trace replays.
std::optional<std::size_t> replay_mismatch(const Trace& t);

nlohmann::json to_json(const Step& s);
nlohmann::json to_json(const Trace& t);
Step step_from_json(const nlohmann::json& j);
Trace trace_from_json(const nlohmann::json& j);

}  // namespace pearl
