#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "pearl/fo.hpp"
#include "pearl/formula.hpp"
#include "pearl/parser.hpp"

namespace pearl {

class BudgetError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class OracleError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Subsets of W as bitmasks.
using WorldSet = std::uint32_t;

constexpr unsigned kMaxWorlds = 4;
constexpr unsigned kMaxEnumerated = 3;

// Finite Routley-Meyer frame over W = {0..n-1}. R is a bitset indexed by (a*n+b)*n+c.
struct Frame {
    unsigned n = 1;
    WorldSet normal = 0;
    std::uint64_t rel = 0;
    std::array<std::uint8_t, kMaxWorlds> star{};

    bool R(unsigned a, unsigned b, unsigned c) const { return (rel >> ((a * n + b) * n + c)) & 1u; }
    void set_R(unsigned a, unsigned b, unsigned c) { rel |= std::uint64_t{1} << ((a * n + b) * n + c); }
    bool in_normal(unsigned w) const { return (normal >> w) & 1u; }
    WorldSet all() const { return (WorldSet{1} << n) - 1; }

    // u <= v iff R o u v for some normal o
    bool leq(unsigned u, unsigned v) const;
    WorldSet up(unsigned w) const;
    WorldSet down(unsigned w) const;
    bool is_up_set(WorldSet s) const;
    WorldSet up_closure(WorldSet s) const;

    friend bool operator==(const Frame&, const Frame&) = default;
};

// The six frame conditions, each as its own predicate.
namespace frame_condition {
bool reflexive(const Frame& f);
bool antitone_first(const Frame& f);
bool antitone_second(const Frame& f);
bool monotone_third(const Frame& f);
bool star_antitone(const Frame& f);
bool normal_up_closed(const Frame& f);
}  // namespace frame_condition

bool check_frame(const Frame& f);
bool is_antichain(const Frame& f);
// Fusion is associative and commutative on all up-sets.
bool fusion_assoc_comm(const Frame& f);
bool admits(const Frame& f, SyntaxMode mode);

// Frames with n worlds admitted by `mode`, in lexicographic (O, R, star) order.
// Stops when fn returns false.
void for_each_frame(unsigned n, SyntaxMode mode, const std::function<bool(const Frame&)>& fn);
std::vector<Frame> enumerate_frames(unsigned n, SyntaxMode mode = SyntaxMode::Relevance);

// Random frame with exactly n worlds (n <= kMaxWorlds).
Frame sample_frame(std::mt19937_64& rng, unsigned n, SyntaxMode mode = SyntaxMode::Relevance);

std::vector<WorldSet> up_sets(const Frame& f);

using Valuation = std::map<Atom, WorldSet>;

// Throws OracleError unless variables get up-sets, nominals principal up-sets and
// co-nominals complements of principal down-sets.
void check_valuation(const Frame& f, const Valuation& v);

// Extension of a formula in the complex algebra.
WorldSet extension(const Frame& f, const Valuation& v, const Formula& phi);
bool eval_formula(const Frame& f, const Valuation& v, const Formula& phi, unsigned w);

bool holds(const Frame& f, const Valuation& v, const Inequality& i);
bool holds(const Frame& f, const Valuation& v, const QuasiInequality& q);

// Calls fn for every admissible valuation of `atoms`; stops early when fn returns false.
// Returns false iff stopped early.
bool for_each_valuation(const Frame& f, const std::set<Atom>& atoms, const std::function<bool(const Valuation&)>& fn);

// O is contained in the extension under every valuation.
bool frame_valid(const Frame& f, const Formula& phi);
bool frame_valid(const Frame& f, const Inequality& i);
bool frame_valid(const Frame& f, const QuasiInequality& q);

using Environment = std::map<WorldVar, unsigned>;
// Sets for the unary predicates of propositional variables, keyed by variable index.
using PropSets = std::map<unsigned, WorldSet>;

bool eval_fo(const Frame& f, const FOFormula& g, const Environment& env = {}, const PropSets& props = {});
// Truth of a closed formula; free variables are read universally.
bool eval_closed(const Frame& f, const FOFormula& g);

struct CorrespondenceReport {
    bool agree = true;
    std::optional<Frame> counterexample;
    std::size_t frames_checked = 0;
};

CorrespondenceReport correspondence_check(const Formula& phi, const FOFormula& g, unsigned n,
                                          SyntaxMode mode = SyntaxMode::Relevance);

nlohmann::json to_json(const Frame& f);
Frame frame_from_json(const nlohmann::json& j);

}  // namespace pearl
