#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pearl/fo.hpp"
#include "pearl/formula.hpp"

namespace pearl {

class TranslationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Standard translation at world term `x`. Bound variables are drawn from `next_z`.
FOFormula st(const Formula& f, const FOTerm& x, unsigned& next_z);
FOFormula st(const Formula& f, const FOTerm& x);
// forall z (ST_z(lhs) -> ST_z(rhs))
FOFormula st_inequality(const Inequality& i);

// Translation rules for pure inequalities. Numbers follow the usual 31-rule listing;
// the three rules without a number cover nominal-left shapes the listing leaves out.
enum class TrRule : std::uint8_t {
    NomNom = 1, NomCoNom, NomUnit, NomBottom, NomTop, NomNegCoNom, NomNegNom, NomNeg,
    NomFusionNomNom, NomFusionNom, NomFusion, NomImp, NomRightRes, NomIntImp, NomAnd, NomOr,
    CoNomCoNom, UnitCoNom, BottomCoNom, TopCoNom, NegCoNomCoNom, NegNomCoNom, NegCoNom,
    FusionNomNomCoNom, FusionNomCoNom, FusionCoNom, IntImpCoNom, CoImpCoNom, AndCoNom, OrCoNom,
    Generic,
    NomNegFlat, NomNegSharp, NomCoImp,
};

int rule_number(TrRule r);  // 0 for the unnumbered rules
const char* rule_pattern(TrRule r);
// First rule whose pattern matches.
TrRule tr_rule(const Inequality& i);

struct TrLog {
    std::vector<TrRule> fired;
};

// Requires a pure inequality. Fresh nominals continue after the largest index in `i`.
FOFormula tr(const Inequality& i, TrLog* log = nullptr);
// Universally closed (premises -> conclusion).
FOFormula tr_quasi(const QuasiInequality& q, TrLog* log = nullptr);

// Double negation, contraposition and truth-constant absorption.
FOFormula fo_simplify(const FOFormula& f);

}  // namespace pearl
