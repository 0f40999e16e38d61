#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "pearl/fo.hpp"

namespace pearl {

enum class OutputFormat { TexMath, TPTP, Prover9, Spass, Json };

const char* format_name(OutputFormat f);
OutputFormat format_from_name(std::string_view name);

class SerializationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RenderOptions {
    bool expand_leq = false;       // a <= b becomes exists z (O z and R z a b)
    std::string name = "name";     // formula label in the sentence formats
    bool strip_closure = true;     // TeX only: drop the outer universal block
};

// TPTP, Prover9 and SPASS require a closed formula.
std::string render(const FOFormula& f, OutputFormat fmt, const RenderOptions& options = {});

// Lower-case identifier usable as a TPTP/SPASS name.
std::string sanitize_name(std::string_view raw);

}  // namespace pearl
