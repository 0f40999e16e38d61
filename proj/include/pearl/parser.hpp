#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pearl/formula.hpp"

namespace pearl {

// Relevance: the full TeX syntax. BI: -*, *, \to read as ->, fusion, =>.
// RA: adds \neg x (x => bot) and postfix converse x^\smallsmile (~(x => bot)).
enum class SyntaxMode { Relevance, BI, RA };

const char* mode_name(SyntaxMode m);
SyntaxMode mode_from_name(std::string_view name);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t pos, const std::string& what)
        : std::runtime_error("parse error at " + std::to_string(pos) + ": " + what), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// Raised by to_text when a connective has no surface form in the mode.
class UnsupportedConnective : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// PropVar indices follow order of first occurrence.
Formula parse(std::string_view text, SyntaxMode mode = SyntaxMode::Relevance);
Inequality parse_inequality(std::string_view text, SyntaxMode mode = SyntaxMode::Relevance);

std::string to_text(const Formula& f, SyntaxMode mode = SyntaxMode::Relevance);

// {"id": "\\to", "a": [...]}
nlohmann::json to_json(const Formula& f);
Formula formula_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Inequality& i);
nlohmann::json to_json(const QuasiInequality& q);
Inequality inequality_from_json(const nlohmann::json& j);
QuasiInequality quasi_from_json(const nlohmann::json& j);

}  // namespace pearl
