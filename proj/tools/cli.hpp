#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pearl/parser.hpp"
#include "pearl/serializer.hpp"

namespace pearl::cli {

enum Exit : int {
    kOk = 0,
    kFailure = 1,       // elimination failure or expected correspondent mismatch
    kParseError = 2,
    kDisagreement = 3,  // oracle found a frame separating formula and correspondent
};

struct RunConfig {
    std::optional<std::string> input;   // inline formula
    std::optional<std::string> file;    // plain formulas, one per line, or corpus lines
    std::optional<std::string> corpus;  // bundled corpus name or path to a .jsonl file
    SyntaxMode syntax = SyntaxMode::Relevance;
    std::optional<OutputFormat> format;
    unsigned verify = 0;                // frame size bound, 0 skips the oracle
    bool trace = false;
    bool expand_leq = false;
};

struct CorpusEntry {
    std::string name;
    std::string formula;
    std::optional<std::string> expected_fo;
};

std::vector<CorpusEntry> read_corpus(std::istream& in);
std::string bundled_corpus_path(const std::string& name);

// Writes the report to `out`, diagnostics to `err`, and returns the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (CLI11) and runs; handles --out.
int main_with_args(int argc, char** argv);

}  // namespace pearl::cli
