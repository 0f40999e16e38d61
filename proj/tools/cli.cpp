#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pearl/oracle.hpp"
#include "pearl/pipeline.hpp"

#ifndef PEARL_DATA_DIR
#define PEARL_DATA_DIR "data"
#endif

namespace pearl::cli {

namespace {

std::string trim(std::string s) {
    auto blank = [](unsigned char c) { return std::isspace(c); };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), blank));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), blank).base(), s.end());
    return s;
}

std::string render_fo(const FOFormula& f, const RunConfig& c, const std::string& name) {
    if (!c.format || *c.format == OutputFormat::Json) return show(c.expand_leq ? expand_leq(f) : f);
    RenderOptions o;
    o.expand_leq = c.expand_leq;
    o.name = name;
    return render(f, *c.format, o);
}

std::string order_text(const PearlResult& r) {
    std::vector<std::string> parts;
    for (const auto& g : r.goals) parts.push_back(show(g.elimination.order));
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? "; " : "") + parts[k];
    return out;
}

void write_trace(std::ostream& out, const PearlResult& r) {
    for (std::size_t k = 0; k < r.goals.size(); ++k) {
        const auto& t = r.goals[k].trace;
        out << "\nTrace of goal " << k + 1 << ":\n";
        out << "  start: " << show(t.initial) << "\n";
        for (const auto& e : t.entries) {
            out << "  " << rule_name(e.step.rule);
            if (e.step.atom) out << " " << e.step.atom->display();
            else out << " #" << e.step.premise;
            out << ": " << show(e.state) << "\n";
        }
    }
}

struct Verification {
    bool ran = false;
    CorrespondenceReport report;
};

Verification verify(const Formula& f, const PearlResult& r, const RunConfig& c) {
    Verification v;
    if (c.verify == 0 || !r.correspondent) return v;
    v.ran = true;
    v.report = correspondence_check(f, *r.correspondent, c.verify, c.syntax);
    return v;
}

int exit_for(const PearlResult& r, const Verification& v) {
    if (r.status != Status::Success) return kFailure;
    if (v.ran && !v.report.agree) return kDisagreement;
    return kOk;
}

int run_single(const std::string& text, const RunConfig& c, std::ostream& out, std::ostream& err) {
    Formula f;
    try {
        f = parse(text, c.syntax);
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kParseError;
    }
    const PearlResult r = run_pearl(f);
    const Verification v = verify(f, r, c);
    if (c.format == OutputFormat::Json) {
        auto j = to_json(r);
        if (r.correspondent) j["rendered"] = render_fo(*r.correspondent, c, "correspondent");
        if (v.ran) {
            j["verification"] = {{"bound", c.verify},
                                 {"agree", v.report.agree},
                                 {"frames_checked", v.report.frames_checked}};
            if (v.report.counterexample) j["verification"]["counterexample"] = to_json(*v.report.counterexample);
        }
        out << j.dump(2) << "\n";
    } else {
        out << report_text(r);
        if (r.correspondent && c.format)
            out << "Rendered (" << format_name(*c.format) << "): " << render_fo(*r.correspondent, c, "correspondent")
                << "\n";
        if (v.ran) {
            if (v.report.agree)
                out << "Verification: agrees on all " << v.report.frames_checked << " frames with at most " << c.verify
                    << " worlds\n";
            else
                out << "Verification: disagreement, counterexample frame " << to_json(*v.report.counterexample).dump()
                    << "\n";
        }
        if (c.trace) write_trace(out, r);
    }
    return exit_for(r, v);
}

int run_batch(const std::vector<CorpusEntry>& entries, const RunConfig& c, std::ostream& out) {
    int worst = kOk;
    auto note = [&](int code) {
        // disagreement outranks parse errors, which outrank failures
        auto rank = [](int e) { return e == kDisagreement ? 3 : e == kParseError ? 2 : e == kFailure ? 1 : 0; };
        if (rank(code) > rank(worst)) worst = code;
    };
    const bool json = c.format == OutputFormat::Json;
    if (!json) {
        out << "name | status | order | correspondent";
        if (c.verify) out << " | verified";
        out << "\n";
    }
    for (const auto& e : entries) {
        nlohmann::json row = {{"name", e.name}, {"formula", e.formula}};
        std::string status, order, fo, verified;
        int code = kOk;
        try {
            const Formula f = parse(e.formula, c.syntax);
            const PearlResult r = run_pearl(f);
            const Verification v = verify(f, r, c);
            code = exit_for(r, v);
            status = r.status == Status::Success ? "success" : "failure";
            order = order_text(r);
            if (r.correspondent) {
                fo = render_fo(*r.correspondent, c, e.name);
                if (e.expected_fo && show(*r.correspondent) != *e.expected_fo) {
                    status = "mismatch";
                    if (code == kOk) code = kFailure;
                }
            } else {
                fo = "stuck at " + show(r.goals.empty() ? QuasiInequality{} : r.goals.back().elimination.result);
            }
            if (v.ran) verified = v.report.agree ? "yes" : "no";
            if (json) {
                row["result"] = to_json(r);
                if (v.ran) row["verified"] = v.report.agree;
            }
        } catch (const ParseError& ex) {
            code = kParseError;
            status = "parse-error";
            fo = ex.what();
        }
        note(code);
        if (json) {
            row["status"] = status;
            out << row.dump() << "\n";
        } else {
            out << e.name << " | " << status << " | " << order << " | " << fo;
            if (c.verify) out << " | " << verified;
            out << "\n";
        }
    }
    return worst;
}

std::vector<CorpusEntry> read_plain(std::istream& in) {
    std::vector<CorpusEntry> out;
    std::string line;
    unsigned k = 0;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '{') {
            std::istringstream one(line);
            auto e = read_corpus(one);
            out.insert(out.end(), e.begin(), e.end());
            continue;
        }
        out.push_back({"formula_" + std::to_string(++k), line, std::nullopt});
    }
    return out;
}

}  // namespace

std::vector<CorpusEntry> read_corpus(std::istream& in) {
    std::vector<CorpusEntry> out;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        CorpusEntry e;
        e.name = j.at("name").get<std::string>();
        e.formula = j.at("formula").get<std::string>();
        if (j.contains("expected_fo") && !j["expected_fo"].is_null()) e.expected_fo = j["expected_fo"].get<std::string>();
        out.push_back(std::move(e));
    }
    return out;
}

std::string bundled_corpus_path(const std::string& name) {
    if (name.find('/') != std::string::npos || name.ends_with(".jsonl")) return name;
    return std::string(PEARL_DATA_DIR) + "/" + name + ".jsonl";
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const int sources = int(c.input.has_value()) + int(c.file.has_value()) + int(c.corpus.has_value());
    if (sources != 1) {
        err << "exactly one of --input, --file, --corpus is required\n";
        return kParseError;
    }
    if (c.verify > kMaxEnumerated) {
        err << "--verify is limited to " << kMaxEnumerated << " worlds\n";
        return kParseError;
    }
    try {
        if (c.input) return run_single(*c.input, c, out, err);
        const std::string path = c.file ? *c.file : bundled_corpus_path(*c.corpus);
        std::ifstream in(path);
        if (!in) {
            err << "cannot open " << path << "\n";
            return kParseError;
        }
        auto entries = c.file ? read_plain(in) : read_corpus(in);
        return run_batch(entries, c, out);
    } catch (const nlohmann::json::exception& e) {
        err << "bad corpus line: " << e.what() << "\n";
        return kParseError;
    } catch (const SerializationError& e) {
        err << e.what() << "\n";
        return kFailure;
    }
}

int main_with_args(int argc, char** argv) {
    CLI::App app{"Correspondence computation for relevance logic formulas"};
    RunConfig c;
    std::string input, file, corpus, syntax = "relevance", format, out_path;
    app.add_option("-i,--input", input, "formula in LaTeX-style syntax");
    app.add_option("--file", file, "file with one formula (or corpus JSON object) per line");
    app.add_option("--corpus", corpus, "bundled corpus name or .jsonl path");
    app.add_option("--syntax", syntax, "relevance | bi | ra")
        ->check(CLI::IsMember({"relevance", "bi", "ra"}));
    app.add_option("--format", format, "tex | tptp | prover9 | spass | json")
        ->check(CLI::IsMember({"tex", "tptp", "prover9", "spass", "json"}));
    app.add_option("--verify", c.verify, "check the correspondent on all frames up to this size (0 skips)")
        ->check(CLI::Range(0u, kMaxEnumerated));
    app.add_flag("--trace", c.trace, "print every rule application");
    app.add_flag("--expand-leq", c.expand_leq, "write the order via O and R");
    app.add_option("--out", out_path, "write the report to this file");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kParseError;
    }
    if (!input.empty()) c.input = input;
    if (!file.empty()) c.file = file;
    if (!corpus.empty()) c.corpus = corpus;
    c.syntax = mode_from_name(syntax);
    if (!format.empty()) c.format = format_from_name(format);

    if (out_path.empty()) return run(c, std::cout, std::cerr);
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "cannot write " << out_path << "\n";
        return kParseError;
    }
    return run(c, out, std::cerr);
}

}  // namespace pearl::cli
