#pragma once

#include <optional>
#include <string>

#include "mixfrac/decide.hpp"
#include "mixfrac/probes.hpp"

namespace mixfrac {

/// Probe request attached to a problem file; flags may override pieces later.
struct ProbeSpec {
    std::optional<ProbeFamily> family;
    ProbeOptions options;
};

/// A parsed problem file: exactly one of the three kinds is populated.
struct ProblemSpec {
    std::string kind; // "T" | "J" | "riesz"
    std::optional<ProblemT> problemT;
    std::optional<ProblemJ> problemJ;
    int rieszN = 0;
    std::optional<Exponent> rieszP;
    std::optional<Exponent> rieszQ;
    std::optional<Order> rieszLambda;
    std::optional<ProbeSpec> probe;
};

/// Parse the JSON problem format. Rationals and exponents travel as strings
/// ("3/2", "inf"); the matrix is an array of rows of rational strings, the
/// full (m+1)n square for kind T and the stacked mn x n column for kind J.
/// ParseError messages carry the source name plus the offending field (or the
/// parser's line/column for syntax errors).
ProblemSpec parse_problem_text(const std::string& text, const std::string& sourceName);

/// Read the file and delegate to parse_problem_text. ParseError when
/// unreadable.
ProblemSpec load_problem_file(const std::string& path);

} // namespace mixfrac
