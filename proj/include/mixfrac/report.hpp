#pragma once

#include <cstdint>
#include <string>

#include "mixfrac/decide.hpp"
#include "mixfrac/probes.hpp"
#include "mixfrac/profile.hpp"

namespace mixfrac {

/// FNV-1a 64-bit hash of a byte string, rendered as "fnv1a64:%016x".
std::string fnv1a64(const std::string& bytes);

/// Deterministic float rendering used everywhere a report prints a double:
/// %.12g with the C locale, so identical inputs give identical bytes.
std::string format_double(double v);

/// Everything a report can carry. Sections render only when their pointer is
/// set; key order inside a section is fixed so reruns are byte-identical.
struct ReportInputs {
    std::string toolVersion;
    std::string inputHash;
    uint64_t seed = 0;
    std::string kind; // "T" | "J" | "riesz"
    const Verdict* verdict = nullptr;
    const RankProfile* profile = nullptr;
    const PivotIndexSet* pivots = nullptr;
    const CanonicalForm* canonical = nullptr;
    const ProbeReport* probe = nullptr;
};

std::string render_report(const ReportInputs& in);

} // namespace mixfrac
