#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mixfrac {

struct SelftestResult {
    std::string suite;
    int total = 0;
    int failures = 0;
    std::string firstFailure; // empty when the suite passed
};

/// Property suites behind `mixfrac selftest`: exact block-inverse and
/// corner-rank identities on seeded random matrices, translation-limit
/// exactness, the mixed-norm swap inequality, and tail-scaling closed forms.
std::vector<SelftestResult> run_selftests(uint64_t seed);

bool selftests_ok(const std::vector<SelftestResult>& results);

} // namespace mixfrac
