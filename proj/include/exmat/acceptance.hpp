#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace exmat {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // deterministic summary (no timings)
};

struct SuiteOptions {
    std::uint64_t seed = 20250823;
    double scale = 1.0;          // multiplies every fixture count (min 1)
    bool runDeterminism = true;  // double-run determinism criterion
};

// Runs the property suites end to end. When log is non-null, one pass/fail
// line per criterion is printed as results come in.
std::vector<CriterionResult> run_acceptance(const SuiteOptions& opt, std::ostream* log = nullptr);

nlohmann::json acceptance_report(const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace exmat
