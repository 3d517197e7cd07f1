// Acceptance gate: runs every property suite and prints one pass/fail line
// per criterion. Exit 0 only when all criteria pass.

#include <iostream>

#include "exmat/acceptance.hpp"

int main() {
    exmat::SuiteOptions opt;
    const auto results = exmat::run_acceptance(opt, &std::cout);
    std::cout << (exmat::all_passed(results) ? "ALL CRITERIA PASSED" : "CRITERIA FAILED")
              << std::endl;
    return exmat::all_passed(results) ? 0 : 1;
}
