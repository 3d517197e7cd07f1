#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "exmat/complex_matrix.hpp"
#include "exmat/config.hpp"
#include "exmat/holo.hpp"

namespace exmat {

// Budget for the Blaschke-product search. gridResolution is the radial point
// count per zero; the angular count is 4/3 of it (defaults 24 x 32). Degree 3
// uses half the resolution, degrees >= 4 fall back to seeded random sampling.
struct SearchBudget {
    int gridResolution = 24;
    int multistarts = 16;
    int localIters = 400;
    int degreeMin = 0;
    int degreeMax = -1;  // -1 means N-1
    std::uint64_t seed = 0;
};

struct DegreeBest {
    BlaschkeProduct product;
    double norm = 0.0;
};

struct ExtremalResult {
    BlaschkeProduct best;
    double bestNorm = 0.0;
    std::map<int, DegreeBest> perDegree;
    long evaluations = 0;
    bool budgetExhausted = false;
};

// ||b(E)|| for the phase-0 Blaschke product with the given zeros.
double norm_objective(const ComplexMatrix& E, const std::vector<cplx>& zeros,
                      const Tolerances& tol = default_tolerances());

// Maximize ||b(E)|| over Blaschke products of each degree in the budget's
// range: coarse polar grid, then multistart Nelder-Mead refinement in the
// chart w = r e^{i phi}, r in [0, 1 - boundaryMargin]. Every reported norm is
// an actually evaluated ||b(E)||, so bestNorm is a true lower bound on the
// supremum.
ExtremalResult extremal_search(const ComplexMatrix& E, const SearchBudget& budget,
                               const Tolerances& tol = default_tolerances());

}  // namespace exmat
