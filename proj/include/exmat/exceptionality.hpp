#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "exmat/complex_matrix.hpp"
#include "exmat/config.hpp"
#include "exmat/extremal.hpp"
#include "exmat/holo.hpp"

namespace exmat {

enum class VerdictStatus {
    exceptionalUpToBudget,
    certifiedNotExceptional,
    notApplicable,
};

enum class VerdictReason {
    spectrumNotInDisk,
    normAtMostOne,
    traceZeroExact2x2,
    blaschkeWitness,
    searchExhausted,
};

struct VerdictMargins {
    double spectralRadius = 0.0;
    double operatorNorm = 0.0;
    std::optional<double> bestSearchNorm;  // absent when no search ran
};

struct ExceptionalityVerdict {
    VerdictStatus status = VerdictStatus::notApplicable;
    VerdictReason reason = VerdictReason::normAtMostOne;
    std::optional<BlaschkeProduct> witness;
    std::optional<double> witnessNorm;
    VerdictMargins margins;
    // Set when theory guarantees a witness (2x2, nonzero trace) but the
    // search failed to produce one; indicates an optimizer bug or a budget
    // that is too small.
    bool inconsistent = false;
};

// Decide exceptionality up to the search budget. Exact trace test at N = 2;
// Blaschke search of degrees 0..N-1 otherwise. A certifiedNotExceptional
// verdict always carries a reproducible witness.
ExceptionalityVerdict check_exceptional(const ComplexMatrix& E, const SearchBudget& budget,
                                        const Tolerances& tol = default_tolerances());

struct CanonicalForm {
    ComplexMatrix U;       // unitary, columns (y_1, ..., y_N)
    ComplexMatrix B;       // U* E U in the bordered shape
    double a = 0.0;        // = ||E||
    ComplexMatrix Ablock;  // top-right (N-1) x (N-1) block of B
    double residual = 0.0; // max |B entry| over the required-zero positions
};

// Unitary reduction to the bordered canonical shape built from the principal
// singular pair. Requires a simple top singular value; throws
// PatternViolation (with the measured residual) when the zero pattern is not
// attained, which is evidence that E is not exceptional.
CanonicalForm reduce_canonical(const ComplexMatrix& E,
                               const Tolerances& tol = default_tolerances());

// max over the top-cluster right singular vectors x of |<Ex, x>| / ||E||.
double orthogonality_defect(const ComplexMatrix& E,
                            const Tolerances& tol = default_tolerances());

using SampleFunction = std::variant<BlaschkeProduct, GtFunction>;

struct PositivityResult {
    double maxModulus = 0.0;
    std::size_t worstSample = 0;
};

// max over samples h of |<h(E) x_0, x_0>| on the norming vector(s).
PositivityResult positivity_check(const ComplexMatrix& E,
                                  const std::vector<SampleFunction>& samples,
                                  const Tolerances& tol = default_tolerances());

}  // namespace exmat
