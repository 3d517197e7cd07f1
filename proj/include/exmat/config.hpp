#pragma once

#include <cstddef>

namespace exmat {

// Dimension cap for the in-house dense routines. Everything in this library
// is sized for tiny matrices; larger inputs are rejected up front.
inline constexpr std::size_t kMaxDim = 16;

// All tolerances in one place, overridable through the CLI / EXMAT_CONFIG.
struct Tolerances {
    double normTol = 1e-12;        // relative, operator norm
    double eigTol = 1e-10;         // absolute on unit-scale matrices
    double decompTol = 1e-10;      // decomposition residuals
    double clusterTol = 1e-8;      // relative width of the top singular cluster
    double boundaryMargin = 1e-9;  // Blaschke zeros stay inside |w| <= 1 - margin
    double specMargin = 1e-9;      // functional calculus needs rho(E) < 1 - margin
    double traceTol = 1e-10;       // absolute, exact 2x2 trace-zero path
    double certMargin = 1e-7;      // relative margin a witness must beat ||E|| by
    double canonTolRel = 1e-8;     // canonical-form zero pattern, relative to ||E||
    double orthTol = 1e-9;         // orthogonality defect of exceptional matrices
    double posTol = 1e-9;          // positivity bound slack
    double orthFilterTol = 1e-6;   // defect above this hints non-exceptionality
    double mapNormTol = 1e-8;      // relative, ||h0(E)|| = ||E|| hypothesis
};

inline const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

}  // namespace exmat
