#pragma once

#include <complex>
#include <vector>

#include "exmat/complex_matrix.hpp"
#include "exmat/config.hpp"

namespace exmat {

// Finite Blaschke product e^{i phase} prod_j (z - w_j)/(1 - conj(w_j) z).
// Degree 0 (no zeros) is the unimodular constant e^{i phase}.
struct BlaschkeProduct {
    double phase = 0.0;            // in [0, 2pi)
    std::vector<cplx> zeros;       // each |w_j| <= 1 - boundaryMargin

    std::size_t degree() const { return zeros.size(); }
};

// g_t(z) = z * exp(-t (1 - h(z))) with h an inner Blaschke product; maps the
// disk into itself for every t > 0.
struct GtFunction {
    double t = 1.0;  // > 0
    BlaschkeProduct inner;
};

// Throws InvalidInput if a zero violates the boundary margin or the phase is
// non-finite; normalizes phase into [0, 2pi).
BlaschkeProduct make_blaschke(double phase, std::vector<cplx> zeros,
                              const Tolerances& tol = default_tolerances());

GtFunction make_gt(double t, BlaschkeProduct inner);

// Degree-1 factor h_w(z) = (z - w)/(1 - conj(w) z).
cplx mobius_scalar(cplx w, cplx z);

cplx blaschke_scalar(const BlaschkeProduct& b, cplx z);

cplx gt_scalar(const GtFunction& g, cplx z);

// Functional calculus; all require spectrum(E) strictly inside the disk
// (rho(E) < 1 - specMargin) so the resolvent solves are well posed.
ComplexMatrix mobius_matrix(cplx w, const ComplexMatrix& E,
                            const Tolerances& tol = default_tolerances());

ComplexMatrix blaschke_matrix(const BlaschkeProduct& b, const ComplexMatrix& E,
                              const Tolerances& tol = default_tolerances());

ComplexMatrix gt_matrix(const GtFunction& g, const ComplexMatrix& E,
                        const Tolerances& tol = default_tolerances());

// Scaling-and-squaring matrix exponential (Pade order 13).
ComplexMatrix matrix_exp(const ComplexMatrix& A);

namespace detail {
// Skip the spectral-radius precondition check; callers must have verified it
// once up front (used by the optimizer's inner loop).
ComplexMatrix mobius_matrix_unchecked(cplx w, const ComplexMatrix& E);
ComplexMatrix blaschke_matrix_unchecked(const BlaschkeProduct& b, const ComplexMatrix& E);
void require_spectrum_in_disk(const ComplexMatrix& E, const Tolerances& tol, const char* what);
}  // namespace detail

}  // namespace exmat
