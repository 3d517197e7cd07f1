#pragma once

#include <cstdint>

#include "exmat/complex_matrix.hpp"
#include "exmat/config.hpp"
#include "exmat/holo.hpp"

namespace exmat {

enum class BlockVariant {
    strict,       // ||A|| < 1/a
    lastColZero,  // ||A|| < 1 and last column of A exactly zero
};

// Parameters of the bordered block construction: first column (0,...,0,a)^T,
// top-right block A, bottom row (a, 0,...,0).
struct BlockSpec {
    double a = 2.0;          // > 1; bottom-left entry and the resulting norm
    ComplexMatrix A;         // (N-1) x (N-1)
    BlockVariant variant = BlockVariant::strict;
};

// Builds the N x N bordered matrix; validates the variant's norm hypothesis.
ComplexMatrix construct_block(const BlockSpec& spec,
                              const Tolerances& tol = default_tolerances());

struct Factorization {
    ComplexMatrix V;  // diag(1,...,1,a)
    ComplexMatrix J;  // bordered matrix with top-right block A*D, bottom-left 1
    double residual;  // ||V J V^{-1} - E||
};

// The similarity E = V J V^{-1} underlying the strict construction; asserts
// ||J|| <= 1 + normTol and ||A D|| < 1.
Factorization verify_factorization(const BlockSpec& spec,
                                   const Tolerances& tol = default_tolerances());

// New-from-old transformations. None of these re-verify that E itself is
// exceptional; that hypothesis is the caller's responsibility.
ComplexMatrix transform_conjugate(const ComplexMatrix& E);
ComplexMatrix transform_transpose(const ComplexMatrix& E);
ComplexMatrix transform_adjoint(const ComplexMatrix& E);

// U*EU; checks ||U*U - I|| <= decompTol.
ComplexMatrix transform_unitary_conj(const ComplexMatrix& E, const ComplexMatrix& U,
                                     const Tolerances& tol = default_tolerances());

// alpha E; checks |alpha| = 1 to 1e-12.
ComplexMatrix transform_scalar_rotate(const ComplexMatrix& E, cplx alpha,
                                      const Tolerances& tol = default_tolerances());

enum class DirectSumKind {
    exceptionalSummand,  // F exceptional (caller's responsibility, unchecked)
    strictContraction,   // rho(F) < 1 and ||F|| <= 1 (checked)
};

ComplexMatrix transform_direct_sum(const ComplexMatrix& E, const ComplexMatrix& F,
                                   DirectSumKind kind,
                                   const Tolerances& tol = default_tolerances());

// h0(E) for a Blaschke h0 with ||h0(E)|| = ||E|| within mapNormTol (checked).
ComplexMatrix transform_apply_map(const ComplexMatrix& E, const BlaschkeProduct& h0,
                                  const Tolerances& tol = default_tolerances());

enum class RandomProfile {
    traceZero2x2,  // n = 2; zeros on the diagonal, sigma in D, ||E|| > 1
    contraction,   // ||E|| <= 1, rho(E) < 1
    generic,       // rho(E) < 1, ||E|| in [1.1, 3]
    blockStrict,   // a random admissible strict BlockSpec instance
};

ComplexMatrix random_test_matrix(RandomProfile profile, std::size_t n, std::uint64_t seed);

// The underlying spec of a blockStrict sample (same seed gives the matrix
// produced by random_test_matrix).
BlockSpec random_block_spec(std::size_t n, std::uint64_t seed);

}  // namespace exmat
