#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "exmat/complex_matrix.hpp"
#include "exmat/config.hpp"

namespace exmat {

// Full SVD of a square matrix, plus the top singular cluster.
struct SingularData {
    std::vector<double> values;  // descending, >= 0
    ComplexMatrix leftVectors;   // columns = left singular vectors
    ComplexMatrix rightVectors;  // columns = right singular vectors
    double clusterTol = 0.0;
    std::size_t topClusterDim = 1;  // count of sigma_i with sigma_1 - sigma_i <= clusterTol*sigma_1

    std::vector<cplx> right_vector(std::size_t j) const;
    std::vector<cplx> left_vector(std::size_t j) const;
};

struct Spectrum {
    std::vector<cplx> eigenvalues;  // with algebraic multiplicity
    double spectralRadius = 0.0;
};

// sigma_1(E) in the Euclidean operator norm sense; square or rectangular.
double operator_norm(const ComplexMatrix& E);

SingularData singular_data(const ComplexMatrix& E, double clusterTol);

Spectrum spectrum(const ComplexMatrix& E);

// U unitary, T upper triangular with ||U T U* - E|| small.
std::pair<ComplexMatrix, ComplexMatrix> schur_form(const ComplexMatrix& E);

// Haar-distributed unitary: QR of a Ginibre sample with the R diagonal
// phase folded into Q. Deterministic per seed.
ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed);

// Solve A X = B by partial-pivoted LU (A square, N <= kMaxDim).
ComplexMatrix lu_solve(const ComplexMatrix& A, const ComplexMatrix& B);

// Minimal-cost pairing distance between two eigenvalue multisets
// (optimal assignment under |lambda - mu| cost; returns max matched distance).
double eigenvalue_match_distance(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace exmat
