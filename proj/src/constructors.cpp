#include "exmat/constructors.hpp"

#include <cmath>
#include <string>

#include "exmat/decomp.hpp"
#include "exmat/errors.hpp"
#include "exmat/rng.hpp"

namespace exmat {

namespace {

void validate_spec(const BlockSpec& spec) {
    if (!(spec.a > 1.0))
        throw HypothesisViolation("a must exceed 1", spec.a);
    if (!spec.A.square()) throw InvalidInput("block A must be square");
    spec.A.require_finite("construct_block");
    if (spec.A.rows() + 1 > kMaxDim)
        throw InvalidInput("construct_block: dimension exceeds the documented cap of 16");
    const double nA = operator_norm(spec.A);
    if (spec.variant == BlockVariant::strict) {
        if (!(nA < 1.0 / spec.a))
            throw HypothesisViolation("strict variant requires ||A|| < 1/a; got ||A|| = " +
                                          std::to_string(nA) + " with 1/a = " +
                                          std::to_string(1.0 / spec.a),
                                      nA - 1.0 / spec.a);
    } else {
        if (!(nA < 1.0))
            throw HypothesisViolation("lastColZero variant requires ||A|| < 1; got ||A|| = " +
                                          std::to_string(nA),
                                      nA - 1.0);
        const std::size_t m = spec.A.rows();
        for (std::size_t i = 0; i < m; ++i) {
            if (spec.A(i, m - 1) != cplx{})
                throw HypothesisViolation(
                    "lastColZero variant requires the last column of A to be exactly zero");
        }
    }
}

}  // namespace

ComplexMatrix construct_block(const BlockSpec& spec, const Tolerances&) {
    validate_spec(spec);
    const std::size_t m = spec.A.rows();
    const std::size_t n = m + 1;
    ComplexMatrix E(n, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) E(i, j + 1) = spec.A(i, j);
    E(n - 1, 0) = spec.a;
    return E;
}

Factorization verify_factorization(const BlockSpec& spec, const Tolerances& tol) {
    if (spec.variant != BlockVariant::strict)
        throw HypothesisViolation("verify_factorization applies to the strict variant only");
    validate_spec(spec);
    const std::size_t m = spec.A.rows();
    const std::size_t n = m + 1;

    // D = diag(1,...,1,a) of size m; J carries AD in the top-right block.
    ComplexMatrix AD = spec.A;
    for (std::size_t i = 0; i < m; ++i) AD(i, m - 1) *= spec.a;

    ComplexMatrix J(n, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) J(i, j + 1) = AD(i, j);
    J(n - 1, 0) = 1.0;

    ComplexMatrix V(n, n);
    for (std::size_t i = 0; i < n; ++i) V(i, i) = 1.0;
    V(n - 1, n - 1) = spec.a;

    const double nAD = operator_norm(AD);
    if (!(nAD < 1.0))
        throw HypothesisViolation("factorization requires ||A D|| < 1; got " + std::to_string(nAD),
                                  nAD - 1.0);
    const double nJ = operator_norm(J);
    if (nJ > 1.0 + tol.normTol)
        throw NumericalFailure("factorization check: ||J|| = " + std::to_string(nJ) +
                               " exceeds 1 + normTol");

    ComplexMatrix Vinv(n, n);
    for (std::size_t i = 0; i < n; ++i) Vinv(i, i) = 1.0;
    Vinv(n - 1, n - 1) = 1.0 / spec.a;

    const ComplexMatrix E = construct_block(spec, tol);
    const double residual = operator_norm(V * J * Vinv - E);
    return Factorization{V, J, residual};
}

ComplexMatrix transform_conjugate(const ComplexMatrix& E) { return E.conj(); }
ComplexMatrix transform_transpose(const ComplexMatrix& E) { return E.transpose(); }
ComplexMatrix transform_adjoint(const ComplexMatrix& E) { return E.adjoint(); }

ComplexMatrix transform_unitary_conj(const ComplexMatrix& E, const ComplexMatrix& U,
                                     const Tolerances& tol) {
    if (!U.square() || U.rows() != E.rows())
        throw InvalidInput("transform_unitary_conj: U must be square and match E");
    const double defect = operator_norm(U.adjoint() * U - ComplexMatrix::identity(U.rows()));
    if (defect > tol.decompTol)
        throw HypothesisViolation("U is not unitary: ||U*U - I|| = " + std::to_string(defect),
                                  defect);
    return U.adjoint() * E * U;
}

ComplexMatrix transform_scalar_rotate(const ComplexMatrix& E, cplx alpha, const Tolerances&) {
    const double defect = std::abs(std::abs(alpha) - 1.0);
    if (defect > 1e-12)
        throw HypothesisViolation("alpha must be unimodular; | |alpha| - 1 | = " +
                                      std::to_string(defect),
                                  defect);
    return E * alpha;
}

ComplexMatrix transform_direct_sum(const ComplexMatrix& E, const ComplexMatrix& F,
                                   DirectSumKind kind, const Tolerances& tol) {
    if (kind == DirectSumKind::strictContraction) {
        const double rho = spectrum(F).spectralRadius;
        if (!(rho < 1.0))
            throw HypothesisViolation("direct-sum summand must have rho(F) < 1; got " +
                                          std::to_string(rho),
                                      rho - 1.0);
        const double nF = operator_norm(F);
        if (nF > 1.0 + tol.normTol)
            throw HypothesisViolation("direct-sum summand must have ||F|| <= 1; got " +
                                          std::to_string(nF),
                                      nF - 1.0);
    }
    return E.direct_sum(F);
}

ComplexMatrix transform_apply_map(const ComplexMatrix& E, const BlaschkeProduct& h0,
                                  const Tolerances& tol) {
    const ComplexMatrix H = blaschke_matrix(h0, E, tol);
    const double nE = operator_norm(E);
    const double nH = operator_norm(H);
    const double defect = std::abs(nH - nE) / std::max(nE, 1.0);
    if (defect > tol.mapNormTol)
        throw HypothesisViolation("applyMap requires ||h0(E)|| = ||E||; relative defect " +
                                      std::to_string(defect),
                                  defect);
    return H;
}

BlockSpec random_block_spec(std::size_t n, std::uint64_t seed) {
    if (n < 2) throw InvalidInput("blockStrict profile requires n >= 2");
    if (n > kMaxDim) throw InvalidInput("random_block_spec: dimension exceeds the cap of 16");
    Rng rng(seed ^ 0xb5297a4d5f4ce7a1ull);
    const std::size_t m = n - 1;
    const double a = rng.uniform(1.1, 3.0);
    ComplexMatrix A(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) A(i, j) = rng.cnormal();
    const double nA = operator_norm(A);
    const double target = rng.uniform(0.1, 0.9) / a;
    if (nA > 0) A = A * cplx(target / nA);
    return BlockSpec{a, A, BlockVariant::strict};
}

ComplexMatrix random_test_matrix(RandomProfile profile, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw InvalidInput("random_test_matrix: n must be >= 1");
    if (n > kMaxDim) throw InvalidInput("random_test_matrix: dimension exceeds the cap of 16");
    Rng rng(seed ^ 0x2545f4914f6cdd1dull);

    switch (profile) {
        case RandomProfile::traceZero2x2: {
            if (n != 2) throw InvalidInput("traceZero2x2 profile forces n = 2");
            for (int attempt = 0; attempt < 10000; ++attempt) {
                // Zeros on the diagonal: [[0, alpha],[beta, 0]] with
                // max(|alpha|, |beta|) > 1 and |alpha beta| < 1.
                const cplx alpha = std::polar(rng.uniform(1.05, 3.0), rng.uniform(0.0, 6.283185307179586));
                const cplx beta = std::polar(rng.uniform(0.0, 0.999) / std::abs(alpha),
                                             rng.uniform(0.0, 6.283185307179586));
                if (std::abs(alpha * beta) >= 0.999) continue;
                ComplexMatrix E(2, 2);
                E(0, 1) = alpha;
                E(1, 0) = beta;
                return E;
            }
            throw GenerationFailure("traceZero2x2: rejection sampling exhausted 10^4 attempts");
        }
        case RandomProfile::contraction: {
            ComplexMatrix G(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) G(i, j) = rng.cnormal();
            const double nG = operator_norm(G);
            if (nG == 0) return G;
            return G * cplx(rng.uniform(0.3, 0.95) / nG);
        }
        case RandomProfile::generic: {
            for (int attempt = 0; attempt < 10000; ++attempt) {
                ComplexMatrix G(n, n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) G(i, j) = rng.cnormal();
                const double nG = operator_norm(G);
                if (nG == 0) continue;
                const double target = rng.uniform(1.1, 3.0);
                ComplexMatrix E = G * cplx(target / nG);
                if (spectrum(E).spectralRadius < 0.999) return E;
            }
            throw GenerationFailure("generic: rejection sampling exhausted 10^4 attempts");
        }
        case RandomProfile::blockStrict:
            return construct_block(random_block_spec(n, seed));
    }
    throw InvalidInput("unknown random profile");
}

}  // namespace exmat
