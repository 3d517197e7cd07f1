#include <doctest.h>

#include <cmath>

#include "exmat/decomp.hpp"
#include "exmat/rng.hpp"
#include "oracles.hpp"

using exmat::ComplexMatrix;
using exmat::cplx;

namespace {

ComplexMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
    return ComplexMatrix(2, 2, {a, b, c, d});
}

ComplexMatrix random_dense(std::size_t n, std::uint64_t seed) {
    exmat::Rng rng(seed);
    ComplexMatrix E(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) E(i, j) = rng.cnormal();
    return E;
}

}  // namespace

TEST_CASE("operator norm: closed forms") {
    // [DERIVED] sigma_max([[1,1],[0,1]]) solves s^4 - 3 s^2 + 1 = 0, largest
    // root s = golden ratio (1 + sqrt 5)/2.
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(exmat::operator_norm(mat2(1, 1, 0, 1)) == doctest::Approx(golden).epsilon(1e-13));

    // [TRIVIAL] diagonal and rank-one cases.
    CHECK(exmat::operator_norm(ComplexMatrix::diagonal({cplx(3, 0), cplx(0, -5), cplx(1, 1)})) ==
          doctest::Approx(5.0).epsilon(1e-14));
    CHECK(exmat::operator_norm(mat2(0, 2, 0, 0)) == doctest::Approx(2.0).epsilon(1e-14));

    // [DERIVED] matches the independent 2x2 closed form on random samples.
    for (std::uint64_t s = 1; s <= 40; ++s) {
        const auto E = random_dense(2, s);
        CHECK(exmat::operator_norm(E) == doctest::Approx(oracle::norm2x2(E)).epsilon(1e-11));
    }
}

TEST_CASE("operator norm: rectangular and larger sizes vs power iteration") {
    for (std::uint64_t s = 1; s <= 10; ++s) {
        const auto E = random_dense(5, 100 + s);
        CHECK(exmat::operator_norm(E) == doctest::Approx(oracle::power_norm(E)).epsilon(1e-9));
    }
    ComplexMatrix R(3, 2, {cplx(1, 0), cplx(0, 2), cplx(0, 0), cplx(1, 0), cplx(2, 0), cplx(0, 0)});
    CHECK(exmat::operator_norm(R) == doctest::Approx(oracle::power_norm(R)).epsilon(1e-10));
}

TEST_CASE("singular_data: factorization, ordering, cluster detection") {
    for (std::uint64_t s = 1; s <= 12; ++s) {
        const std::size_t n = 2 + s % 4;
        const auto E = random_dense(n, 200 + s);
        const auto sd = exmat::singular_data(E, 1e-8);
        REQUIRE(sd.values.size() == n);
        for (std::size_t i = 0; i + 1 < n; ++i) CHECK(sd.values[i] >= sd.values[i + 1]);
        // Reconstruct U Sigma V* and compare.
        ComplexMatrix S = ComplexMatrix::diagonal(
            std::vector<cplx>(sd.values.begin(), sd.values.end()));
        const auto R = sd.leftVectors * S * sd.rightVectors.adjoint() - E;
        CHECK(exmat::operator_norm(R) <= 1e-10 * std::max(1.0, sd.values[0]));
        // U and V unitary.
        CHECK((sd.leftVectors.adjoint() * sd.leftVectors - ComplexMatrix::identity(n)).max_abs() <=
              1e-11);
        CHECK((sd.rightVectors.adjoint() * sd.rightVectors - ComplexMatrix::identity(n)).max_abs() <=
              1e-11);
    }

    // [TRIVIAL] exact repeated top singular value -> cluster of size 2.
    const auto sd = exmat::singular_data(ComplexMatrix::diagonal({2.0, 2.0, 0.5}), 1e-8);
    CHECK(sd.topClusterDim == 2);
    CHECK(sd.values[0] == doctest::Approx(2.0));
}

TEST_CASE("singular_data handles exactly singular matrices") {
    const auto sd = exmat::singular_data(mat2(1, 1, 1, 1), 1e-8);
    CHECK(sd.values[0] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(sd.values[1] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK((sd.leftVectors.adjoint() * sd.leftVectors - ComplexMatrix::identity(2)).max_abs() <=
          1e-12);
}

TEST_CASE("spectrum: triangular, companion, and similarity invariance") {
    // [TRIVIAL] triangular matrix: eigenvalues are the diagonal.
    ComplexMatrix T(3, 3, {cplx(0.5, 0.1), cplx(2, 0), cplx(1, 1), cplx(0, 0), cplx(-0.3, 0),
                           cplx(4, 0), cplx(0, 0), cplx(0, 0), cplx(0.2, -0.7)});
    const auto sp = exmat::spectrum(T);
    CHECK(exmat::eigenvalue_match_distance(
              sp.eigenvalues, {cplx(0.5, 0.1), cplx(-0.3, 0), cplx(0.2, -0.7)}) <= 1e-10);
    CHECK(sp.spectralRadius == doctest::Approx(std::abs(cplx(0.2, -0.7))).epsilon(1e-10));

    // [DERIVED] companion matrix of z^3 - 1: cube roots of unity.
    ComplexMatrix C(3, 3);
    C(0, 2) = 1.0;
    C(1, 0) = 1.0;
    C(2, 1) = 1.0;
    const auto roots = exmat::spectrum(C);
    const cplx om = std::polar(1.0, 2.0 * M_PI / 3.0);
    CHECK(exmat::eigenvalue_match_distance(roots.eigenvalues, {1.0, om, std::conj(om)}) <= 1e-9);

    // Similarity invariance under a random unitary.
    for (std::uint64_t s = 1; s <= 6; ++s) {
        const auto E = random_dense(4, 300 + s);
        const auto U = exmat::random_unitary(4, 900 + s);
        const auto F = U.adjoint() * E * U;
        CHECK(exmat::eigenvalue_match_distance(exmat::spectrum(E).eigenvalues,
                                               exmat::spectrum(F).eigenvalues) <= 1e-8);
    }
}

TEST_CASE("schur_form: unitary factor and reconstruction") {
    for (std::uint64_t s = 1; s <= 8; ++s) {
        const std::size_t n = 2 + s % 5;
        const auto E = random_dense(n, 400 + s);
        const auto [U, T] = exmat::schur_form(E);
        CHECK((U.adjoint() * U - ComplexMatrix::identity(n)).max_abs() <= 1e-11);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(T(i, j)) <= 1e-10);
        CHECK(exmat::operator_norm(U * T * U.adjoint() - E) <= 1e-9 * std::max(1.0, E.max_abs()));
    }
}

TEST_CASE("random_unitary: unitary and deterministic") {
    const auto U = exmat::random_unitary(5, 77);
    CHECK((U.adjoint() * U - ComplexMatrix::identity(5)).max_abs() <= 1e-12);
    const auto V = exmat::random_unitary(5, 77);
    CHECK((U - V).max_abs() == 0.0);
    const auto W = exmat::random_unitary(5, 78);
    CHECK((U - W).max_abs() > 1e-3);
}

TEST_CASE("lu_solve: residual on random systems") {
    for (std::uint64_t s = 1; s <= 8; ++s) {
        const std::size_t n = 2 + s % 5;
        const auto A = random_dense(n, 500 + s);
        const auto B = random_dense(n, 600 + s);
        const auto X = exmat::lu_solve(A, B);
        CHECK((A * X - B).max_abs() <= 1e-9 * std::max(1.0, B.max_abs()));
    }
}

TEST_CASE("eigenvalue_match_distance: optimal assignment, not greedy") {
    // Greedy matching from the first element would pair 0 with 1.0 and leave
    // 2.0 at distance 2; the optimal pairing has max distance 1.
    CHECK(exmat::eigenvalue_match_distance({cplx(0, 0), cplx(1, 0)}, {cplx(1, 0), cplx(2, 0)}) ==
          doctest::Approx(1.0));
    CHECK(exmat::eigenvalue_match_distance({cplx(1, 2), cplx(3, -1)}, {cplx(3, -1), cplx(1, 2)}) ==
          doctest::Approx(0.0));
}
