#include <doctest.h>

#include <cmath>

#include "exmat/constructors.hpp"
#include "exmat/decomp.hpp"
#include "exmat/errors.hpp"
#include "oracles.hpp"

using exmat::BlockSpec;
using exmat::BlockVariant;
using exmat::ComplexMatrix;
using exmat::cplx;

namespace {

BlockSpec spec_2x2() {
    BlockSpec s;
    s.a = 2.0;
    s.A = ComplexMatrix(1, 1, {cplx(0.3, 0)});
    return s;
}

}  // namespace

TEST_CASE("construct_block: shape and frozen 2x2 instance") {
    const auto E = exmat::construct_block(spec_2x2());
    REQUIRE(E.rows() == 2);
    // First column (0, a)^T, top-right block A, bottom row (a, 0).
    CHECK(E(0, 0) == cplx(0, 0));
    CHECK(E(0, 1) == cplx(0.3, 0));
    CHECK(E(1, 0) == cplx(2, 0));
    CHECK(E(1, 1) == cplx(0, 0));

    // [DERIVED] singular values of [[0, 0.3], [2, 0]] are exactly {2, 0.3};
    // eigenvalues are +- sqrt(0.6).
    CHECK(exmat::operator_norm(E) == doctest::Approx(2.0).epsilon(1e-14));
    const auto sd = exmat::singular_data(E, 1e-8);
    CHECK(sd.values[1] == doctest::Approx(0.3).epsilon(1e-13));
    const double r = std::sqrt(0.6);
    CHECK(exmat::eigenvalue_match_distance(exmat::spectrum(E).eigenvalues,
                                           {cplx(r, 0), cplx(-r, 0)}) <= 1e-10);
}

TEST_CASE("construct_block: general bordered layout") {
    BlockSpec s;
    s.a = 1.5;
    s.A = ComplexMatrix(2, 2, {cplx(0.1, 0.2), cplx(0, 0.3), cplx(-0.2, 0), cplx(0.25, 0.1)});
    const auto E = exmat::construct_block(s);
    REQUIRE(E.rows() == 3);
    CHECK(E(0, 0) == cplx(0, 0));
    CHECK(E(1, 0) == cplx(0, 0));
    CHECK(E(2, 0) == cplx(1.5, 0));
    CHECK(E(2, 1) == cplx(0, 0));
    CHECK(E(2, 2) == cplx(0, 0));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(E(i, j + 1) == s.A(i, j));
    // The bordered norm equals a.
    CHECK(exmat::operator_norm(E) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("construct_block validates its hypotheses") {
    BlockSpec bad = spec_2x2();
    bad.a = 0.9;
    CHECK_THROWS_AS(exmat::construct_block(bad), exmat::HypothesisViolation);

    bad = spec_2x2();
    bad.A(0, 0) = 0.6;  // ||A|| = 0.6 >= 1/a = 0.5
    CHECK_THROWS_AS(exmat::construct_block(bad), exmat::HypothesisViolation);

    // lastColZero: ||A|| may exceed 1/a but the last column must vanish.
    BlockSpec z;
    z.a = 2.0;
    z.variant = BlockVariant::lastColZero;
    z.A = ComplexMatrix(2, 2, {cplx(0.8, 0), cplx(0, 0), cplx(0.1, 0), cplx(0, 0)});
    CHECK(exmat::operator_norm(exmat::construct_block(z)) == doctest::Approx(2.0).epsilon(1e-12));
    z.A(0, 1) = 0.05;  // non-zero last column
    CHECK_THROWS_AS(exmat::construct_block(z), exmat::HypothesisViolation);
}

TEST_CASE("verify_factorization: frozen J and small residual") {
    const auto f = exmat::verify_factorization(spec_2x2());
    // [DERIVED] V = diag(1, a); J = [[0, A a], [1, 0]] = [[0, 0.6], [1, 0]].
    CHECK(f.V(0, 0) == cplx(1, 0));
    CHECK(f.V(1, 1) == cplx(2, 0));
    CHECK(f.J(0, 1) == cplx(0.6, 0));
    CHECK(f.J(1, 0) == cplx(1, 0));
    CHECK(exmat::operator_norm(f.J) <= 1.0 + 1e-12);
    CHECK(f.residual <= 1e-13);

    for (std::uint64_t s = 1; s <= 20; ++s) {
        const auto spec = exmat::random_block_spec(2 + s % 3, 700 + s);
        const auto g = exmat::verify_factorization(spec);
        CHECK(g.residual <= 1e-12 * spec.a);
        CHECK(exmat::operator_norm(g.J) <= 1.0 + 1e-12);
    }
}

TEST_CASE("transforms preserve the operator norm") {
    const auto E = exmat::construct_block(exmat::random_block_spec(3, 42));
    const double a = exmat::operator_norm(E);

    CHECK(exmat::operator_norm(exmat::transform_conjugate(E)) == doctest::Approx(a));
    CHECK(exmat::operator_norm(exmat::transform_transpose(E)) == doctest::Approx(a));
    CHECK(exmat::operator_norm(exmat::transform_adjoint(E)) == doctest::Approx(a));
    const auto U = exmat::random_unitary(3, 43);
    CHECK(exmat::operator_norm(exmat::transform_unitary_conj(E, U)) ==
          doctest::Approx(a).epsilon(1e-11));
    CHECK(exmat::operator_norm(exmat::transform_scalar_rotate(E, std::polar(1.0, 0.8))) ==
          doctest::Approx(a).epsilon(1e-12));

    ComplexMatrix F(1, 1, {cplx(0.5, 0)});
    const auto S = exmat::transform_direct_sum(E, F, exmat::DirectSumKind::strictContraction);
    REQUIRE(S.rows() == 4);
    CHECK(exmat::operator_norm(S) == doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("transform guards") {
    const auto E = exmat::construct_block(spec_2x2());
    ComplexMatrix notU = ComplexMatrix::identity(2);
    notU(0, 0) = 2.0;
    CHECK_THROWS_AS(exmat::transform_unitary_conj(E, notU), exmat::HypothesisViolation);
    CHECK_THROWS_AS(exmat::transform_scalar_rotate(E, cplx(0.9, 0)), exmat::HypothesisViolation);
    ComplexMatrix big(1, 1, {cplx(1.2, 0)});
    CHECK_THROWS_AS(
        exmat::transform_direct_sum(E, big, exmat::DirectSumKind::strictContraction),
        exmat::HypothesisViolation);
}

TEST_CASE("transform_apply_map accepts norm-preserving maps only") {
    const auto E = exmat::construct_block(spec_2x2());
    // h(z) = z (single zero at the origin) reproduces E.
    const auto id = exmat::make_blaschke(0.0, {cplx(0, 0)});
    const auto H = exmat::transform_apply_map(E, id);
    CHECK((H - E).max_abs() <= 1e-13);
    // A generic Mobius factor shrinks the norm and must be rejected.
    const auto h = exmat::make_blaschke(0.0, {cplx(0.5, 0)});
    CHECK_THROWS_AS(exmat::transform_apply_map(E, h), exmat::HypothesisViolation);
}

TEST_CASE("random_test_matrix profiles honour their contracts") {
    using exmat::RandomProfile;
    for (std::uint64_t s = 1; s <= 25; ++s) {
        const auto T = exmat::random_test_matrix(RandomProfile::traceZero2x2, 2, s);
        CHECK(std::abs(T.trace()) <= 1e-15);
        CHECK(exmat::operator_norm(T) > 1.0);
        CHECK(exmat::spectrum(T).spectralRadius < 1.0);

        const auto C = exmat::random_test_matrix(RandomProfile::contraction, 3, s);
        CHECK(exmat::operator_norm(C) <= 1.0);
        CHECK(exmat::spectrum(C).spectralRadius < 1.0);

        const auto G = exmat::random_test_matrix(RandomProfile::generic, 2, s);
        CHECK(exmat::operator_norm(G) >= 1.05);
        CHECK(exmat::operator_norm(G) <= 3.05);
        CHECK(exmat::spectrum(G).spectralRadius < 1.0);
    }
    // blockStrict sample matches its reported spec, and sampling is
    // deterministic per seed.
    const auto B1 = exmat::random_test_matrix(exmat::RandomProfile::blockStrict, 4, 9);
    const auto B2 = exmat::construct_block(exmat::random_block_spec(4, 9));
    CHECK((B1 - B2).max_abs() == 0.0);
    const auto B3 = exmat::random_test_matrix(exmat::RandomProfile::blockStrict, 4, 9);
    CHECK((B1 - B3).max_abs() == 0.0);
}
