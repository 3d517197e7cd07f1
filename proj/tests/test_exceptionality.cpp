#include <doctest.h>

#include <cmath>

#include "exmat/constructors.hpp"
#include "exmat/decomp.hpp"
#include "exmat/errors.hpp"
#include "exmat/exceptionality.hpp"

using exmat::ComplexMatrix;
using exmat::cplx;
using exmat::SearchBudget;
using exmat::VerdictReason;
using exmat::VerdictStatus;

namespace {

SearchBudget seeded(std::uint64_t s) {
    SearchBudget b;
    b.seed = s;
    return b;
}

}  // namespace

TEST_CASE("trace-zero 2x2 with norm > 1 is exceptional (exact shortcut)") {
    ComplexMatrix E(2, 2, {cplx(0, 0), cplx(0.3, 0), cplx(2, 0), cplx(0, 0)});
    const auto v = exmat::check_exceptional(E, seeded(1));
    CHECK(v.status == VerdictStatus::exceptionalUpToBudget);
    CHECK(v.reason == VerdictReason::traceZeroExact2x2);
    CHECK_FALSE(v.witness.has_value());
    CHECK(v.margins.operatorNorm == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("nonzero-trace 2x2 yields a certified witness") {
    // [DERIVED] the degree-1 zero w* = 0.2 pushes the norm to 25/12, above
    // ||E|| ~= 2.0198039; the verdict must carry that witness.
    ComplexMatrix E(2, 2, {cplx(0.2, 0), cplx(2, 0), cplx(0, 0), cplx(0.2, 0)});
    const auto v = exmat::check_exceptional(E, seeded(2));
    CHECK(v.status == VerdictStatus::certifiedNotExceptional);
    CHECK(v.reason == VerdictReason::blaschkeWitness);
    REQUIRE(v.witness.has_value());
    REQUIRE(v.witnessNorm.has_value());
    CHECK(*v.witnessNorm == doctest::Approx(25.0 / 12.0).epsilon(1e-9));
    CHECK(*v.witnessNorm > v.margins.operatorNorm * (1.0 + 1e-7));
    CHECK_FALSE(v.inconsistent);
}

TEST_CASE("out-of-scope inputs are notApplicable") {
    // Spectrum touching/leaving the disk.
    ComplexMatrix R(2, 2, {cplx(1.1, 0), cplx(0, 0), cplx(0, 0), cplx(0.2, 0)});
    const auto v1 = exmat::check_exceptional(R, seeded(3));
    CHECK(v1.status == VerdictStatus::notApplicable);
    CHECK(v1.reason == VerdictReason::spectrumNotInDisk);

    // Contractions cannot be exceptional.
    ComplexMatrix C(2, 2, {cplx(0.3, 0), cplx(0.1, 0), cplx(0, 0), cplx(-0.2, 0)});
    const auto v2 = exmat::check_exceptional(C, seeded(4));
    CHECK(v2.status == VerdictStatus::notApplicable);
    CHECK(v2.reason == VerdictReason::normAtMostOne);

    // 1x1: spectrum in the disk forces norm <= 1.
    ComplexMatrix one(1, 1, {cplx(0.5, 0)});
    const auto v3 = exmat::check_exceptional(one, seeded(5));
    CHECK(v3.status == VerdictStatus::notApplicable);
}

TEST_CASE("block construction passes the checker at N = 3") {
    const auto E = exmat::construct_block(exmat::random_block_spec(3, 77));
    const auto v = exmat::check_exceptional(E, seeded(6));
    CHECK(v.status == VerdictStatus::exceptionalUpToBudget);
    CHECK(v.reason == VerdictReason::searchExhausted);
    REQUIRE(v.margins.bestSearchNorm.has_value());
    CHECK(*v.margins.bestSearchNorm <= v.margins.operatorNorm * (1.0 + 1e-7));
}

TEST_CASE("reduce_canonical recovers the bordered shape after unitary conjugation") {
    for (std::uint64_t s = 1; s <= 8; ++s) {
        const std::size_t n = 2 + s % 3;
        const auto E = exmat::construct_block(exmat::random_block_spec(n, 1000 + s));
        const double a = exmat::operator_norm(E);
        const auto U = exmat::random_unitary(n, 2000 + s);
        const auto M = exmat::transform_unitary_conj(E, U);

        const auto cf = exmat::reduce_canonical(M);
        CHECK(cf.a == doctest::Approx(a).epsilon(1e-10));
        CHECK(cf.residual <= 1e-8 * a);
        // B reproduces M under the computed unitary.
        CHECK((cf.U.adjoint() * M * cf.U - cf.B).max_abs() <= 1e-10);
        CHECK((cf.U.adjoint() * cf.U - ComplexMatrix::identity(n)).max_abs() <= 1e-11);
        // Bottom-left corner is +a, first column otherwise zero.
        CHECK(std::abs(cf.B(n - 1, 0) - a) <= 1e-9);
        CHECK(exmat::operator_norm(cf.Ablock) <= a + 1e-9);
    }
}

TEST_CASE("reduce_canonical rejects matrices without the bordered pattern") {
    ComplexMatrix E(2, 2, {cplx(0.2, 0), cplx(2, 0), cplx(0, 0), cplx(0.2, 0)});
    CHECK_THROWS_AS(exmat::reduce_canonical(E), exmat::PatternViolation);
    try {
        exmat::reduce_canonical(E);
    } catch (const exmat::PatternViolation& e) {
        CHECK(e.residual() > 1e-3);
    }

    // Degenerate top cluster (repeated sigma_1) is out of scope.
    CHECK_THROWS_AS(exmat::reduce_canonical(ComplexMatrix::identity(2) * cplx(2, 0)),
                    exmat::NotSupported);
}

TEST_CASE("orthogonality_defect separates block instances from generic ones") {
    const auto E = exmat::construct_block(exmat::random_block_spec(3, 31));
    CHECK(exmat::orthogonality_defect(E) <= 1e-9);
    ComplexMatrix G(2, 2, {cplx(0.2, 0), cplx(2, 0), cplx(0, 0), cplx(0.2, 0)});
    CHECK(exmat::orthogonality_defect(G) > 1e-3);
}

TEST_CASE("positivity_check stays within 1 on block instances") {
    const auto E = exmat::construct_block(exmat::random_block_spec(3, 32));
    std::vector<exmat::SampleFunction> samples;
    samples.emplace_back(exmat::make_blaschke(0.4, {cplx(0.5, 0.2)}));
    samples.emplace_back(exmat::make_blaschke(2.0, {cplx(-0.3, 0.1), cplx(0.6, 0)}));
    samples.emplace_back(exmat::make_gt(1.0, exmat::make_blaschke(0.0, {cplx(0.2, 0.2)})));
    const auto r = exmat::positivity_check(E, samples);
    CHECK(r.maxModulus <= 1.0 + 1e-9);
}
