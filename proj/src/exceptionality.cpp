#include "exmat/exceptionality.hpp"

#include <cmath>
#include <string>

#include "exmat/decomp.hpp"
#include "exmat/errors.hpp"

namespace exmat {

ExceptionalityVerdict check_exceptional(const ComplexMatrix& E, const SearchBudget& budget,
                                        const Tolerances& tol) {
    if (!E.square()) throw InvalidInput("check_exceptional: matrix must be square");
    E.require_finite("check_exceptional");
    const std::size_t n = E.rows();

    ExceptionalityVerdict v;
    const Spectrum sp = spectrum(E);
    v.margins.spectralRadius = sp.spectralRadius;
    v.margins.operatorNorm = operator_norm(E);

    if (sp.spectralRadius >= 1.0 - tol.specMargin) {
        v.status = VerdictStatus::notApplicable;
        v.reason = VerdictReason::spectrumNotInDisk;
        return v;
    }
    if (v.margins.operatorNorm <= 1.0 + tol.certMargin) {
        // Covers N = 1 as well: |e| < 1 forces ||E|| < 1.
        v.status = VerdictStatus::notApplicable;
        v.reason = VerdictReason::normAtMostOne;
        return v;
    }

    if (n == 2 && std::abs(E.trace()) <= tol.traceTol) {
        v.status = VerdictStatus::exceptionalUpToBudget;
        v.reason = VerdictReason::traceZeroExact2x2;
        return v;
    }

    const ExtremalResult search = extremal_search(E, budget, tol);
    v.margins.bestSearchNorm = search.bestNorm;
    if (search.bestNorm > v.margins.operatorNorm * (1.0 + tol.certMargin)) {
        v.status = VerdictStatus::certifiedNotExceptional;
        v.reason = VerdictReason::blaschkeWitness;
        v.witness = search.best;
        v.witnessNorm = search.bestNorm;
        return v;
    }
    v.status = VerdictStatus::exceptionalUpToBudget;
    v.reason = VerdictReason::searchExhausted;
    if (n == 2) v.inconsistent = true;  // a 2x2 with nonzero trace must have a witness
    return v;
}

CanonicalForm reduce_canonical(const ComplexMatrix& E, const Tolerances& tol) {
    if (!E.square()) throw InvalidInput("reduce_canonical: matrix must be square");
    E.require_finite("reduce_canonical");
    const std::size_t n = E.rows();
    if (n < 2) throw NotSupported("reduce_canonical requires N >= 2");

    const SingularData sd = singular_data(E, tol.clusterTol);
    const double a = sd.values[0];
    if (!(a > 0)) throw PreconditionViolation("reduce_canonical requires ||E|| > 0");
    if (sd.topClusterDim > 1)
        throw NotSupported("reduce_canonical: degenerate norming cluster of dimension " +
                           std::to_string(sd.topClusterDim));

    const std::vector<cplx> y1 = sd.right_vector(0);
    std::vector<cplx> yN = E.apply(y1);
    for (cplx& z : yN) z /= a;  // y_N = E y_1 / ||E||, so <E y_1, y_N> = a > 0

    // Complete {y_1, y_N} to an orthonormal basis: repeatedly take the
    // standard basis vector with the largest residual after projection.
    std::vector<std::vector<cplx>> basis{y1, yN};
    while (basis.size() < n) {
        std::vector<cplx> best;
        double bestNorm = -1;
        for (std::size_t e = 0; e < n; ++e) {
            std::vector<cplx> v(n);
            v[e] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& b : basis) {
                    const cplx proj = vec_dot(b, v);
                    for (std::size_t i = 0; i < n; ++i) v[i] -= proj * b[i];
                }
            }
            const double nv = vec_norm(v);
            if (nv > bestNorm) {
                bestNorm = nv;
                best = std::move(v);
            }
        }
        for (cplx& z : best) z /= bestNorm;
        basis.push_back(std::move(best));
    }

    // Column order (y_1, y_2, ..., y_{N-1}, y_N).
    CanonicalForm cf;
    cf.U = ComplexMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        cf.U(i, 0) = basis[0][i];
        cf.U(i, n - 1) = basis[1][i];
        for (std::size_t j = 1; j + 1 < n; ++j) cf.U(i, j) = basis[j + 1][i];
    }
    cf.B = cf.U.adjoint() * E * cf.U;
    cf.a = a;

    cf.residual = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        cf.residual = std::max(cf.residual, std::abs(cf.B(i, 0)));
    for (std::size_t j = 1; j < n; ++j)
        cf.residual = std::max(cf.residual, std::abs(cf.B(n - 1, j)));

    cf.Ablock = ComplexMatrix(n - 1, n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 1; j < n; ++j) cf.Ablock(i, j - 1) = cf.B(i, j);

    if (cf.residual > tol.canonTolRel * a)
        throw PatternViolation("reduce_canonical: bordered zero pattern violated (residual " +
                                   std::to_string(cf.residual) + "); the matrix is not exceptional",
                               cf.residual);
    return cf;
}

double orthogonality_defect(const ComplexMatrix& E, const Tolerances& tol) {
    if (!E.square()) throw InvalidInput("orthogonality_defect: matrix must be square");
    E.require_finite("orthogonality_defect");
    const SingularData sd = singular_data(E, tol.clusterTol);
    const double a = sd.values[0];
    if (!(a > 0)) throw PreconditionViolation("orthogonality_defect requires ||E|| > 0");
    double worst = 0.0;
    for (std::size_t j = 0; j < sd.topClusterDim; ++j) {
        const std::vector<cplx> x = sd.right_vector(j);
        const std::vector<cplx> Ex = E.apply(x);
        worst = std::max(worst, std::abs(vec_dot(x, Ex)) / a);
    }
    return worst;
}

PositivityResult positivity_check(const ComplexMatrix& E,
                                  const std::vector<SampleFunction>& samples,
                                  const Tolerances& tol) {
    if (!E.square()) throw InvalidInput("positivity_check: matrix must be square");
    E.require_finite("positivity_check");
    detail::require_spectrum_in_disk(E, tol, "positivity_check");
    const SingularData sd = singular_data(E, tol.clusterTol);
    if (sd.topClusterDim > 1)
        throw NotSupported("positivity_check: degenerate norming cluster of dimension " +
                           std::to_string(sd.topClusterDim));

    PositivityResult r;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        ComplexMatrix H = std::holds_alternative<BlaschkeProduct>(samples[s])
                              ? blaschke_matrix(std::get<BlaschkeProduct>(samples[s]), E, tol)
                              : gt_matrix(std::get<GtFunction>(samples[s]), E, tol);
        for (std::size_t j = 0; j < sd.topClusterDim; ++j) {
            const std::vector<cplx> x = sd.right_vector(j);
            const double v = std::abs(vec_dot(x, H.apply(x)));
            if (v > r.maxModulus) {
                r.maxModulus = v;
                r.worstSample = s;
            }
        }
    }
    return r;
}

}  // namespace exmat
