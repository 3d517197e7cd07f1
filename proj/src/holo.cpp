#include "exmat/holo.hpp"

#include <cmath>

#include "exmat/decomp.hpp"
#include "exmat/errors.hpp"

namespace exmat {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

BlaschkeProduct make_blaschke(double phase, std::vector<cplx> zeros, const Tolerances& tol) {
    if (!std::isfinite(phase)) throw InvalidInput("Blaschke phase must be finite");
    for (const cplx& w : zeros) {
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
            throw InvalidInput("Blaschke zero must be finite");
        if (std::abs(w) > 1.0 - tol.boundaryMargin)
            throw InvalidInput("Blaschke zero violates |w| <= 1 - boundaryMargin");
    }
    double p = std::fmod(phase, kTwoPi);
    if (p < 0) p += kTwoPi;
    return BlaschkeProduct{p, std::move(zeros)};
}

GtFunction make_gt(double t, BlaschkeProduct inner) {
    if (!(t > 0) || !std::isfinite(t)) throw InvalidInput("g_t requires t > 0");
    return GtFunction{t, std::move(inner)};
}

cplx mobius_scalar(cplx w, cplx z) {
    if (std::abs(w) >= 1.0) throw InvalidInput("mobius_scalar: |w| must be < 1");
    return (z - w) / (1.0 - std::conj(w) * z);
}

cplx blaschke_scalar(const BlaschkeProduct& b, cplx z) {
    cplx r = std::polar(1.0, b.phase);
    for (const cplx& w : b.zeros) r *= mobius_scalar(w, z);
    return r;
}

cplx gt_scalar(const GtFunction& g, cplx z) {
    return z * std::exp(-g.t * (1.0 - blaschke_scalar(g.inner, z)));
}

namespace detail {

void require_spectrum_in_disk(const ComplexMatrix& E, const Tolerances& tol, const char* what) {
    const double rho = spectrum(E).spectralRadius;
    if (rho >= 1.0 - tol.specMargin)
        throw PreconditionViolation(std::string(what) +
                                    ": spectral radius " + std::to_string(rho) +
                                    " is not strictly inside the unit disk");
}

ComplexMatrix mobius_matrix_unchecked(cplx w, const ComplexMatrix& E) {
    const std::size_t n = E.rows();
    if (w == cplx{}) return E;
    ComplexMatrix num = E;
    ComplexMatrix den = ComplexMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) num(i, i) -= w;
    const cplx wc = std::conj(w);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) den(i, j) -= wc * E(i, j);
    // (E - wI)(I - conj(w)E)^{-1}; both factors are rational in E and commute,
    // so solve from the right via the transposed system.
    return lu_solve(den.transpose(), num.transpose()).transpose();
}

ComplexMatrix blaschke_matrix_unchecked(const BlaschkeProduct& b, const ComplexMatrix& E) {
    ComplexMatrix r = ComplexMatrix::identity(E.rows()) * std::polar(1.0, b.phase);
    for (const cplx& w : b.zeros) r = r * mobius_matrix_unchecked(w, E);
    return r;
}

}  // namespace detail

ComplexMatrix mobius_matrix(cplx w, const ComplexMatrix& E, const Tolerances& tol) {
    if (std::abs(w) >= 1.0) throw InvalidInput("mobius_matrix: |w| must be < 1");
    if (!E.square()) throw InvalidInput("mobius_matrix: matrix must be square");
    E.require_finite("mobius_matrix");
    detail::require_spectrum_in_disk(E, tol, "mobius_matrix");
    return detail::mobius_matrix_unchecked(w, E);
}

ComplexMatrix blaschke_matrix(const BlaschkeProduct& b, const ComplexMatrix& E,
                              const Tolerances& tol) {
    if (!E.square()) throw InvalidInput("blaschke_matrix: matrix must be square");
    E.require_finite("blaschke_matrix");
    detail::require_spectrum_in_disk(E, tol, "blaschke_matrix");
    return detail::blaschke_matrix_unchecked(b, E);
}

ComplexMatrix gt_matrix(const GtFunction& g, const ComplexMatrix& E, const Tolerances& tol) {
    if (!(g.t > 0)) throw InvalidInput("gt_matrix: t must be > 0");
    if (!E.square()) throw InvalidInput("gt_matrix: matrix must be square");
    E.require_finite("gt_matrix");
    detail::require_spectrum_in_disk(E, tol, "gt_matrix");
    const std::size_t n = E.rows();
    ComplexMatrix H = detail::blaschke_matrix_unchecked(g.inner, E);
    // -t (I - h(E))
    ComplexMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            A(i, j) = -g.t * ((i == j ? cplx{1.0} : cplx{}) - H(i, j));
    return E * matrix_exp(A);
}

ComplexMatrix matrix_exp(const ComplexMatrix& A) {
    if (!A.square()) throw InvalidInput("matrix_exp: matrix must be square");
    A.require_finite("matrix_exp");
    const std::size_t n = A.rows();
    // 1-norm for the scaling decision.
    double nrm = 0;
    for (std::size_t j = 0; j < n; ++j) {
        double c = 0;
        for (std::size_t i = 0; i < n; ++i) c += std::abs(A(i, j));
        nrm = std::max(nrm, c);
    }
    int squarings = 0;
    const double theta13 = 5.371920351148152;
    if (nrm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    }
    const double scale = std::ldexp(1.0, -squarings);
    ComplexMatrix As = A * cplx(scale);

    static const double b[14] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};

    const ComplexMatrix I = ComplexMatrix::identity(n);
    const ComplexMatrix A2 = As * As;
    const ComplexMatrix A4 = A2 * A2;
    const ComplexMatrix A6 = A2 * A4;

    ComplexMatrix U = As * (A6 * (A6 * cplx(b[13]) + A4 * cplx(b[11]) + A2 * cplx(b[9])) +
                            A6 * cplx(b[7]) + A4 * cplx(b[5]) + A2 * cplx(b[3]) + I * cplx(b[1]));
    ComplexMatrix V = A6 * (A6 * cplx(b[12]) + A4 * cplx(b[10]) + A2 * cplx(b[8])) +
                      A6 * cplx(b[6]) + A4 * cplx(b[4]) + A2 * cplx(b[2]) + I * cplx(b[0]);

    ComplexMatrix R = lu_solve(V - U, V + U);
    for (int s = 0; s < squarings; ++s) R = R * R;
    return R;
}

}  // namespace exmat
