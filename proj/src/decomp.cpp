#include "exmat/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "exmat/errors.hpp"
#include "exmat/rng.hpp"

namespace exmat {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_size(const ComplexMatrix& E, const char* what) {
    if (E.rows() > kMaxDim || E.cols() > kMaxDim)
        throw InvalidInput(std::string(what) + ": dimension exceeds the documented cap of 16");
}

// One sweep of one-sided Jacobi on the columns of W, optionally accumulating
// the applied rotations into V (right factor). Returns the largest relative
// off-diagonal coupling seen.
double jacobi_sweep(ComplexMatrix& W, ComplexMatrix* V) {
    const std::size_t n = W.cols();
    const std::size_t m = W.rows();
    double worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            double a = 0, b = 0;
            cplx c{};
            for (std::size_t i = 0; i < m; ++i) {
                a += std::norm(W(i, p));
                b += std::norm(W(i, q));
                c += std::conj(W(i, p)) * W(i, q);
            }
            const double ac = std::abs(c);
            if (a == 0 || b == 0) continue;
            const double rel = ac / std::sqrt(a * b);
            worst = std::max(worst, rel);
            if (rel <= 1e-16) continue;
            // Strip the phase of the coupling, then a real Jacobi rotation.
            const cplx ph = c / ac;
            const double zeta = (b - a) / (2.0 * ac);
            const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
            const double cs = 1.0 / std::sqrt(1.0 + t * t);
            const double sn = t * cs;
            const cplx sph = sn * ph;          // applied on the q side
            const cplx sphc = sn * std::conj(ph);
            for (std::size_t i = 0; i < m; ++i) {
                const cplx wp = W(i, p), wq = W(i, q);
                W(i, p) = cs * wp - sphc * wq;
                W(i, q) = sph * wp + cs * wq;
            }
            if (V) {
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vp = (*V)(i, p), vq = (*V)(i, q);
                    (*V)(i, p) = cs * vp - sphc * vq;
                    (*V)(i, q) = sph * vp + cs * vq;
                }
            }
        }
    }
    return worst;
}

void jacobi_orthogonalize(ComplexMatrix& W, ComplexMatrix* V) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        if (jacobi_sweep(W, V) <= 4 * kEps) return;
    }
    throw NumericalFailure("one-sided Jacobi SVD did not converge in 64 sweeps");
}

// Complex Givens rotation [c, s; -conj(s), c] mapping (f, g) to (r, 0).
struct Givens {
    double c;
    cplx s;
};

Givens make_givens(cplx f, cplx g) {
    const double ag = std::abs(g);
    if (ag == 0) return {1.0, cplx{}};
    const double af = std::abs(f);
    const double d = std::hypot(af, ag);
    if (af == 0) return {0.0, std::conj(g) / ag * (ag / d)};
    const cplx fu = f / af;
    return {af / d, fu * std::conj(g) / d};
}

void rot_rows(ComplexMatrix& M, std::size_t k, std::size_t l, const Givens& g,
              std::size_t j0, std::size_t j1) {
    for (std::size_t j = j0; j < j1; ++j) {
        const cplx x = M(k, j), y = M(l, j);
        M(k, j) = g.c * x + g.s * y;
        M(l, j) = -std::conj(g.s) * x + g.c * y;
    }
}

// M <- M * G^H (columns k, l).
void rot_cols_adj(ComplexMatrix& M, std::size_t k, std::size_t l, const Givens& g,
                  std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
        const cplx x = M(i, k), y = M(i, l);
        M(i, k) = g.c * x + std::conj(g.s) * y;
        M(i, l) = -g.s * x + g.c * y;
    }
}

// Eigenvalue of [[a,b],[c,d]] closest to d (Wilkinson shift).
cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
    const cplx tr = a + d;
    const cplx det = a * d - b * c;
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    const cplx l1 = 0.5 * (tr + disc);
    const cplx l2 = 0.5 * (tr - disc);
    return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

std::vector<cplx> SingularData::right_vector(std::size_t j) const {
    std::vector<cplx> v(rightVectors.rows());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = rightVectors(i, j);
    return v;
}

std::vector<cplx> SingularData::left_vector(std::size_t j) const {
    std::vector<cplx> v(leftVectors.rows());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = leftVectors(i, j);
    return v;
}

double operator_norm(const ComplexMatrix& E) {
    E.require_finite("operator_norm");
    check_size(E, "operator_norm");
    // Orthogonalize columns; the largest column norm is sigma_1. Work on the
    // orientation with fewer columns.
    ComplexMatrix W = (E.cols() <= E.rows()) ? E : E.adjoint();
    jacobi_orthogonalize(W, nullptr);
    double best = 0.0;
    for (std::size_t j = 0; j < W.cols(); ++j) {
        double s = 0;
        for (std::size_t i = 0; i < W.rows(); ++i) s += std::norm(W(i, j));
        best = std::max(best, s);
    }
    return std::sqrt(best);
}

SingularData singular_data(const ComplexMatrix& E, double clusterTol) {
    E.require_finite("singular_data");
    if (!E.square()) throw InvalidInput("singular_data: matrix must be square");
    check_size(E, "singular_data");
    if (clusterTol < 0) throw InvalidInput("singular_data: clusterTol must be non-negative");
    const std::size_t n = E.rows();

    ComplexMatrix W = E;
    ComplexMatrix V = ComplexMatrix::identity(n);
    jacobi_orthogonalize(W, &V);

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += std::norm(W(i, j));
        sigma[j] = std::sqrt(s);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SingularData sd;
    sd.values.resize(n);
    sd.leftVectors = ComplexMatrix(n, n);
    sd.rightVectors = ComplexMatrix(n, n);
    sd.clusterTol = clusterTol;

    const double s1 = sigma[order[0]];
    for (std::size_t jj = 0; jj < n; ++jj) {
        const std::size_t j = order[jj];
        sd.values[jj] = sigma[j];
        for (std::size_t i = 0; i < n; ++i) sd.rightVectors(i, jj) = V(i, j);
        if (sigma[j] > s1 * 1e-14 && sigma[j] > 0) {
            for (std::size_t i = 0; i < n; ++i) sd.leftVectors(i, jj) = W(i, j) / sigma[j];
        }
    }
    // Complete left vectors for (numerically) zero singular values.
    for (std::size_t jj = 0; jj < n; ++jj) {
        bool zero = true;
        for (std::size_t i = 0; i < n; ++i)
            if (sd.leftVectors(i, jj) != cplx{}) { zero = false; break; }
        if (!zero) continue;
        // Pick the standard basis vector with the largest residual after
        // projecting out the existing columns, twice-orthogonalized.
        std::vector<cplx> best;
        double bestNorm = -1;
        for (std::size_t e = 0; e < n; ++e) {
            std::vector<cplx> v(n);
            v[e] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == jj) continue;
                    cplx proj{};
                    bool empty = true;
                    for (std::size_t i = 0; i < n; ++i) {
                        if (sd.leftVectors(i, k) != cplx{}) empty = false;
                        proj += std::conj(sd.leftVectors(i, k)) * v[i];
                    }
                    if (empty) continue;
                    for (std::size_t i = 0; i < n; ++i) v[i] -= proj * sd.leftVectors(i, k);
                }
            }
            const double nv = vec_norm(v);
            if (nv > bestNorm) {
                bestNorm = nv;
                best = std::move(v);
            }
        }
        for (std::size_t i = 0; i < n; ++i) sd.leftVectors(i, jj) = best[i] / bestNorm;
    }

    sd.topClusterDim = 1;
    while (sd.topClusterDim < n &&
           sd.values[0] - sd.values[sd.topClusterDim] <= clusterTol * sd.values[0])
        ++sd.topClusterDim;
    return sd;
}

std::pair<ComplexMatrix, ComplexMatrix> schur_form(const ComplexMatrix& E) {
    E.require_finite("schur_form");
    if (!E.square()) throw InvalidInput("schur_form: matrix must be square");
    check_size(E, "schur_form");
    const std::size_t n = E.rows();

    ComplexMatrix H = E;
    ComplexMatrix U = ComplexMatrix::identity(n);

    // Hessenberg reduction by Givens rotations.
    for (std::size_t k = 0; k + 2 < n; ++k) {
        for (std::size_t i = k + 2; i < n; ++i) {
            if (std::abs(H(i, k)) == 0) continue;
            const Givens g = make_givens(H(k + 1, k), H(i, k));
            rot_rows(H, k + 1, i, g, 0, n);
            rot_cols_adj(H, k + 1, i, g, 0, n);
            rot_cols_adj(U, k + 1, i, g, 0, n);
            H(i, k) = 0.0;
        }
    }

    // Shifted QR with deflation.
    const double scale = std::max(H.max_abs(), 1e-300);
    std::size_t hi = n;  // active block is [lo, hi)
    long iters = 0;
    const long maxIters = 60 * static_cast<long>(n) + 100;
    while (hi > 1) {
        // Deflate converged subdiagonal entries.
        std::size_t lo = hi - 1;
        while (lo > 0) {
            const double off = std::abs(H(lo, lo - 1));
            if (off <= kEps * (std::abs(H(lo - 1, lo - 1)) + std::abs(H(lo, lo)) + kEps * scale)) {
                H(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi - 1) {
            --hi;
            continue;
        }
        if (++iters > maxIters)
            throw NumericalFailure("Schur QR iteration exceeded its budget without converging");

        cplx sigma = wilkinson_shift(H(hi - 2, hi - 2), H(hi - 2, hi - 1),
                                     H(hi - 1, hi - 2), H(hi - 1, hi - 1));
        // Occasional exceptional shift to break symmetry stalls.
        if (iters % 16 == 0) sigma += cplx(0.7, 0.3) * std::abs(H(hi - 1, hi - 2));

        // Explicit shifted QR step on the active Hessenberg block.
        for (std::size_t k = lo; k < hi; ++k) H(k, k) -= sigma;
        std::vector<Givens> rots;
        rots.reserve(hi - lo);
        for (std::size_t k = lo; k + 1 < hi; ++k) {
            const Givens g = make_givens(H(k, k), H(k + 1, k));
            rot_rows(H, k, k + 1, g, k, n);
            H(k + 1, k) = 0.0;
            rots.push_back(g);
        }
        for (std::size_t k = lo; k + 1 < hi; ++k) {
            const Givens& g = rots[k - lo];
            rot_cols_adj(H, k, k + 1, g, 0, std::min(k + 2, hi));
            rot_cols_adj(U, k, k + 1, g, 0, n);
        }
        for (std::size_t k = lo; k < hi; ++k) H(k, k) += sigma;
    }

    // Clean the strictly lower part.
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) H(i, j) = 0.0;
    return {U, H};
}

Spectrum spectrum(const ComplexMatrix& E) {
    auto [U, T] = schur_form(E);
    (void)U;
    Spectrum s;
    s.eigenvalues.resize(E.rows());
    for (std::size_t i = 0; i < E.rows(); ++i) {
        s.eigenvalues[i] = T(i, i);
        s.spectralRadius = std::max(s.spectralRadius, std::abs(T(i, i)));
    }
    return s;
}

ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw InvalidInput("random_unitary: n must be >= 1");
    if (n > kMaxDim) throw InvalidInput("random_unitary: dimension exceeds the documented cap of 16");
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    ComplexMatrix G(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) G(i, j) = rng.cnormal();

    // Modified Gram-Schmidt, run twice, with the R diagonal phase folded in
    // so the distribution is Haar.
    ComplexMatrix Q = G;
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                cplx proj{};
                for (std::size_t i = 0; i < n; ++i) proj += std::conj(Q(i, k)) * Q(i, j);
                for (std::size_t i = 0; i < n; ++i) Q(i, j) -= proj * Q(i, k);
            }
        }
        cplx diag{};
        for (std::size_t i = 0; i < n; ++i) diag += std::conj(Q(i, j)) * G(i, j);
        double nrm = 0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(Q(i, j));
        nrm = std::sqrt(nrm);
        const cplx phase = (std::abs(diag) > 0) ? diag / std::abs(diag) : cplx(1.0);
        for (std::size_t i = 0; i < n; ++i) Q(i, j) *= phase / nrm;
    }
    return Q;
}

ComplexMatrix lu_solve(const ComplexMatrix& A, const ComplexMatrix& B) {
    if (!A.square()) throw InvalidInput("lu_solve: coefficient matrix must be square");
    if (A.rows() != B.rows()) throw InvalidInput("lu_solve: shape mismatch");
    check_size(A, "lu_solve");
    const std::size_t n = A.rows();
    ComplexMatrix L = A;
    ComplexMatrix X = B;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(L(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(L(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0) throw NumericalFailure("lu_solve: singular system");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(L(k, j), L(piv, j));
            for (std::size_t j = 0; j < X.cols(); ++j) std::swap(X(k, j), X(piv, j));
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = L(i, k) / L(k, k);
            if (f == cplx{}) continue;
            L(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) L(i, j) -= f * L(k, j);
            for (std::size_t j = 0; j < X.cols(); ++j) X(i, j) -= f * X(k, j);
        }
    }
    for (std::size_t kk = n; kk-- > 0;) {
        for (std::size_t j = 0; j < X.cols(); ++j) {
            cplx s = X(kk, j);
            for (std::size_t i = kk + 1; i < n; ++i) s -= L(kk, i) * X(i, j);
            X(kk, j) = s / L(kk, kk);
        }
    }
    return X;
}

double eigenvalue_match_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw InvalidInput("eigenvalue_match_distance: size mismatch");
    const int n = static_cast<int>(a.size());
    if (n == 0) return 0.0;
    // Hungarian algorithm with potentials, O(n^3).
    const double INF = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1), v(n + 1);
    std::vector<int> p(n + 1), way(n + 1);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, INF);
        std::vector<char> used(n + 1, false);
        do {
            used[j0] = true;
            const int i0 = p[j0];
            double delta = INF;
            int j1 = -1;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = std::abs(a[i0 - 1] - b[j - 1]) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    double worst = 0.0;
    for (int j = 1; j <= n; ++j) worst = std::max(worst, std::abs(a[p[j] - 1] - b[j - 1]));
    return worst;
}

}  // namespace exmat
