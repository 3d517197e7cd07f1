#include "exmat/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "exmat/decomp.hpp"
#include "exmat/errors.hpp"
#include "exmat/rng.hpp"

namespace exmat {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Cheap lower bound on sigma_1(M): a few power iterations on M*M from a
// fixed start, reported as ||M v|| for the final unit v.
double screen_norm(const ComplexMatrix& M) {
    const std::size_t n = M.rows();
    std::vector<cplx> v(n, cplx(1.0 / std::sqrt(static_cast<double>(n))));
    for (int it = 0; it < 6; ++it) {
        std::vector<cplx> w = M.apply_adjoint(M.apply(v));
        const double nw = vec_norm(w);
        if (nw == 0) return 0.0;
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
    }
    return vec_norm(M.apply(v));
}

struct Candidate {
    double screen = -1.0;
    std::vector<cplx> zeros;
    std::uint64_t order = 0;  // enumeration index, deterministic tie-break
};

// Fixed-capacity top-K by (screen desc, order asc).
class TopK {
public:
    explicit TopK(std::size_t k) : k_(k) {}

    void offer(double screen, const std::vector<cplx>& zeros, std::uint64_t order) {
        if (items_.size() == k_ && !better(screen, order, items_.back())) return;
        Candidate c{screen, zeros, order};
        auto pos = std::lower_bound(items_.begin(), items_.end(), c,
                                    [](const Candidate& x, const Candidate& y) {
                                        return x.screen > y.screen ||
                                               (x.screen == y.screen && x.order < y.order);
                                    });
        items_.insert(pos, std::move(c));
        if (items_.size() > k_) items_.pop_back();
    }

    const std::vector<Candidate>& items() const { return items_; }

private:
    static bool better(double screen, std::uint64_t order, const Candidate& worst) {
        return screen > worst.screen || (screen == worst.screen && order < worst.order);
    }
    std::size_t k_;
    std::vector<Candidate> items_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = seed + 0x9e3779b97f4a7c15ull * (a + 1) + 0xbf58476d1ce4e5b9ull * (b + 1);
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebull;
    h ^= h >> 31;
    return h;
}

// Nelder-Mead on f: R^dim -> R (minimization). Returns true if it converged
// before the iteration cap.
bool nelder_mead(std::function<double(const std::vector<double>&)> f,
                 std::vector<double>& x, int maxIters, double tol) {
    const std::size_t dim = x.size();
    std::vector<std::vector<double>> simplex(dim + 1, x);
    std::vector<double> fx(dim + 1);
    for (std::size_t i = 0; i < dim; ++i) {
        const double step = (i < dim / 2) ? 0.05 : 0.1;  // radial vs angular coordinates
        simplex[i + 1][i] += (simplex[i + 1][i] > 0.5 && i < dim / 2) ? -step : step;
    }
    for (std::size_t i = 0; i <= dim; ++i) fx[i] = f(simplex[i]);

    auto order = [&]() {
        std::vector<std::size_t> idx(dim + 1);
        for (std::size_t i = 0; i <= dim; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
        std::vector<std::vector<double>> s2(dim + 1);
        std::vector<double> f2(dim + 1);
        for (std::size_t i = 0; i <= dim; ++i) {
            s2[i] = simplex[idx[i]];
            f2[i] = fx[idx[i]];
        }
        simplex.swap(s2);
        fx.swap(f2);
    };

    bool converged = false;
    for (int iter = 0; iter < maxIters; ++iter) {
        order();
        if (std::abs(fx[dim] - fx[0]) <= tol * (1.0 + std::abs(fx[0]))) {
            converged = true;
            break;
        }
        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j] / dim;

        auto blend = [&](double coef) {
            std::vector<double> p(dim);
            for (std::size_t j = 0; j < dim; ++j)
                p[j] = centroid[j] + coef * (centroid[j] - simplex[dim][j]);
            return p;
        };

        std::vector<double> xr = blend(1.0);
        const double fr = f(xr);
        if (fr < fx[0]) {
            std::vector<double> xe = blend(2.0);
            const double fe = f(xe);
            if (fe < fr) {
                simplex[dim] = std::move(xe);
                fx[dim] = fe;
            } else {
                simplex[dim] = std::move(xr);
                fx[dim] = fr;
            }
        } else if (fr < fx[dim - 1]) {
            simplex[dim] = std::move(xr);
            fx[dim] = fr;
        } else {
            std::vector<double> xc = blend(fr < fx[dim] ? 0.5 : -0.5);
            const double fc = f(xc);
            if (fc < std::min(fr, fx[dim])) {
                simplex[dim] = std::move(xc);
                fx[dim] = fc;
            } else {
                for (std::size_t i = 1; i <= dim; ++i) {
                    for (std::size_t j = 0; j < dim; ++j)
                        simplex[i][j] = 0.5 * (simplex[i][j] + simplex[0][j]);
                    fx[i] = f(simplex[i]);
                }
            }
        }
    }
    order();
    x = simplex[0];
    return converged;
}

}  // namespace

namespace {
// std::polar can land a hair outside |w| = r because of cos/sin rounding;
// rescale so the admissibility check in norm_objective is never tripped by
// points generated on the boundary circle itself.
cplx polar_in_disk(double r, double phi, double rmax) {
    cplx w = std::polar(r, phi);
    const double m = std::abs(w);
    if (m > rmax) w *= rmax / m;
    return w;
}
}  // namespace

double norm_objective(const ComplexMatrix& E, const std::vector<cplx>& zeros,
                      const Tolerances& tol) {
    const double rmax = 1.0 - tol.boundaryMargin;
    for (const cplx& w : zeros) {
        if (!(std::abs(w) <= rmax))
            throw InvalidInput("norm_objective: zero violates |w| <= 1 - boundaryMargin");
    }
    ComplexMatrix M = ComplexMatrix::identity(E.rows());
    for (const cplx& w : zeros) M = M * detail::mobius_matrix_unchecked(w, E);
    return operator_norm(M);
}

ExtremalResult extremal_search(const ComplexMatrix& E, const SearchBudget& budget,
                               const Tolerances& tol) {
    if (!E.square()) throw InvalidInput("extremal_search: matrix must be square");
    E.require_finite("extremal_search");
    const std::size_t n = E.rows();
    if (n > kMaxDim) throw InvalidInput("extremal_search: dimension exceeds the cap of 16");
    if (budget.gridResolution < 1 || budget.multistarts < 1 || budget.localIters < 1)
        throw InvalidInput("extremal_search: budget counts must be >= 1");

    const int dMaxAllowed = static_cast<int>(n) - 1;
    const int dLo = budget.degreeMin;
    const int dHi = (budget.degreeMax < 0) ? dMaxAllowed : budget.degreeMax;
    if (dLo < 0 || dHi > dMaxAllowed || dLo > dHi)
        throw InvalidInput("extremal_search: degree range must lie within [0, N-1]");

    detail::require_spectrum_in_disk(E, tol, "extremal_search");

    const double rmax = 1.0 - tol.boundaryMargin;
    ExtremalResult result;
    long evals = 0;

    for (int d = dLo; d <= dHi; ++d) {
        DegreeBest db;
        db.norm = -1.0;
        auto consider = [&](const std::vector<cplx>& zeros) {
            const double v = norm_objective(E, zeros, tol);
            ++evals;
            if (v > db.norm) {
                db.norm = v;
                db.product = BlaschkeProduct{0.0, zeros};
            }
            return v;
        };

        if (d == 0) {
            consider({});
            result.perDegree.emplace(d, db);
            continue;
        }

        // b(z) = z^d is always a candidate; in particular degree 1 with w = 0
        // evaluates ||E|| itself.
        consider(std::vector<cplx>(d, cplx{}));

        TopK top(static_cast<std::size_t>(budget.multistarts));

        int radial = budget.gridResolution;
        if (d == 3) radial /= (n > 4) ? 4 : 2;
        if (d >= 4) radial = 0;

        if (radial >= 1) {
            // Polar product grid; factor order is irrelevant, so enumerate
            // multisets of per-zero grid points with shared prefix products.
            const int angular = std::max(1, (4 * radial) / 3);
            std::vector<cplx> points;
            points.push_back(cplx{});
            for (int k = 1; k <= radial; ++k) {
                const double r = rmax * static_cast<double>(k) / radial;
                for (int j = 0; j < angular; ++j)
                    points.push_back(polar_in_disk(r, kTwoPi * j / angular, rmax));
            }
            std::vector<ComplexMatrix> factors;
            factors.reserve(points.size());
            for (const cplx& w : points) factors.push_back(detail::mobius_matrix_unchecked(w, E));

            std::uint64_t order = 0;
            std::vector<std::size_t> idx(d);
            std::function<void(int, std::size_t, const ComplexMatrix&)> rec =
                [&](int depth, std::size_t from, const ComplexMatrix& prefix) {
                    for (std::size_t p = from; p < points.size(); ++p) {
                        idx[depth] = p;
                        const ComplexMatrix prod = prefix * factors[p];
                        if (depth + 1 == d) {
                            const double s = screen_norm(prod);
                            ++evals;
                            if (s > db.norm * 0.7) {  // skip hopeless regions cheaply
                                std::vector<cplx> zs(d);
                                for (int q = 0; q < d; ++q) zs[q] = points[idx[q]];
                                top.offer(s, zs, order);
                            }
                            ++order;
                        } else {
                            rec(depth + 1, p, prod);
                        }
                    }
                };
            rec(0, 0, ComplexMatrix::identity(n));
        } else {
            // Degrees without a grid default: seeded random sampling.
            const int samples = 125 * budget.gridResolution;
            Rng rng(mix_seed(budget.seed, static_cast<std::uint64_t>(d), 0xa5a5));
            for (int s = 0; s < samples; ++s) {
                std::vector<cplx> zs(d);
                ComplexMatrix prod = ComplexMatrix::identity(n);
                for (int q = 0; q < d; ++q) {
                    zs[q] = polar_in_disk(rmax * std::sqrt(rng.uniform()),
                                          rng.uniform(0.0, kTwoPi), rmax);
                    prod = prod * detail::mobius_matrix_unchecked(zs[q], E);
                }
                const double v = screen_norm(prod);
                ++evals;
                top.offer(v, zs, static_cast<std::uint64_t>(s));
            }
        }

        // Starts: best screened grid points plus seeded random points.
        std::vector<std::vector<cplx>> starts;
        const std::size_t fromGrid =
            std::min(top.items().size(), (static_cast<std::size_t>(budget.multistarts) + 1) / 2);
        for (std::size_t i = 0; i < fromGrid; ++i) starts.push_back(top.items()[i].zeros);
        while (starts.size() < static_cast<std::size_t>(budget.multistarts)) {
            Rng rng(mix_seed(budget.seed, static_cast<std::uint64_t>(d), starts.size()));
            std::vector<cplx> zs(d);
            for (int q = 0; q < d; ++q)
                zs[q] = polar_in_disk(rmax * std::sqrt(rng.uniform()),
                                      rng.uniform(0.0, kTwoPi), rmax);
            starts.push_back(std::move(zs));
        }

        for (const auto& start : starts) {
            std::vector<double> x(2 * d);
            for (int q = 0; q < d; ++q) {
                x[q] = std::abs(start[q]);
                x[d + q] = std::arg(start[q]);
            }
            auto objective = [&](const std::vector<double>& p) {
                std::vector<cplx> zs(d);
                for (int q = 0; q < d; ++q) {
                    const double r = std::clamp(p[q], 0.0, rmax);
                    zs[q] = polar_in_disk(r, p[d + q], rmax);
                }
                return -consider(zs);
            };
            if (!nelder_mead(objective, x, budget.localIters, 1e-13))
                result.budgetExhausted = true;
        }

        // Pin the reported value to a direct norm_objective call at the
        // reported zeros (reproducibility contract).
        db.norm = norm_objective(E, db.product.zeros, tol);
        result.perDegree.emplace(d, db);
    }

    result.evaluations = evals;
    result.bestNorm = -1.0;
    for (const auto& [d, db] : result.perDegree) {
        if (db.norm > result.bestNorm) {
            result.bestNorm = db.norm;
            result.best = db.product;
        }
    }
    return result;
}

}  // namespace exmat
