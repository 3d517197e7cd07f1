#include "exmat/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "exmat/constructors.hpp"
#include "exmat/decomp.hpp"
#include "exmat/errors.hpp"
#include "exmat/exceptionality.hpp"
#include "exmat/extremal.hpp"
#include "exmat/holo.hpp"
#include "exmat/json_io.hpp"
#include "exmat/rng.hpp"

namespace exmat {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = seed + 0x9e3779b97f4a7c15ull * (a + 0x51) + 0xff51afd7ed558ccdull * (b + 3);
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ull;
    h ^= h >> 33;
    return h;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Collector {
    std::vector<CriterionResult>* results;
    std::ostream* log;

    void add(int id, const std::string& name, bool passed, const std::string& detail) {
        results->push_back({id, name, passed, detail});
        if (log)
            *log << (passed ? "PASS" : "FAIL") << " criterion " << id << ": " << name
                 << (detail.empty() ? "" : " (" + detail + ")") << "\n"
                 << std::flush;
    }

    template <typename F>
    void guarded(int id, const std::string& name, F&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            add(id, name, false, std::string("exception: ") + e.what());
        }
    }
};

std::size_t scaled(double scale, std::size_t count) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(scale * count)));
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const SuiteOptions& opt, std::ostream* log) {
    std::vector<CriterionResult> results;
    Collector out{&results, log};
    const Tolerances tol;

    auto budget_for = [&](int cid, std::size_t i) {
        SearchBudget b;
        b.seed = mix(opt.seed, static_cast<std::uint64_t>(cid), i);
        return b;
    };

    std::vector<ComplexMatrix> passing;  // every matrix the checker passed (for crit. 7)
    std::vector<std::pair<ComplexMatrix, ExceptionalityVerdict>> certified;  // for crit. 11

    // --- 1. von Neumann bound on seeded contractions -------------------------
    out.guarded(1, "von Neumann bound on random contractions", [&] {
        static const std::size_t sizes[] = {2, 2, 3, 3, 4};
        const std::size_t count = scaled(opt.scale, 200);
        double worst = 0;
        std::size_t ok = 0;
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t n = sizes[i % 5];
            const ComplexMatrix E =
                random_test_matrix(RandomProfile::contraction, n, mix(opt.seed, 1, i));
            const ExtremalResult r = extremal_search(E, budget_for(1, i), tol);
            worst = std::max(worst, r.bestNorm);
            if (r.bestNorm <= 1.0 + 1e-9) ++ok;
        }
        out.add(1, "von Neumann bound on random contractions", ok == count,
                std::to_string(ok) + "/" + std::to_string(count) +
                    " within 1+1e-9; max bestNorm " + fmt(worst));
    });

    // --- 2. strict block construction is exceptional -------------------------
    std::vector<BlockSpec> specs;
    std::vector<ComplexMatrix> specMats;
    out.guarded(2, "strict bordered blocks pass the checker with ||E|| = a", [&] {
        static const std::size_t sizes[] = {2, 3, 4};
        const std::size_t count = scaled(opt.scale, 100);
        std::size_t ok = 0;
        double worstNormErr = 0, worstSearch = 0;
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t n = sizes[i % 3];
            const BlockSpec spec = random_block_spec(n, mix(opt.seed, 2, i));
            const ComplexMatrix E = construct_block(spec, tol);
            specs.push_back(spec);
            specMats.push_back(E);
            const ExceptionalityVerdict v = check_exceptional(E, budget_for(2, i), tol);
            const double normErr = std::abs(v.margins.operatorNorm - spec.a);
            const double searchNorm =
                v.margins.bestSearchNorm
                    ? *v.margins.bestSearchNorm
                    : extremal_search(E, budget_for(2, i), tol).bestNorm;
            worstNormErr = std::max(worstNormErr, normErr);
            worstSearch = std::max(worstSearch, searchNorm / spec.a);
            const bool good = v.status == VerdictStatus::exceptionalUpToBudget &&
                              normErr <= 1e-10 && searchNorm <= spec.a * (1.0 + 1e-6);
            if (good) {
                ++ok;
                passing.push_back(E);
            }
        }
        out.add(2, "strict bordered blocks pass the checker with ||E|| = a", ok == count,
                std::to_string(ok) + "/" + std::to_string(count) + "; max | ||E||-a | " +
                    fmt(worstNormErr) + ", max bestNorm/a " + fmt(worstSearch));
    });

    // --- 3. similarity factorization E = V J V^{-1} --------------------------
    out.guarded(3, "factorization residual and ||J|| <= 1", [&] {
        std::size_t ok = 0;
        double worstRes = 0;
        for (const BlockSpec& spec : specs) {
            const Factorization f = verify_factorization(spec, tol);
            worstRes = std::max(worstRes, f.residual / spec.a);
            const double nJ = operator_norm(f.J);
            if (f.residual < 1e-12 * spec.a && nJ <= 1.0 + 1e-12) ++ok;
        }
        out.add(3, "factorization residual and ||J|| <= 1", ok == specs.size(),
                std::to_string(ok) + "/" + std::to_string(specs.size()) +
                    "; max residual/a " + fmt(worstRes));
    });

    // --- 4. sharpness sweep: verdict flips exactly at |a*alpha| = 1 ----------
    out.guarded(4, "sharpness sweep at |a*alpha| = 1", [&] {
        const double a = 2.0;
        std::size_t ok = 0, total = 0;
        std::string flipNote;
        for (int k = 0; k <= 20; ++k) {
            const double alpha = 0.45 + 0.005 * k;
            ComplexMatrix E(2, 2);
            E(0, 1) = alpha;
            E(1, 0) = a;
            const ExceptionalityVerdict v = check_exceptional(E, budget_for(4, k), tol);
            ++total;
            // rho(E) = sqrt(a*alpha); spectrum leaves the disk as a*alpha crosses 1.
            const bool inDisk = a * alpha < 1.0 - 2 * tol.specMargin;
            const bool good =
                inDisk ? v.status == VerdictStatus::exceptionalUpToBudget
                       : (v.status == VerdictStatus::notApplicable &&
                          v.reason == VerdictReason::spectrumNotInDisk);
            if (good) ++ok;
            else flipNote += " alpha=" + fmt(alpha);
        }
        out.add(4, "sharpness sweep at |a*alpha| = 1", ok == total,
                std::to_string(ok) + "/" + std::to_string(total) + " verdicts match" + flipNote);
    });

    // --- 5. lastColZero blocks with 1/a < ||A|| < 1 --------------------------
    std::vector<ComplexMatrix> lastColMats;
    out.guarded(5, "lastColZero blocks beyond the strict bound pass", [&] {
        static const std::size_t sizes[] = {3, 4};
        const std::size_t count = scaled(opt.scale, 50);
        std::size_t ok = 0;
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t n = sizes[i % 2];
            Rng rng(mix(opt.seed, 5, i));
            const double a = rng.uniform(1.3, 3.0);
            const std::size_t m = n - 1;
            ComplexMatrix A(m, m);
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t c = 0; c + 1 < m; ++c) A(r, c) = rng.cnormal();
            const double nA = operator_norm(A);
            const double target = rng.uniform(1.0 / a + 0.03, 0.95);
            A = A * cplx(target / nA);
            const BlockSpec spec{a, A, BlockVariant::lastColZero};
            const ComplexMatrix E = construct_block(spec, tol);
            const ExceptionalityVerdict v = check_exceptional(E, budget_for(5, i), tol);
            if (v.status == VerdictStatus::exceptionalUpToBudget &&
                operator_norm(spec.A) > 1.0 / a) {
                ++ok;
                passing.push_back(E);
                lastColMats.push_back(E);
            }
        }
        out.add(5, "lastColZero blocks beyond the strict bound pass", ok == count,
                std::to_string(ok) + "/" + std::to_string(count));
    });

    // --- 6. new-from-old closure ---------------------------------------------
    out.guarded(6, "new-from-old transforms stay exceptional", [&] {
        // Pick the cheapest 50 criterion-2 fixtures (smallest dimension first).
        std::vector<std::size_t> order(specMats.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return specMats[x].rows() < specMats[y].rows();
        });
        const std::size_t count = std::min(scaled(opt.scale, 50), order.size());
        const ComplexMatrix F2 =
            construct_block(BlockSpec{2.0, ComplexMatrix(1, 1, {cplx(0.3)}), BlockVariant::strict});
        std::size_t ok = 0, total = 0;
        for (std::size_t ii = 0; ii < count; ++ii) {
            const ComplexMatrix& E = specMats[order[ii]];
            const std::size_t n = E.rows();
            Rng rng(mix(opt.seed, 6, ii));
            const ComplexMatrix F1 =
                random_test_matrix(RandomProfile::contraction, 1, mix(opt.seed, 66, ii));
            const ComplexMatrix variants[] = {
                transform_conjugate(E),
                transform_transpose(E),
                transform_adjoint(E),
                transform_unitary_conj(E, random_unitary(n, mix(opt.seed, 61, ii)), tol),
                transform_scalar_rotate(E, std::polar(1.0, rng.uniform(0.0, 6.28)), tol),
                transform_direct_sum(E, F2, DirectSumKind::exceptionalSummand, tol),
                transform_direct_sum(E, F1, DirectSumKind::strictContraction, tol),
            };
            for (const ComplexMatrix& T : variants) {
                ++total;
                const ExceptionalityVerdict v = check_exceptional(T, budget_for(6, total), tol);
                if (v.status == VerdictStatus::exceptionalUpToBudget) {
                    ++ok;
                    passing.push_back(T);
                }
            }
        }
        out.add(6, "new-from-old transforms stay exceptional", ok == total,
                std::to_string(ok) + "/" + std::to_string(total) + " transform outputs pass");
    });

    // --- 7. orthogonality of the principal singular pair ---------------------
    out.guarded(7, "orthogonality defect: ~0 on exceptional, >1e-3 on generic 2x2", [&] {
        double worstPass = 0;
        std::size_t okPass = 0;
        for (const ComplexMatrix& E : passing) {
            const double d = orthogonality_defect(E, tol);
            worstPass = std::max(worstPass, d);
            if (d < 1e-9) ++okPass;
        }
        const std::size_t count = scaled(opt.scale, 100);
        std::size_t okNeg = 0;
        double worstNeg = 1;
        std::uint64_t sub = 0;
        for (std::size_t i = 0; i < count; ++i) {
            ComplexMatrix E(1, 1);
            do {
                E = random_test_matrix(RandomProfile::generic, 2, mix(opt.seed, 7, sub++));
            } while (std::abs(E.trace()) <= 1e-2);
            const double d = orthogonality_defect(E, tol);
            worstNeg = std::min(worstNeg, d);
            if (d > 1e-3) ++okNeg;
        }
        out.add(7, "orthogonality defect: ~0 on exceptional, >1e-3 on generic 2x2",
                okPass == passing.size() && okNeg == count,
                std::to_string(okPass) + "/" + std::to_string(passing.size()) +
                    " exceptional with defect < 1e-9 (max " + fmt(worstPass) + "); " +
                    std::to_string(okNeg) + "/" + std::to_string(count) +
                    " generic above 1e-3 (min " + fmt(worstNeg) + ")");
    });

    // --- 8. positivity bound |<h(E)x0, x0>| <= 1 -----------------------------
    out.guarded(8, "positivity bound over sampled h", [&] {
        const std::size_t nf = std::min(scaled(opt.scale, 50), specMats.size());
        const std::size_t ns = scaled(opt.scale, 100);
        std::vector<SampleFunction> samples;
        Rng rng(mix(opt.seed, 8, 0));
        static const double ts[] = {0.1, 1.0, 10.0};
        for (std::size_t s = 0; s < ns; ++s) {
            const int deg = 1 + static_cast<int>(rng.raw() % 3);
            std::vector<cplx> zeros;
            for (int q = 0; q < deg; ++q)
                zeros.push_back(std::polar(0.95 * std::sqrt(rng.uniform()),
                                           rng.uniform(0.0, 6.283185307179586)));
            BlaschkeProduct b = make_blaschke(rng.uniform(0.0, 6.283185307179586), zeros, tol);
            if (s % 10 < 7) {
                samples.emplace_back(std::move(b));
            } else {
                samples.emplace_back(make_gt(ts[s % 3], std::move(b)));
            }
        }
        std::size_t ok = 0;
        double worst = 0;
        for (std::size_t i = 0; i < nf; ++i) {
            const PositivityResult r = positivity_check(specMats[i], samples, tol);
            worst = std::max(worst, r.maxModulus);
            if (r.maxModulus <= 1.0 + 1e-9) ++ok;
        }
        out.add(8, "positivity bound over sampled h", ok == nf,
                std::to_string(ok) + "/" + std::to_string(nf) + " fixtures; max modulus " +
                    fmt(worst));
    });

    // --- 9. canonical bordered form recovery ---------------------------------
    out.guarded(9, "canonical form recovered after unitary conjugation", [&] {
        std::size_t ok = 0;
        double worstRes = 0;
        for (std::size_t i = 0; i < specMats.size(); ++i) {
            const std::size_t n = specMats[i].rows();
            const ComplexMatrix U0 = random_unitary(n, mix(opt.seed, 9, i));
            const ComplexMatrix M = U0.adjoint() * specMats[i] * U0;
            const CanonicalForm cf = reduce_canonical(M, tol);
            const double nM = operator_norm(M);
            worstRes = std::max(worstRes, cf.residual / cf.a);
            if (cf.residual < 1e-8 * cf.a && std::abs(cf.a - nM) <= 1e-10 &&
                operator_norm(cf.Ablock) <= cf.a + 1e-10)
                ++ok;
        }
        out.add(9, "canonical form recovered after unitary conjugation", ok == specMats.size(),
                std::to_string(ok) + "/" + std::to_string(specMats.size()) +
                    "; max residual/a " + fmt(worstRes));
    });

    // --- 10. trace-zero equivalence at 2x2 -----------------------------------
    out.guarded(10, "2x2 verdicts match the trace-zero predicate", [&] {
        const std::size_t count = scaled(opt.scale, 500);
        std::size_t ok = 0, exhausted = 0;
        for (std::size_t i = 0; i < count; ++i) {
            const ComplexMatrix E =
                random_test_matrix(RandomProfile::generic, 2, mix(opt.seed, 10, i));
            const ExceptionalityVerdict v = check_exceptional(E, budget_for(10, i), tol);
            const bool traceZero = std::abs(E.trace()) <= tol.traceTol;
            if (v.reason == VerdictReason::searchExhausted) ++exhausted;
            bool good;
            if (traceZero) {
                good = v.status == VerdictStatus::exceptionalUpToBudget;
            } else {
                good = v.status == VerdictStatus::certifiedNotExceptional && v.witness &&
                       v.witnessNorm &&
                       *v.witnessNorm > v.margins.operatorNorm * (1.0 + 1e-7);
                if (good) certified.emplace_back(E, v);
            }
            if (good) ++ok;
        }
        out.add(10, "2x2 verdicts match the trace-zero predicate",
                ok == count && exhausted == 0,
                std::to_string(ok) + "/" + std::to_string(count) + " matched, " +
                    std::to_string(exhausted) + " searchExhausted");
    });

    // --- 11. witness soundness ------------------------------------------------
    out.guarded(11, "witnesses reproduce their norms", [&] {
        std::size_t ok = 0;
        double worst = 0;
        for (const auto& [E, v] : certified) {
            const double re = norm_objective(E, v.witness->zeros, tol);
            const double err = std::abs(re - *v.witnessNorm);
            worst = std::max(worst, err);
            if (err <= 1e-12) ++ok;
        }
        out.add(11, "witnesses reproduce their norms", ok == certified.size(),
                std::to_string(ok) + "/" + std::to_string(certified.size()) +
                    "; max reproduction error " + fmt(worst));
    });

    // --- 12. determinism -------------------------------------------------------
    if (opt.runDeterminism) {
        out.guarded(12, "suite is deterministic for a fixed seed", [&] {
            SuiteOptions small = opt;
            small.scale = std::min(opt.scale, 0.02);
            small.runDeterminism = false;
            const auto r1 = run_acceptance(small, nullptr);
            const auto r2 = run_acceptance(small, nullptr);
            const std::string d1 = acceptance_report(r1).dump();
            const std::string d2 = acceptance_report(r2).dump();
            out.add(12, "suite is deterministic for a fixed seed", d1 == d2,
                    d1 == d2 ? "byte-identical reports" : "reports differ");
        });
    }

    return results;
}

nlohmann::json acceptance_report(const std::vector<CriterionResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CriterionResult& r : results)
        arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    return nlohmann::json{{"criteria", arr}, {"allPassed", all_passed(results)}};
}

bool all_passed(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CriterionResult& r) { return r.passed; });
}

}  // namespace exmat
