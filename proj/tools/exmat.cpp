#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "exmat/acceptance.hpp"
#include "exmat/constructors.hpp"
#include "exmat/decomp.hpp"
#include "exmat/errors.hpp"
#include "exmat/exceptionality.hpp"
#include "exmat/extremal.hpp"
#include "exmat/json_io.hpp"
#include "exmat/rng.hpp"

namespace {

constexpr const char* kToolVersion = "exmat 1.0.0";

// Exit codes: 0/1/2 mirror the checker verdict; 64 parse failure,
// 65 domain/hypothesis error, 70 numerical failure.
constexpr int kExitParse = 64;
constexpr int kExitDomain = 65;
constexpr int kExitNumerical = 70;

std::string fnv1a16(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 0; i < 16; ++i) out[i] = hex[(h >> (60 - 4 * i)) & 0xF];
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw exmat::InvalidInput("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Settings {
    exmat::Tolerances tol;
    exmat::SearchBudget budget;
    std::vector<std::string> overrides;
    std::string outputFile;
};

// Layered config: defaults, then EXMAT_CONFIG, then command-line flags
// (the flag values are already in `s` when this runs; env must not clobber
// flags, so we re-apply overrides last).
void apply_env_config(Settings& s, const exmat::SearchBudget& flagBudget,
                      bool gridSet, bool startsSet, bool degreeSet, bool seedSet) {
    if (const char* path = std::getenv("EXMAT_CONFIG")) {
        const exmat::json cfg = exmat::json::parse(read_file(path));
        if (cfg.contains("tolerances")) s.tol = exmat::tolerances_from_json(cfg["tolerances"], s.tol);
        if (cfg.contains("budget")) s.budget = exmat::budget_from_json(cfg["budget"], s.budget);
    }
    if (gridSet) s.budget.gridResolution = flagBudget.gridResolution;
    if (startsSet) s.budget.multistarts = flagBudget.multistarts;
    if (degreeSet) s.budget.degreeMax = flagBudget.degreeMax;
    if (seedSet) s.budget.seed = flagBudget.seed;
    for (const std::string& ov : s.overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw exmat::InvalidInput("--tol-override expects KEY=VALUE, got: " + ov);
        const std::string key = ov.substr(0, eq);
        char* end = nullptr;
        const double val = std::strtod(ov.c_str() + eq + 1, &end);
        if (end == ov.c_str() + eq + 1)
            throw exmat::InvalidInput("--tol-override value is not numeric: " + ov);
        exmat::apply_tolerance_override(s.tol, key, val);
    }
}

exmat::json config_json(const Settings& s) {
    return exmat::json{{"tolerances", exmat::tolerances_to_json(s.tol)},
                       {"budget", exmat::budget_to_json(s.budget)}};
}

int emit_report(const std::string& command, const std::string& digest, const Settings& s,
                const exmat::json& result, int exitCode,
                std::chrono::steady_clock::time_point t0) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    const exmat::json report{{"command", command}, {"inputDigest", digest},
                             {"config", config_json(s)}, {"result", result},
                             {"wallTimeMs", ms},       {"toolVersion", kToolVersion}};
    const std::string text = report.dump(2);
    std::cout << text << std::endl;
    if (!s.outputFile.empty()) {
        std::ofstream out(s.outputFile, std::ios::binary);
        out << text << "\n";
    }
    return exitCode;
}

int emit_error(const std::string& command, const std::string& digest, const Settings& s,
               const std::string& code, const std::string& message, int exitCode,
               std::chrono::steady_clock::time_point t0) {
    return emit_report(command, digest, s,
                       exmat::json{{"error", {{"code", code}, {"message", message}}}}, exitCode,
                       t0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exmat: construct, test, canonicalize and search over exceptional matrices"};
    app.require_subcommand(1);

    Settings s;
    exmat::SearchBudget flagBudget;
    auto* gGrid = app.add_option("--budget-grid", flagBudget.gridResolution,
                                 "radial grid resolution per Blaschke zero");
    auto* gStarts = app.add_option("--budget-starts", flagBudget.multistarts,
                                   "local refinement multistarts");
    auto* gDeg = app.add_option("--degree-max", flagBudget.degreeMax,
                                "highest Blaschke degree to search (default N-1)");
    auto* gSeed = app.add_option("--seed", flagBudget.seed, "seed for all stochastic starts");
    app.add_option("--tol-override", s.overrides, "override a tolerance, KEY=VALUE")
        ->take_all();
    app.add_option("--output", s.outputFile, "also write the report to FILE");

    std::string matrixFile, specFile;
    int diagSamples = 50;
    int diagDegree = 3;
    double suiteScale = 1.0;

    auto* cmdCheck = app.add_subcommand("check", "decide exceptionality of a matrix");
    cmdCheck->add_option("matrix", matrixFile, "matrix JSON file")->required();

    auto* cmdConstruct = app.add_subcommand("construct", "build a bordered block matrix");
    cmdConstruct->add_option("spec", specFile, "block spec JSON file")->required();

    auto* cmdReduce = app.add_subcommand("reduce", "reduce to the canonical bordered form");
    cmdReduce->add_option("matrix", matrixFile, "matrix JSON file")->required();

    auto* cmdExtremal = app.add_subcommand("extremal", "search extremal Blaschke products");
    cmdExtremal->add_option("matrix", matrixFile, "matrix JSON file")->required();

    auto* cmdDiagnose =
        app.add_subcommand("diagnose", "orthogonality and positivity diagnostics");
    cmdDiagnose->add_option("matrix", matrixFile, "matrix JSON file")->required();
    cmdDiagnose->add_option("--samples", diagSamples, "number of sampled functions");
    cmdDiagnose->add_option("--sample-degree", diagDegree, "max Blaschke degree of samples");

    auto* cmdSuite = app.add_subcommand("suite", "run the acceptance property suites");
    cmdSuite->add_option("--suite-scale", suiteScale, "fixture count multiplier");

    CLI11_PARSE(app, argc, argv);

    const auto t0 = std::chrono::steady_clock::now();
    std::string command = app.get_subcommands().front()->get_name();
    std::string digest = "0000000000000000";

    try {
        apply_env_config(s, flagBudget, gGrid->count() > 0, gStarts->count() > 0,
                         gDeg->count() > 0, gSeed->count() > 0);

        std::string inputText;
        if (!matrixFile.empty()) inputText = read_file(matrixFile);
        if (!specFile.empty()) inputText = read_file(specFile);
        if (!inputText.empty()) digest = fnv1a16(inputText);

        if (cmdCheck->parsed()) {
            const auto E = exmat::matrix_from_json(exmat::json::parse(inputText));
            const auto v = exmat::check_exceptional(E, s.budget, s.tol);
            int code = 2;
            if (v.status == exmat::VerdictStatus::exceptionalUpToBudget) code = 0;
            if (v.status == exmat::VerdictStatus::certifiedNotExceptional) code = 1;
            return emit_report(command, digest, s, exmat::verdict_to_json(v), code, t0);
        }
        if (cmdConstruct->parsed()) {
            const auto spec = exmat::block_spec_from_json(exmat::json::parse(inputText));
            const auto E = exmat::construct_block(spec, s.tol);
            return emit_report(command, digest, s, exmat::matrix_to_json(E), 0, t0);
        }
        if (cmdReduce->parsed()) {
            const auto E = exmat::matrix_from_json(exmat::json::parse(inputText));
            const auto cf = exmat::reduce_canonical(E, s.tol);
            return emit_report(command, digest, s, exmat::canonical_form_to_json(cf), 0, t0);
        }
        if (cmdExtremal->parsed()) {
            const auto E = exmat::matrix_from_json(exmat::json::parse(inputText));
            const auto r = exmat::extremal_search(E, s.budget, s.tol);
            return emit_report(command, digest, s, exmat::extremal_result_to_json(r), 0, t0);
        }
        if (cmdDiagnose->parsed()) {
            const auto E = exmat::matrix_from_json(exmat::json::parse(inputText));
            const double defect = exmat::orthogonality_defect(E, s.tol);
            exmat::Rng rng(s.budget.seed + 17);
            std::vector<exmat::SampleFunction> samples;
            static const double ts[] = {0.1, 1.0, 10.0};
            for (int i = 0; i < diagSamples; ++i) {
                const int deg = 1 + static_cast<int>(rng.raw() % std::max(1, diagDegree));
                std::vector<exmat::cplx> zeros;
                for (int q = 0; q < deg; ++q)
                    zeros.push_back(std::polar(0.95 * std::sqrt(rng.uniform()),
                                               rng.uniform(0.0, 6.283185307179586)));
                auto b = exmat::make_blaschke(rng.uniform(0.0, 6.283185307179586),
                                              std::move(zeros), s.tol);
                if (i % 10 < 7)
                    samples.emplace_back(std::move(b));
                else
                    samples.emplace_back(exmat::make_gt(ts[i % 3], std::move(b)));
            }
            const auto pos = exmat::positivity_check(E, samples, s.tol);
            return emit_report(command, digest, s,
                               exmat::json{{"orthogonalityDefect", defect},
                                           {"positivity",
                                            {{"maxModulus", pos.maxModulus},
                                             {"worstSample", pos.worstSample}}},
                                           {"samples", samples.size()}},
                               0, t0);
        }
        if (cmdSuite->parsed()) {
            exmat::SuiteOptions opt;
            opt.seed = s.budget.seed ? s.budget.seed : exmat::SuiteOptions{}.seed;
            opt.scale = suiteScale;
            const auto results = exmat::run_acceptance(opt, &std::cerr);
            const auto report = exmat::acceptance_report(results);
            return emit_report(command, digest, s, report,
                               exmat::all_passed(results) ? 0 : 1, t0);
        }
        return emit_error(command, digest, s, "usage", "no subcommand", kExitDomain, t0);
    } catch (const exmat::json::exception& e) {
        return emit_error(command, digest, s, "parse-failure", e.what(), kExitParse, t0);
    } catch (const exmat::InvalidInput& e) {
        return emit_error(command, digest, s, "invalid-input", e.what(), kExitParse, t0);
    } catch (const exmat::NumericalFailure& e) {
        return emit_error(command, digest, s, "numerical-failure", e.what(), kExitNumerical, t0);
    } catch (const exmat::PatternViolation& e) {
        return emit_error(command, digest, s, "pattern-violation", e.what(), kExitDomain, t0);
    } catch (const exmat::Error& e) {
        return emit_error(command, digest, s, "domain-error", e.what(), kExitDomain, t0);
    } catch (const std::exception& e) {
        return emit_error(command, digest, s, "internal-error", e.what(), kExitNumerical, t0);
    }
}
