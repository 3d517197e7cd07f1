#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int exitCode = -1;
    std::string out;
};

// Runs the CLI with stderr discarded and stdout captured.
RunResult run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + std::string(EXMAT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    const int status = pclose(p);
    r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = "cli_tmp_" + name;
    std::ofstream(path) << text;
    return path;
}

const char* kTraceZero =
    R"({"rows":2,"cols":2,"entries":[[0,0],[0.3,0],[2,0],[0,0]]})";
const char* kNonExceptional =
    R"({"rows":2,"cols":2,"entries":[[0.2,0],[2,0],[0,0],[0.2,0]]})";
const char* kContraction =
    R"({"rows":2,"cols":2,"entries":[[0.5,0],[0,0],[0,0],[0.1,0]]})";

}  // namespace

TEST_CASE("check: exit codes mirror the verdict; stdout is one JSON report") {
    const auto f0 = write_temp("tz.json", kTraceZero);
    auto r = run("check " + f0);
    CHECK(r.exitCode == 0);
    const json rep = json::parse(r.out);
    CHECK(rep["command"] == "check");
    CHECK(rep["result"]["status"] == "exceptionalUpToBudget");
    CHECK(rep["result"]["reason"] == "traceZeroExact2x2");
    CHECK(rep.contains("inputDigest"));
    CHECK(rep.contains("wallTimeMs"));
    CHECK(rep.contains("toolVersion"));

    const auto f1 = write_temp("ne.json", kNonExceptional);
    r = run("check " + f1);
    CHECK(r.exitCode == 1);
    const json rep1 = json::parse(r.out);
    CHECK(rep1["result"]["status"] == "certifiedNotExceptional");
    CHECK_FALSE(rep1["result"]["witness"].is_null());
    CHECK(rep1["result"]["witnessNorm"].get<double>() == doctest::Approx(25.0 / 12.0).epsilon(1e-8));

    const auto f2 = write_temp("c.json", kContraction);
    r = run("check " + f2);
    CHECK(r.exitCode == 2);
    CHECK(json::parse(r.out)["result"]["reason"] == "normAtMostOne");
}

TEST_CASE("construct then reduce round trip") {
    const auto spec = write_temp(
        "spec.json",
        R"({"a":2.0,"A":{"rows":1,"cols":1,"entries":[[0.3,0]]},"variant":"strict"})");
    auto r = run("construct " + spec);
    REQUIRE(r.exitCode == 0);
    const json built = json::parse(r.out)["result"];
    CHECK(built["rows"] == 2);

    const auto mat = write_temp("built.json", built.dump());
    r = run("reduce " + mat);
    REQUIRE(r.exitCode == 0);
    const json cf = json::parse(r.out)["result"];
    CHECK(cf["a"].get<double>() == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(cf["residual"].get<double>() <= 1e-10);
}

TEST_CASE("extremal reports a search result") {
    const auto f = write_temp("ne2.json", kNonExceptional);
    const auto r = run("--seed 11 extremal " + f);
    REQUIRE(r.exitCode == 0);
    const json res = json::parse(r.out)["result"];
    CHECK(res["bestNorm"].get<double>() == doctest::Approx(25.0 / 12.0).epsilon(1e-8));
    CHECK(res["perDegree"].contains("1"));
}

TEST_CASE("error paths still produce valid JSON") {
    const auto bad = write_temp("bad.json", "this is not json");
    auto r = run("check " + bad);
    CHECK(r.exitCode == 64);
    CHECK(json::parse(r.out)["result"]["error"]["code"] == "parse-failure");

    r = run("check no_such_file.json");
    CHECK(r.exitCode == 64);
    CHECK(json::parse(r.out)["result"]["error"]["code"] == "invalid-input");

    const auto f = write_temp("tz2.json", kTraceZero);
    r = run("--tol-override bogus=1 check " + f);
    CHECK(r.exitCode == 64);
    CHECK(json::parse(r.out)["result"].contains("error"));

    // reduce on a matrix without the bordered pattern.
    const auto ne = write_temp("ne3.json", kNonExceptional);
    r = run("reduce " + ne);
    CHECK(r.exitCode == 65);
    CHECK(json::parse(r.out)["result"]["error"]["code"] == "pattern-violation");
}

TEST_CASE("config layering: flags beat EXMAT_CONFIG beats defaults") {
    const auto cfg = write_temp(
        "cfg.json", R"({"budget":{"gridResolution":8},"tolerances":{"certMargin":1e-6}})");
    const auto f = write_temp("tz3.json", kTraceZero);

    auto r = run("check " + f, "EXMAT_CONFIG=" + cfg);
    REQUIRE(r.exitCode == 0);
    json rep = json::parse(r.out);
    CHECK(rep["config"]["budget"]["gridResolution"] == 8);
    CHECK(rep["config"]["tolerances"]["certMargin"].get<double>() == 1e-6);

    r = run("--budget-grid 12 check " + f, "EXMAT_CONFIG=" + cfg);
    REQUIRE(r.exitCode == 0);
    rep = json::parse(r.out);
    CHECK(rep["config"]["budget"]["gridResolution"] == 12);

    r = run("--tol-override certMargin=1e-5 check " + f, "EXMAT_CONFIG=" + cfg);
    REQUIRE(r.exitCode == 0);
    rep = json::parse(r.out);
    CHECK(rep["config"]["tolerances"]["certMargin"].get<double>() == 1e-5);
}

TEST_CASE("--output writes the same report to a file") {
    const auto f = write_temp("tz4.json", kTraceZero);
    const std::string outFile = "cli_tmp_report.json";
    const auto r = run("--output " + outFile + " check " + f);
    REQUIRE(r.exitCode == 0);
    std::ifstream in(outFile);
    REQUIRE(in.good());
    const json fromFile = json::parse(in);
    CHECK(fromFile == json::parse(r.out));
}

TEST_CASE("determinism: identical seeds give byte-identical results") {
    const auto f = write_temp("ne4.json", kNonExceptional);
    const auto a = run("--seed 5 extremal " + f);
    const auto b = run("--seed 5 extremal " + f);
    REQUIRE(a.exitCode == 0);
    CHECK(json::parse(a.out)["result"] == json::parse(b.out)["result"]);
}
