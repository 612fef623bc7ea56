#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qh/cli/app.hpp"
#include "qh/cli/report.hpp"
#include "qh/cli/sweep.hpp"
#include "qh/qnum.hpp"
#include "test_helpers.hpp"

using namespace qh;
using namespace qh::cli;
using qh::test::params;
using qh::test::R;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST(CliSolve, QNumbersAsChi) {
    const CliRun r = run({"solve", "--sigma", "0", "--tau", "0", "--theta", "0", "--eta", "0", "--q",
                       "1/2", "--n", "8", "--t", "1", "--mode", "exact", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["chi"].size(), 8u);
    EXPECT_EQ(j["chi"][0], "1");
    EXPECT_EQ(j["chi"][1], "3/2");
    EXPECT_EQ(j["chi"][2], "7/4");
    EXPECT_EQ(j["N"], 8);
    EXPECT_EQ(j["mode"], "exact");
    EXPECT_EQ(j["lambda"].size(), 9u);
    EXPECT_EQ(j["jacobi"]["b"].size(), 9u);
    EXPECT_EQ(j["jacobi"]["c_hat"].size(), 8u);
}

TEST(CliSolve, WienerJacobiBIsZero) {
    const CliRun r = run({"solve", "--n", "4", "--t", "1"});
    ASSERT_EQ(r.code, 0);
    for (const auto& b : nlohmann::json::parse(r.out)["jacobi"]["b"]) {
        EXPECT_EQ(b, "0");
    }
}

TEST(CliSolve, ExitCodes) {
    EXPECT_EQ(run({"solve", "--q", "2", "--sigma", "0", "--tau", "0"}).code, 3);
    EXPECT_EQ(run({"solve", "--q", "1/0"}).code, 2);
    EXPECT_EQ(run({"solve", "--q", "x"}).code, 2);
    EXPECT_EQ(run({"solve", "--bogus", "1"}).code, 2);
    EXPECT_EQ(run({"solve", "--sigma", "-1"}).code, 3);
    EXPECT_EQ(run({"solve", "--n", "0"}).code, 3);
    EXPECT_EQ(run({"solve", "--t", "0"}).code, 3);
    EXPECT_EQ(run({"solve", "--sigma", "1/5", "--tau", "1/5", "--q", "9/10"}).code, 4);
    EXPECT_EQ(run({"solve", "--mode", "float", "--sigma", "1e200", "--theta", "1e200", "--q",
                   "1/2", "--n", "4"})
                  .code,
              5);
    const CliRun r = run({"solve", "--q", "2"});
    const auto e = nlohmann::json::parse(r.err);
    EXPECT_EQ(e["error"]["kind"], "range");
    EXPECT_EQ(e["error"]["exit_code"], 3);
    EXPECT_TRUE(r.out.empty());
}

TEST(CliSolve, IrrationalRootFallsBackToFloatJacobi) {
    const CliRun r = run({"solve", "--n", "3", "--t", "2", "--theta", "1"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["jacobi_mode"], "float");
    EXPECT_TRUE(j["jacobi"]["b"][1].is_number());
}

TEST(CliSolve, CsvShape) {
    const CliRun r = run({"solve", "--n", "5", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(count_lines(r.out), 7u);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,lambda,gamma,delta,chi");
}

TEST(CliSolve, RationalRoundTrip) {
    const auto p = params(R(1, 3), R(1, 5), R(1, 2), R(-1, 4), R(1, 7));
    const CliRun r = run({"solve", "--sigma", "1/3", "--tau", "1/5", "--theta", "1/2", "--eta",
                       "-0.25", "--q", "1/7", "--n", "24"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto table = solve_table(p, 24);
    for (std::size_t n = 0; n <= 24; ++n) {
        EXPECT_EQ(parse_rational(j["lambda"][n].get<std::string>()), table.lambda[n]);
        EXPECT_EQ(parse_rational(j["gamma"][n].get<std::string>()), table.gamma[n]);
        EXPECT_EQ(parse_rational(j["delta"][n].get<std::string>()), table.delta[n]);
        if (n >= 1) {
            EXPECT_EQ(parse_rational(j["chi"][n - 1].get<std::string>()), table.chi[n]);
        }
    }
}

TEST(CliClassify, NamedProcesses) {
    auto report = [](std::vector<std::string> args) {
        args.insert(args.begin(), "classify");
        const CliRun r = run(args);
        EXPECT_EQ(r.code, 0) << r.err;
        return nlohmann::json::parse(r.out)["report"];
    };
    const auto w = report({});
    EXPECT_EQ(w["known_process"], "QWiener");
    EXPECT_EQ(w["favard_ok"], true);
    EXPECT_EQ(report({"--q", "1", "--theta", "1"})["known_process"], "Poisson");
    const auto osc = report({"--q", "0.9", "--sigma", "1/5", "--tau", "1/5"});
    EXPECT_EQ(osc["regime"], "Oscillatory");
    EXPECT_EQ(osc["favard_ok"], false);
    EXPECT_EQ(report({"--tau", "1", "--theta", "1", "--eta", "1"})["known_process"],
              "GeneralizedChebyshevSupported");
    const auto q1 = report({"--q", "1", "--sigma", "1/2"});
    EXPECT_EQ(q1["bounded"], false);
    EXPECT_EQ(q1["determinacy"], "unknown");
}

TEST(CliSweep, CardinalityAndOrder) {
    const CliRun r = run({"sweep", "--q", "0,1/4,1/2", "--sigma", "0,1/8,1/4", "--tau", "1/2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(count_lines(r.out), 10u);
    const CliRun j = run({"sweep", "--q", "0:1/2:1/4", "--sigma", "0,1/8,1/4", "--tau", "1/2",
                       "--format", "json", "--threads", "3"});
    const auto rows = nlohmann::json::parse(j.out);
    ASSERT_EQ(rows.size(), 9u);
    EXPECT_EQ(rows[0]["params"]["sigma"], "0");
    EXPECT_EQ(rows[0]["params"]["q"], "0");
    EXPECT_EQ(rows[1]["params"]["q"], "1/4");
    EXPECT_EQ(rows[3]["params"]["sigma"], "1/8");
}

TEST(CliSweep, RegimeFlipsAtBoundary) {
    // sigma tau = 1/16: boundary at q = 1/2.
    const CliRun r = run({"sweep", "--sigma", "1/4", "--tau", "1/4", "--q", "3/8:5/8:1/8",
                       "--format", "json"});
    const auto rows = nlohmann::json::parse(r.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0]["report"]["regime"], "StrictAdmissible");
    EXPECT_EQ(rows[1]["report"]["regime"], "Boundary");
    EXPECT_EQ(rows[2]["report"]["regime"], "Oscillatory");
}

TEST(CliSweep, EmptyGridAndErrorsInRow) {
    const CliRun e = run({"sweep", "--q", ""});
    EXPECT_EQ(e.code, 0);
    EXPECT_TRUE(e.out.empty());
    const CliRun bad = run({"sweep", "--q", "0,2", "--format", "json"});
    EXPECT_EQ(bad.code, 0);
    const auto rows = nlohmann::json::parse(bad.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_TRUE(rows[0].contains("report"));
    EXPECT_TRUE(rows[1].contains("error"));
    EXPECT_EQ(run({"sweep", "--q", "0:1:0"}).code, 2);
}

TEST(CliSweep, ParseAxis) {
    EXPECT_EQ(parse_axis("1/2, 1 ,0.25"), (std::vector<Rational>{R(1, 2), R(1), R(1, 4)}));
    EXPECT_EQ(parse_axis("1:0:-1/2"), (std::vector<Rational>{R(1), R(1, 2), R(0)}));
    EXPECT_TRUE(parse_axis("  ").empty());
    EXPECT_TRUE(parse_axis("1:0:1").empty());
    EXPECT_THROW(parse_axis("1:2"), Error);
}

TEST(CliVerify, SuitesPass) {
    const CliRun a = run({"verify", "--suite", "closed-forms", "--seed", "7", "--n", "32", "--points", "5"});
    EXPECT_EQ(a.code, 0) << a.out;
    EXPECT_NE(a.out.find("closed-forms: 45/45 passed"), std::string::npos) << a.out;
    const CliRun b = run({"verify", "--suite", "residuals", "--seed", "1", "--n", "32", "--points", "5"});
    EXPECT_EQ(b.code, 0);
    EXPECT_NE(b.out.find("max residual 0"), std::string::npos) << b.out;
    EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
}

TEST(CliVerify, InjectedFaultIsReported) {
    const CliRun r = run({"verify", "--suite", "all", "--n", "16", "--points", "3", "--inject-fault", "beta2"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("first counterexample"), std::string::npos);
    EXPECT_NE(r.out.find("equation"), std::string::npos) << r.out;
}

TEST(CliDeterminism, RepeatRunsAreIdentical) {
    const std::vector<std::vector<std::string>> cmds{
        {"solve", "--sigma", "1/3", "--tau", "1/5", "--q", "1/7", "--n", "16", "--t", "4"},
        {"classify", "--sigma", "1/2", "--tau", "1/3", "--mode", "float"},
        {"sweep", "--q", "-1/2:1:1/4", "--sigma", "0:1:1/4", "--tau", "1/2", "--format", "json"},
        {"verify", "--seed", "3", "--n", "16", "--points", "3"},
    };
    for (const auto& c : cmds) {
        const CliRun a = run(c);
        const CliRun b = run(c);
        EXPECT_EQ(a.code, b.code);
        EXPECT_EQ(a.out, b.out);
        EXPECT_FALSE(a.out.empty());
    }
}

TEST(CliConfig, FlagsOverrideConfig) {
    const std::string path = ::testing::TempDir() + "qh_cli_config.txt";
    {
        std::ofstream f(path);
        f << "# test\nq = 1/2\nn = 3\n--format=csv\n";
    }
    const CliRun a = run({"solve", "--config", path});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_NE(a.out.find("3,7/4,0,0,7/4"), std::string::npos) << a.out;
    const CliRun b = run({"solve", "--config", path, "--n", "2", "--q", "0"});
    EXPECT_EQ(count_lines(b.out), 4u);
    EXPECT_NE(b.out.find("2,1,0,0,1"), std::string::npos) << b.out;
    EXPECT_THROW(parse_config("bogus = 1"), Error);
    EXPECT_THROW(parse_config("novalue"), Error);
    EXPECT_EQ(run({"solve", "--config", "/nonexistent/file"}).code, 2);
    std::remove(path.c_str());
}
