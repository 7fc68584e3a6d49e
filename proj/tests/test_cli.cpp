#include "cli.hpp"

#include "ellidiff/verify.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace ellidiff;

namespace
{

struct Outcome
{
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    args.insert(args.begin(), "ellidiff");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

Complex value_of(const Outcome& o)
{
    EXPECT_EQ(o.code, kExitPass) << o.err;
    std::string line = o.out;
    while (!line.empty() && line.back() == '\n') {
        line.pop_back();
    }
    return parse_complex(line);
}

} // namespace

TEST(Cli, EvalTheta)
{
    const Complex tau(0.1, 0.9);
    const Complex z(0.3, 0.2);
    for (int k = 1; k <= 4; ++k) {
        const Complex v =
            value_of(run({"eval", "--tau", "0.1+0.9i", "theta", "--kind", std::to_string(k), "--z", "0.3+0.2i"}));
        EXPECT_LT(oracle::rel(v, oracle::theta(k, z, tau)), 1e-12);
    }
    const auto f = [tau](Complex x) { return oracle::theta(1, x, tau); };
    const Complex d2 = value_of(run({"eval", "--tau", "0.1+0.9i", "theta", "--z", "0.3+0.2i", "--order", "2"}));
    EXPECT_LT(oracle::rel(d2, oracle::cauchy_derivative(f, z, 2)), 1e-9);
}

TEST(Cli, EvalWp)
{
    // Laurent expansion near the origin with the Eisenstein invariants.
    const Complex tau(0.0, 1.1);
    const Complex z(0.03, 0.01);
    const Complex v = value_of(run({"eval", "wp", "--z", "0.03+0.01i"}));
    const Complex g2 = oracle::g2(0.5, tau);
    const Complex g3 = oracle::g3(0.5, tau);
    const Complex z2 = z * z;
    EXPECT_LT(std::abs(v - (1.0 / z2 + g2 * z2 / 20.0 + g3 * z2 * z2 / 28.0)), 1e-6);
}

TEST(Cli, EvalWeight)
{
    const Complex tau(0.0, 1.1);
    const Complex h(0.1);
    const Complex u(0.2);
    const Complex want = oracle::theta(1, -3.0 * h - u, tau) * oracle::theta(1, u + h, tau) /
                         (oracle::theta(1, -3.0 * h, tau) * oracle::theta(1, h, tau));
    for (const char* e : {"e1", "-e1", "e2", "-e2"}) {
        const Complex v = value_of(
            run({"eval", "weight", "--u", "0.2", "--top", e, "--right", e, "--left", e, "--bottom", e}));
        EXPECT_LT(oracle::rel(v, want), 1e-12) << e;
    }
    // Non-admissible faces weigh zero.
    EXPECT_EQ(value_of(run({"eval", "weight", "--u", "0.2", "--top", "e1", "--right", "e1", "--left", "e2",
                             "--bottom", "e2"})),
              Complex(0.0));
    EXPECT_EQ(run({"eval", "weight", "--top", "e3"}).code, kExitConfig);
}

TEST(Cli, EvalOperator)
{
    // M_1(u) = F(u) M~1, so the ratio of the two evaluations is F(u).
    const Complex tau(0.0, 1.1);
    const Complex h(0.1);
    const Complex u(0.13);
    const auto t = [tau](Complex z) { return oracle::theta(1, z, tau); };
    const Complex f = t(u) * t(u + 2.0 * h) * t(u + 2.0 * h) * t(u + 4.0 * h) /
                      (t(-3.0 * h) * t(-3.0 * h) * t(h) * t(h));
    const Complex plain = value_of(run({"eval", "operator", "--d", "1", "--f", "exp:1,0"}));
    const Complex with_u = value_of(run({"eval", "operator", "--d", "1", "--f", "exp:1,0", "--u", "0.13"}));
    EXPECT_LT(oracle::rel(with_u / plain, f), 1e-12);
    // On constants M~2 is finite and nonzero.
    const Complex two = value_of(run({"eval", "operator", "--d", "2", "--f", "one"}));
    EXPECT_GT(std::abs(two), 0.0);
    EXPECT_EQ(run({"eval", "operator", "--f", "sin:1,0"}).code, kExitConfig);
    EXPECT_EQ(run({"eval", "operator", "--f", "theta:5,1"}).code, kExitConfig);
    EXPECT_EQ(run({"eval", "operator", "--d", "3"}).code, kExitConfig);
}

TEST(Cli, VerifyExitCodes)
{
    EXPECT_EQ(run({"verify", "--suite", "theta", "--no-timing"}).code, kExitPass);
    EXPECT_EQ(run({"verify", "--suite", "theta", "--tol", "theta=0"}).code, kExitFail);
    EXPECT_EQ(run({"verify", "--tau", "0.1i"}).code, kExitConfig);
    EXPECT_EQ(run({"verify", "--suite", "nothing"}).code, kExitConfig);
    EXPECT_EQ(run({"verify", "--hbar", "0.1+"}).code, kExitConfig);
    EXPECT_EQ(run({"verify", "--format", "xml"}).code, kExitConfig);
    EXPECT_EQ(run({"verify", "--tol", "theta"}).code, kExitConfig);
    EXPECT_EQ(run({"verify", "--samples", "0"}).code, kExitConfig);
    EXPECT_EQ(run({"eval", "--tau", "0.1i", "theta", "--z", "0.1"}).code, kExitConfig);
    EXPECT_EQ(run({}).code, kExitConfig);
}

TEST(Cli, HelpAndVersion)
{
    const Outcome h = run({"--help"});
    EXPECT_EQ(h.code, kExitPass);
    EXPECT_NE(h.out.find("verify"), std::string::npos);
    const Outcome v = run({"--version"});
    EXPECT_EQ(v.code, kExitPass);
    EXPECT_NE(v.out.find(ELLIDIFF_VERSION), std::string::npos);
}

TEST(Cli, JsonOutputAndReportFile)
{
    const auto path = std::filesystem::temp_directory_path() / "ellidiff_cli_report.json";
    std::filesystem::remove(path);
    const Outcome o =
        run({"verify", "--suite", "theta", "--no-timing", "--format", "json", "--report", path.string()});
    ASSERT_EQ(o.code, kExitPass) << o.err;
    std::ifstream f(path);
    std::stringstream buf;
    buf << f.rdbuf();
    EXPECT_EQ(buf.str(), o.out);
    const VerificationReport r = VerificationReport::from_json(buf.str());
    EXPECT_TRUE(r.passed());
    EXPECT_FALSE(r.records.empty());
    EXPECT_EQ(r.config.suites, std::vector<std::string>{"verify-theta"});
    std::filesystem::remove(path);

    // Same configuration, same bytes.
    EXPECT_EQ(run({"verify", "--suite", "theta", "--no-timing", "--format", "json"}).out, o.out);
}

TEST(Cli, TableOutput)
{
    const Outcome o = run({"verify", "--suite", "theta", "--tol", "theta=0", "--no-timing"});
    EXPECT_EQ(o.code, kExitFail);
    EXPECT_NE(o.out.find("FAIL"), std::string::npos);
}
