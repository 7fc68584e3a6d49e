#include "cli.hpp"

#include "ellidiff/diffops.hpp"
#include "ellidiff/elliptic.hpp"
#include "ellidiff/errors.hpp"
#include "ellidiff/face_weights.hpp"
#include "ellidiff/jet.hpp"
#include "ellidiff/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace ellidiff
{

namespace
{

SingleWeight parse_weight(const std::string& s)
{
    if (s == "e1" || s == "+e1") {
        return {1, 1};
    }
    if (s == "-e1") {
        return {1, -1};
    }
    if (s == "e2" || s == "+e2") {
        return {2, 1};
    }
    if (s == "-e2") {
        return {2, -1};
    }
    throw ConfigError("edge weight must be one of e1, -e1, e2, -e2, got '" + s + "'");
}

// "one", "exp:a,b" or "theta:a,b".
JetFunction parse_test_function(const std::string& s, const EllipticModulus& m)
{
    if (s == "one") {
        return JetFunction::one();
    }
    const auto colon = s.find(':');
    const auto comma = s.find(',');
    if (colon == std::string::npos || comma == std::string::npos || comma < colon) {
        throw ConfigError("test function must be one, exp:A,B or theta:A,B, got '" + s + "'");
    }
    const std::string kind = s.substr(0, colon);
    int a = 0;
    int b = 0;
    try {
        a = std::stoi(s.substr(colon + 1, comma - colon - 1));
        b = std::stoi(s.substr(comma + 1));
    } catch (const std::exception&) {
        throw ConfigError("bad indices in test function '" + s + "'");
    }
    if (kind == "exp") {
        return JetFunction::exponential(a, b);
    }
    if (kind == "theta") {
        if (a < 1 || a > 4 || b < 1 || b > 4) {
            throw ConfigError("theta indices must be 1..4");
        }
        return JetFunction::theta_product(a, b, m);
    }
    throw ConfigError("unknown test function kind '" + kind + "'");
}

struct VerifyOptions
{
    std::vector<std::string> suites;
    std::string tau = "1.1i";
    std::string hbar = "0.1";
    std::string omega1 = "0.5";
    int samples = 20;
    std::uint64_t seed = 42;
    std::vector<std::string> tols;
    std::string report;
    std::string format = "table";
    bool no_timing = false;
};

SuiteConfig make_config(const VerifyOptions& o)
{
    SuiteConfig cfg;
    cfg.tau = parse_complex(o.tau);
    cfg.hbar = parse_complex(o.hbar);
    cfg.omega1 = parse_complex(o.omega1);
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    for (const auto& s : o.suites) {
        cfg.suites.push_back(canonical_suite_name(s));
    }
    for (const auto& t : o.tols) {
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("--tol expects SUITE=EPS, got '" + t + "'");
        }
        double eps = 0.0;
        try {
            std::size_t used = 0;
            eps = std::stod(t.substr(eq + 1), &used);
            if (used != t.size() - eq - 1) {
                throw std::invalid_argument("trailing text");
            }
        } catch (const std::exception&) {
            throw ConfigError("bad tolerance in '" + t + "'");
        }
        cfg.tol_overrides[canonical_suite_name(t.substr(0, eq))] = eps;
    }
    cfg.record_timing = !o.no_timing;
    return cfg;
}

int run_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err)
{
    SuiteConfig cfg;
    try {
        cfg = make_config(o);
        cfg.validate();
    } catch (const Error& e) {
        err << "ellidiff: configuration error: " << e.what() << "\n";
        return kExitConfig;
    }
    const VerificationReport report = run_suite(cfg);
    if (!o.report.empty()) {
        std::ofstream f(o.report);
        if (!f) {
            err << "ellidiff: cannot write report to " << o.report << "\n";
            return kExitConfig;
        }
        f << report.to_json();
    }
    out << (o.format == "json" ? report.to_json() : report.to_table());
    return report.passed() ? kExitPass : kExitFail;
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Numerical verification of the elliptic C2 difference-operator system", "ellidiff"};
    app.set_version_flag("--version", std::string(ELLIDIFF_VERSION));
    app.require_subcommand(1);

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "Run verification suites and report every check");
    verify->add_option("--suite", vo.suites, "Suite to run (repeatable; default all), e.g. verify-theta or theta");
    verify->add_option("--tau", vo.tau, "Modulus tau as re+imi")->capture_default_str();
    verify->add_option("--hbar", vo.hbar, "Step hbar as re+imi")->capture_default_str();
    verify->add_option("--omega1", vo.omega1, "Half-period omega1 as re+imi")->capture_default_str();
    verify->add_option("--samples", vo.samples, "Sample scale; 20 gives the nominal counts")->capture_default_str();
    verify->add_option("--seed", vo.seed, "Seed for every sampling stream")->capture_default_str();
    verify->add_option("--tol", vo.tols, "Tolerance override SUITE=EPS (repeatable)");
    verify->add_option("--report", vo.report, "Also write the JSON report to this path");
    verify->add_option("--format", vo.format, "Output format")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();
    verify->add_flag("--no-timing", vo.no_timing, "Report wall times as 0 for byte-identical reports");

    auto* eval = app.add_subcommand("eval", "Evaluate one quantity and print it as re+imi");
    eval->require_subcommand(1);
    eval->fallthrough();
    std::string tau = "1.1i";
    std::string hbar = "0.1";
    eval->add_option("--tau", tau, "Modulus tau")->capture_default_str();
    eval->add_option("--hbar", hbar, "Step hbar (weight, operator)")->capture_default_str();

    std::string z = "0";
    int kind = 1;
    int order = 0;
    auto* e_theta = eval->add_subcommand("theta", "theta_K(z) or its derivative");
    e_theta->add_option("--kind", kind, "1..4")->check(CLI::Range(1, 4))->capture_default_str();
    e_theta->add_option("--z", z, "Argument")->required();
    e_theta->add_option("--order", order, "Derivative order 0..4")->check(CLI::Range(0, 4))->capture_default_str();

    std::string omega1 = "0.5";
    auto* e_wp = eval->add_subcommand("wp", "Weierstrass wp(z) for half-periods omega1, omega1 tau");
    e_wp->add_option("--z", z, "Argument")->required();
    e_wp->add_option("--omega1", omega1, "Half-period omega1")->capture_default_str();

    std::string l1 = "0.31";
    std::string l2 = "0.18";
    std::string u = "0";
    std::string top = "e1";
    std::string right = "e1";
    std::string left = "e1";
    std::string bottom = "e1";
    auto* e_weight = eval->add_subcommand("weight", "Face weight W11 (edges e1, -e1, e2, -e2)");
    e_weight->add_option("--l1", l1, "lambda_1")->capture_default_str();
    e_weight->add_option("--l2", l2, "lambda_2")->capture_default_str();
    e_weight->add_option("--u", u, "Spectral parameter")->capture_default_str();
    e_weight->add_option("--top", top)->capture_default_str();
    e_weight->add_option("--right", right)->capture_default_str();
    e_weight->add_option("--left", left)->capture_default_str();
    e_weight->add_option("--bottom", bottom)->capture_default_str();

    int d = 1;
    std::string fn = "one";
    std::string op_u;
    auto* e_op = eval->add_subcommand("operator", "(M~d f)(lambda), or (M_d(u) f)(lambda) with --u");
    e_op->add_option("--d", d, "1 or 2")->check(CLI::Range(1, 2))->capture_default_str();
    e_op->add_option("--f", fn, "Test function: one, exp:A,B or theta:A,B")->capture_default_str();
    e_op->add_option("--l1", l1, "lambda_1")->capture_default_str();
    e_op->add_option("--l2", l2, "lambda_2")->capture_default_str();
    e_op->add_option("--u", op_u, "Spectral parameter; omit for M~d");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitConfig;
    }

    if (verify->parsed()) {
        return run_verify(vo, out, err);
    }

    try {
        const Complex t = parse_complex(tau);
        if (t.imag() < kMinImTau) {
            throw ConfigError("Im tau is below the validity floor");
        }
        const EllipticModulus m(t);
        Complex value;
        if (e_theta->parsed()) {
            value = theta(kind, parse_complex(z), m, order);
        } else if (e_wp->parsed()) {
            const Complex w1 = parse_complex(omega1);
            value = wp(parse_complex(z), HalfPeriods(w1, w1 * t, m));
        } else if (e_weight->parsed()) {
            const FaceConfig f{{parse_complex(l1), parse_complex(l2)},
                               parse_weight(top),
                               parse_weight(right),
                               parse_weight(left),
                               parse_weight(bottom),
                               parse_complex(u),
                               parse_complex(hbar),
                               m};
            value = w11(f);
        } else {
            const Complex h = parse_complex(hbar);
            const JetFunction f = parse_test_function(fn, m);
            const DifferenceOperator op = op_u.empty() ? build_M_tilde(d, h, m) : build_M(d, parse_complex(op_u), h, m);
            value = apply(op, f.value, {parse_complex(l1), parse_complex(l2)});
        }
        out << format_complex(value) << "\n";
        return kExitPass;
    } catch (const ConfigError& e) {
        err << "ellidiff: configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidArgument& e) {
        err << "ellidiff: invalid argument: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        err << "ellidiff: " << e.what() << "\n";
        return kExitFail;
    }
}

} // namespace ellidiff
