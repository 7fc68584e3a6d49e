#ifndef ELLIDIFF_VERIFY_HPP
#define ELLIDIFF_VERIFY_HPP

// Verification suites: each suite draws its own deterministic samples, runs a
// fixed list of checks and emits one record per check.

#include "ellidiff/elliptic.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ellidiff
{

struct SuiteConfig
{
    Complex tau{0.0, 1.1};
    Complex hbar{0.1, 0.0};
    Complex omega1{0.5, 0.0};
    /// Scales every check's sample count; 20 gives the nominal counts.
    int samples = 20;
    std::uint64_t seed = 42;
    /// Replaces the tolerance of every upper-bound check in a suite.
    std::map<std::string, double> tol_overrides;
    /// Empty selects every suite.
    std::vector<std::string> suites;
    /// When false, wall times are reported as 0 so reports compare bit for bit.
    bool record_timing = true;

    /// Throws ConfigError on anything that would make a run meaningless.
    void validate() const;
    [[nodiscard]] std::vector<std::string> selected_suites() const;
};

/// Minimum Im tau for which results are certified.
inline constexpr double kMinImTau = 0.3;

[[nodiscard]] const std::vector<std::string>& all_suite_names();
/// Accepts "verify-theta" or "theta"; throws ConfigError for unknown names.
[[nodiscard]] std::string canonical_suite_name(std::string_view name);

struct CheckRecord
{
    std::string suite;
    std::string name;
    std::string anchor;     // the identity or property being checked
    double residual = 0.0;
    double tolerance = 0.0;
    std::string comparison; // "<=": residual must not exceed tolerance; ">": negative control
    bool pass = false;
    int samples = 0;
    double wall_time_ms = 0.0;
    std::string note;       // error text or extra reported value; may be empty

    friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct VerificationReport
{
    std::string version;
    SuiteConfig config;
    std::vector<CheckRecord> records;

    [[nodiscard]] bool passed() const noexcept;
    [[nodiscard]] std::string to_json() const;
    [[nodiscard]] std::string to_table() const;
    static VerificationReport from_json(std::string_view text);
};

/// Runs one suite by canonical name.
[[nodiscard]] std::vector<CheckRecord> run_single_suite(const std::string& suite,
                                                        const SuiteConfig& cfg);

/// Validates cfg, then runs every selected suite in canonical order.
[[nodiscard]] VerificationReport run_suite(const SuiteConfig& cfg);

/// "re+imi" text form with round-trip precision, and its parser. The parser
/// also takes a plain real ("0.5"), a pure imaginary ("1.1i", "-i") and
/// "re-imi".
[[nodiscard]] std::string format_complex(Complex z);
[[nodiscard]] Complex parse_complex(std::string_view text);

} // namespace ellidiff

#endif
