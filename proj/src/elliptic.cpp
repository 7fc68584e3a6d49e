#include "ellidiff/elliptic.hpp"

#include "ellidiff/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ellidiff
{

namespace
{

constexpr double pi = std::numbers::pi;
const Complex I(0.0, 1.0);

void check_kind(int kind)
{
    if (kind < 1 || kind > 4) {
        throw InvalidArgument("theta kind must be 1..4, got " + std::to_string(kind));
    }
}

// Derivatives 0..max_order of the folded series at an already reduced argument.
std::array<Complex, 5> reduced_series(int kind, Complex z, const EllipticModulus& m, int max_order)
{
    const double im_tau = m.tau.imag();
    const double abs_y = std::abs(z.imag());
    const bool half_index = (kind == 1 || kind == 2);
    const bool alternating = (kind == 1 || kind == 4);
    const bool use_sine = (kind == 1);

    std::array<Complex, 5> acc{};
    if (!half_index) {
        acc[0] = 1.0;
    }
    const double peak = abs_y / im_tau + 1.0;
    int n = half_index ? 0 : 1;
    for (int count = 0;; ++n, ++count) {
        if (count >= m.max_terms) {
            throw TruncationOverflow("theta series did not converge within max_terms = " +
                                     std::to_string(m.max_terms));
        }
        const double a = half_index ? n + 0.5 : static_cast<double>(n);
        const double k = 2.0 * pi * a;
        // Crude majorant of |term| including the fourth-derivative factor.
        const double bound =
            2.0 * std::exp(-pi * im_tau * a * a + k * abs_y) * std::max(1.0, std::pow(k, 4));
        if (a > peak && bound < m.target_abs_err) {
            break;
        }
        Complex weight = 2.0 * std::exp(I * pi * m.tau * (a * a));
        if (alternating && (n % 2 != 0)) {
            weight = -weight;
        }
        if (max_order == 0) {
            acc[0] += weight * (use_sine ? std::sin(k * z) : std::cos(k * z));
            continue;
        }
        const Complex s = std::sin(k * z);
        const Complex c = std::cos(k * z);
        // Successive derivatives of sin / cos cycle through (s, c, -s, -c).
        const std::array<Complex, 4> cyc = use_sine ? std::array<Complex, 4>{s, c, -s, -c}
                                                    : std::array<Complex, 4>{c, -s, -c, s};
        double kp = 1.0;
        for (int d = 0; d <= max_order; ++d) {
            acc[d] += weight * kp * cyc[d % 4];
            kp *= k;
        }
    }
    return acc;
}

Complex lattice_ratio(Complex omega1, Complex omega2)
{
    if (omega1 == Complex(0.0)) {
        throw InvalidArgument("omega1 must be nonzero");
    }
    return omega2 / omega1;
}

double binomial(int n, int k)
{
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

} // namespace

EllipticModulus::EllipticModulus(Complex tau_, double target, int max_terms_, double pole_floor_)
    : tau(tau_), target_abs_err(target), max_terms(max_terms_), pole_floor(pole_floor_)
{
    if (!(tau.imag() > 0.0)) {
        throw InvalidArgument("modulus tau must lie in the upper half-plane");
    }
    if (!(target_abs_err > 0.0) || max_terms <= 0 || !(pole_floor >= 0.0)) {
        throw InvalidArgument("invalid truncation policy");
    }
}

EllipticModulus EllipticModulus::with_tau(Complex new_tau) const
{
    return EllipticModulus(new_tau, target_abs_err, max_terms, pole_floor);
}

ReducedArgument reduce_argument(int kind, Complex z, const EllipticModulus& m)
{
    check_kind(kind);
    const int n = static_cast<int>(std::lround(z.imag() / m.tau.imag()));
    const Complex z1 = z - static_cast<double>(n) * m.tau;
    const int s = static_cast<int>(std::lround(z1.real()));
    const Complex z0 = z1 - static_cast<double>(s);

    const double dn = n;
    Complex pre = (n == 0) ? Complex(1.0) : std::exp(-I * pi * (dn * dn * m.tau + 2.0 * dn * z0));
    int sign_power = 0;
    switch (kind) {
    case 1: sign_power = s + n; break;
    case 2: sign_power = s; break;
    case 3: sign_power = 0; break;
    case 4: sign_power = n; break;
    }
    if (sign_power % 2 != 0) {
        pre = -pre;
    }
    return {z0, pre, s, n};
}

namespace
{

std::array<Complex, 5> jet_upto(int kind, Complex z, const EllipticModulus& m, int max_order)
{
    const ReducedArgument r = reduce_argument(kind, z, m);
    const std::array<Complex, 5> base = reduced_series(kind, r.z0, m, max_order);
    if (r.shift_tau == 0) {
        std::array<Complex, 5> out{};
        for (int d = 0; d <= max_order; ++d) {
            out[d] = r.prefactor * base[d];
        }
        return out;
    }
    // d/dz of the prefactor is (-2 pi i n) times itself; apply Leibniz.
    const Complex g = -2.0 * pi * I * static_cast<double>(r.shift_tau);
    std::array<Complex, 5> out{};
    for (int d = 0; d <= max_order; ++d) {
        Complex sum = 0.0;
        for (int j = 0; j <= d; ++j) {
            sum += binomial(d, j) * std::pow(g, d - j) * base[j];
        }
        out[d] = r.prefactor * sum;
    }
    return out;
}

} // namespace

std::array<Complex, 5> theta_jet(int kind, Complex z, const EllipticModulus& m)
{
    return jet_upto(kind, z, m, 4);
}

Complex theta(int kind, Complex z, const EllipticModulus& m, int order)
{
    check_kind(kind);
    if (order < 0 || order > 4) {
        throw InvalidArgument("theta derivative order must be 0..4, got " + std::to_string(order));
    }
    return jet_upto(kind, z, m, order)[order];
}

Complex theta1_nonzero(Complex z, const EllipticModulus& m)
{
    const Complex v = theta(1, z, m);
    if (std::abs(v) < m.pole_floor) {
        throw PoleProximity("theta_1 denominator below pole floor");
    }
    return v;
}

Complex log_theta1_deriv(Complex z, const EllipticModulus& m, int order)
{
    if (order < 1 || order > 4) {
        throw InvalidArgument("log theta_1 derivative order must be 1..4");
    }
    const auto t = theta_jet(1, z, m);
    if (std::abs(t[0]) < m.pole_floor) {
        throw PoleProximity("log-derivative of theta_1 at a zero");
    }
    const Complex r1 = t[1] / t[0];
    const Complex r2 = t[2] / t[0];
    const Complex r3 = t[3] / t[0];
    const Complex r4 = t[4] / t[0];
    switch (order) {
    case 1: return r1;
    case 2: return r2 - r1 * r1;
    case 3: return r3 - 3.0 * r1 * r2 + 2.0 * r1 * r1 * r1;
    default:
        return r4 - 4.0 * r1 * r3 - 3.0 * r2 * r2 + 12.0 * r1 * r1 * r2 - 6.0 * r1 * r1 * r1 * r1;
    }
}

Complex eta1_const(Complex omega1, Complex omega2, const EllipticModulus& policy)
{
    const EllipticModulus m = policy.with_tau(lattice_ratio(omega1, omega2));
    const auto t = theta_jet(1, 0.0, m);
    return -t[3] / (12.0 * omega1 * t[1]);
}

HalfPeriods::HalfPeriods(Complex omega1, Complex omega2, const EllipticModulus& policy)
    : omega1_(omega1), omega2_(omega2),
      modulus_(policy.with_tau(lattice_ratio(omega1, omega2))),
      eta1_(eta1_const(omega1, omega2, policy))
{
}

Complex HalfPeriods::eta2() const noexcept
{
    return (eta1_ * omega2_ - I * (pi / 2.0)) / omega1_;
}

Complex HalfPeriods::omega(int r) const
{
    switch (r) {
    case 0: return 0.0;
    case 1: return omega1_;
    case 2: return omega2_;
    case 3: return -omega1_ - omega2_;
    default: throw InvalidArgument("half-period index must be 0..3");
    }
}

Complex sigma_fn(int r, Complex z, const HalfPeriods& hp)
{
    if (r < 0 || r > 3) {
        throw InvalidArgument("sigma index must be 0..3");
    }
    const Complex w1 = hp.omega1();
    const Complex gauss = std::exp(hp.eta1() * z * z / (2.0 * w1));
    const Complex u = z / (2.0 * w1);
    const EllipticModulus& m = hp.modulus();
    if (r == 0) {
        return gauss * theta(1, u, m) / theta(1, 0.0, m, 1);
    }
    return gauss * theta(r + 1, u, m) / theta(r + 1, 0.0, m);
}

Complex wp(Complex z, const HalfPeriods& hp)
{
    const Complex w1 = hp.omega1();
    const Complex second = log_theta1_deriv(z / (2.0 * w1), hp.modulus(), 2);
    return -second / (4.0 * w1 * w1) - hp.eta1() / w1;
}

} // namespace ellidiff
