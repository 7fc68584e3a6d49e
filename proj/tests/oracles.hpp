#ifndef ELLIDIFF_TESTS_ORACLES_HPP
#define ELLIDIFF_TESTS_ORACLES_HPP

// Reference values computed without the library's folded series or argument
// reduction: raw bilateral exponential sums, Cauchy-integral derivatives and
// q-series for the Eisenstein quantities.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle
{

using Complex = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline const Complex I(0.0, 1.0);

/// theta_kind(z | tau) as the unreduced sum over k = -200 .. 199.
inline Complex theta(int kind, Complex z, Complex tau)
{
    Complex s = 0.0;
    for (int k = -200; k < 200; ++k) {
        const double h = k + 0.5;
        const double sg = (k % 2 == 0) ? 1.0 : -1.0;
        // One exponential per term: split factors overflow and underflow in the tails.
        switch (kind) {
        case 1: s += -I * sg * std::exp(I * pi * (tau * h * h + (2.0 * k + 1.0) * z)); break;
        case 2: s += std::exp(I * pi * (tau * h * h + (2.0 * k + 1.0) * z)); break;
        case 3: s += std::exp(I * pi * (tau * (double(k) * k) + 2.0 * double(k) * z)); break;
        default: s += sg * std::exp(I * pi * (tau * (double(k) * k) + 2.0 * double(k) * z)); break;
        }
    }
    return s;
}

/// n-th derivative of an analytic f at z by the trapezoid rule on a circle.
inline Complex cauchy_derivative(const std::function<Complex(Complex)>& f, Complex z, int n, double r = 0.05,
                                 int points = 96)
{
    Complex s = 0.0;
    for (int j = 0; j < points; ++j) {
        const Complex e = std::exp(2.0 * I * pi * double(j) / double(points));
        s += f(z + r * e) / std::pow(r * e, n);
    }
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) {
        fact *= k;
    }
    return fact * s / double(points);
}

/// sum_{n >= 1} n^p x^n / (1 - x^n), x = exp(2 pi i tau).
inline Complex divisor_series(int p, Complex tau)
{
    const Complex x = std::exp(2.0 * I * pi * tau);
    Complex s = 0.0;
    Complex xn = 1.0;
    for (int n = 1; n < 400; ++n) {
        xn *= x;
        s += std::pow(double(n), p) * xn / (1.0 - xn);
    }
    return s;
}

inline Complex e2(Complex tau) { return 1.0 - 24.0 * divisor_series(1, tau); }
inline Complex e4(Complex tau) { return 1.0 + 240.0 * divisor_series(3, tau); }
inline Complex e6(Complex tau) { return 1.0 - 504.0 * divisor_series(5, tau); }

/// Invariants of the lattice 2 omega1 Z + 2 omega1 tau Z.
inline Complex g2(Complex omega1, Complex tau)
{
    return 4.0 / 3.0 * std::pow(pi / (2.0 * omega1), 4) * e4(tau);
}
inline Complex g3(Complex omega1, Complex tau)
{
    return 8.0 / 27.0 * std::pow(pi / (2.0 * omega1), 6) * e6(tau);
}
/// zeta(omega1).
inline Complex eta1(Complex omega1, Complex tau)
{
    return pi * pi * e2(tau) / (12.0 * omega1);
}

/// The level-1 theta function of class (a0, b0) mod 2 as a direct lattice sum.
inline Complex theta_mu(int a0, int b0, Complex l1, Complex l2, Complex tau)
{
    Complex s = 0.0;
    for (int a = -40 + a0; a <= 40; a += 2) {
        for (int b = -40 + b0; b <= 40; b += 2) {
            s += std::exp(2.0 * I * pi * (double(a) * l1 + double(b) * l2 + double(a * a + b * b) * tau / 4.0));
        }
    }
    return s;
}

inline double rel(Complex a, Complex b)
{
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace oracle

#endif
