#include "ellidiff/vandiejen.hpp"

#include "ellidiff/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace ellidiff
{

namespace
{

// pi_r(s) for the Klein four-group permutations id, (01)(23), (02)(13), (03)(12).
constexpr std::array<std::array<int, 4>, 4> kKlein{{{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}};

// sigma_r(z) used as a denominator.
Complex sigma_den(int r, Complex z, const HalfPeriods& hp)
{
    const Complex arg = z / (2.0 * hp.omega1());
    const Complex t = theta(r == 0 ? 1 : r + 1, arg, hp.modulus());
    if (std::abs(t) < hp.modulus().pole_floor) {
        throw PoleProximity("sigma_" + std::to_string(r) + " denominator below pole floor");
    }
    return sigma_fn(r, z, hp);
}

Complex sigma(Complex z, const HalfPeriods& hp) { return sigma_fn(0, z, hp); }

// w(eps x_j) v(eps x_j + x_k) v(eps x_j - x_k): the single-shift coefficient.
Complex single_shift(Complex xj, Complex xk, const VDParams& p)
{
    return vd_w(xj, p) * vd_v(xj + xk, p) * vd_v(xj - xk, p);
}

double balance(const std::array<Complex, 4>& a, const std::array<Complex, 4>& b)
{
    Complex s = 0.0;
    for (int r = 0; r < 4; ++r) {
        s += a[r] + b[r];
    }
    return std::abs(s);
}

} // namespace

VDParams::VDParams(Complex mu_, std::array<Complex, 4> mu_r_, std::array<Complex, 4> mu_r_prime_,
                   Complex gamma_, HalfPeriods hp_)
    : mu(mu_), mu_r(mu_r_), mu_r_prime(mu_r_prime_), gamma(gamma_), hp(std::move(hp_))
{
    const double b = balance(mu_r, mu_r_prime);
    if (b > 1e-12) {
        throw ConstraintViolation("van Diejen parameters violate SUM(mu_r + mu_r') = 0 (|sum| = " +
                                  std::to_string(b) + ")");
    }
}

VDParams VDParams::specialized(Complex gamma, const HalfPeriods& hp)
{
    return VDParams(-gamma, {}, {}, gamma, hp);
}

Complex vd_v(Complex z, const VDParams& p)
{
    return sigma(z + p.mu, p.hp) / sigma_den(0, z, p.hp);
}

Complex vd_v_theta_form(Complex z, const VDParams& p)
{
    const Complex w1 = p.hp.omega1();
    const EllipticModulus& m = p.hp.modulus();
    const Complex gauss = std::exp(p.hp.eta1() * (2.0 * z * p.mu + p.mu * p.mu) / (2.0 * w1));
    return gauss * theta(1, (z + p.mu) / (2.0 * w1), m) / theta1_nonzero(z / (2.0 * w1), m);
}

Complex vd_w(Complex z, const VDParams& p)
{
    const Complex g2 = 0.5 * p.gamma;
    Complex prod = 1.0;
    for (int r = 0; r < 4; ++r) {
        prod *= sigma_fn(r, z + p.mu_r[r], p.hp) * sigma_fn(r, z + p.mu_r_prime[r] + g2, p.hp) /
                (sigma_den(r, z, p.hp) * sigma_den(r, z + g2, p.hp));
    }
    return prod;
}

Complex vd_c(int r, const VDParams& p)
{
    if (r < 0 || r > 3) {
        throw InvalidArgument("c_r index must be 0..3");
    }
    const Complex g2 = 0.5 * p.gamma;
    Complex c = 2.0 / (sigma_den(0, p.mu, p.hp) * sigma_den(0, p.mu - p.gamma, p.hp));
    for (int s = 0; s < 4; ++s) {
        const int k = kKlein[r][s];
        c *= sigma_fn(s, p.mu_r[k] - g2, p.hp) * sigma_fn(s, p.mu_r_prime[k], p.hp);
    }
    return c;
}

Complex vd_U12_1(const WeightPoint& x, const VDParams& p)
{
    const Complex g2 = 0.5 * p.gamma;
    const Complex a = p.mu - g2;
    Complex sum = 0.0;
    for (int r = 0; r < 4; ++r) {
        const Complex c = vd_c(r, p);
        if (c == Complex(0.0)) {
            continue;
        }
        Complex term = c;
        for (Complex xj : {x.l1, x.l2}) {
            term *= sigma_fn(r, a + xj, p.hp) * sigma_fn(r, a - xj, p.hp) /
                    (sigma_den(r, -g2 + xj, p.hp) * sigma_den(r, -g2 - xj, p.hp));
        }
        sum += term;
    }
    return sum;
}

Complex vd_U12_2(const WeightPoint& x, const VDParams& p)
{
    Complex sum = 0.0;
    for (int e1 : {1, -1}) {
        for (int e2 : {1, -1}) {
            const Complex a = static_cast<double>(e1) * x.l1;
            const Complex b = static_cast<double>(e2) * x.l2;
            sum += vd_w(a, p) * vd_w(b, p) * vd_v(a + b, p) * vd_v(-a - b - p.gamma, p);
        }
    }
    return sum;
}

DifferenceOperator build_vd_H(int k, const VDParams& p)
{
    if (k != 1 && k != 2) {
        throw InvalidArgument("van Diejen operator index must be 1 or 2");
    }
    DifferenceOperator op(p.gamma, p.hp.modulus());
    for (int e : {1, -1}) {
        const double de = e;
        if (k == 1) {
            op.add_term(ShiftVector::whole(e, 0), [de, p](const WeightPoint& x) {
                return single_shift(de * x.l1, x.l2, p);
            });
            op.add_term(ShiftVector::whole(0, e), [de, p](const WeightPoint& x) {
                return single_shift(de * x.l2, x.l1, p);
            });
            continue;
        }
        for (int ep : {1, -1}) {
            const double dep = ep;
            op.add_term(ShiftVector::whole(e, ep), [de, dep, p](const WeightPoint& x) {
                const Complex s = de * x.l1 + dep * x.l2;
                return vd_w(de * x.l1, p) * vd_w(dep * x.l2, p) * vd_v(s, p) *
                       vd_v(s + p.gamma, p);
            });
        }
        op.add_term(ShiftVector::whole(e, 0), [de, p](const WeightPoint& x) {
            const Complex u2 = -vd_w(x.l2, p) - vd_w(-x.l2, p);
            return u2 * single_shift(de * x.l1, x.l2, p);
        });
        op.add_term(ShiftVector::whole(0, e), [de, p](const WeightPoint& x) {
            const Complex u1 = -vd_w(x.l1, p) - vd_w(-x.l1, p);
            return u1 * single_shift(de * x.l2, x.l1, p);
        });
    }
    if (k == 1) {
        op.add_term({0, 0}, [p](const WeightPoint& x) { return vd_U12_1(x, p); });
    } else {
        op.add_term({0, 0}, [p](const WeightPoint& x) { return vd_U12_2(x, p); });
    }
    return op;
}

TestFunction gauge_phi(TestFunction f, const HalfPeriods& hp)
{
    const Complex w1 = hp.omega1();
    const Complex e1 = hp.eta1();
    return [f = std::move(f), w1, e1](const WeightPoint& x) {
        const Complex gauss = std::exp(e1 * (x.l1 * x.l1 + x.l2 * x.l2) / w1);
        return gauss * f(WeightPoint{x.l1 / (2.0 * w1), x.l2 / (2.0 * w1)});
    };
}

TestFunction gauge_phi_inverse(TestFunction g, const HalfPeriods& hp)
{
    const Complex w1 = hp.omega1();
    const Complex e1 = hp.eta1();
    return [g = std::move(g), w1, e1](const WeightPoint& lam) {
        const WeightPoint x{2.0 * w1 * lam.l1, 2.0 * w1 * lam.l2};
        const Complex gauss = std::exp(e1 * (x.l1 * x.l1 + x.l2 * x.l2) / w1);
        return g(x) / gauss;
    };
}

IdentificationResiduals identification_residual(const VDParams& p, Complex hbar,
                                                 std::span<const WeightPoint> samples,
                                                 int prefactor_sign)
{
    const HalfPeriods& hp = p.hp;
    const Complex w1 = hp.omega1();
    if (std::abs(p.gamma - 2.0 * w1 * hbar) > 1e-14 * std::max(1.0, std::abs(p.gamma))) {
        throw InvalidArgument("identification needs gamma = 2 omega1 hbar");
    }
    const EllipticModulus& m = hp.modulus();
    const DifferenceOperator mt1 = build_M_tilde(1, hbar, m);
    const DifferenceOperator mt2 = build_M_tilde(2, hbar, m);
    const DifferenceOperator h1 = build_vd_H(1, p);
    const DifferenceOperator h2 = build_vd_H(2, p) + scale(2.0, h1);
    const Complex pref =
        std::exp(static_cast<double>(prefactor_sign) * 2.0 * hp.eta1() * p.gamma * p.gamma / w1);

    // theta_a(x1 / 2 omega1) theta_b(x2 / 2 omega1)
    constexpr std::array<std::array<int, 2>, 6> panel{{{1, 1}, {2, 3}, {3, 4}, {4, 2}, {3, 3}, {2, 1}}};

    IdentificationResiduals res;
    for (const auto& [a, b] : panel) {
        const TestFunction g = [a, b, w1, m](const WeightPoint& x) {
            return theta(a, x.l1 / (2.0 * w1), m) * theta(b, x.l2 / (2.0 * w1), m);
        };
        const TestFunction pulled = gauge_phi_inverse(g, hp);
        for (const WeightPoint& lam : samples) {
            const WeightPoint x{2.0 * w1 * lam.l1, 2.0 * w1 * lam.l2};
            const Complex gauss = std::exp(hp.eta1() * (x.l1 * x.l1 + x.l2 * x.l2) / w1);
            const Complex l1 = gauss * apply(mt1, pulled, lam);
            const Complex r1 = pref * apply(h1, g, x);
            const Complex l2 = gauss * apply(mt2, pulled, lam);
            const Complex r2 = pref * apply(h2, g, x);
            res.first = std::max(res.first, std::abs(l1 - r1) / std::max({1.0, std::abs(l1), std::abs(r1)}));
            res.second = std::max(res.second, std::abs(l2 - r2) / std::max({1.0, std::abs(l2), std::abs(r2)}));
        }
    }
    return res;
}

IdentificationResiduals identification_residual(Complex hbar, const HalfPeriods& hp,
                                                 std::span<const WeightPoint> samples)
{
    return identification_residual(VDParams::specialized(2.0 * hp.omega1() * hbar, hp), hbar,
                                   samples);
}

} // namespace ellidiff
