#include "ellidiff/difflimit.hpp"

#include "ellidiff/diffops.hpp"
#include "ellidiff/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace ellidiff
{

namespace
{

// rho_k = theta_1^(k) / theta_1 for k = 0..4 at z.
std::array<Complex, 5> rho(Complex z, const EllipticModulus& m)
{
    const auto t = theta_jet(1, z, m);
    if (std::abs(t[0]) < m.pole_floor) {
        throw PoleProximity("theta_1(lambda_+-) below pole floor");
    }
    std::array<Complex, 5> r{};
    for (int k = 0; k <= 4; ++k) {
        r[k] = t[k] / t[0];
    }
    return r;
}

} // namespace

HbarCoefficients hbar_coefficients(int d, const JetFunction& f, const WeightPoint& lam, double h0,
                                   const EllipticModulus& m)
{
    if (!(h0 > 0.0)) {
        throw InvalidArgument("h0 must be positive");
    }
    // Interpolate in t = (h / h0)^2 in [0, 1]; raw powers of h^2 would span
    // dozens of decades and wreck the solve.
    Eigen::MatrixXd v(kHbarNodes, kHbarNodes);
    Eigen::VectorXcd g(kHbarNodes);
    for (int k = 0; k < kHbarNodes; ++k) {
        const double t = static_cast<double>(k + 1) / kHbarNodes;
        const double x = t * t;
        double p = 1.0;
        for (int c = 0; c < kHbarNodes; ++c) {
            v(k, c) = p;
            p *= x;
        }
        g(k) = apply(build_M_tilde(d, h0 * t, m), f.value, lam);
    }
    const Eigen::VectorXcd c = v.cast<Complex>().fullPivLu().solve(g);
    const double h2 = h0 * h0;
    return {c(0), c(1) / h2, c(2) / (h2 * h2)};
}

Complex apply_M12(const Jet2& f, const WeightPoint& lam, const EllipticModulus& m)
{
    const auto p = rho(lam.plus(), m);
    const auto q = rho(lam.minus(), m);
    return f(2, 0) + f(0, 2) - 2.0 * (p[1] + q[1]) * f(1, 0) - 2.0 * (p[1] - q[1]) * f(0, 1) +
           2.0 * (p[2] + q[2]) * f(0, 0);
}

Complex apply_M24_minus_2M14(const Jet2& f, const WeightPoint& lam, const EllipticModulus& m)
{
    const auto p = rho(lam.plus(), m);
    const auto q = rho(lam.minus(), m);
    const Complex a1 = p[1], b1 = q[1], a2 = p[2], b2 = q[2], a3 = p[3], b3 = q[3];
    const Complex a4 = p[4], b4 = q[4];
    const Complex sq = 2.0 * (a1 * a1 + b1 * b1);

    Complex v = f(2, 2) - 2.0 * (a1 - b1) * f(2, 1) - 2.0 * (a1 + b1) * f(1, 2);
    v += (sq - (a2 + 2.0 * a1 * b1 + b2)) * f(2, 0);
    v += (sq - (a2 - 2.0 * a1 * b1 + b2)) * f(0, 2);
    v += 4.0 * (a1 * a1 - b1 * b1) * f(1, 1);
    v += (2.0 * (a1 * a2 + b1 * b2) + 2.0 * (a2 * b1 + a1 * b2) - 4.0 * (a1 * a1 * a1 + b1 * b1 * b1)) *
         f(1, 0);
    v += (2.0 * (a1 * a2 - b1 * b2) - 2.0 * (a2 * b1 - a1 * b2) - 4.0 * (a1 * a1 * a1 - b1 * b1 * b1)) *
         f(0, 1);
    v += ((a4 + b4) - 4.0 * (a3 * a1 + b3 * b1) + 4.0 * (a2 * a1 * a1 + b2 * b1 * b1) - 2.0 * a2 * b2) *
         f(0, 0);
    return v;
}

Complex potential_M24_minus_2M14_variant(const WeightPoint& lam, const EllipticModulus& m)
{
    const auto p = rho(lam.plus(), m);
    const auto q = rho(lam.minus(), m);
    return 0.5 * (p[4] + q[4]) - 4.0 * (p[3] * p[1] + q[3] * q[1]) +
           2.0 * (p[2] * p[1] * p[1] + q[2] * q[1] * q[1]) - 2.0 * p[2] * q[2];
}

Jet2 delta_jet(const WeightPoint& lam, const EllipticModulus& m)
{
    return jet_of_combination(theta_jet(1, lam.plus(), m), 1) *
           jet_of_combination(theta_jet(1, lam.minus(), m), -1);
}

namespace
{

// Derivatives 0..2 of the one-variable function L2; higher slots stay zero
// and are dropped by truncating the two-variable jet to order 2.
std::array<Complex, 5> log_jet_tail(Complex z, const EllipticModulus& m)
{
    std::array<Complex, 5> g{};
    g[0] = log_theta1_deriv(z, m, 2);
    g[1] = log_theta1_deriv(z, m, 3);
    g[2] = log_theta1_deriv(z, m, 4);
    return g;
}

Jet2 truncated(const Jet2& j, int order)
{
    Jet2 r(order);
    for (int a = 0; a <= order; ++a) {
        for (int b = 0; a + b <= order; ++b) {
            r.at(a, b) = j(a, b);
        }
    }
    return r;
}

} // namespace

Complex apply_D_squared(const Jet2& f, const WeightPoint& lam, const EllipticModulus& m)
{
    const Jet2 lp = truncated(jet_of_combination(log_jet_tail(lam.plus(), m), 1), 2);
    const Jet2 lm = truncated(jet_of_combination(log_jet_tail(lam.minus(), m), -1), 2);
    const Jet2 v = 2.0 * (lp - lm);
    const Jet2 f2 = truncated(f, 4);
    // Df keeps order 2: f11 is order 2 and V f is truncated to 2.
    const Jet2 df = f2.derivative(1, 1) + v * truncated(f2, 2);
    return df(1, 1) + v.value() * df.value();
}

GaugeResiduals gauge_identity_residual(const WeightPoint& lam, const EllipticModulus& m,
                                       const JetFunction& f)
{
    const Jet2 fj = f.jet(lam);
    const Jet2 delta = delta_jet(lam, m);
    const Complex dv = delta.value();
    if (std::abs(dv) < m.pole_floor) {
        throw PoleProximity("Delta below pole floor");
    }
    const Jet2 g = delta * fj;

    GaugeResiduals res;
    const Complex l2sum = log_theta1_deriv(lam.plus(), m, 2) + log_theta1_deriv(lam.minus(), m, 2);
    const Complex lhs2 = apply_M12(g, lam, m) / dv;
    const Complex rhs2 = fj(2, 0) + fj(0, 2) + 4.0 * l2sum * fj(0, 0);
    res.second_order = std::abs(lhs2 - rhs2) / std::max(1.0, std::abs(rhs2));

    const Complex lhs4 = apply_M24_minus_2M14(g, lam, m) / dv;
    const Complex rhs4 = apply_D_squared(fj, lam, m);
    res.fourth_order = std::abs(lhs4 - rhs4) / std::max(1.0, std::abs(rhs4));
    return res;
}

Complex inozemtsev_offset(const WeightPoint& lam, const HalfPeriods& hp, const InozemtsevCouplings& g)
{
    const EllipticModulus& m = hp.modulus();
    const Complex w1 = hp.omega1();
    const Complex v = 4.0 * (log_theta1_deriv(lam.plus(), m, 2) + log_theta1_deriv(lam.minus(), m, 2));
    const Complex x1 = 2.0 * w1 * lam.l1;
    const Complex x2 = 2.0 * w1 * lam.l2;
    Complex inner = g.pair * (wp(x1 + x2, hp) + wp(x1 - x2, hp));
    for (int r = 1; r <= 3; ++r) {
        const Complex c = g.one_body[static_cast<std::size_t>(r - 1)];
        if (c != Complex(0.0)) {
            inner += c * (wp(hp.omega(r) + x1, hp) + wp(hp.omega(r) + x2, hp));
        }
    }
    const Complex w = -8.0 * w1 * w1 * inner;
    return v - w;
}

double inozemtsev_residual(const WeightPoint& lam_a, const WeightPoint& lam_b, const HalfPeriods& hp,
                           const InozemtsevCouplings& g)
{
    return std::abs(inozemtsev_offset(lam_a, hp, g) - inozemtsev_offset(lam_b, hp, g));
}

} // namespace ellidiff
