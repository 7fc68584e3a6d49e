#include "ellidiff/difflimit.hpp"
#include "ellidiff/errors.hpp"
#include "ellidiff/jet.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace ellidiff;
using oracle::I;
using oracle::pi;
using oracle::rel;

namespace
{

// theta_1^(k) / theta_1 at x from Cauchy integrals of the oracle sum.
Complex rho(int k, Complex x, Complex tau)
{
    const auto f = [tau](Complex z) { return oracle::theta(1, z, tau); };
    return oracle::cauchy_derivative(f, x, k, 0.03, 128) / oracle::theta(1, x, tau);
}

} // namespace

TEST(Jet, ExponentialJetIsExact)
{
    const JetFunction f = JetFunction::exponential(2, -1);
    const WeightPoint lam{Complex(0.13, 0.05), Complex(-0.2, 0.1)};
    const Jet2 j = f.jet(lam);
    EXPECT_EQ(j.order(), kMaxJetOrder);
    for (int a = 0; a <= 4; ++a) {
        for (int b = 0; a + b <= 4; ++b) {
            const Complex want = std::pow(2.0 * pi * I * 2.0, a) * std::pow(2.0 * pi * I * -1.0, b) * f.value(lam);
            EXPECT_LT(rel(j(a, b), want), 1e-13);
        }
    }
    EXPECT_THROW((void)j(3, 2), InvalidArgument);
    const Jet2 d = j.derivative(1, 1);
    EXPECT_EQ(d.order(), 2);
    EXPECT_EQ(d(1, 0), j(2, 1));
    EXPECT_THROW((void)d(2, 1), InvalidArgument);
}

TEST(Jet, ThetaProductAgainstCauchyDerivatives)
{
    const Complex tau(0.1, 1.2);
    const EllipticModulus m(tau);
    const WeightPoint lam{Complex(0.31, 0.04), Complex(0.18, -0.07)};
    for (int a = 1; a <= 4; ++a) {
        for (int b = 1; b <= 4; ++b) {
            const Jet2 j = JetFunction::theta_product(a, b, m).jet(lam);
            const auto fa = [a, tau](Complex z) { return oracle::theta(a, z, tau); };
            const auto fb = [b, tau](Complex z) { return oracle::theta(b, z, tau); };
            for (int p = 0; p <= 4; ++p) {
                for (int q = 0; p + q <= 4; ++q) {
                    const Complex want =
                        oracle::cauchy_derivative(fa, lam.l1, p) * oracle::cauchy_derivative(fb, lam.l2, q);
                    EXPECT_LT(std::abs(j(p, q) - want) / std::max(1.0, std::abs(want)), 1e-7);
                }
            }
        }
    }
}

TEST(Jet, LeibnizProductAndLinearity)
{
    const WeightPoint lam{Complex(0.2, 0.1), Complex(0.05, -0.3)};
    const Jet2 a = JetFunction::exponential(1, 0).jet(lam);
    const Jet2 b = JetFunction::exponential(-2, 3).jet(lam);
    const Jet2 ab = JetFunction::exponential(-1, 3).jet(lam);
    const Jet2 prod = a * b;
    const Jet2 comb = Complex(2.0) * a - b + Jet2::constant(1.5);
    for (int i = 0; i <= 4; ++i) {
        for (int j = 0; i + j <= 4; ++j) {
            EXPECT_LT(rel(prod(i, j), ab(i, j)), 1e-12);
            const Complex want = 2.0 * a(i, j) - b(i, j) + (i + j == 0 ? 1.5 : 0.0);
            EXPECT_LT(rel(comb(i, j), want), 1e-14);
        }
    }
}

TEST(Jet, CombinationOfVariables)
{
    const Complex c(0.7, -1.1);
    const WeightPoint lam{Complex(0.2, 0.1), Complex(0.05, -0.3)};
    for (int sign : {1, -1}) {
        const Complex g0 = std::exp(c * (lam.l1 + double(sign) * lam.l2));
        std::array<Complex, 5> g{};
        for (int k = 0; k <= 4; ++k) {
            g[static_cast<std::size_t>(k)] = std::pow(c, k) * g0;
        }
        const Jet2 j = jet_of_combination(g, sign);
        for (int p = 0; p <= 4; ++p) {
            for (int q = 0; p + q <= 4; ++q) {
                EXPECT_LT(rel(j(p, q), std::pow(c, p + q) * std::pow(double(sign), q) * g0), 1e-14);
            }
        }
    }
}

TEST(HbarExpansion, ConstantFunction)
{
    const Complex tau(0.0, 1.1);
    const EllipticModulus m(tau);
    const WeightPoint lam{Complex(0.31, 0.05), Complex(0.12, -0.03)};
    const JetFunction one = JetFunction::one();
    const HbarCoefficients c1 = hbar_coefficients(1, one, lam, kDefaultH0, m);
    const HbarCoefficients c2 = hbar_coefficients(2, one, lam, kDefaultH0, m);
    EXPECT_LT(std::abs(c1.c0 - 4.0), 1e-10);
    EXPECT_LT(std::abs(c2.c0 - 8.0), 1e-10);
    // On constants M12 reduces to its potential 2 (rho2(+) + rho2(-)).
    const Complex pot = 2.0 * (rho(2, lam.plus(), tau) + rho(2, lam.minus(), tau));
    EXPECT_LT(rel(c1.c2, pot), 1e-6);
    EXPECT_LT(rel(c2.c2, 2.0 * pot), 1e-6);
}

TEST(HbarExpansion, PlaneWaveMatchesSecondOrderOperator)
{
    const Complex tau(0.0, 1.3);
    const EllipticModulus m(tau);
    const WeightPoint lam{0.31, 0.18};
    const JetFunction f = JetFunction::exponential(1, 0);
    const HbarCoefficients c = hbar_coefficients(1, f, lam, kDefaultH0, m);
    EXPECT_LT(rel(c.c2, apply_M12(f, lam, m)), 1e-6);
    // Independent form of M12 on exp(2 pi i l1).
    const Complex k = 2.0 * pi * I;
    const Complex rp = rho(1, lam.plus(), tau);
    const Complex rm = rho(1, lam.minus(), tau);
    const Complex want =
        (k * k - 2.0 * (rp + rm) * k + 2.0 * (rho(2, lam.plus(), tau) + rho(2, lam.minus(), tau))) * f.value(lam);
    EXPECT_LT(rel(apply_M12(f, lam, m), want), 1e-8);
}

TEST(HbarExpansion, SecondOperatorDoublesAndFourthOrderDifference)
{
    const EllipticModulus m(Complex(0.0, 1.1));
    const WeightPoint lam{Complex(0.27, 0.03), Complex(-0.08, 0.05)};
    for (const JetFunction& f : {JetFunction::exponential(0, 1), JetFunction::theta_product(3, 2, m)}) {
        const HbarCoefficients a = hbar_coefficients(1, f, lam, kDefaultH0, m);
        const HbarCoefficients b = hbar_coefficients(2, f, lam, kDefaultH0, m);
        EXPECT_LT(rel(b.c0, 2.0 * a.c0), 1e-10);
        EXPECT_LT(rel(b.c2, 2.0 * a.c2), 1e-7);
        EXPECT_LT(rel(b.c4 - 2.0 * a.c4, apply_M24_minus_2M14(f, lam, m)), 1e-4);
    }
    EXPECT_THROW((void)hbar_coefficients(1, JetFunction::one(), lam, 0.0, m), InvalidArgument);
    EXPECT_THROW((void)hbar_coefficients(1, JetFunction::one(), lam, -0.1, m), InvalidArgument);
    EXPECT_THROW((void)hbar_coefficients(3, JetFunction::one(), lam, kDefaultH0, m), InvalidArgument);
}

TEST(HbarExpansion, GaugeIdentities)
{
    const EllipticModulus m(Complex(0.0, 1.2));
    for (WeightPoint lam : {WeightPoint{Complex(0.31, 0.05), Complex(0.12, -0.03)},
                            WeightPoint{Complex(-0.2, 0.3), Complex(0.41, 0.1)}}) {
        for (const JetFunction& f :
             {JetFunction::one(), JetFunction::exponential(1, -1), JetFunction::theta_product(2, 4, m)}) {
            const GaugeResiduals r = gauge_identity_residual(lam, m, f);
            EXPECT_LT(r.second_order, 1e-7) << f.name;
            EXPECT_LT(r.fourth_order, 1e-7) << f.name;
        }
    }
}

TEST(HbarExpansion, PotentialVariantDiffers)
{
    const EllipticModulus m(Complex(0.0, 1.1));
    const WeightPoint lam{Complex(0.27, 0.03), Complex(-0.08, 0.05)};
    EXPECT_GT(rel(potential_M24_minus_2M14_variant(lam, m), apply_M24_minus_2M14(JetFunction::one(), lam, m)),
              1e-3);
}

TEST(Inozemtsev, OffsetIsConstant)
{
    const Complex tau(0.0, 1.1);
    const Complex w1(0.5);
    const HalfPeriods hp(w1, w1 * tau);
    const WeightPoint a{Complex(0.31, 0.05), Complex(0.12, -0.03)};
    const WeightPoint b{Complex(-0.2, 0.3), Complex(0.41, 0.1)};
    EXPECT_LT(inozemtsev_residual(a, b, hp), 1e-9);
    EXPECT_LT(rel(inozemtsev_offset(a, hp), -32.0 * w1 * oracle::eta1(w1, tau)), 1e-9);
    for (const WeylElement& w : WeylElement::all()) {
        EXPECT_LT(rel(inozemtsev_offset(w.apply(a), hp), inozemtsev_offset(a, hp)), 1e-9);
    }
    InozemtsevCouplings g;
    g.one_body = {2.0, 0.0, 0.0};
    EXPECT_GT(inozemtsev_residual(a, b, hp, g), 1e-3);
}

TEST(Inozemtsev, OffsetForOtherLattice)
{
    const Complex tau(0.2, 0.9);
    const Complex w1(0.7, 0.2);
    const HalfPeriods hp(w1, w1 * tau);
    const WeightPoint a{Complex(0.21, 0.05), Complex(0.02, -0.13)};
    EXPECT_LT(rel(inozemtsev_offset(a, hp), -32.0 * w1 * oracle::eta1(w1, tau)), 1e-9);
}
