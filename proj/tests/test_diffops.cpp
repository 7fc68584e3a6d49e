#include "ellidiff/diffops.hpp"
#include "ellidiff/errors.hpp"
#include "ellidiff/sampling.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace ellidiff;
using oracle::rel;

namespace
{

const EllipticModulus kM(Complex(0.0, 1.1));
const Complex kH(0.1, 0.0);

// A small operator with smooth, distinct coefficients on every shift.
DifferenceOperator toy(Complex step, double salt)
{
    DifferenceOperator op(step, kM);
    op.add_term({0, 0}, [salt](const WeightPoint& x) { return 1.0 + salt * x.l1 * x.l2; });
    op.add_term({2, 0}, [salt](const WeightPoint& x) { return std::exp(salt * x.l2); });
    op.add_term({-1, 1}, [salt](const WeightPoint& x) { return x.l1 - salt; });
    op.add_term({0, -2}, [salt](const WeightPoint& x) { return std::sin(x.l1 + salt * x.l2); });
    return op;
}

const TestFunction kF = [](const WeightPoint& x) { return std::exp(Complex(0.3, 0.7) * x.l1 - 1.3 * x.l2 * x.l2); };

std::vector<WeightPoint> points(const char* stream, int n)
{
    Sampler s(11, stream);
    std::vector<WeightPoint> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(s.weight_point(kM));
    }
    return out;
}

} // namespace

TEST(ShiftVector, ArithmeticAndDisplacement)
{
    const ShiftVector a = ShiftVector::whole(1, -1);
    EXPECT_EQ(a.h1, 2);
    EXPECT_EQ(a.h2, -2);
    const ShiftVector b{1, 1};
    EXPECT_EQ((a + b), (ShiftVector{3, -1}));
    const WeightPoint d = b.displacement(0.2);
    EXPECT_EQ(d.l1, Complex(0.1));
    EXPECT_EQ(d.l2, Complex(0.1));
    EXPECT_LT(ShiftVector({0, 1}), ShiftVector({1, 0}));
}

TEST(DifferenceOperator, ApplyIsTheShiftedSum)
{
    const DifferenceOperator op = toy(0.3, 0.5);
    const WeightPoint x{0.2, 0.1};
    Complex want = 0.0;
    want += (1.0 + 0.5 * 0.2 * 0.1) * kF(x);
    want += std::exp(0.5 * 0.1) * kF({0.2 + 0.3, 0.1});
    want += (0.2 - 0.5) * kF({0.2 - 0.15, 0.1 + 0.15});
    want += std::sin(0.2 + 0.5 * 0.1) * kF({0.2, 0.1 - 0.3});
    EXPECT_LT(rel(apply(op, kF, x), want), 1e-15);
    EXPECT_EQ(op.coefficient({5, 5}, x), Complex(0.0));
    EXPECT_TRUE(op.has_shift({-1, 1}));
}

TEST(DifferenceOperator, AddTermMergesCoefficients)
{
    DifferenceOperator op(0.1, kM);
    op.add_term({2, 0}, [](const WeightPoint&) { return Complex(1.5); });
    op.add_term({2, 0}, [](const WeightPoint&) { return Complex(2.0); });
    EXPECT_EQ(op.terms().size(), 1U);
    EXPECT_EQ(op.coefficient({2, 0}, {0.0, 0.0}), Complex(3.5));
}

TEST(DifferenceOperator, CompositionIsSequentialApplication)
{
    const DifferenceOperator a = toy(0.3, 0.5);
    const DifferenceOperator b = toy(0.3, -0.7);
    const DifferenceOperator ab = compose(a, b);
    const TestFunction bf = [&b](const WeightPoint& x) { return apply(b, kF, x); };
    for (const WeightPoint& x : points("compose", 5)) {
        EXPECT_LT(rel(apply(ab, kF, x), apply(a, bf, x)), 1e-14);
    }
    // Associativity on coefficients.
    const DifferenceOperator c = toy(0.3, 0.2);
    const auto pts = points("assoc", 4);
    EXPECT_LT(op_distance(compose(compose(a, b), c), compose(a, compose(b, c)), pts), 1e-14);
}

TEST(DifferenceOperator, LinearCombinations)
{
    const DifferenceOperator a = toy(0.3, 0.5);
    const DifferenceOperator b = toy(0.3, -0.7);
    const WeightPoint x{0.2, 0.1};
    EXPECT_LT(rel(apply(a + b, kF, x), apply(a, kF, x) + apply(b, kF, x)), 1e-15);
    EXPECT_LT(rel(apply(a - b, kF, x), apply(a, kF, x) - apply(b, kF, x)), 1e-15);
    EXPECT_LT(rel(apply(scale(Complex(2.0, -1.0), a), kF, x), Complex(2.0, -1.0) * apply(a, kF, x)), 1e-15);
    const auto pts = points("lin", 3);
    EXPECT_EQ(op_distance(a - a, DifferenceOperator(0.3, kM), pts), 0.0);
}

TEST(DifferenceOperator, MismatchedOperandsThrow)
{
    const DifferenceOperator a = toy(0.3, 0.5);
    const DifferenceOperator b = toy(0.2, 0.5);
    EXPECT_THROW((void)compose(a, b), ModulusMismatch);
    EXPECT_THROW((void)(a + b), ModulusMismatch);
    const DifferenceOperator c(0.3, EllipticModulus(Complex(0.0, 1.3)));
    EXPECT_THROW((void)compose(a, c), ModulusMismatch);
}

TEST(DifferenceOperator, WeylConjugationMatchesDefinition)
{
    const DifferenceOperator a = toy(0.3, 0.5);
    for (const WeylElement& w : WeylElement::all()) {
        const DifferenceOperator conj = conjugate_by_weyl(a, w);
        const WeylElement wi = w.inverse();
        // (R_w A R_w^-1 f)(x) = (A g)(w^-1 x) with g(y) = f(w y).
        const TestFunction g = [&w](const WeightPoint& y) { return kF(w.apply(y)); };
        for (const WeightPoint& x : points("weyl", 3)) {
            EXPECT_LT(rel(apply(conj, kF, x), apply(a, g, wi.apply(x))), 1e-14);
        }
    }
}

TEST(WeylGroup, GroupStructure)
{
    const auto all = WeylElement::all();
    for (const WeylElement& a : all) {
        EXPECT_EQ(a.compose(a.inverse()), WeylElement{});
        for (const WeylElement& b : all) {
            const WeightPoint x{Complex(0.3, 0.1), Complex(-0.2, 0.4)};
            EXPECT_EQ(a.compose(b).apply(x), a.apply(b.apply(x)));
        }
    }
}

TEST(EllipticSystem, FactorizationAndCommutativity)
{
    const auto pts = points("system", 3);
    const DifferenceOperator hp = build_H_pm(1, kH, kM);
    const DifferenceOperator hm = build_H_pm(-1, kH, kM);
    const DifferenceOperator m1 = build_M_tilde(1, kH, kM);
    const DifferenceOperator m2 = build_M_tilde(2, kH, kM);
    EXPECT_LT(op_distance(compose(hp, hm), m1, pts), 1e-12);
    EXPECT_LT(op_distance(compose(hp, hp) + compose(hm, hm), m2, pts), 1e-12);
    EXPECT_LT(commutator_distance(m1, m2, pts), 1e-12);
    EXPECT_LT(commutator_distance(build_M(1, 0.13, kH, kM), build_M(2, Complex(-0.2, 0.05), kH, kM), pts), 1e-12);
    // A generic pair of shift operators does not commute, so the measure is not vacuous.
    EXPECT_GT(commutator_distance(toy(kH, 0.5), toy(kH, -0.7), pts), 1e-3);
    EXPECT_THROW((void)build_M(3, 0.1, kH, kM), InvalidArgument);
    EXPECT_THROW((void)build_H_pm(0, kH, kM), InvalidArgument);
}

TEST(EllipticSystem, SpectralDependenceIsAPrefactor)
{
    const auto pts = points("prefactor", 3);
    const Complex u(0.13, 0.02);
    EXPECT_LT(op_distance(build_M(1, u, kH, kM), scale(prefactor_F(u, kH, kM), build_M_tilde(1, kH, kM)), pts), 1e-12);
    // The zero shift of M_2(u) differs from G M~2 by the constant G K - G H.
    const DifferenceOperator m2u = build_M(2, u, kH, kM);
    const DifferenceOperator expect =
        scale(prefactor_G(u, kH, kM), build_M_tilde(2, kH, kM)) +
        scale(prefactor_G(u, kH, kM) * constant_K(kH, kM) - prefactor_GH(u, kH, kM),
              DifferenceOperator::identity(kH, kM));
    EXPECT_LT(op_distance(m2u, expect, pts), 1e-12);
    EXPECT_LT(rel(prefactor_GH(u, kH, kM), prefactor_G(u, kH, kM) * prefactor_H(u, kH, kM)), 1e-13);
    // G H stays finite where H alone has a pole.
    EXPECT_TRUE(std::isfinite(std::abs(prefactor_GH(0.0, kH, kM))));
}

TEST(EllipticSystem, PrefactorClosedForms)
{
    const Complex tau = kM.tau;
    const auto t = [tau](Complex z) { return oracle::theta(1, z, tau); };
    const Complex u(0.21, -0.04);
    const Complex h = kH;
    const Complex f = t(u) * t(u + 2.0 * h) * t(u + 2.0 * h) * t(u + 4.0 * h) /
                      (t(-3.0 * h) * t(-3.0 * h) * t(h) * t(h));
    EXPECT_LT(rel(prefactor_F(u, h, kM), f), 1e-12);
    const Complex hh = t(u + 6.0 * h) * t(u - 3.0 * h) * t(2.0 * h) / (t(u) * t(u + 3.0 * h) * t(6.0 * h));
    EXPECT_LT(rel(prefactor_H(u, h, kM), hh), 1e-12);
}

TEST(EllipticSystem, WeylInvariance)
{
    const auto pts = points("weyl-system", 3);
    for (int d = 1; d <= 2; ++d) {
        const DifferenceOperator op = build_M_tilde(d, kH, kM);
        for (const WeylElement& w : WeylElement::all()) {
            EXPECT_LT(op_distance(conjugate_by_weyl(op, w), op, pts), 1e-12);
        }
    }
}

TEST(LemmaConstant, LeftSideIsConstant)
{
    const Complex k = constant_K(kH, kM);
    for (const WeightPoint& x : points("lemma", 10)) {
        EXPECT_LT(std::abs(lemma22_lhs(x, kH, kM) - k), 1e-11);
        EXPECT_LT(lemma22_residual(x, kH, kM), 1e-11);
    }
    EXPECT_EQ(constant_K_printed_sign(kH, kM), -k);
    EXPECT_GT(std::abs(k), 1e-3);
}

TEST(Lame, ThetaEigenfunctionsAgainstOracle)
{
    const Complex tau = kM.tau;
    const Complex h(0.07, 0.01);
    const LameOperator op{h, 1, kM};
    for (int i = 2; i <= 4; ++i) {
        const auto f = [i, tau](Complex z) { return oracle::theta(i, z, tau); };
        const Complex e = oracle::theta(1, 2.0 * h, tau) * oracle::theta(i, 0.0, tau) /
                          (oracle::theta(1, h, tau) * oracle::theta(i, h, tau));
        EXPECT_LT(rel(lame_eigenvalue(i, h, kM), e), 1e-13);
        for (Complex z : {Complex(0.23, 0.1), Complex(-0.31, 0.4)}) {
            EXPECT_LT(rel(lame_apply(op, f, z), e * f(z)), 1e-12);
        }
    }
    EXPECT_THROW((void)lame_eigenvalue(1, h, kM), InvalidArgument);
}

TEST(Lame, BetheSolutionsGiveEigenfunctions)
{
    const Complex tau = kM.tau;
    const Complex i_pi(0.0, oracle::pi);
    const std::pair<Complex, Complex> sols[] = {{0.5, 0.0}, {(1.0 + tau) / 2.0, i_pi}, {tau / 2.0, i_pi}};
    for (Complex h : {Complex(0.1), Complex(0.07, 0.02)}) {
        const LameOperator op{h, 1, kM};
        for (auto [t, c] : sols) {
            EXPECT_LT(bethe_residual(t, c, h, kM), 1e-11);
            // e^{cz} theta_1(z + t) is then an eigenfunction: the ratio is z-independent.
            const auto f = [t = t, c = c, tau](Complex z) { return std::exp(c * z) * oracle::theta(1, z + t, tau); };
            const Complex z1(0.21, 0.13);
            const Complex z2(-0.34, 0.27);
            EXPECT_LT(rel(lame_apply(op, f, z1) / f(z1), lame_apply(op, f, z2) / f(z2)), 1e-12);
        }
        // A non-solution fails.
        EXPECT_GT(bethe_residual(0.3, 0.0, h, kM), 1e-3);
    }
}
