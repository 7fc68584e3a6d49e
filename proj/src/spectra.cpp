#include "ellidiff/spectra.hpp"

#include "ellidiff/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace ellidiff
{

namespace
{

constexpr double pi = std::numbers::pi;
const Complex I(0.0, 1.0);

int mod2(int a) noexcept { return ((a % 2) + 2) % 2; }

// Largest |gamma| worth summing along one axis: beyond it every term is below
// the target, and the terms are past their peak.
int axis_cutoff(double im_lam, const EllipticModulus& m)
{
    const double t = m.tau.imag();
    const double peak = 4.0 * std::abs(im_lam) / t + 2.0;
    for (int g = 0;; ++g) {
        if (g > m.max_terms) {
            throw TruncationOverflow("lattice theta sum exceeded max_terms");
        }
        const double bound = std::exp(-pi * t * g * g / 2.0 + 2.0 * pi * g * std::abs(im_lam));
        if (g > peak && bound < 1e-3 * m.target_abs_err) {
            return g;
        }
    }
}

void check_index(int i, int lo, int hi, const char* what)
{
    if (i < lo || i > hi) {
        throw InvalidArgument(std::string(what) + " out of range: " + std::to_string(i));
    }
}

} // namespace

LatticeClass lattice_class(int a, int b) noexcept
{
    const int x = mod2(a);
    const int y = mod2(b);
    if (x == 0) {
        return y == 0 ? LatticeClass::zero : LatticeClass::eps2;
    }
    return y == 0 ? LatticeClass::eps1 : LatticeClass::eps1_eps2;
}

std::array<int, 2> class_representative(LatticeClass mu) noexcept
{
    switch (mu) {
    case LatticeClass::zero: return {0, 0};
    case LatticeClass::eps1: return {1, 0};
    case LatticeClass::eps2: return {0, 1};
    case LatticeClass::eps1_eps2: return {1, 1};
    }
    return {0, 0};
}

Complex theta_mu_lattice(int a, int b, const WeightPoint& lam, const EllipticModulus& m)
{
    const int n1 = axis_cutoff(lam.l1.imag(), m);
    const int n2 = axis_cutoff(lam.l2.imag(), m);
    const int a0 = mod2(a);
    const int b0 = mod2(b);
    Complex sum = 0.0;
    for (int k1 = -(n1 / 2 + 1); k1 <= n1 / 2 + 1; ++k1) {
        for (int k2 = -(n2 / 2 + 1); k2 <= n2 / 2 + 1; ++k2) {
            const double d1 = 2 * k1 + a0;
            const double d2 = 2 * k2 + b0;
            sum += std::exp(2.0 * pi * I *
                            (d1 * lam.l1 + d2 * lam.l2 + (d1 * d1 + d2 * d2) * m.tau / 4.0));
        }
    }
    return sum;
}

Complex theta_mu(LatticeClass mu, const WeightPoint& lam, const EllipticModulus& m,
                 ThetaMethod method)
{
    if (method == ThetaMethod::lattice) {
        const auto r = class_representative(mu);
        return theta_mu_lattice(r[0], r[1], lam, m);
    }
    const EllipticModulus m2 = m.with_tau(2.0 * m.tau);
    // Even axis components give theta_3, odd ones theta_2.
    const auto r = class_representative(mu);
    const Complex x = theta(r[0] == 0 ? 3 : 2, 2.0 * lam.l1, m2);
    const Complex y = theta(r[1] == 0 ? 3 : 2, 2.0 * lam.l2, m2);
    return x * y;
}

Complex s_mu(FundamentalWeight mu, const WeightPoint& lam, const EllipticModulus& m)
{
    std::array<int, 2> v{0, 0};
    if (mu == FundamentalWeight::lambda1) {
        v = {1, 0};
    } else if (mu == FundamentalWeight::lambda2) {
        v = {1, 1};
    }
    Complex sum = 0.0;
    int stabilizer = 0;
    for (const WeylElement& w : WeylElement::all()) {
        const auto wv = w.apply(v);
        if (wv == v) {
            ++stabilizer;
        }
        sum += theta_mu(lattice_class(wv[0], wv[1]), lam, m);
    }
    return sum / static_cast<double>(stabilizer);
}

Complex s_mu_closed(FundamentalWeight mu, const WeightPoint& lam, const EllipticModulus& m)
{
    switch (mu) {
    case FundamentalWeight::zero: return theta_mu(LatticeClass::zero, lam, m);
    case FundamentalWeight::lambda1:
        return 2.0 * (theta_mu(LatticeClass::eps1, lam, m) + theta_mu(LatticeClass::eps2, lam, m));
    case FundamentalWeight::lambda2: return 4.0 * theta_mu(LatticeClass::eps1_eps2, lam, m);
    }
    return 0.0;
}

Complex basis_f(int i, const WeightPoint& lam, const EllipticModulus& m)
{
    check_index(i, 0, 3, "basis index");
    if (i <= 1) {
        const Complex a = theta_mu(LatticeClass::eps1, lam, m);
        const Complex b = theta_mu(LatticeClass::eps2, lam, m);
        return i == 0 ? a - b : a + b;
    }
    const Complex a = theta_mu(LatticeClass::zero, lam, m);
    const Complex b = theta_mu(LatticeClass::eps1_eps2, lam, m);
    return i == 2 ? a + b : a - b;
}

Complex basis_f_product(int i, const WeightPoint& lam, const EllipticModulus& m)
{
    check_index(i, 0, 3, "basis index");
    const Complex p = lam.plus();
    const Complex q = lam.minus();
    if (i == 0) {
        return -theta(1, p, m) * theta(1, q, m);
    }
    return theta(i + 1, p, m) * theta(i + 1, q, m);
}

Complex eigenvalue(int d, int i, Complex hbar, const EllipticModulus& m)
{
    check_index(d, 1, 2, "operator degree");
    check_index(i, 0, 3, "eigenvalue index");
    if (i == 0) {
        return 0.0;
    }
    const Complex e = lame_eigenvalue(i + 1, hbar, m);
    return static_cast<double>(d) * e * e;
}

double eigen_residual(int d, int i, const WeightPoint& lam, Complex hbar, const EllipticModulus& m)
{
    const DifferenceOperator op = build_M_tilde(d, hbar, m);
    const TestFunction f = [i, &m](const WeightPoint& x) { return basis_f(i, x, m); };
    const Complex lhs = apply(op, f, lam);
    const Complex rhs = eigenvalue(d, i, hbar, m) * f(lam);
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

Complex mixed_eigenvalue(int i, int j, Complex hbar, const EllipticModulus& m)
{
    check_index(i, 1, 3, "mixed index");
    check_index(j, 1, 3, "mixed index");
    return lame_eigenvalue(i + 1, hbar, m) * lame_eigenvalue(j + 1, hbar, m);
}

double mixed_eigen_residual(int i, int j, const WeightPoint& lam, Complex hbar,
                            const EllipticModulus& m)
{
    const DifferenceOperator op = compose(build_H_pm(1, hbar, m), build_H_pm(-1, hbar, m));
    const TestFunction f = [i, j, &m](const WeightPoint& x) {
        return theta(i + 1, x.plus(), m) * theta(j + 1, x.minus(), m);
    };
    const Complex lhs = apply(op, f, lam);
    const Complex rhs = mixed_eigenvalue(i, j, hbar, m) * f(lam);
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

namespace
{

constexpr std::array<FundamentalWeight, 3> kFundamental{
    FundamentalWeight::zero, FundamentalWeight::lambda1, FundamentalWeight::lambda2};

double condition_number(const Eigen::Matrix3cd& a)
{
    Eigen::JacobiSVD<Eigen::Matrix3cd> svd(a);
    const auto& s = svd.singularValues();
    return s(2) > 0.0 ? s(0) / s(2) : std::numeric_limits<double>::infinity();
}

} // namespace

PreservationResult preservation_residual(int d, Complex hbar, const EllipticModulus& m,
                                         Sampler& sampler, int validation, double max_condition)
{
    const DifferenceOperator op = build_M_tilde(d, hbar, m);
    const auto basis = [&m](int k) {
        return TestFunction([k, &m](const WeightPoint& x) { return s_mu_closed(kFundamental[k], x, m); });
    };
    const auto probe = [&](const WeightPoint& lam) {
        for (int k = 0; k < 3; ++k) {
            (void)apply(op, basis(k), lam);
        }
    };

    PreservationResult res;
    Eigen::Matrix3cd colloc;
    Eigen::Matrix3cd rhs;
    bool ok = false;
    for (int attempt = 0; attempt < kSamplerRetries && !ok; ++attempt) {
        std::array<WeightPoint, 3> pts{};
        for (auto& p : pts) {
            p = sampler.valid_point(m, probe);
        }
        for (int r = 0; r < 3; ++r) {
            for (int k = 0; k < 3; ++k) {
                colloc(r, k) = s_mu_closed(kFundamental[k], pts[r], m);
                rhs(r, k) = apply(op, basis(k), pts[r]);
            }
        }
        res.condition = condition_number(colloc);
        ok = res.condition < max_condition;
    }
    if (!ok) {
        throw IllConditioned("could not find a well-conditioned collocation set");
    }
    res.matrix = colloc.fullPivLu().solve(rhs);

    for (int v = 0; v < validation; ++v) {
        const WeightPoint lam = sampler.valid_point(m, probe);
        for (int k = 0; k < 3; ++k) {
            const Complex exact = apply(op, basis(k), lam);
            Complex fit = 0.0;
            for (int j = 0; j < 3; ++j) {
                fit += res.matrix(j, k) * s_mu_closed(kFundamental[j], lam, m);
            }
            res.residual =
                std::max(res.residual, std::abs(exact - fit) / std::max(1.0, std::abs(exact)));
        }
    }
    return res;
}

Eigen::Matrix3cd s_to_f_basis()
{
    // Columns: f_1 = S_L1 / 2, f_2 = S_0 + S_L2 / 4, f_3 = S_0 - S_L2 / 4 in S coordinates.
    Eigen::Matrix3cd p;
    p << 0.0, 1.0, 1.0,
         0.5, 0.0, 0.0,
         0.0, 0.25, -0.25;
    return p;
}

double th1_membership_residual(const std::function<Complex(const WeightPoint&)>& f,
                               const WeightPoint& lam, const EllipticModulus& m)
{
    const Complex f0 = f(lam);
    double worst = 0.0;
    for (int axis = 1; axis <= 2; ++axis) {
        const Complex li = axis == 1 ? lam.l1 : lam.l2;
        WeightPoint real_shift = lam;
        WeightPoint tau_shift = lam;
        (axis == 1 ? real_shift.l1 : real_shift.l2) += 1.0;
        (axis == 1 ? tau_shift.l1 : tau_shift.l2) += m.tau;
        const Complex ta = f(real_shift);
        const Complex tt = std::exp(2.0 * pi * I * (2.0 * li + m.tau)) * f(tau_shift);
        worst = std::max({worst, std::abs(ta - f0), std::abs(tt - f0)});
    }
    return worst;
}

double basis_condition(std::span<const WeightPoint> points, const EllipticModulus& m)
{
    if (points.size() != 3) {
        throw InvalidArgument("basis condition needs exactly three points");
    }
    Eigen::Matrix3cd a;
    for (int r = 0; r < 3; ++r) {
        for (int k = 0; k < 3; ++k) {
            a(r, k) = basis_f(k + 1, points[static_cast<std::size_t>(r)], m);
        }
    }
    return condition_number(a);
}

} // namespace ellidiff
