#ifndef ELLIDIFF_DIFFOPS_HPP
#define ELLIDIFF_DIFFOPS_HPP

// Finite difference operators  SUM_s c_s(lambda) T_s  acting on functions of
// (l1, l2). A term with shift s sends f(l1, l2) to f(l1 + s1 step, l2 + s2 step);
// shifts are half-integers, stored doubled so that the half-shifts of H+-
// and the whole shifts of M_d share one algebra.

#include "ellidiff/elliptic.hpp"
#include "ellidiff/weights.hpp"

#include <compare>
#include <functional>
#include <map>
#include <span>

namespace ellidiff
{

/// Shift (h1 / 2, h2 / 2) in units of the step.
struct ShiftVector
{
    int h1 = 0;
    int h2 = 0;

    static constexpr ShiftVector whole(int k1, int k2) noexcept { return {2 * k1, 2 * k2}; }

    [[nodiscard]] WeightPoint displacement(Complex step) const noexcept
    {
        return {0.5 * static_cast<double>(h1) * step, 0.5 * static_cast<double>(h2) * step};
    }

    friend ShiftVector operator+(ShiftVector a, ShiftVector b) noexcept
    {
        return {a.h1 + b.h1, a.h2 + b.h2};
    }
    friend auto operator<=>(const ShiftVector&, const ShiftVector&) = default;
};

using Coefficient = std::function<Complex(const WeightPoint&)>;
using TestFunction = std::function<Complex(const WeightPoint&)>;

class DifferenceOperator
{
public:
    DifferenceOperator(Complex step, const EllipticModulus& m) : step_(step), modulus_(m) {}

    static DifferenceOperator identity(Complex step, const EllipticModulus& m);

    /// Adds c to the coefficient already at s (if any).
    void add_term(ShiftVector s, Coefficient c);

    [[nodiscard]] Complex step() const noexcept { return step_; }
    [[nodiscard]] const EllipticModulus& modulus() const noexcept { return modulus_; }
    [[nodiscard]] const std::map<ShiftVector, Coefficient>& terms() const noexcept { return terms_; }
    [[nodiscard]] bool has_shift(ShiftVector s) const { return terms_.contains(s); }

    /// c_s(lam), or 0 if s does not occur.
    [[nodiscard]] Complex coefficient(ShiftVector s, const WeightPoint& lam) const;

private:
    Complex step_;
    EllipticModulus modulus_;
    std::map<ShiftVector, Coefficient> terms_;
};

[[nodiscard]] Complex apply(const DifferenceOperator& op, const TestFunction& f,
                            const WeightPoint& lam);

/// (a o b): shift s_a + s_b with coefficient c_a(lam) c_b(lam + s_a step).
[[nodiscard]] DifferenceOperator compose(const DifferenceOperator& a, const DifferenceOperator& b);
[[nodiscard]] DifferenceOperator operator+(const DifferenceOperator& a, const DifferenceOperator& b);
[[nodiscard]] DifferenceOperator operator-(const DifferenceOperator& a, const DifferenceOperator& b);
[[nodiscard]] DifferenceOperator scale(Complex k, const DifferenceOperator& a);

/// max over shifts and samples of |c_a - c_b| / max(1, |c_a|, |c_b|).
[[nodiscard]] double op_distance(const DifferenceOperator& a, const DifferenceOperator& b,
                                 std::span<const WeightPoint> samples);

/// op_distance(a o b, b o a).
[[nodiscard]] double commutator_distance(const DifferenceOperator& a, const DifferenceOperator& b,
                                         std::span<const WeightPoint> samples);

/// R_w A R_w^{-1} with (R_w f)(lam) = f(w^{-1} lam): shift w s, coefficient c_s(w^{-1} lam).
[[nodiscard]] DifferenceOperator conjugate_by_weyl(const DifferenceOperator& a, const WeylElement& w);

// ---- the elliptic C2 system ------------------------------------------------

/// u-dependent prefactors of M_1(u), M_2(u); GH(u) = G(u) H(u) is entire in u.
[[nodiscard]] Complex prefactor_F(Complex u, Complex hbar, const EllipticModulus& m);
[[nodiscard]] Complex prefactor_G(Complex u, Complex hbar, const EllipticModulus& m);
[[nodiscard]] Complex prefactor_H(Complex u, Complex hbar, const EllipticModulus& m);
[[nodiscard]] Complex prefactor_GH(Complex u, Complex hbar, const EllipticModulus& m);

/// The zero-shift function U(lambda_p, lambda_q) of M_2(u).
[[nodiscard]] Complex u_term(Complex lp, Complex lq, Complex hbar, const EllipticModulus& m);

[[nodiscard]] DifferenceOperator build_M(int d, Complex u, Complex hbar, const EllipticModulus& m);
[[nodiscard]] DifferenceOperator build_M_tilde(int d, Complex hbar, const EllipticModulus& m);

/// H_+ (sign = +1) or H_- (sign = -1); M~1 = H+ H-, M~2 = H+^2 + H-^2.
[[nodiscard]] DifferenceOperator build_H_pm(int sign, Complex hbar, const EllipticModulus& m);

/// Constant value of  SUM U(lambda_p, lambda_q) - SUM (zero shift of M~2).
[[nodiscard]] Complex constant_K(Complex hbar, const EllipticModulus& m);
/// The same four-term sum with the opposite overall sign, for negative controls.
[[nodiscard]] Complex constant_K_printed_sign(Complex hbar, const EllipticModulus& m);

/// The lambda-dependent left side whose constancy defines K.
[[nodiscard]] Complex lemma22_lhs(const WeightPoint& lam, Complex hbar, const EllipticModulus& m);
[[nodiscard]] double lemma22_residual(const WeightPoint& lam, Complex hbar, const EllipticModulus& m);

// ---- one-variable difference Lame operator ---------------------------------

struct LameOperator
{
    Complex hbar;
    int ell = 1;
    EllipticModulus modulus;
};

/// [th1(z - l h)/th1(z)] f(z + h) + [th1(z + l h)/th1(z)] f(z - h).
[[nodiscard]] Complex lame_apply(const LameOperator& op, const std::function<Complex(Complex)>& f,
                                 Complex z);

/// E_i = th1(2h) th_i(0) / (th1(h) th_i(h)) for i = 2, 3, 4.
[[nodiscard]] Complex lame_eigenvalue(int i, Complex hbar, const EllipticModulus& m);

/// |th1(t - h) / th1(t + h) - exp(2 h c)|.
[[nodiscard]] double bethe_residual(Complex t, Complex c, Complex hbar, const EllipticModulus& m);

} // namespace ellidiff

#endif
