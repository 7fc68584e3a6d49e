#ifndef ELLIDIFF_VANDIEJEN_HPP
#define ELLIDIFF_VANDIEJEN_HPP

// van Diejen's commuting pair H1, H2 on functions of (x1, x2) with step gamma,
// built from Weierstrass sigma functions, and their link to M~1, M~2 through
// the gauge map phi(f)(x) = exp(eta1 |x|^2 / omega1) f(x / 2 omega1).
//
// Operators here reuse DifferenceOperator with WeightPoint read as (x1, x2)
// and step gamma.

#include "ellidiff/diffops.hpp"
#include "ellidiff/elliptic.hpp"

#include <array>
#include <span>

namespace ellidiff
{

struct VDParams
{
    Complex mu;
    std::array<Complex, 4> mu_r{};
    std::array<Complex, 4> mu_r_prime{};
    Complex gamma;
    HalfPeriods hp;

    /// Throws ConstraintViolation unless SUM_r (mu_r + mu_r') = 0 within 1e-12.
    VDParams(Complex mu_, std::array<Complex, 4> mu_r_, std::array<Complex, 4> mu_r_prime_,
             Complex gamma_, HalfPeriods hp_);

    /// mu = -gamma, mu_r = mu_r' = 0: the point where w = 1 and U_{12,1} = 0.
    static VDParams specialized(Complex gamma, const HalfPeriods& hp);
};

/// v(z) = sigma(z + mu) / sigma(z).
[[nodiscard]] Complex vd_v(Complex z, const VDParams& p);
/// v(z) written through theta_1 with the Gaussian factor pulled out.
[[nodiscard]] Complex vd_v_theta_form(Complex z, const VDParams& p);
/// w(z) = PROD_r sigma_r(z + mu_r) sigma_r(z + mu_r' + gamma/2) / (sigma_r(z) sigma_r(z + gamma/2)).
[[nodiscard]] Complex vd_w(Complex z, const VDParams& p);

[[nodiscard]] Complex vd_c(int r, const VDParams& p);
[[nodiscard]] Complex vd_U12_1(const WeightPoint& x, const VDParams& p);
[[nodiscard]] Complex vd_U12_2(const WeightPoint& x, const VDParams& p);

[[nodiscard]] DifferenceOperator build_vd_H(int k, const VDParams& p);

/// phi(f) and phi^{-1}(g) for a given lattice.
[[nodiscard]] TestFunction gauge_phi(TestFunction f, const HalfPeriods& hp);
[[nodiscard]] TestFunction gauge_phi_inverse(TestFunction g, const HalfPeriods& hp);

struct IdentificationResiduals
{
    double first = 0.0;  // phi M~1 phi^-1 against the rescaled H1
    double second = 0.0; // phi M~2 phi^-1 against the rescaled H2 + 2 H1
};

/// Compares phi M~d phi^-1 with exp(sign * 2 eta1 gamma^2 / omega1) times the
/// van Diejen operators of `p`, by applying both to a panel of six theta
/// products at x = 2 omega1 lam for each lam in `samples`. The identity holds
/// for sign = -1 at the specialized parameters with gamma = 2 omega1 hbar.
[[nodiscard]] IdentificationResiduals identification_residual(const VDParams& p, Complex hbar,
                                                              std::span<const WeightPoint> samples,
                                                              int prefactor_sign = -1);

/// Same check at the specialized parameters.
[[nodiscard]] IdentificationResiduals identification_residual(Complex hbar, const HalfPeriods& hp,
                                                              std::span<const WeightPoint> samples);

} // namespace ellidiff

#endif
