#ifndef ELLIDIFF_DIFFLIMIT_HPP
#define ELLIDIFF_DIFFLIMIT_HPP

// Small-hbar expansion of M~1, M~2:
//
//   M~1 = 4 + M12 h^2 + M14 h^4 + ...,   M~2 = 8 + M22 h^2 + M24 h^4 + ...
//
// with M22 = 2 M12. Below rho_k(+-) = theta_1^(k) / theta_1 at lambda_+- = l1 +- l2
// and L_k = (log theta_1)^(k).

#include "ellidiff/elliptic.hpp"
#include "ellidiff/jet.hpp"
#include "ellidiff/weights.hpp"

#include <array>

namespace ellidiff
{

struct HbarCoefficients
{
    Complex c0;
    Complex c2;
    Complex c4;
};

inline constexpr double kDefaultH0 = 0.0125;
inline constexpr int kHbarNodes = 6;

/// Interpolates g(h) = (M~d f)(lam) at h = h0 k / 6, k = 1..6, by a degree-5
/// polynomial in h^2 and returns its first three coefficients.
[[nodiscard]] HbarCoefficients hbar_coefficients(int d, const JetFunction& f, const WeightPoint& lam,
                                                 double h0, const EllipticModulus& m);

/// M12 = d1^2 + d2^2 - 2 (rho1(+) + rho1(-)) d1 - 2 (rho1(+) - rho1(-)) d2
///       + 2 (rho2(+) + rho2(-)).
[[nodiscard]] Complex apply_M12(const Jet2& f, const WeightPoint& lam, const EllipticModulus& m);
[[nodiscard]] inline Complex apply_M12(const JetFunction& f, const WeightPoint& lam,
                                       const EllipticModulus& m)
{
    return apply_M12(f.jet(lam), lam, m);
}

/// M24 - 2 M14 = B^2 with
/// B = d1 d2 - (rho1(+) - rho1(-)) d1 - (rho1(+) + rho1(-)) d2 + rho2(+) - rho2(-).
[[nodiscard]] Complex apply_M24_minus_2M14(const Jet2& f, const WeightPoint& lam,
                                           const EllipticModulus& m);
[[nodiscard]] inline Complex apply_M24_minus_2M14(const JetFunction& f, const WeightPoint& lam,
                                                  const EllipticModulus& m)
{
    return apply_M24_minus_2M14(f.jet(lam), lam, m);
}

/// The zeroth-order part of M24 - 2 M14 with the alternative coefficients
/// 1/2 on rho4 and 2 on rho2 rho1^2; kept only as a negative control.
[[nodiscard]] Complex potential_M24_minus_2M14_variant(const WeightPoint& lam,
                                                       const EllipticModulus& m);

/// Jet of Delta = theta_1(+) theta_1(-).
[[nodiscard]] Jet2 delta_jet(const WeightPoint& lam, const EllipticModulus& m);

struct GaugeResiduals
{
    double second_order = 0.0; // Delta^-1 M12 Delta  vs  d1^2 + d2^2 + 4 (L2(+) + L2(-))
    double fourth_order = 0.0; // Delta^-1 (M24 - 2 M14) Delta  vs  D^2
};

/// D = d1 d2 + 2 (L2(+) - L2(-)); returns (D^2 f)(lam).
[[nodiscard]] Complex apply_D_squared(const Jet2& f, const WeightPoint& lam, const EllipticModulus& m);

/// Residuals relative to max(1, |expected|).
[[nodiscard]] GaugeResiduals gauge_identity_residual(const WeightPoint& lam, const EllipticModulus& m,
                                                     const JetFunction& f);

/// g(g - 1) for the (x1 +- x2) interaction and g_r (g_r - 1), r = 1..3, for
/// the one-body terms.
struct InozemtsevCouplings
{
    Complex pair = 2.0;
    std::array<Complex, 3> one_body{};
};

/// V - W at lam, where V = 4 (L2(+) + L2(-)) and
/// W = -8 omega1^2 [ g(g-1) (wp(x1 + x2) + wp(x1 - x2))
///                   + SUM_r g_r(g_r-1) (wp(omega_r + x1) + wp(omega_r + x2)) ],
/// x = 2 omega1 lam. Constant in lam exactly when the one-body couplings vanish.
[[nodiscard]] Complex inozemtsev_offset(const WeightPoint& lam, const HalfPeriods& hp,
                                        const InozemtsevCouplings& g = {});

[[nodiscard]] double inozemtsev_residual(const WeightPoint& lam_a, const WeightPoint& lam_b,
                                         const HalfPeriods& hp, const InozemtsevCouplings& g = {});

} // namespace ellidiff

#endif
