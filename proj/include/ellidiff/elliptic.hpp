#ifndef ELLIDIFF_ELLIPTIC_HPP
#define ELLIDIFF_ELLIPTIC_HPP

// Jacobi theta functions in the unit-period convention
//
//   theta_1(z|tau) = 2 SUM_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) pi z)
//   theta_2(z|tau) = 2 SUM_{n>=0}        q^{(n+1/2)^2} cos((2n+1) pi z)
//   theta_3(z|tau) = 1 + 2 SUM_{n>=1}        q^{n^2} cos(2 n pi z)
//   theta_4(z|tau) = 1 + 2 SUM_{n>=1} (-1)^n q^{n^2} cos(2 n pi z)
//
// with q = exp(i pi tau). These are the bilateral exponential sums over
// k in Z folded into symmetric pairs. With this sign of theta_1:
//
//   theta_1(z + 1/2)         = theta_2(z)
//   theta_1(z + tau/2)       = i exp(-i pi (z + tau/4)) theta_4(z)
//   theta_1(z + 1/2 + tau/2) =   exp(-i pi (z + tau/4)) theta_3(z)
//
// Weierstrass sigma, the co-sigma functions and wp are built on top for a
// lattice with half-periods omega1, omega2 and tau = omega2 / omega1.

#include <array>
#include <complex>

namespace ellidiff
{

using Complex = std::complex<double>;

/// The modulus tau together with the truncation and pole policy used by
/// every theta evaluation.
struct EllipticModulus
{
    Complex tau;
    double target_abs_err = 1e-14;
    int max_terms = 4001;
    /// Quotient formulas refuse denominators |theta_1| below this.
    double pole_floor = 1e-8;

    EllipticModulus() : EllipticModulus(Complex(0.0, 1.0)) {}
    explicit EllipticModulus(Complex tau_, double target = 1e-14, int max_terms_ = 4001,
                             double pole_floor_ = 1e-8);

    /// Same truncation policy, different tau (used for the doubled modulus).
    [[nodiscard]] EllipticModulus with_tau(Complex new_tau) const;

    friend bool operator==(const EllipticModulus&, const EllipticModulus&) = default;
};

/// theta_kind(z) = prefactor * theta_kind(z0), z = z0 + m + n tau.
struct ReducedArgument
{
    Complex z0;
    Complex prefactor;
    int shift_real = 0; // m
    int shift_tau = 0;  // n
};

[[nodiscard]] ReducedArgument reduce_argument(int kind, Complex z, const EllipticModulus& m);

/// order-th z-derivative of theta_kind(z|tau), order in 0..4.
[[nodiscard]] Complex theta(int kind, Complex z, const EllipticModulus& m, int order = 0);

/// All derivatives 0..4 of theta_kind at z in one pass.
[[nodiscard]] std::array<Complex, 5> theta_jet(int kind, Complex z, const EllipticModulus& m);

/// theta_1(z) guarded by the pole floor; use for every denominator.
[[nodiscard]] Complex theta1_nonzero(Complex z, const EllipticModulus& m);

/// (d/dz)^order log theta_1(z), order in 1..4.
[[nodiscard]] Complex log_theta1_deriv(Complex z, const EllipticModulus& m, int order);

/// Quasi-periods 2 omega1, 2 omega2 and the derived quantities.
class HalfPeriods
{
public:
    HalfPeriods(Complex omega1, Complex omega2, const EllipticModulus& policy = EllipticModulus());

    [[nodiscard]] Complex omega1() const noexcept { return omega1_; }
    [[nodiscard]] Complex omega2() const noexcept { return omega2_; }
    [[nodiscard]] Complex eta1() const noexcept { return eta1_; }
    /// From the Legendre relation eta1 omega2 - eta2 omega1 = i pi / 2.
    [[nodiscard]] Complex eta2() const noexcept;
    [[nodiscard]] Complex tau() const noexcept { return modulus_.tau; }
    [[nodiscard]] const EllipticModulus& modulus() const noexcept { return modulus_; }

    /// omega_r for r = 0..3 with omega_0 = 0 and omega_3 = -omega1 - omega2.
    [[nodiscard]] Complex omega(int r) const;

private:
    Complex omega1_;
    Complex omega2_;
    EllipticModulus modulus_;
    Complex eta1_;
};

/// eta1 = zeta(omega1) = -theta_1'''(0) / (12 omega1 theta_1'(0)).
[[nodiscard]] Complex eta1_const(Complex omega1, Complex omega2,
                                 const EllipticModulus& policy = EllipticModulus());

/// sigma (r = 0) and the co-sigma functions sigma_r (r = 1, 2, 3):
///   sigma(z)   = exp(eta1 z^2 / 2 omega1) theta_1(z / 2 omega1) / theta_1'(0)
///   sigma_r(z) = exp(eta1 z^2 / 2 omega1) theta_{r+1}(z / 2 omega1) / theta_{r+1}(0)
[[nodiscard]] Complex sigma_fn(int r, Complex z, const HalfPeriods& hp);

/// Weierstrass wp through the second log-derivative of theta_1.
[[nodiscard]] Complex wp(Complex z, const HalfPeriods& hp);

} // namespace ellidiff

#endif
