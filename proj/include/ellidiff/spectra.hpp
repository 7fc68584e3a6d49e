#ifndef ELLIDIFF_SPECTRA_HPP
#define ELLIDIFF_SPECTRA_HPP

// Level-1 theta functions on the C2 weight space and the common eigenbasis
// of M~1, M~2.
//
// Theta_mu(lambda) = SUM_{gamma in mu + 2Z^2} exp 2 pi i ( gamma.lambda + |gamma|^2 tau / 4 )
//
// depends only on mu mod 2, so there are four classes. Each factorizes into
// theta functions of modulus 2 tau in 2 lambda_1 and 2 lambda_2.

#include "ellidiff/diffops.hpp"
#include "ellidiff/elliptic.hpp"
#include "ellidiff/sampling.hpp"
#include "ellidiff/weights.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <span>

namespace ellidiff
{

enum class LatticeClass
{
    zero,       // 0
    eps1,       // eps1
    eps2,       // eps2
    eps1_eps2,  // eps1 + eps2 (= eps1 - eps2 mod 2)
};

/// Class of the integer weight (a, b) = a eps1 + b eps2.
[[nodiscard]] LatticeClass lattice_class(int a, int b) noexcept;
[[nodiscard]] std::array<int, 2> class_representative(LatticeClass mu) noexcept;

enum class ThetaMethod
{
    product,
    lattice,
};

[[nodiscard]] Complex theta_mu(LatticeClass mu, const WeightPoint& lam, const EllipticModulus& m,
                               ThetaMethod method = ThetaMethod::product);

/// Direct double sum over (a, b) + 2Z^2 for any integer (a, b).
[[nodiscard]] Complex theta_mu_lattice(int a, int b, const WeightPoint& lam, const EllipticModulus& m);

/// Weyl-orbit sums. `which` is 0, 1, 2 for the weights 0, Lambda_1 = eps1,
/// Lambda_2 = eps1 + eps2.
enum class FundamentalWeight
{
    zero,
    lambda1,
    lambda2,
};

/// (1 / |W_mu|) SUM_{w in W} Theta_{w mu}, evaluated literally over the group.
[[nodiscard]] Complex s_mu(FundamentalWeight mu, const WeightPoint& lam, const EllipticModulus& m);
/// Closed forms Theta_0, 2 (Theta_eps1 + Theta_eps2), 4 Theta_{eps1+eps2}.
[[nodiscard]] Complex s_mu_closed(FundamentalWeight mu, const WeightPoint& lam,
                                  const EllipticModulus& m);

/// f_0 = Theta_eps1 - Theta_eps2, f_1 = Theta_eps1 + Theta_eps2,
/// f_2 = Theta_0 + Theta_{eps1+eps2}, f_3 = Theta_0 - Theta_{eps1+eps2}.
[[nodiscard]] Complex basis_f(int i, const WeightPoint& lam, const EllipticModulus& m);

/// f_i as a product over lambda_+- = l1 +- l2: th2 th2, th3 th3, th4 th4, and
/// -th1 th1 for i = 0.
[[nodiscard]] Complex basis_f_product(int i, const WeightPoint& lam, const EllipticModulus& m);

/// E_{1,i} = (th1(2h) th_{i+1}(0) / (th1(h) th_{i+1}(h)))^2, E_{2,i} = 2 E_{1,i}; i = 1..3.
/// Returns 0 for i = 0; the antisymmetric f_0 is not an eigenfunction (M~1 multiplies it by
/// 4 PROD_{x = lambda+-} th1(x - h) th1(x + h) / th1(x)^2), so that value has no spectral meaning.
[[nodiscard]] Complex eigenvalue(int d, int i, Complex hbar, const EllipticModulus& m);

/// |M~d f_i - E f_i| / max(1, |E f_i|) at lam.
[[nodiscard]] double eigen_residual(int d, int i, const WeightPoint& lam, Complex hbar,
                                    const EllipticModulus& m);

/// theta_{i+1}(lambda_+) theta_{j+1}(lambda_-) against M~1 = H+ H-, for i, j in 1..3.
[[nodiscard]] double mixed_eigen_residual(int i, int j, const WeightPoint& lam, Complex hbar,
                                          const EllipticModulus& m);
[[nodiscard]] Complex mixed_eigenvalue(int i, int j, Complex hbar, const EllipticModulus& m);

struct PreservationResult
{
    double residual = 0.0;
    /// Column k holds the coefficients of M~d S_k in (S_0, S_Lambda1, S_Lambda2).
    Eigen::Matrix3cd matrix = Eigen::Matrix3cd::Zero();
    double condition = 0.0;
};

/// Fits M~d S_k = SUM_j a_jk S_j at three sample points (redrawn until the
/// collocation matrix has condition number below `max_condition`), then
/// returns the relative residual of that expansion at `validation` further
/// points.
[[nodiscard]] PreservationResult preservation_residual(int d, Complex hbar, const EllipticModulus& m,
                                                       Sampler& sampler, int validation = 10,
                                                       double max_condition = 1e8);

/// Change of basis from (S_0, S_Lambda1, S_Lambda2) to (f_1, f_2, f_3).
[[nodiscard]] Eigen::Matrix3cd s_to_f_basis();

/// Level-1 quasi-periodicity defect: max over alpha in {2 eps1, 2 eps2} of
/// |T_alpha f - f| and |T_{tau alpha} f - f|.
[[nodiscard]] double th1_membership_residual(const std::function<Complex(const WeightPoint&)>& f,
                                             const WeightPoint& lam, const EllipticModulus& m);

/// 2-norm condition number of the 3x3 matrix [f_j(p_k)].
[[nodiscard]] double basis_condition(std::span<const WeightPoint> points, const EllipticModulus& m);

} // namespace ellidiff

#endif
