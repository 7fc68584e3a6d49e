#ifndef ELLIDIFF_FACE_WEIGHTS_HPP
#define ELLIDIFF_FACE_WEIGHTS_HPP

// Type (1,1) Boltzmann weights of the C2^(1) face model.
//
// A face is drawn with its top-left corner at lambda:
//
//              p
//        lambda ---- lambda + 2h p
//     s    |    u     |   q
//   lambda + 2h s -- lambda + 2h (p + q)
//              r
//
// and is admissible iff p + q = s + r. The crossing parameter is c = -3h.

#include "ellidiff/elliptic.hpp"
#include "ellidiff/weights.hpp"

#include <array>

namespace ellidiff
{

struct FaceConfig
{
    WeightPoint lambda;
    SingleWeight top{1, 1};
    SingleWeight right{1, 1};
    SingleWeight left{1, 1};
    SingleWeight bottom{1, 1};
    Complex u;
    Complex hbar;
    EllipticModulus modulus;

    [[nodiscard]] bool admissible() const noexcept;
};

/// W11 for one face; 0 for inadmissible configurations.
[[nodiscard]] Complex w11(const FaceConfig& cfg);

/// W11 addressed by the integer offsets of its four corners (in units of
/// 2h e_i relative to a base point). Returns 0 unless every edge is in P1.
[[nodiscard]] Complex w11_corners(const WeightPoint& base, std::array<int, 2> top_left,
                                  std::array<int, 2> top_right, std::array<int, 2> bottom_left,
                                  std::array<int, 2> bottom_right, Complex u, Complex hbar,
                                  const EllipticModulus& m);

struct YbeResult
{
    double normalized = 0.0; // max |LHS - RHS| / max |summand|
    double absolute = 0.0;   // max |LHS - RHS|
    int configurations = 0;  // external configurations checked
};

/// Face-type Yang-Baxter equation of type (1,1,1) at every admissible
/// external configuration around lambda.
[[nodiscard]] YbeResult ybe_check(const WeightPoint& lambda, Complex u, Complex v, Complex w,
                                  Complex hbar, const EllipticModulus& m);

[[nodiscard]] inline double ybe_residual(const WeightPoint& lambda, Complex u, Complex v, Complex w,
                                         Complex hbar, const EllipticModulus& m)
{
    return ybe_check(lambda, u, v, w, hbar, m).normalized;
}

} // namespace ellidiff

#endif
