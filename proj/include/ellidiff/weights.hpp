#ifndef ELLIDIFF_WEIGHTS_HPP
#define ELLIDIFF_WEIGHTS_HPP

// Coordinates on the C2 weight space. With the normalised form
// (e_j, e_k) = delta_jk / 2, a point lambda is stored by its pairings
// l1 = (lambda, e1), l2 = (lambda, e2), and the shift lambda -> lambda + 2 hbar p
// for p = +-e_i moves l_i by +-hbar.

#include "ellidiff/elliptic.hpp"

#include <array>
#include <cstdint>

namespace ellidiff
{

struct WeightPoint
{
    Complex l1;
    Complex l2;

    [[nodiscard]] Complex plus() const noexcept { return l1 + l2; }  // (lambda, e1 + e2)
    [[nodiscard]] Complex minus() const noexcept { return l1 - l2; } // (lambda, e1 - e2)

    friend WeightPoint operator+(WeightPoint a, WeightPoint b) { return {a.l1 + b.l1, a.l2 + b.l2}; }
    friend WeightPoint operator*(Complex s, WeightPoint a) { return {s * a.l1, s * a.l2}; }
    friend bool operator==(const WeightPoint&, const WeightPoint&) = default;
};

/// An element of P1 = {+e1, -e1, +e2, -e2}.
class SingleWeight
{
public:
    constexpr SingleWeight(int axis, int sign) : axis_(axis), sign_(sign) {}

    [[nodiscard]] constexpr int axis() const noexcept { return axis_; }
    [[nodiscard]] constexpr int sign() const noexcept { return sign_; }
    /// Integer coordinates (c1, c2) of p in the (e1, e2) basis.
    [[nodiscard]] constexpr std::array<int, 2> coords() const noexcept
    {
        return axis_ == 1 ? std::array<int, 2>{sign_, 0} : std::array<int, 2>{0, sign_};
    }
    [[nodiscard]] constexpr SingleWeight operator-() const noexcept { return {axis_, -sign_}; }

    /// lambda_p = (lambda, p).
    [[nodiscard]] Complex pair(const WeightPoint& lam) const noexcept
    {
        return static_cast<double>(sign_) * (axis_ == 1 ? lam.l1 : lam.l2);
    }

    friend constexpr bool operator==(SingleWeight, SingleWeight) = default;

    static constexpr std::array<SingleWeight, 4> all()
    {
        return {SingleWeight{1, 1}, SingleWeight{1, -1}, SingleWeight{2, 1}, SingleWeight{2, -1}};
    }

private:
    int axis_;
    int sign_;
};

/// (lambda, a e1 + b e2) for integer coordinates.
[[nodiscard]] inline Complex pair(const WeightPoint& lam, int a, int b) noexcept
{
    return static_cast<double>(a) * lam.l1 + static_cast<double>(b) * lam.l2;
}

/// Signed permutation of (l1, l2); the C2 Weyl group has eight of them.
/// Acts by (l1, l2) -> (s1 * l_{swap ? 2 : 1}, s2 * l_{swap ? 1 : 2}).
struct WeylElement
{
    bool swap = false;
    int s1 = 1;
    int s2 = 1;

    [[nodiscard]] WeightPoint apply(const WeightPoint& lam) const noexcept
    {
        const Complex a = swap ? lam.l2 : lam.l1;
        const Complex b = swap ? lam.l1 : lam.l2;
        return {static_cast<double>(s1) * a, static_cast<double>(s2) * b};
    }
    [[nodiscard]] std::array<int, 2> apply(std::array<int, 2> v) const noexcept
    {
        const int a = swap ? v[1] : v[0];
        const int b = swap ? v[0] : v[1];
        return {s1 * a, s2 * b};
    }

    /// (this * other)(x) = this(other(x)).
    [[nodiscard]] WeylElement compose(const WeylElement& other) const noexcept;
    [[nodiscard]] WeylElement inverse() const noexcept;
    [[nodiscard]] int determinant() const noexcept { return (swap ? -1 : 1) * s1 * s2; }

    friend bool operator==(const WeylElement&, const WeylElement&) = default;

    static std::array<WeylElement, 8> all() noexcept;
};

inline WeylElement WeylElement::compose(const WeylElement& other) const noexcept
{
    // Track where the unit vectors go; signed permutations are determined by that.
    const auto e1 = apply(other.apply(std::array<int, 2>{1, 0}));
    const auto e2 = apply(other.apply(std::array<int, 2>{0, 1}));
    WeylElement r;
    r.swap = (e1[0] == 0);
    // Image of coordinate 1 lands in slot r.swap ? 2 : 1, so read signs back from there.
    if (!r.swap) {
        r.s1 = e1[0];
        r.s2 = e2[1];
    } else {
        r.s1 = e2[0];
        r.s2 = e1[1];
    }
    return r;
}

inline WeylElement WeylElement::inverse() const noexcept
{
    for (const WeylElement& w : all()) {
        if (w.compose(*this) == WeylElement{}) {
            return w;
        }
    }
    return {};
}

inline std::array<WeylElement, 8> WeylElement::all() noexcept
{
    std::array<WeylElement, 8> out{};
    int i = 0;
    for (bool sw : {false, true}) {
        for (int a : {1, -1}) {
            for (int b : {1, -1}) {
                out[i++] = WeylElement{sw, a, b};
            }
        }
    }
    return out;
}

} // namespace ellidiff

#endif
