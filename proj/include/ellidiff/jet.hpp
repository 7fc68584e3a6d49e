#ifndef ELLIDIFF_JET_HPP
#define ELLIDIFF_JET_HPP

// Truncated two-variable Taylor data: all partials d1^i d2^j f at a point for
// i + j <= order (order <= 4). Products follow the Leibniz rule, so jets of
// composite operands are exact to the tracked order.

#include "ellidiff/elliptic.hpp"
#include "ellidiff/weights.hpp"

#include <array>
#include <functional>
#include <string>

namespace ellidiff
{

inline constexpr int kMaxJetOrder = 4;

class Jet2
{
public:
    Jet2() = default;
    explicit Jet2(int order);

    static Jet2 constant(Complex c, int order = kMaxJetOrder);

    [[nodiscard]] int order() const noexcept { return order_; }
    /// d1^i d2^j; throws InvalidArgument beyond the tracked order.
    [[nodiscard]] Complex operator()(int i, int j) const;
    Complex& at(int i, int j);
    [[nodiscard]] Complex value() const noexcept { return d_[0][0]; }

    /// Jet of d1^i d2^j f, order reduced by i + j.
    [[nodiscard]] Jet2 derivative(int i, int j) const;

    friend Jet2 operator+(const Jet2& a, const Jet2& b);
    friend Jet2 operator-(const Jet2& a, const Jet2& b);
    friend Jet2 operator*(const Jet2& a, const Jet2& b);
    friend Jet2 operator*(Complex k, const Jet2& a);

private:
    int order_ = 0;
    std::array<std::array<Complex, kMaxJetOrder + 1>, kMaxJetOrder + 1> d_{};
};

/// Jet of g(l1 + sign * l2) from the one-variable derivatives g^(k), k = 0..4.
[[nodiscard]] Jet2 jet_of_combination(const std::array<Complex, 5>& g, int sign);

/// A test function with its exact jet.
struct JetFunction
{
    std::string name;
    std::function<Complex(const WeightPoint&)> value;
    std::function<Jet2(const WeightPoint&)> jet;

    /// exp(2 pi i (a l1 + b l2)).
    static JetFunction exponential(int a, int b);
    /// theta_a(l1) theta_b(l2).
    static JetFunction theta_product(int a, int b, const EllipticModulus& m);
    static JetFunction one();
};

} // namespace ellidiff

#endif
