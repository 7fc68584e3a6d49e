#include "ellidiff/jet.hpp"

#include "ellidiff/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ellidiff
{

namespace
{

double binomial(int n, int k)
{
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

} // namespace

Jet2::Jet2(int order) : order_(order)
{
    if (order < 0 || order > kMaxJetOrder) {
        throw InvalidArgument("jet order must be 0..4");
    }
}

Jet2 Jet2::constant(Complex c, int order)
{
    Jet2 j(order);
    j.d_[0][0] = c;
    return j;
}

Complex Jet2::operator()(int i, int j) const
{
    if (i < 0 || j < 0 || i + j > order_) {
        throw InvalidArgument("jet entry beyond tracked order");
    }
    return d_[i][j];
}

Complex& Jet2::at(int i, int j)
{
    if (i < 0 || j < 0 || i + j > order_) {
        throw InvalidArgument("jet entry beyond tracked order");
    }
    return d_[i][j];
}

Jet2 Jet2::derivative(int i, int j) const
{
    if (i < 0 || j < 0 || i + j > order_) {
        throw InvalidArgument("jet derivative beyond tracked order");
    }
    Jet2 r(order_ - i - j);
    for (int a = 0; a <= r.order_; ++a) {
        for (int b = 0; a + b <= r.order_; ++b) {
            r.d_[a][b] = d_[a + i][b + j];
        }
    }
    return r;
}

Jet2 operator+(const Jet2& a, const Jet2& b)
{
    Jet2 r(std::min(a.order_, b.order_));
    for (int i = 0; i <= r.order_; ++i) {
        for (int j = 0; i + j <= r.order_; ++j) {
            r.d_[i][j] = a.d_[i][j] + b.d_[i][j];
        }
    }
    return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b)
{
    return a + (-1.0) * b;
}

Jet2 operator*(Complex k, const Jet2& a)
{
    Jet2 r = a;
    for (auto& row : r.d_) {
        for (auto& v : row) {
            v *= k;
        }
    }
    return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b)
{
    Jet2 r(std::min(a.order_, b.order_));
    for (int i = 0; i <= r.order_; ++i) {
        for (int j = 0; i + j <= r.order_; ++j) {
            Complex s = 0.0;
            for (int p = 0; p <= i; ++p) {
                for (int q = 0; q <= j; ++q) {
                    s += binomial(i, p) * binomial(j, q) * a.d_[p][q] * b.d_[i - p][j - q];
                }
            }
            r.d_[i][j] = s;
        }
    }
    return r;
}

Jet2 jet_of_combination(const std::array<Complex, 5>& g, int sign)
{
    Jet2 r(kMaxJetOrder);
    for (int i = 0; i <= kMaxJetOrder; ++i) {
        for (int j = 0; i + j <= kMaxJetOrder; ++j) {
            const double s = (sign < 0 && j % 2 != 0) ? -1.0 : 1.0;
            r.at(i, j) = s * g[i + j];
        }
    }
    return r;
}

JetFunction JetFunction::exponential(int a, int b)
{
    const Complex ka(0.0, 2.0 * std::numbers::pi * a);
    const Complex kb(0.0, 2.0 * std::numbers::pi * b);
    JetFunction f;
    f.name = "exp(2 pi i (" + std::to_string(a) + " l1 + " + std::to_string(b) + " l2))";
    f.value = [ka, kb](const WeightPoint& x) { return std::exp(ka * x.l1 + kb * x.l2); };
    f.jet = [ka, kb](const WeightPoint& x) {
        const Complex e = std::exp(ka * x.l1 + kb * x.l2);
        Jet2 r(kMaxJetOrder);
        for (int i = 0; i <= kMaxJetOrder; ++i) {
            for (int j = 0; i + j <= kMaxJetOrder; ++j) {
                r.at(i, j) = std::pow(ka, i) * std::pow(kb, j) * e;
            }
        }
        return r;
    };
    return f;
}

JetFunction JetFunction::theta_product(int a, int b, const EllipticModulus& m)
{
    JetFunction f;
    f.name = "theta_" + std::to_string(a) + "(l1) theta_" + std::to_string(b) + "(l2)";
    f.value = [a, b, m](const WeightPoint& x) { return theta(a, x.l1, m) * theta(b, x.l2, m); };
    f.jet = [a, b, m](const WeightPoint& x) {
        const auto ja = theta_jet(a, x.l1, m);
        const auto jb = theta_jet(b, x.l2, m);
        Jet2 r(kMaxJetOrder);
        for (int i = 0; i <= kMaxJetOrder; ++i) {
            for (int j = 0; i + j <= kMaxJetOrder; ++j) {
                r.at(i, j) = ja[i] * jb[j];
            }
        }
        return r;
    };
    return f;
}

JetFunction JetFunction::one()
{
    JetFunction f;
    f.name = "1";
    f.value = [](const WeightPoint&) { return Complex(1.0); };
    f.jet = [](const WeightPoint&) { return Jet2::constant(1.0); };
    return f;
}

} // namespace ellidiff
