#include "ellidiff/face_weights.hpp"

#include "ellidiff/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ellidiff
{

namespace
{

using Offset = std::array<int, 2>;

Offset operator+(Offset a, Offset b) { return {a[0] + b[0], a[1] + b[1]}; }
Offset operator-(Offset a, Offset b) { return {a[0] - b[0], a[1] - b[1]}; }

bool as_single(Offset d, SingleWeight& out)
{
    for (SingleWeight p : SingleWeight::all()) {
        if (p.coords() == d) {
            out = p;
            return true;
        }
    }
    return false;
}

struct Theta1
{
    const EllipticModulus& m;
    Complex operator()(Complex z) const { return theta(1, z, m); }
    Complex denom(Complex z) const { return theta1_nonzero(z, m); }
};

} // namespace

bool FaceConfig::admissible() const noexcept
{
    return top.coords()[0] + right.coords()[0] == left.coords()[0] + bottom.coords()[0] &&
           top.coords()[1] + right.coords()[1] == left.coords()[1] + bottom.coords()[1];
}

Complex w11(const FaceConfig& cfg)
{
    if (!cfg.admissible()) {
        return 0.0;
    }
    const Theta1 t{cfg.modulus};
    const WeightPoint& lam = cfg.lambda;
    const Complex u = cfg.u;
    const Complex h = cfg.hbar;
    const Complex c = -3.0 * h;
    const SingleWeight p = cfg.top;
    const SingleWeight q = cfg.right;

    if (p == q) {
        // p = q forces s = r = p.
        return t(c - u) * t(u + h) / (t.denom(c) * t.denom(h));
    }
    if (q != -p) {
        const Complex lpq = p.pair(lam) - q.pair(lam);
        if (cfg.left == p) {
            return t(c - u) * t(lpq - u) / (t.denom(c) * t.denom(lpq));
        }
        // Top p, left q, right q, bottom p: the mirrored face with the roles swapped.
        const Complex lqp = -lpq;
        return t(c - u) * t(u) * t(lqp + h) / (t.denom(c) * t.denom(h) * t.denom(lqp));
    }

    // q = -p: top Q := p, right -Q, left P := s, bottom -P.
    const SingleWeight Q = p;
    const SingleWeight P = cfg.left;
    const Complex lP = P.pair(lam);
    const Complex lQ = Q.pair(lam);
    if (P != Q) {
        const Complex lsum = lP + lQ;
        Complex num = 1.0;
        Complex den = 1.0;
        for (SingleWeight r : SingleWeight::all()) {
            if (r != P && r != -P) {
                num *= t(lP + r.pair(lam) + h);
            }
            if (r != Q && r != -Q) {
                den *= t.denom(lQ + r.pair(lam));
            }
        }
        return -t(u) * t(lsum + h + c - u) / (t.denom(c) * t.denom(lsum + h)) *
               t(2.0 * lP + 2.0 * h) / t.denom(2.0 * lQ) * num / den;
    }
    const Complex l2 = 2.0 * lP;
    Complex prod = 1.0;
    for (SingleWeight r : SingleWeight::all()) {
        if (r != P && r != -P) {
            prod *= t(lP + r.pair(lam) + h) / t.denom(lP + r.pair(lam));
        }
    }
    return t(c - u) * t(l2 + h - u) / (t.denom(c) * t.denom(l2 + h)) -
           t(u) * t(l2 + h + c - u) / (t.denom(c) * t.denom(l2 + h)) * t(l2 + 2.0 * h) /
               t.denom(l2) * prod;
}

Complex w11_corners(const WeightPoint& base, Offset top_left, Offset top_right, Offset bottom_left,
                    Offset bottom_right, Complex u, Complex hbar, const EllipticModulus& m)
{
    SingleWeight p{1, 1}, q{1, 1}, s{1, 1}, r{1, 1};
    if (!as_single(top_right - top_left, p) || !as_single(bottom_left - top_left, s) ||
        !as_single(bottom_right - top_right, q) || !as_single(bottom_right - bottom_left, r)) {
        return 0.0;
    }
    const WeightPoint corner{base.l1 + static_cast<double>(top_left[0]) * hbar,
                             base.l2 + static_cast<double>(top_left[1]) * hbar};
    return w11(FaceConfig{corner, p, q, s, r, u, hbar, m});
}

YbeResult ybe_check(const WeightPoint& lambda, Complex u, Complex v, Complex w, Complex hbar,
                    const EllipticModulus& m)
{
    const auto W = [&](Offset a, Offset b, Offset c, Offset d, Complex x) {
        return w11_corners(lambda, a, b, c, d, x, hbar, m);
    };
    const Offset L{0, 0};
    YbeResult res;
    double max_term = 0.0;
    const auto steps = SingleWeight::all();
    SingleWeight scratch{1, 1};
    // External edges rho-lambda, sigma-rho, kappa-sigma, mu-lambda, nu-mu; kappa-nu must close.
    for (SingleWeight a : steps) {
        for (SingleWeight b : steps) {
            for (SingleWeight c : steps) {
                for (SingleWeight d : steps) {
                    for (SingleWeight e : steps) {
                        const Offset rho = L + a.coords();
                        const Offset sigma = rho + b.coords();
                        const Offset kappa = sigma + c.coords();
                        const Offset mu = L + d.coords();
                        const Offset nu = mu + e.coords();
                        if (!as_single(kappa - nu, scratch)) {
                            continue;
                        }
                        ++res.configurations;
                        Complex lhs = 0.0;
                        Complex rhs = 0.0;
                        for (SingleWeight x : steps) {
                            const Offset eta_l = rho + x.coords();
                            const Complex tl = W(rho, eta_l, sigma, kappa, u - v) *
                                               W(L, mu, rho, eta_l, u - w) *
                                               W(mu, nu, eta_l, kappa, v - w);
                            const Offset eta_r = L + x.coords();
                            const Complex tr = W(L, eta_r, rho, sigma, v - w) *
                                               W(eta_r, nu, sigma, kappa, u - w) *
                                               W(L, mu, eta_r, nu, u - v);
                            lhs += tl;
                            rhs += tr;
                            max_term = std::max({max_term, std::abs(tl), std::abs(tr)});
                        }
                        res.absolute = std::max(res.absolute, std::abs(lhs - rhs));
                    }
                }
            }
        }
    }
    res.normalized = max_term > 0.0 ? res.absolute / max_term : res.absolute;
    return res;
}

} // namespace ellidiff
