#include "ellidiff/diffops.hpp"

#include "ellidiff/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace ellidiff
{

namespace
{

Complex th1(Complex z, const EllipticModulus& m) { return theta(1, z, m); }
Complex den(Complex z, const EllipticModulus& m) { return theta1_nonzero(z, m); }

void require_compatible(const DifferenceOperator& a, const DifferenceOperator& b)
{
    if (a.step() != b.step()) {
        throw ModulusMismatch("difference operators have different steps");
    }
    if (!(a.modulus() == b.modulus())) {
        throw ModulusMismatch("difference operators have different moduli");
    }
}

void check_degree(int d)
{
    if (d != 1 && d != 2) {
        throw InvalidArgument("operator degree must be 1 or 2, got " + std::to_string(d));
    }
}

// Sign pairs (e1, e2) for p = e1 eps1, q = e2 eps2.
constexpr std::array<std::array<int, 2>, 4> kSignPairs{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

} // namespace

DifferenceOperator DifferenceOperator::identity(Complex step, const EllipticModulus& m)
{
    DifferenceOperator op(step, m);
    op.add_term({0, 0}, [](const WeightPoint&) { return Complex(1.0); });
    return op;
}

void DifferenceOperator::add_term(ShiftVector s, Coefficient c)
{
    auto it = terms_.find(s);
    if (it == terms_.end()) {
        terms_.emplace(s, std::move(c));
        return;
    }
    it->second = [prev = std::move(it->second), c = std::move(c)](const WeightPoint& lam) {
        return prev(lam) + c(lam);
    };
}

Complex DifferenceOperator::coefficient(ShiftVector s, const WeightPoint& lam) const
{
    auto it = terms_.find(s);
    return it == terms_.end() ? Complex(0.0) : it->second(lam);
}

Complex apply(const DifferenceOperator& op, const TestFunction& f, const WeightPoint& lam)
{
    Complex sum = 0.0;
    for (const auto& [s, c] : op.terms()) {
        sum += c(lam) * f(lam + s.displacement(op.step()));
    }
    return sum;
}

DifferenceOperator compose(const DifferenceOperator& a, const DifferenceOperator& b)
{
    require_compatible(a, b);
    DifferenceOperator out(a.step(), a.modulus());
    const Complex step = a.step();
    for (const auto& [sa, ca] : a.terms()) {
        for (const auto& [sb, cb] : b.terms()) {
            const WeightPoint offset = sa.displacement(step);
            out.add_term(sa + sb, [ca, cb, offset](const WeightPoint& lam) {
                return ca(lam) * cb(lam + offset);
            });
        }
    }
    return out;
}

DifferenceOperator operator+(const DifferenceOperator& a, const DifferenceOperator& b)
{
    require_compatible(a, b);
    DifferenceOperator out = a;
    for (const auto& [s, c] : b.terms()) {
        out.add_term(s, c);
    }
    return out;
}

DifferenceOperator operator-(const DifferenceOperator& a, const DifferenceOperator& b)
{
    return a + scale(-1.0, b);
}

DifferenceOperator scale(Complex k, const DifferenceOperator& a)
{
    DifferenceOperator out(a.step(), a.modulus());
    for (const auto& [s, c] : a.terms()) {
        out.add_term(s, [k, c](const WeightPoint& lam) { return k * c(lam); });
    }
    return out;
}

double op_distance(const DifferenceOperator& a, const DifferenceOperator& b,
                   std::span<const WeightPoint> samples)
{
    std::set<ShiftVector> shifts;
    for (const auto& t : a.terms()) {
        shifts.insert(t.first);
    }
    for (const auto& t : b.terms()) {
        shifts.insert(t.first);
    }
    double worst = 0.0;
    for (const ShiftVector& s : shifts) {
        for (const WeightPoint& lam : samples) {
            const Complex ca = a.coefficient(s, lam);
            const Complex cb = b.coefficient(s, lam);
            const double scale = std::max({1.0, std::abs(ca), std::abs(cb)});
            worst = std::max(worst, std::abs(ca - cb) / scale);
        }
    }
    return worst;
}

double commutator_distance(const DifferenceOperator& a, const DifferenceOperator& b,
                           std::span<const WeightPoint> samples)
{
    return op_distance(compose(a, b), compose(b, a), samples);
}

DifferenceOperator conjugate_by_weyl(const DifferenceOperator& a, const WeylElement& w)
{
    DifferenceOperator out(a.step(), a.modulus());
    const WeylElement winv = w.inverse();
    for (const auto& [s, c] : a.terms()) {
        const auto img = w.apply(std::array<int, 2>{s.h1, s.h2});
        out.add_term({img[0], img[1]},
                     [c, winv](const WeightPoint& lam) { return c(winv.apply(lam)); });
    }
    return out;
}

Complex prefactor_F(Complex u, Complex h, const EllipticModulus& m)
{
    const Complex a = den(-3.0 * h, m);
    const Complex b = den(h, m);
    const Complex t2 = th1(u + 2.0 * h, m);
    return th1(u, m) * t2 * t2 * th1(u + 4.0 * h, m) / (a * a * b * b);
}

Complex prefactor_G(Complex u, Complex h, const EllipticModulus& m)
{
    const Complex a = den(-3.0 * h, m);
    const Complex b = den(h, m);
    const Complex t0 = th1(u, m);
    const Complex t3 = th1(u + 3.0 * h, m);
    return th1(u - h, m) * t0 * t0 * th1(u + h, m) * th1(u + 2.0 * h, m) * t3 * t3 *
           th1(u + 4.0 * h, m) / (a * a * a * a * b * b * b * b);
}

Complex prefactor_H(Complex u, Complex h, const EllipticModulus& m)
{
    return th1(u + 6.0 * h, m) * th1(u - 3.0 * h, m) * th1(2.0 * h, m) /
           (den(u, m) * den(u + 3.0 * h, m) * den(6.0 * h, m));
}

Complex prefactor_GH(Complex u, Complex h, const EllipticModulus& m)
{
    // One factor each of th1(u) and th1(u + 3h) cancels against H's denominator.
    const Complex a = den(-3.0 * h, m);
    const Complex b = den(h, m);
    return th1(u - h, m) * th1(u, m) * th1(u + h, m) * th1(u + 2.0 * h, m) *
           th1(u + 3.0 * h, m) * th1(u + 4.0 * h, m) * th1(u + 6.0 * h, m) *
           th1(u - 3.0 * h, m) * th1(2.0 * h, m) /
           (a * a * a * a * b * b * b * b * den(6.0 * h, m));
}

Complex u_term(Complex lp, Complex lq, Complex h, const EllipticModulus& m)
{
    const Complex s = lp + lq;
    return th1(2.0 * h, m) / den(6.0 * h, m) * th1(2.0 * lp + 2.0 * h, m) *
           th1(2.0 * lq + 2.0 * h, m) / (den(2.0 * lp, m) * den(2.0 * lq, m)) *
           th1(s - 5.0 * h, m) * th1(s + 2.0 * h, m) / (den(s, m) * den(s + h, m));
}

namespace
{

// SUM_{p in P1} PROD_{q != +-p} th1(lambda_{p+q} - h)/th1(lambda_{p+q}) T_{2p}, times k.
DifferenceOperator m1_shape(Complex k, Complex h, const EllipticModulus& m)
{
    DifferenceOperator op(h, m);
    for (SingleWeight p : SingleWeight::all()) {
        const auto c = p.coords();
        op.add_term(ShiftVector::whole(c[0], c[1]), [p, k, h, m](const WeightPoint& lam) {
            Complex v = k;
            for (SingleWeight q : SingleWeight::all()) {
                if (q == p || q == -p) {
                    continue;
                }
                const Complex x = p.pair(lam) + q.pair(lam);
                v *= th1(x - h, m) / den(x, m);
            }
            return v;
        });
    }
    return op;
}

void add_m2_shifts(DifferenceOperator& op, Complex k, Complex h, const EllipticModulus& m)
{
    for (auto [e1, e2] : kSignPairs) {
        op.add_term(ShiftVector::whole(e1, e2), [e1, e2, k, h, m](const WeightPoint& lam) {
            const Complex x = pair(lam, e1, e2);
            return k * th1(x - h, m) / den(x + h, m);
        });
    }
}

Complex m2_tilde_zero_shift(const WeightPoint& lam, Complex h, const EllipticModulus& m)
{
    Complex s = 0.0;
    for (auto [e1, e2] : kSignPairs) {
        const Complex x = pair(lam, e1, e2);
        s += th1(x - h, m) * th1(x + 2.0 * h, m) / (den(x, m) * den(x + h, m));
    }
    return s;
}

Complex u_sum(const WeightPoint& lam, Complex h, const EllipticModulus& m)
{
    Complex s = 0.0;
    for (auto [e1, e2] : kSignPairs) {
        s += u_term(static_cast<double>(e1) * lam.l1, static_cast<double>(e2) * lam.l2, h, m);
    }
    return s;
}

} // namespace

DifferenceOperator build_M(int d, Complex u, Complex hbar, const EllipticModulus& m)
{
    check_degree(d);
    if (d == 1) {
        return m1_shape(prefactor_F(u, hbar, m), hbar, m);
    }
    const Complex g = prefactor_G(u, hbar, m);
    const Complex gh = prefactor_GH(u, hbar, m);
    DifferenceOperator op(hbar, m);
    add_m2_shifts(op, g, hbar, m);
    op.add_term({0, 0}, [g, gh, hbar, m](const WeightPoint& lam) {
        return g * u_sum(lam, hbar, m) - gh;
    });
    return op;
}

DifferenceOperator build_M_tilde(int d, Complex hbar, const EllipticModulus& m)
{
    check_degree(d);
    if (d == 1) {
        return m1_shape(1.0, hbar, m);
    }
    DifferenceOperator op(hbar, m);
    add_m2_shifts(op, 1.0, hbar, m);
    op.add_term({0, 0},
                [hbar, m](const WeightPoint& lam) { return m2_tilde_zero_shift(lam, hbar, m); });
    return op;
}

DifferenceOperator build_H_pm(int sign, Complex hbar, const EllipticModulus& m)
{
    if (sign != 1 && sign != -1) {
        throw InvalidArgument("H sign must be +1 or -1");
    }
    DifferenceOperator op(hbar, m);
    for (int e : {1, -1}) {
        op.add_term({e, e * sign}, [e, sign, hbar, m](const WeightPoint& lam) {
            const Complex x = static_cast<double>(e) * pair(lam, 1, sign);
            return th1(x - hbar, m) / den(x, m);
        });
    }
    return op;
}

Complex constant_K_printed_sign(Complex h, const EllipticModulus& m)
{
    const Complex t1 = den(h, m), t2 = den(2.0 * h, m), t3 = den(3.0 * h, m);
    const Complex t4 = den(4.0 * h, m), t5 = den(5.0 * h, m), t6 = den(6.0 * h, m);
    const Complex t8 = th1(8.0 * h, m);
    return t8 * t1 / (t6 * t5) + t5 * t2 / (t4 * t3) + t6 * t3 / (t5 * t4) + t4 * t1 / (t3 * t2);
}

Complex constant_K(Complex h, const EllipticModulus& m)
{
    return -constant_K_printed_sign(h, m);
}

Complex lemma22_lhs(const WeightPoint& lam, Complex h, const EllipticModulus& m)
{
    return u_sum(lam, h, m) - m2_tilde_zero_shift(lam, h, m);
}

double lemma22_residual(const WeightPoint& lam, Complex h, const EllipticModulus& m)
{
    return std::abs(lemma22_lhs(lam, h, m) - constant_K(h, m));
}

Complex lame_apply(const LameOperator& op, const std::function<Complex(Complex)>& f, Complex z)
{
    const EllipticModulus& m = op.modulus;
    const Complex lh = static_cast<double>(op.ell) * op.hbar;
    const Complex d = den(z, m);
    return th1(z - lh, m) / d * f(z + op.hbar) + th1(z + lh, m) / d * f(z - op.hbar);
}

Complex lame_eigenvalue(int i, Complex h, const EllipticModulus& m)
{
    if (i < 2 || i > 4) {
        throw InvalidArgument("Lame eigenvalue index must be 2..4");
    }
    const Complex ti = theta(i, h, m);
    if (std::abs(ti) < m.pole_floor) {
        throw PoleProximity("theta_i(hbar) below pole floor");
    }
    return th1(2.0 * h, m) * theta(i, 0.0, m) / (den(h, m) * ti);
}

double bethe_residual(Complex t, Complex c, Complex h, const EllipticModulus& m)
{
    return std::abs(th1(t - h, m) / den(t + h, m) - std::exp(2.0 * h * c));
}

} // namespace ellidiff
