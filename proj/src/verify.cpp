#include "ellidiff/verify.hpp"

#include "ellidiff/difflimit.hpp"
#include "ellidiff/diffops.hpp"
#include "ellidiff/errors.hpp"
#include "ellidiff/face_weights.hpp"
#include "ellidiff/jet.hpp"
#include "ellidiff/sampling.hpp"
#include "ellidiff/spectra.hpp"
#include "ellidiff/vandiejen.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace ellidiff
{

namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

const Complex I(0.0, 1.0);

double rel(Complex a, Complex b)
{
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

// max that keeps a NaN once seen; std::max would drop it.
double fold(double worst, double r)
{
    if (std::isnan(worst) || std::isnan(r)) {
        return kNaN;
    }
    return std::max(worst, r);
}

int scaled(int base, int samples)
{
    const long n = (static_cast<long>(base) * samples + 19) / 20;
    return static_cast<int>(std::max(1L, n));
}

// Runs `trial` n times, redrawing a trial that hits a pole; returns the worst residual.
template <class Trial> double worst_of(Sampler& s, int n, Trial trial)
{
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int attempt = 0;; ++attempt) {
            if (attempt == kSamplerRetries) {
                throw SamplerExhausted("no pole-free sample after " + std::to_string(kSamplerRetries) +
                                       " attempts");
            }
            try {
                worst = fold(worst, trial(s));
                break;
            } catch (const PoleProximity&) {
            }
        }
    }
    return worst;
}

// Same retry policy for a single draw that returns a value.
template <class Draw> auto retry(Sampler& s, Draw draw)
{
    for (int attempt = 0; attempt < kSamplerRetries; ++attempt) {
        try {
            return draw(s);
        } catch (const PoleProximity&) {
        }
    }
    throw SamplerExhausted("no pole-free sample after " + std::to_string(kSamplerRetries) + " attempts");
}

struct Context
{
    const SuiteConfig& cfg;
    EllipticModulus m;
    HalfPeriods hp;

    explicit Context(const SuiteConfig& c)
        : cfg(c), m(c.tau), hp(c.omega1, c.omega1 * c.tau, EllipticModulus(c.tau))
    {
    }

    [[nodiscard]] Complex hbar() const { return cfg.hbar; }
};

class Runner
{
public:
    Runner(const Context& ctx, std::string suite) : ctx_(ctx), suite_(std::move(suite)) {}

    using Body = std::function<double(Sampler&, int, std::string&)>;

    void check(const std::string& name, const std::string& anchor, double tol, int base, const Body& body,
               const std::string& comparison = "<=")
    {
        CheckRecord r;
        r.suite = suite_;
        r.name = name;
        r.anchor = anchor;
        r.comparison = comparison;
        r.tolerance = tol;
        if (comparison == "<=") {
            if (const auto it = ctx_.cfg.tol_overrides.find(suite_); it != ctx_.cfg.tol_overrides.end()) {
                r.tolerance = it->second;
            }
        }
        r.samples = scaled(base, ctx_.cfg.samples);

        Sampler sampler(ctx_.cfg.seed, suite_ + "/" + name);
        const auto t0 = std::chrono::steady_clock::now();
        bool errored = false;
        try {
            r.residual = body(sampler, r.samples, r.note);
        } catch (const Error& e) {
            r.residual = kInf;
            r.note = e.what();
            errored = true;
        }
        const auto t1 = std::chrono::steady_clock::now();
        if (ctx_.cfg.record_timing) {
            r.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        }
        if (errored) {
            r.pass = false;
        } else if (comparison == ">") {
            r.pass = r.residual > r.tolerance;
        } else {
            r.pass = r.residual <= r.tolerance;
        }
        records_.push_back(std::move(r));
    }

    std::vector<CheckRecord> take() { return std::move(records_); }

private:
    const Context& ctx_;
    std::string suite_;
    std::vector<CheckRecord> records_;
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// ---- shared draws -----------------------------------------------------------

Complex draw_z(Sampler& s, const EllipticModulus& m)
{
    const double h = 0.5 * m.tau.imag();
    return s.complex_box(-0.5, 0.5, -h, h);
}

Complex draw_spectral(Sampler& s)
{
    return s.complex_box(-0.4, 0.4, -0.1, 0.1);
}

Complex draw_hbar(Sampler& s)
{
    return s.complex_box(0.05, 0.15, -0.02, 0.02);
}

std::vector<WeightPoint> draw_points(Sampler& s, const EllipticModulus& m, int n)
{
    std::vector<WeightPoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        pts.push_back(s.weight_point(m));
    }
    return pts;
}

JetFunction draw_test_function(Sampler& s, const EllipticModulus& m)
{
    if (s.uniform_int(0, 1) == 0) {
        return JetFunction::exponential(s.uniform_int(-1, 1), s.uniform_int(-1, 1));
    }
    return JetFunction::theta_product(s.uniform_int(2, 4), s.uniform_int(2, 4), m);
}

// ---- verify-theta -----------------------------------------------------------

int quasi_sign(int kind, int a, int b)
{
    const auto odd = [](int k) { return (k % 2 + 2) % 2 == 1; };
    switch (kind) {
    case 1: return odd(a + b) ? -1 : 1;
    case 2: return odd(a) ? -1 : 1;
    case 3: return 1;
    default: return odd(b) ? -1 : 1;
    }
}

Complex random_tau(Sampler& s)
{
    return s.complex_box(-0.5, 0.5, 0.5, 1.5);
}

std::vector<CheckRecord> suite_theta(const Context& ctx)
{
    Runner run(ctx, "verify-theta");
    const EllipticModulus& m = ctx.m;

    run.check("quasi_periodicity", "theta_k(z + a + b tau) = +-exp(-i pi b^2 tau - 2 pi i b z) theta_k(z)",
              1e-11, 100, [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const Complex z = draw_z(t, m);
                      const int a = t.uniform_int(-2, 2);
                      const int b = t.uniform_int(-2, 2);
                      const Complex factor = std::exp(-I * kPi * double(b * b) * m.tau -
                                                      2.0 * I * kPi * double(b) * z);
                      double w = 0.0;
                      for (int k = 1; k <= 4; ++k) {
                          const Complex lhs = theta(k, z + double(a) + double(b) * m.tau, m);
                          const Complex rhs = double(quasi_sign(k, a, b)) * factor * theta(k, z, m);
                          w = fold(w, rel(lhs, rhs));
                      }
                      return w;
                  });
              });

    run.check("half_period", "theta_1 shifted by 1/2, tau/2, (1+tau)/2 gives theta_2, theta_4, theta_3",
              1e-11, 100, [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const Complex z = draw_z(t, m);
                      const Complex e = std::exp(-I * kPi * (z + m.tau / 4.0));
                      double w = rel(theta(1, z + 0.5, m), theta(2, z, m));
                      w = fold(w, rel(theta(1, z + m.tau / 2.0, m), I * e * theta(4, z, m)));
                      w = fold(w, rel(theta(1, z + 0.5 + m.tau / 2.0, m), e * theta(3, z, m)));
                      return w;
                  });
              });

    // Addition theorems at random (x, y, tau); each pairs products of theta at x +- y.
    struct Addition
    {
        const char* name;
        const char* anchor;
        int k;
    };
    const Addition additions[] = {
        {"addition_44", "th4(x+y) th4(x-y) th4(0)^2 = th4(x)^2 th4(y)^2 - th1(x)^2 th1(y)^2", 4},
        {"addition_33", "th3(x+y) th3(x-y) th3(0)^2 = th3(x)^2 th3(y)^2 + th1(x)^2 th1(y)^2", 3},
        {"addition_22", "th2(x+y) th2(x-y) th2(0)^2 = th2(x)^2 th2(y)^2 - th1(x)^2 th1(y)^2", 2},
        {"addition_11", "th1(x+y) th1(x-y) th4(0)^2 = th1(x)^2 th4(y)^2 - th4(x)^2 th1(y)^2", 1},
    };
    for (const Addition& ad : additions) {
        run.check(ad.name, ad.anchor, 1e-11, 100, [&ctx, ad](Sampler& s, int n, std::string&) {
            return worst_of(s, n, [&](Sampler& t) {
                const EllipticModulus mm = ctx.m.with_tau(random_tau(t));
                const Complex x = draw_z(t, mm);
                const Complex y = draw_z(t, mm);
                const auto th = [&mm](int k, Complex z) { return theta(k, z, mm); };
                Complex lhs;
                Complex rhs;
                switch (ad.k) {
                case 4:
                    lhs = th(4, x + y) * th(4, x - y) * th(4, 0.0) * th(4, 0.0);
                    rhs = std::pow(th(4, x) * th(4, y), 2) - std::pow(th(1, x) * th(1, y), 2);
                    break;
                case 3:
                    lhs = th(3, x + y) * th(3, x - y) * th(3, 0.0) * th(3, 0.0);
                    rhs = std::pow(th(3, x) * th(3, y), 2) + std::pow(th(1, x) * th(1, y), 2);
                    break;
                case 2:
                    lhs = th(2, x + y) * th(2, x - y) * th(2, 0.0) * th(2, 0.0);
                    rhs = std::pow(th(2, x) * th(2, y), 2) - std::pow(th(1, x) * th(1, y), 2);
                    break;
                default:
                    lhs = th(1, x + y) * th(1, x - y) * th(4, 0.0) * th(4, 0.0);
                    rhs = std::pow(th(1, x) * th(4, y), 2) - std::pow(th(4, x) * th(1, y), 2);
                    break;
                }
                return rel(lhs, rhs);
            });
        });
    }

    run.check("parity", "theta_1 odd, theta_2..4 even", 1e-12, 100, [&](Sampler& s, int n, std::string&) {
        return worst_of(s, n, [&](Sampler& t) {
            const Complex z = draw_z(t, m);
            double w = rel(theta(1, -z, m), -theta(1, z, m));
            for (int k = 2; k <= 4; ++k) {
                w = fold(w, rel(theta(k, -z, m), theta(k, z, m)));
            }
            return w;
        });
    });

    run.check("sigma_quasi_periodicity",
              "sigma(z + 2 omega_j) = -exp(2 eta_j (z + omega_j)) sigma(z), j = 1, 2", 1e-11, 50,
              [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const Complex w1 = t.uniform(0.3, 1.5) * std::exp(I * t.uniform(-0.3, 0.3));
                      const Complex w2 = w1 * random_tau(t);
                      const HalfPeriods h(w1, w2, m);
                      const Complex z = t.uniform(-0.5, 0.5) * w1 + t.uniform(-0.5, 0.5) * w2;
                      const Complex sz = sigma_fn(0, z, h);
                      if (std::abs(sz) < 1e-8) {
                          throw PoleProximity("sigma near a lattice zero");
                      }
                      const Complex a = sigma_fn(0, z + 2.0 * w1, h);
                      const Complex b = sigma_fn(0, z + 2.0 * w2, h);
                      const Complex ea = -std::exp(2.0 * h.eta1() * (z + w1)) * sz;
                      const Complex eb = -std::exp(2.0 * h.eta2() * (z + w2)) * sz;
                      const auto srel = [](Complex x, Complex y) {
                          return std::abs(x - y) / std::max(std::abs(x), std::abs(y));
                      };
                      return fold(srel(a, ea), srel(b, eb));
                  });
              });
    return run.take();
}

// ---- verify-ybe -------------------------------------------------------------

std::vector<CheckRecord> suite_ybe(const Context& ctx)
{
    Runner run(ctx, "verify-ybe");
    const EllipticModulus& m = ctx.m;

    run.check("ybe_111", "face Yang-Baxter equation of type (1,1,1), normalized", 1e-9, 100,
              [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const WeightPoint lam = t.weight_point(m);
                      const Complex u = draw_spectral(t);
                      const Complex v = draw_spectral(t);
                      const Complex w = draw_spectral(t);
                      const Complex h = draw_hbar(t);
                      return ybe_residual(lam, u, v, w, h, m);
                  });
              });

    const auto all_faces = [&](Sampler& t, auto&& each) {
        const WeightPoint lam = t.weight_point(m);
        const Complex h = draw_hbar(t);
        double w = 0.0;
        for (SingleWeight p : SingleWeight::all()) {
            for (SingleWeight q : SingleWeight::all()) {
                for (SingleWeight sw : SingleWeight::all()) {
                    for (SingleWeight r : SingleWeight::all()) {
                        FaceConfig f{lam, p, q, sw, r, 0.0, h, m};
                        w = fold(w, each(f));
                    }
                }
            }
        }
        return w;
    };

    run.check("identity_at_u0", "W11 at u = 0 is the identity face", 1e-12, 20,
              [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      return all_faces(t, [](const FaceConfig& f) {
                          if (!f.admissible()) {
                              return 0.0;
                          }
                          const double delta = (f.top == f.left && f.right == f.bottom) ? 1.0 : 0.0;
                          return std::abs(w11(f) - delta);
                      });
                  });
              });

    run.check("inadmissible_zero", "W11 vanishes unless p + q = s + r", 0.0, 20,
              [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      return all_faces(t, [&t](FaceConfig f) {
                          if (f.admissible()) {
                              return 0.0;
                          }
                          f.u = draw_spectral(t);
                          return std::abs(w11(f));
                      });
                  });
              });
    return run.take();
}

// ---- verify-commute ---------------------------------------------------------

std::vector<CheckRecord> suite_commute(const Context& ctx)
{
    Runner run(ctx, "verify-commute");
    const EllipticModulus& m = ctx.m;
    constexpr int kPoints = 3;

    for (auto [d1, d2] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
        const std::string name = "M" + std::to_string(d1) + "_M" + std::to_string(d2);
        run.check(name, "[M_" + std::to_string(d1) + "(u), M_" + std::to_string(d2) + "(v)] = 0", 1e-9, 20,
                  [&m, d1, d2](Sampler& s, int n, std::string&) {
                      return worst_of(s, n, [&](Sampler& t) {
                          const Complex u = draw_spectral(t);
                          const Complex v = draw_spectral(t);
                          const Complex h = draw_hbar(t);
                          const auto pts = draw_points(t, m, kPoints);
                          return commutator_distance(build_M(d1, u, h, m), build_M(d2, v, h, m), pts);
                      });
                  });
    }

    run.check("u_dependence", "M_1(u) = F(u) M~1 and M_2(u) = G(u) (M~2 - H(u))", 1e-11, 20,
              [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const Complex u = draw_spectral(t);
                      const Complex v = draw_spectral(t);
                      const Complex h = draw_hbar(t);
                      const auto pts = draw_points(t, m, kPoints);
                      const auto norm1 = [&](Complex x) {
                          return scale(1.0 / prefactor_F(x, h, m), build_M(1, x, h, m));
                      };
                      const auto norm2 = [&](Complex x) {
                          return scale(1.0 / prefactor_G(x, h, m), build_M(2, x, h, m)) +
                                 scale(prefactor_H(x, h, m), DifferenceOperator::identity(h, m));
                      };
                      return fold(op_distance(norm1(u), norm1(v), pts), op_distance(norm2(u), norm2(v), pts));
                  });
              });

    run.check("weyl_invariance", "R_w M~d R_w^-1 = M~d for all eight w", 1e-10, 20,
              [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const Complex h = draw_hbar(t);
                      const auto pts = draw_points(t, m, kPoints);
                      double w = 0.0;
                      for (int d = 1; d <= 2; ++d) {
                          const DifferenceOperator op = build_M_tilde(d, h, m);
                          for (const WeylElement& g : WeylElement::all()) {
                              w = fold(w, op_distance(conjugate_by_weyl(op, g), op, pts));
                          }
                      }
                      return w;
                  });
              });
    return run.take();
}

// ---- verify-lemma-k ---------------------------------------------------------

std::vector<CheckRecord> suite_lemma(const Context& ctx)
{
    Runner run(ctx, "verify-lemma-k");
    const EllipticModulus& m = ctx.m;
    const Complex h = ctx.hbar();

    run.check("constant", "SUM U(lambda_p, lambda_q) minus the zero shift of M~2 equals K", 1e-10, 50,
              [&](Sampler& s, int n, std::string& note) {
                  note = "K = " + format_complex(constant_K(h, m));
                  return worst_of(s, n, [&](Sampler& t) {
                      return lemma22_residual(t.weight_point(m), h, m);
                  });
              });

    run.check("variance", "the lambda-variance of that left side vanishes", 1e-20, 50,
              [&](Sampler& s, int n, std::string&) {
                  std::vector<Complex> v;
                  for (int i = 0; i < n; ++i) {
                      v.push_back(retry(s, [&](Sampler& t) { return lemma22_lhs(t.weight_point(m), h, m); }));
                  }
                  Complex mean = 0.0;
                  for (Complex x : v) {
                      mean += x;
                  }
                  mean /= double(v.size());
                  double var = 0.0;
                  for (Complex x : v) {
                      var += std::norm(x - mean);
                  }
                  return var / double(v.size());
              });

    run.check("weyl_invariance", "the left side is Weyl invariant", 1e-10, 20,
              [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const WeightPoint lam = t.weight_point(m);
                      const Complex base = lemma22_lhs(lam, h, m);
                      double w = 0.0;
                      for (const WeylElement& g : WeylElement::all()) {
                          w = fold(w, std::abs(lemma22_lhs(g.apply(lam), h, m) - base));
                      }
                      return w;
                  });
              });

    run.check("hbar_period", "K(hbar + 1) = K(hbar)", 1e-10, 20, [&](Sampler& s, int n, std::string&) {
        return worst_of(s, n, [&](Sampler& t) {
            const Complex x = draw_hbar(t);
            return std::abs(constant_K(x + 1.0, m) - constant_K(x, m));
        });
    });

    run.check("near_pole", "the left side stays equal to K as lambda_1 + lambda_2 approaches -hbar", 1e-8,
              20, [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const Complex l1 = t.complex_box(0.05, 0.45, 0.0, 0.3 * m.tau.imag());
                      const Complex offset = 1e-3 * std::exp(I * t.uniform(0.0, 2.0 * kPi));
                      return lemma22_residual({l1, -h - l1 + offset}, h, m);
                  });
              });

    run.check("printed_sign_control", "negative control: the four-term sum with opposite sign is not K",
              1e-10, 20,
              [&](Sampler& s, int n, std::string&) {
                  double best = kInf;
                  for (int i = 0; i < n; ++i) {
                      const double r = retry(s, [&](Sampler& t) {
                          return std::abs(lemma22_lhs(t.weight_point(m), h, m) -
                                          constant_K_printed_sign(h, m));
                      });
                      best = std::min(best, r);
                  }
                  return best;
              },
              ">");
    return run.take();
}

// ---- verify-factorization ---------------------------------------------------

std::vector<CheckRecord> suite_factorization(const Context& ctx)
{
    Runner run(ctx, "verify-factorization");
    const EllipticModulus& m = ctx.m;
    constexpr int kPoints = 3;

    const auto body = [&m](int which) {
        return [&m, which](Sampler& s, int n, std::string&) {
            return worst_of(s, n, [&](Sampler& t) {
                const Complex h = draw_hbar(t);
                const auto pts = draw_points(t, m, kPoints);
                const DifferenceOperator hp = build_H_pm(1, h, m);
                const DifferenceOperator hm = build_H_pm(-1, h, m);
                switch (which) {
                case 1: return op_distance(compose(hp, hm), build_M_tilde(1, h, m), pts);
                case 2:
                    return op_distance(compose(hp, hp) + compose(hm, hm), build_M_tilde(2, h, m), pts);
                default: return commutator_distance(hp, hm, pts);
                }
            });
        };
    };
    run.check("M1", "factorization M~1 = H+ H-", 1e-10, 20, body(1));
    run.check("M2", "factorization M~2 = H+^2 + H-^2", 1e-10, 20, body(2));
    run.check("H_commute", "[H+, H-] = 0", 1e-10, 20, body(3));
    return run.take();
}

// ---- verify-lame ------------------------------------------------------------

std::vector<CheckRecord> suite_lame(const Context& ctx)
{
    Runner run(ctx, "verify-lame");
    const EllipticModulus& m = ctx.m;
    const Complex h = ctx.hbar();

    for (int k = 2; k <= 4; ++k) {
        run.check("eigen_theta" + std::to_string(k),
                  "difference Lame operator at l = 1: theta_" + std::to_string(k) + " is an eigenfunction",
                  1e-10, 20, [&m, h, k](Sampler& s, int n, std::string& note) {
                      const Complex e = lame_eigenvalue(k, h, m);
                      note = "E = " + format_complex(e);
                      const LameOperator op{h, 1, m};
                      const auto f = [&m, k](Complex z) { return theta(k, z, m); };
                      return worst_of(s, n, [&](Sampler& t) {
                          const Complex z = draw_z(t, m);
                          const Complex ef = e * f(z);
                          return std::abs(lame_apply(op, f, z) - ef) / std::max(1.0, std::abs(ef));
                      });
                  });
    }

    run.check("ell0_constant", "at l = 0 the constant function has eigenvalue 2", 1e-14, 20,
              [&](Sampler& s, int n, std::string&) {
                  const LameOperator op{h, 0, m};
                  return worst_of(s, n, [&](Sampler& t) {
                      return std::abs(lame_apply(op, [](Complex) { return Complex(1.0); }, draw_z(t, m)) - 2.0);
                  });
              });

    struct Bethe
    {
        const char* name;
        Complex t;
        Complex c;
    };
    const Bethe points[] = {
        {"bethe_half", 0.5, 0.0},
        {"bethe_half_plus_tau_half", (1.0 + m.tau) / 2.0, I * kPi},
        {"bethe_tau_half", m.tau / 2.0, I * kPi},
    };
    for (const Bethe& b : points) {
        run.check(b.name, "Bethe equation th1(t - h) / th1(t + h) = exp(2 h c)", 1e-11, 20,
                  [&m, h, b](Sampler& s, int n, std::string&) {
                      // The configured hbar plus random ones.
                      double w = bethe_residual(b.t, b.c, h, m);
                      return fold(w, worst_of(s, n, [&](Sampler& t) {
                                      return bethe_residual(b.t, b.c, draw_hbar(t), m);
                                  }));
                  });
    }
    return run.take();
}

// ---- verify-vandiejen -------------------------------------------------------

VDParams random_vd_params(Sampler& t, Complex gamma, const HalfPeriods& hp)
{
    const auto small = [&t, &hp]() { return hp.omega1() * t.complex_box(-0.3, 0.3, -0.1, 0.1); };
    std::array<Complex, 4> a{};
    std::array<Complex, 4> b{};
    Complex total = 0.0;
    for (int r = 0; r < 4; ++r) {
        a[r] = small();
        b[r] = small();
        total += a[r] + b[r];
    }
    b[3] -= total;
    return VDParams(small(), a, b, gamma, hp);
}

std::vector<CheckRecord> suite_vandiejen(const Context& ctx)
{
    Runner run(ctx, "verify-vandiejen");
    const EllipticModulus& m = ctx.m;
    const HalfPeriods& hp = ctx.hp;
    const Complex h = ctx.hbar();
    const Complex gamma = 2.0 * hp.omega1() * h;

    const auto ident = [&](const VDParams& p, int sign, int which) {
        return [&m, p, sign, which, h](Sampler& s, int n, std::string&) {
            return worst_of(s, n, [&](Sampler& t) {
                const WeightPoint lam = t.weight_point(m);
                const auto r = identification_residual(p, h, std::span(&lam, 1), sign);
                return which == 1 ? r.first : which == 2 ? r.second : std::max(r.first, r.second);
            });
        };
    };
    const VDParams special = VDParams::specialized(gamma, hp);
    run.check("identification_M1", "gauge map sends M~1 to exp(-2 eta1 gamma^2 / omega1) H1", 1e-8, 30,
              ident(special, -1, 1));
    run.check("identification_M2", "gauge map sends M~2 to exp(-2 eta1 gamma^2 / omega1) (H2 + 2 H1)", 1e-8, 30,
              ident(special, -1, 2));

    run.check("identification_rescaled", "the identification for a rotated, rescaled period lattice", 1e-8, 10,
              [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const Complex k = t.uniform(0.5, 2.0) * std::exp(I * t.uniform(-0.5, 0.5));
                      const HalfPeriods hp2(k * hp.omega1(), k * hp.omega2(), m);
                      const VDParams p = VDParams::specialized(2.0 * hp2.omega1() * h, hp2);
                      const WeightPoint lam = t.weight_point(m);
                      const auto r = identification_residual(p, h, std::span(&lam, 1));
                      return std::max(r.first, r.second);
                  });
              });

    run.check("prefactor_sign_control", "negative control: prefactor exp(+2 eta1 gamma^2 / omega1)", 1e-8, 30,
              [&](Sampler& s, int n, std::string& note) {
                  (void)note;
                  double best = kInf;
                  for (int i = 0; i < n; ++i) {
                      best = std::min(best, retry(s, [&](Sampler& t) {
                                          const WeightPoint lam = t.weight_point(m);
                                          const auto r = identification_residual(special, h, std::span(&lam, 1), +1);
                                          return std::max(r.first, r.second);
                                      }));
                  }
                  return best;
              },
              ">");

    run.check("specialization_control", "negative control: mu = -gamma / 2 instead of -gamma", 1e-8, 30,
              [&](Sampler& s, int n, std::string&) {
                  const VDParams wrong(-gamma / 2.0, {}, {}, gamma, hp);
                  double best = kInf;
                  for (int i = 0; i < n; ++i) {
                      best = std::min(best, retry(s, [&](Sampler& t) {
                                          const WeightPoint lam = t.weight_point(m);
                                          const auto r = identification_residual(wrong, h, std::span(&lam, 1));
                                          return std::max(r.first, r.second);
                                      }));
                  }
                  return best;
              },
              ">");

    const auto draw_x = [&hp, &m](Sampler& t) {
        const WeightPoint lam = t.weight_point(m);
        return WeightPoint{2.0 * hp.omega1() * lam.l1, 2.0 * hp.omega1() * lam.l2};
    };

    run.check("w_identity", "w = 1 at mu_r = mu_r' = 0", 1e-12, 50, [&](Sampler& s, int n, std::string&) {
        return worst_of(s, n, [&](Sampler& t) { return std::abs(vd_w(draw_x(t).l1, special) - 1.0); });
    });

    run.check("U12_1_zero", "U_{12,1} = 0 at mu_r = mu_r' = 0", 1e-12, 50, [&](Sampler& s, int n, std::string&) {
        return worst_of(s, n, [&](Sampler& t) { return std::abs(vd_U12_1(draw_x(t), special)); });
    });

    run.check("v_theta_form", "sigma(z + mu) / sigma(z) in theta form", 1e-11, 50,
              [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const VDParams p = random_vd_params(t, gamma, hp);
                      const Complex z = draw_x(t).l1;
                      return rel(vd_v(z, p), vd_v_theta_form(z, p));
                  });
              });

    run.check("general_commutator", "[H1, H2] = 0 for balanced general parameters", 1e-7, 5,
              [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const VDParams p = random_vd_params(t, gamma, hp);
                      std::vector<WeightPoint> xs;
                      for (int i = 0; i < 4; ++i) {
                          xs.push_back(draw_x(t));
                      }
                      return commutator_distance(build_vd_H(1, p), build_vd_H(2, p), xs);
                  });
              });

    run.check("constraint_gate", "unbalanced parameters are rejected", 0.0, 1,
              [&](Sampler&, int, std::string&) {
                  try {
                      const VDParams bad(0.1, {0.01, 0.0, 0.0, 0.0}, {}, gamma, hp);
                      (void)bad;
                  } catch (const ConstraintViolation&) {
                      return 0.0;
                  }
                  return 1.0;
              });
    return run.take();
}

// ---- verify-eigen -----------------------------------------------------------

std::vector<CheckRecord> suite_eigen(const Context& ctx)
{
    Runner run(ctx, "verify-eigen");
    const EllipticModulus& m = ctx.m;
    const Complex h = ctx.hbar();

    for (int d = 1; d <= 2; ++d) {
        for (int i = 1; i <= 3; ++i) {
            run.check("d" + std::to_string(d) + "_f" + std::to_string(i),
                      "M~" + std::to_string(d) + " f_" + std::to_string(i) + " = E f_" + std::to_string(i), 1e-10,
                      20, [&m, h, d, i](Sampler& s, int n, std::string& note) {
                          note = "E = " + format_complex(eigenvalue(d, i, h, m));
                          return worst_of(s, n, [&](Sampler& t) {
                              return eigen_residual(d, i, t.weight_point(m), h, m);
                          });
                      });
        }
    }

    run.check("E2_equals_2E1", "E_{2,i} = 2 E_{1,i}", 0.0, 1, [&](Sampler&, int, std::string&) {
        double w = 0.0;
        for (int i = 1; i <= 3; ++i) {
            w = fold(w, std::abs(eigenvalue(2, i, h, m) - 2.0 * eigenvalue(1, i, h, m)));
        }
        return w;
    });

    run.check("small_hbar_limit", "E_{1,i} tends to 4 as hbar tends to 0", 1e-6, 1,
              [&](Sampler&, int, std::string&) {
                  const double a = 2e-3;
                  const double b = 1e-3;
                  double w = 0.0;
                  for (int i = 1; i <= 3; ++i) {
                      const Complex ea = eigenvalue(1, i, a, m);
                      const Complex eb = eigenvalue(1, i, b, m);
                      const Complex limit = (eb * a * a - ea * b * b) / (a * a - b * b);
                      w = fold(w, std::abs(limit - 4.0));
                  }
                  return w;
              });

    run.check("mixed_H_pm", "th_{i+1}(lambda_+) th_{j+1}(lambda_-) is an eigenfunction of M~1 = H+ H-", 1e-10, 20,
              [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const WeightPoint lam = t.weight_point(m);
                      double w = 0.0;
                      for (int i = 1; i <= 3; ++i) {
                          for (int j = 1; j <= 3; ++j) {
                              w = fold(w, mixed_eigen_residual(i, j, lam, h, m));
                          }
                      }
                      return w;
                  });
              });

    run.check("antisymmetric_f0",
              "M~1 f0 = 4 PROD_{x = lambda+-} th1(x - h) th1(x + h) / th1(x)^2 f0 (f0 is not an eigenfunction)",
              1e-10, 20, [&](Sampler& s, int n, std::string&) {
                  const DifferenceOperator op = build_M_tilde(1, h, m);
                  const TestFunction f0 = [&m](const WeightPoint& x) { return basis_f(0, x, m); };
                  return worst_of(s, n, [&](Sampler& t) {
                      const WeightPoint lam = t.weight_point(m);
                      Complex factor = 4.0;
                      for (Complex x : {lam.plus(), lam.minus()}) {
                          const Complex d = theta1_nonzero(x, m);
                          factor *= theta(1, x - h, m) * theta(1, x + h, m) / (d * d);
                      }
                      return rel(apply(op, f0, lam), factor * f0(lam));
                  });
              });
    return run.take();
}

// ---- verify-basis -----------------------------------------------------------

std::vector<CheckRecord> suite_basis(const Context& ctx)
{
    Runner run(ctx, "verify-basis");
    const EllipticModulus& m = ctx.m;
    constexpr LatticeClass kClasses[] = {LatticeClass::zero, LatticeClass::eps1, LatticeClass::eps2,
                                         LatticeClass::eps1_eps2};

    run.check("lattice_vs_product", "Theta_mu as a lattice sum and as a product of theta(2 tau)", 1e-11, 20,
              [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const WeightPoint lam = t.weight_point(m);
                      double w = 0.0;
                      for (LatticeClass c : kClasses) {
                          w = fold(w, rel(theta_mu(c, lam, m, ThetaMethod::product),
                                          theta_mu(c, lam, m, ThetaMethod::lattice)));
                      }
                      return w;
                  });
              });

    run.check("f_products", "f_i = th_{i+1}(lambda_+) th_{i+1}(lambda_-), f_0 = -th1 th1", 1e-11, 20,
              [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const WeightPoint lam = t.weight_point(m);
                      double w = 0.0;
                      for (int i = 0; i <= 3; ++i) {
                          w = fold(w, rel(basis_f(i, lam, m), basis_f_product(i, lam, m)));
                      }
                      return w;
                  });
              });

    run.check("orbit_sums", "S_mu as Weyl orbit sums against their closed forms", 1e-11, 20,
              [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const WeightPoint lam = t.weight_point(m);
                      double w = 0.0;
                      for (FundamentalWeight f :
                           {FundamentalWeight::zero, FundamentalWeight::lambda1, FundamentalWeight::lambda2}) {
                          w = fold(w, rel(s_mu(f, lam, m), s_mu_closed(f, lam, m)));
                      }
                      return w;
                  });
              });

    run.check("weyl_invariance", "f_1, f_2, f_3 Weyl invariant; f_0 invariant up to sign", 1e-11, 20,
              [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const WeightPoint lam = t.weight_point(m);
                      double w = 0.0;
                      for (const WeylElement& g : WeylElement::all()) {
                          const WeightPoint gl = g.apply(lam);
                          for (int i = 1; i <= 3; ++i) {
                              w = fold(w, rel(basis_f(i, gl, m), basis_f(i, lam, m)));
                          }
                          const Complex a = basis_f(0, gl, m);
                          const Complex b = basis_f(0, lam, m);
                          w = fold(w, std::min(rel(a, b), rel(a, -b)));
                      }
                      return w;
                  });
              });

    run.check("gram_condition", "f_1, f_2, f_3 are independent: condition of [f_j(p_k)]", 1e6, 10,
              [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const auto pts = draw_points(t, m, 3);
                      return basis_condition(pts, m);
                  });
              });

    run.check("level_one_membership", "Theta_mu and f_i obey the level-1 quasi-periodicity", 1e-10, 20,
              [&](Sampler& s, int n, std::string&) {
                  return worst_of(s, n, [&](Sampler& t) {
                      const WeightPoint lam = t.weight_point(m);
                      double w = 0.0;
                      for (LatticeClass c : kClasses) {
                          w = fold(w, th1_membership_residual(
                                          [&m, c](const WeightPoint& x) { return theta_mu(c, x, m); }, lam, m));
                      }
                      for (int i = 0; i <= 3; ++i) {
                          w = fold(w, th1_membership_residual(
                                          [&m, i](const WeightPoint& x) { return basis_f(i, x, m); }, lam, m));
                      }
                      return w;
                  });
              });

    run.check("membership_control", "negative control: exp(2 pi i lambda_1) is not level 1", 1e-10, 20,
              [&](Sampler& s, int n, std::string&) {
                  double best = kInf;
                  for (int i = 0; i < n; ++i) {
                      const WeightPoint lam = s.weight_point(m);
                      best = std::min(best, th1_membership_residual(
                                                [](const WeightPoint& x) { return std::exp(2.0 * kPi * I * x.l1); },
                                                lam, m));
                  }
                  return best;
              },
              ">");
    return run.take();
}

// ---- verify-preserve --------------------------------------------------------

std::vector<CheckRecord> suite_preserve(const Context& ctx)
{
    Runner run(ctx, "verify-preserve");
    const EllipticModulus& m = ctx.m;
    const Complex h = ctx.hbar();

    for (int d = 1; d <= 2; ++d) {
        run.check("d" + std::to_string(d), "M~" + std::to_string(d) + " preserves span{S_0, S_Lambda1, S_Lambda2}",
                  1e-9, 10, [&m, h, d](Sampler& s, int n, std::string& note) {
                      const PreservationResult r = preservation_residual(d, h, m, s, n);
                      note = "collocation condition " + fmt("%.3g", r.condition);
                      return r.residual;
                  });
    }

    run.check("f_basis_diagonal", "in the f basis both matrices are diag(E_{d,1}, E_{d,2}, E_{d,3})", 1e-8, 10,
              [&](Sampler& s, int n, std::string&) {
                  const Eigen::Matrix3cd p = s_to_f_basis();
                  const Eigen::Matrix3cd pinv = p.inverse();
                  double w = 0.0;
                  for (int d = 1; d <= 2; ++d) {
                      const PreservationResult r = preservation_residual(d, h, m, s, n);
                      const Eigen::Matrix3cd diag = pinv * r.matrix * p;
                      for (int a = 0; a < 3; ++a) {
                          for (int b = 0; b < 3; ++b) {
                              const Complex expect = a == b ? eigenvalue(d, a + 1, h, m) : Complex(0.0);
                              w = fold(w, std::abs(diag(a, b) - expect) / std::max(1.0, std::abs(expect)));
                          }
                      }
                  }
                  return w;
              });
    return run.take();
}

// ---- verify-difflimit -------------------------------------------------------

constexpr double kLimitGate = 0.25;

struct LimitSample
{
    JetFunction f;
    WeightPoint lam;
    Complex fv;
};

std::vector<CheckRecord> suite_difflimit(const Context& ctx)
{
    Runner run(ctx, "verify-difflimit");
    const EllipticModulus& m = ctx.m;
    const HalfPeriods& hp = ctx.hp;

    // The hbar-series of M~2 has radius about |lambda_-| / 2 (its coefficients
    // have poles at lambda_+- = +-2 hbar), so lambda_+- must stay well away
    // from the theta_1 zeros for the degree-5 fit at h0 to resolve c2.
    const auto gated_point = [&m](Sampler& t) {
        return t.valid_point(m, [&m](const WeightPoint& x) {
            return std::abs(theta(1, x.plus(), m)) >= kLimitGate && std::abs(theta(1, x.minus(), m)) >= kLimitGate;
        });
    };
    const auto draw = [&](Sampler& t) {
        LimitSample ls{draw_test_function(t, m), gated_point(t), 0.0};
        ls.fv = ls.f.value(ls.lam);
        if (std::abs(ls.fv) < 1e-3) {
            throw PoleProximity("test function nearly vanishes");
        }
        return ls;
    };

    const auto extraction = [&](int which) {
        return [&, which](Sampler& s, int n, std::string&) {
            return worst_of(s, n, [&](Sampler& t) {
                const LimitSample ls = draw(t);
                const HbarCoefficients c1 = hbar_coefficients(1, ls.f, ls.lam, kDefaultH0, m);
                const HbarCoefficients c2 = hbar_coefficients(2, ls.f, ls.lam, kDefaultH0, m);
                switch (which) {
                case 0: return std::abs(c1.c0 / ls.fv - 4.0);
                case 1: return std::abs(c2.c0 / ls.fv - 8.0);
                case 2: return std::abs((c2.c2 - 2.0 * c1.c2) / ls.fv);
                case 3: return std::abs((c1.c2 - apply_M12(ls.f, ls.lam, m)) / ls.fv);
                default: {
                    const Complex b2 = apply_M24_minus_2M14(ls.f, ls.lam, m) / ls.fv;
                    return std::abs((c2.c4 - 2.0 * c1.c4) / ls.fv - b2) / std::max(1.0, std::abs(b2));
                }
                }
            });
        };
    };
    run.check("c0_d1", "constant term of M~1 in hbar is 4", 1e-6, 10, extraction(0));
    run.check("c0_d2", "constant term of M~2 in hbar is 8", 1e-6, 10, extraction(1));
    run.check("c2_doubling", "M22 = 2 M12", 1e-6, 10, extraction(2));
    run.check("c2_vs_M12", "hbar^2 coefficient of M~1 is the second-order operator M12", 1e-6, 10, extraction(3));
    run.check("c4_vs_B2", "hbar^4 coefficient of M~2 - 2 M~1 is B^2", 1e-4, 10, extraction(4));

    const auto gauge = [&](bool fourth) {
        return [&, fourth](Sampler& s, int n, std::string&) {
            return worst_of(s, n, [&](Sampler& t) {
                const LimitSample ls = draw(t);
                const GaugeResiduals g = gauge_identity_residual(ls.lam, m, ls.f);
                return fourth ? g.fourth_order : g.second_order;
            });
        };
    };
    run.check("gauge_second_order", "Delta^-1 M12 Delta = d1^2 + d2^2 + 4 ((log th1)''(+) + (log th1)''(-))", 1e-7,
              10, gauge(false));
    run.check("gauge_fourth_order", "Delta^-1 (M24 - 2 M14) Delta = D^2, D = d1 d2 + 2 ((log th1)''(+) - (log th1)''(-))",
              1e-7, 10, gauge(true));

    run.check("potential_variant_control",
              "negative control: the fourth-order potential with coefficients 1/2 and 2 is wrong", 1e-7, 10,
              [&](Sampler& s, int n, std::string&) {
                  double best = kInf;
                  for (int i = 0; i < n; ++i) {
                      const WeightPoint lam = gated_point(s);
                      const Complex truth = apply_M24_minus_2M14(JetFunction::one(), lam, m);
                      best = std::min(best, rel(potential_M24_minus_2M14_variant(lam, m), truth));
                  }
                  return best;
              },
              ">");

    run.check("inozemtsev_constancy", "V - W is constant: Inozemtsev potential with g(g-1) = 2, g_r(g_r-1) = 0",
              1e-8, 10, [&](Sampler& s, int n, std::string& note) {
                  const WeightPoint ref = gated_point(s);
                  const Complex offset = inozemtsev_offset(ref, hp);
                  note = "V - W = " + format_complex(offset) +
                         ", -32 omega1 eta1 = " + format_complex(-32.0 * hp.omega1() * hp.eta1());
                  return worst_of(s, n, [&](Sampler& t) {
                      return inozemtsev_residual(gated_point(t), gated_point(t), hp);
                  });
              });

    run.check("inozemtsev_weyl", "V - W is Weyl invariant", 1e-10, 10, [&](Sampler& s, int n, std::string&) {
        return worst_of(s, n, [&](Sampler& t) {
            const WeightPoint lam = gated_point(t);
            double w = 0.0;
            for (const WeylElement& g : WeylElement::all()) {
                w = fold(w, inozemtsev_residual(lam, g.apply(lam), hp));
            }
            return w;
        });
    });

    run.check("inozemtsev_one_body_control", "negative control: g_r(g_r-1) != 0 breaks the constancy", 1e-8, 10,
              [&](Sampler& s, int n, std::string&) {
                  InozemtsevCouplings g;
                  g.one_body = {2.0, 0.0, 0.0};
                  double best = kInf;
                  for (int i = 0; i < n; ++i) {
                      const WeightPoint a = gated_point(s);
                      const WeightPoint b = gated_point(s);
                      best = std::min(best, retry(s, [&](Sampler&) { return inozemtsev_residual(a, b, hp, g); }));
                  }
                  return best;
              },
              ">");
    return run.take();
}

using SuiteFn = std::vector<CheckRecord> (*)(const Context&);

const std::vector<std::pair<std::string, SuiteFn>>& registry()
{
    static const std::vector<std::pair<std::string, SuiteFn>> r = {
        {"verify-theta", suite_theta},
        {"verify-ybe", suite_ybe},
        {"verify-commute", suite_commute},
        {"verify-lemma-k", suite_lemma},
        {"verify-factorization", suite_factorization},
        {"verify-lame", suite_lame},
        {"verify-vandiejen", suite_vandiejen},
        {"verify-eigen", suite_eigen},
        {"verify-basis", suite_basis},
        {"verify-preserve", suite_preserve},
        {"verify-difflimit", suite_difflimit},
    };
    return r;
}

bool finite(Complex z)
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, std::string_view whole)
{
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ConfigError("malformed complex number '" + std::string(whole) + "'");
    }
    return v;
}

nlohmann::json residual_to_json(double v)
{
    if (std::isfinite(v)) {
        return v;
    }
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

double residual_from_json(const nlohmann::json& j)
{
    if (j.is_number()) {
        return j.get<double>();
    }
    const std::string s = j.get<std::string>();
    if (s == "nan") {
        return kNaN;
    }
    if (s == "inf") {
        return kInf;
    }
    if (s == "-inf") {
        return -kInf;
    }
    throw InvalidArgument("bad residual value '" + s + "'");
}

} // namespace

// ---- config -----------------------------------------------------------------

const std::vector<std::string>& all_suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : registry()) {
            v.push_back(name);
        }
        return v;
    }();
    return names;
}

std::string canonical_suite_name(std::string_view name)
{
    std::string n(name);
    if (n.rfind("verify-", 0) != 0) {
        n = "verify-" + n;
    }
    const auto& all = all_suite_names();
    if (std::find(all.begin(), all.end(), n) == all.end()) {
        throw ConfigError("unknown suite '" + std::string(name) + "'");
    }
    return n;
}

void SuiteConfig::validate() const
{
    if (!finite(tau) || !finite(hbar) || !finite(omega1)) {
        throw ConfigError("tau, hbar and omega1 must be finite");
    }
    if (tau.imag() < kMinImTau) {
        throw ConfigError("Im tau = " + format_double(tau.imag()) + " is below the validity floor " +
                          format_double(kMinImTau));
    }
    if (samples < 1) {
        throw ConfigError("samples must be at least 1");
    }
    if (std::abs(omega1) == 0.0) {
        throw ConfigError("omega1 must be nonzero");
    }
    const EllipticModulus m(tau);
    for (int k : {1, 2, 3, 6}) {
        if (std::abs(theta(1, double(k) * hbar, m)) < m.pole_floor) {
            throw ConfigError("hbar is too close to a point where theta_1(" + std::to_string(k) + " hbar) = 0");
        }
    }
    for (const auto& [suite, tol] : tol_overrides) {
        (void)canonical_suite_name(suite);
        if (!(tol >= 0.0) || !std::isfinite(tol)) {
            throw ConfigError("tolerance override for '" + suite + "' must be a finite non-negative number");
        }
    }
    for (const auto& s : suites) {
        (void)canonical_suite_name(s);
    }
}

std::vector<std::string> SuiteConfig::selected_suites() const
{
    if (suites.empty()) {
        return all_suite_names();
    }
    std::vector<std::string> want;
    for (const auto& s : suites) {
        want.push_back(canonical_suite_name(s));
    }
    std::vector<std::string> out;
    for (const auto& name : all_suite_names()) {
        if (std::find(want.begin(), want.end(), name) != want.end()) {
            out.push_back(name);
        }
    }
    return out;
}

// ---- running ----------------------------------------------------------------

std::vector<CheckRecord> run_single_suite(const std::string& suite, const SuiteConfig& cfg)
{
    const std::string name = canonical_suite_name(suite);
    SuiteConfig normalized = cfg;
    normalized.tol_overrides.clear();
    for (const auto& [k, v] : cfg.tol_overrides) {
        normalized.tol_overrides[canonical_suite_name(k)] = v;
    }
    const Context ctx(normalized);
    for (const auto& [n, fn] : registry()) {
        if (n == name) {
            return fn(ctx);
        }
    }
    return {};
}

VerificationReport run_suite(const SuiteConfig& cfg)
{
    cfg.validate();
    VerificationReport report;
    report.version = ELLIDIFF_VERSION;
    report.config = cfg;
    for (const auto& name : cfg.selected_suites()) {
        auto recs = run_single_suite(name, cfg);
        report.records.insert(report.records.end(), recs.begin(), recs.end());
    }
    return report;
}

// ---- report -----------------------------------------------------------------

bool VerificationReport::passed() const noexcept
{
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

std::string VerificationReport::to_json() const
{
    using nlohmann::json;
    json cfg = {
        {"tau", format_complex(config.tau)},
        {"hbar", format_complex(config.hbar)},
        {"omega1", format_complex(config.omega1)},
        {"samples", config.samples},
        {"seed", config.seed},
        {"tol_overrides", config.tol_overrides},
        {"suites", config.suites},
        {"record_timing", config.record_timing},
    };
    json recs = json::array();
    for (const CheckRecord& r : records) {
        recs.push_back({
            {"suite", r.suite},
            {"name", r.name},
            {"anchor", r.anchor},
            {"residual", residual_to_json(r.residual)},
            {"tolerance", residual_to_json(r.tolerance)},
            {"comparison", r.comparison},
            {"pass", r.pass},
            {"samples", r.samples},
            {"wall_time_ms", r.wall_time_ms},
            {"note", r.note},
        });
    }
    const json doc = {{"version", version}, {"config", cfg}, {"passed", passed()}, {"records", recs}};
    return doc.dump(2) + "\n";
}

VerificationReport VerificationReport::from_json(std::string_view text)
{
    using nlohmann::json;
    try {
        const json doc = json::parse(text);
        VerificationReport r;
        r.version = doc.at("version").get<std::string>();
        const json& c = doc.at("config");
        r.config.tau = parse_complex(c.at("tau").get<std::string>());
        r.config.hbar = parse_complex(c.at("hbar").get<std::string>());
        r.config.omega1 = parse_complex(c.at("omega1").get<std::string>());
        r.config.samples = c.at("samples").get<int>();
        r.config.seed = c.at("seed").get<std::uint64_t>();
        r.config.tol_overrides = c.at("tol_overrides").get<std::map<std::string, double>>();
        r.config.suites = c.at("suites").get<std::vector<std::string>>();
        r.config.record_timing = c.at("record_timing").get<bool>();
        for (const json& j : doc.at("records")) {
            CheckRecord rec;
            rec.suite = j.at("suite").get<std::string>();
            rec.name = j.at("name").get<std::string>();
            rec.anchor = j.at("anchor").get<std::string>();
            rec.residual = residual_from_json(j.at("residual"));
            rec.tolerance = residual_from_json(j.at("tolerance"));
            rec.comparison = j.at("comparison").get<std::string>();
            rec.pass = j.at("pass").get<bool>();
            rec.samples = j.at("samples").get<int>();
            rec.wall_time_ms = j.at("wall_time_ms").get<double>();
            rec.note = j.at("note").get<std::string>();
            r.records.push_back(std::move(rec));
        }
        return r;
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed report: ") + e.what());
    }
}

std::string VerificationReport::to_table() const
{
    std::ostringstream out;
    char line[512];
    std::snprintf(line, sizeof line, "%-22s %-30s %11s %2s %-9s %-6s %6s %9s\n", "suite", "check", "residual", "",
                  "tolerance", "result", "n", "ms");
    out << line;
    for (const CheckRecord& r : records) {
        std::snprintf(line, sizeof line, "%-22s %-30s %11.3e %2s %-9.1e %-6s %6d %9.1f\n", r.suite.c_str(),
                      r.name.c_str(), r.residual, r.comparison.c_str(), r.tolerance, r.pass ? "PASS" : "FAIL",
                      r.samples, r.wall_time_ms);
        out << line;
        if (!r.pass || !r.note.empty()) {
            out << "    " << r.anchor;
            if (!r.note.empty()) {
                out << " [" << r.note << "]";
            }
            out << "\n";
        }
    }
    const auto failed = std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return !r.pass; });
    out << records.size() << " checks, " << failed << " failed: " << (passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

// ---- complex text form ------------------------------------------------------

std::string format_complex(Complex z)
{
    std::string im = format_double(z.imag());
    if (im.front() != '-') {
        im = "+" + im;
    }
    return format_double(z.real()) + im + "i";
}

Complex parse_complex(std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s.push_back(c);
        }
    }
    if (s.empty()) {
        throw ConfigError("empty complex number");
    }
    if (s.back() != 'i' && s.back() != 'j') {
        return {parse_double(s, text), 0.0};
    }
    s.pop_back();
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string re = split == std::string::npos ? std::string() : s.substr(0, split);
    std::string im = split == std::string::npos ? s : s.substr(split);
    if (im.empty() || im == "+") {
        im = "1";
    } else if (im == "-") {
        im = "-1";
    }
    return {re.empty() ? 0.0 : parse_double(re, text), parse_double(im, text)};
}

} // namespace ellidiff
