#include "ellidiff/errors.hpp"
#include "ellidiff/sampling.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace ellidiff;

TEST(Sampler, SameKeyGivesSameStream)
{
    Sampler a(42, "suite/check");
    Sampler b(42, "suite/check");
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a.uniform(), b.uniform());
    }
    EXPECT_EQ(stream_key(42, "suite/check"), stream_key(42, "suite/check"));
}

TEST(Sampler, DifferentKeysGiveDifferentStreams)
{
    EXPECT_NE(stream_key(42, "a"), stream_key(42, "b"));
    EXPECT_NE(stream_key(42, "a"), stream_key(43, "a"));
    Sampler a(42, "verify-theta/parity");
    Sampler b(42, "verify-theta/half_period");
    Sampler c(43, "verify-theta/parity");
    const double x = a.uniform();
    EXPECT_NE(x, b.uniform());
    EXPECT_NE(x, c.uniform());
}

TEST(Sampler, UniformRangeAndMoments)
{
    Sampler s(1, "moments");
    double sum = 0.0;
    double sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sq += u * u;
    }
    EXPECT_NEAR(sum / n, 0.5, 0.01);
    EXPECT_NEAR(sq / n - (sum / n) * (sum / n), 1.0 / 12.0, 0.005);
}

TEST(Sampler, IntegerRangeIsInclusive)
{
    Sampler s(2, "ints");
    std::set<int> seen;
    for (int i = 0; i < 500; ++i) {
        const int k = s.uniform_int(-2, 3);
        ASSERT_GE(k, -2);
        ASSERT_LE(k, 3);
        seen.insert(k);
    }
    EXPECT_EQ(seen.size(), 6U);
    EXPECT_EQ(s.uniform_int(4, 4), 4);
}

TEST(Sampler, BoxesRespectBounds)
{
    Sampler s(3, "boxes");
    const EllipticModulus m(Complex(0.2, 1.1));
    for (int i = 0; i < 200; ++i) {
        const Complex z = s.complex_box(-1.0, 2.0, 0.5, 0.75);
        EXPECT_GE(z.real(), -1.0);
        EXPECT_LT(z.real(), 2.0);
        EXPECT_GE(z.imag(), 0.5);
        EXPECT_LT(z.imag(), 0.75);
        const WeightPoint w = s.weight_point(m);
        for (Complex c : {w.l1, w.l2}) {
            EXPECT_GE(c.real(), 0.05);
            EXPECT_LT(c.real(), 0.45);
            EXPECT_GE(c.imag(), 0.0);
            EXPECT_LT(c.imag(), 0.33);
        }
    }
}

TEST(Sampler, DrawValidRetriesPoles)
{
    Sampler s(4, "retry");
    int calls = 0;
    const double x = s.draw_valid([](Sampler& t) { return t.uniform(); },
                                  [&calls](double v) {
                                      ++calls;
                                      if (calls < 5) {
                                          throw PoleProximity("near a zero");
                                      }
                                      return v >= 0.0;
                                  });
    EXPECT_EQ(calls, 5);
    EXPECT_GE(x, 0.0);

    // A rejecting predicate counts as a failed attempt too.
    int tries = 0;
    const double y = s.draw_valid([](Sampler& t) { return t.uniform(); },
                                  [&tries](double) { return ++tries == 3; });
    EXPECT_EQ(tries, 3);
    EXPECT_LT(y, 1.0);
}

TEST(Sampler, ExhaustionAndForeignErrors)
{
    Sampler s(5, "exhaust");
    int calls = 0;
    EXPECT_THROW((void)s.draw_valid([](Sampler& t) { return t.uniform(); },
                                    [&calls](double) -> bool {
                                        ++calls;
                                        throw PoleProximity("always");
                                    }),
                 SamplerExhausted);
    EXPECT_EQ(calls, kSamplerRetries);
    EXPECT_THROW((void)s.draw_valid([](Sampler& t) { return t.uniform(); },
                                    [](double) -> bool { throw InvalidArgument("not a pole"); }),
                 InvalidArgument);
}

TEST(Sampler, ValidPointAvoidsProbePoles)
{
    Sampler s(6, "valid-point");
    const EllipticModulus m(Complex(0.0, 1.1));
    const WeightPoint p = s.valid_point(m, [](const WeightPoint& w) { return w.l1.real() > 0.4; });
    EXPECT_GT(p.l1.real(), 0.4);
}
