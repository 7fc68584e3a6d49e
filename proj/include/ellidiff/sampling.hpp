#ifndef ELLIDIFF_SAMPLING_HPP
#define ELLIDIFF_SAMPLING_HPP

// Deterministic, pole-avoiding sample generation. A stream is keyed by
// (seed, name) so independent suites never share or perturb each other's
// draws, and the uniform variates are built from raw 64-bit engine output so
// the sequence is the same on every standard library.

#include "ellidiff/elliptic.hpp"
#include "ellidiff/weights.hpp"

#include <cstdint>
#include <exception>
#include <random>
#include <string_view>
#include <type_traits>

namespace ellidiff
{

inline constexpr int kSamplerRetries = 100;

class Sampler
{
public:
    Sampler(std::uint64_t seed, std::string_view stream);

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi); // inclusive

    Complex complex_box(double re_lo, double re_hi, double im_lo, double im_hi)
    {
        const double re = uniform(re_lo, re_hi);
        const double im = uniform(im_lo, im_hi);
        return {re, im};
    }

    /// A point from the generic box Re in [0.05, 0.45], Im in [0, 0.3 Im tau].
    WeightPoint weight_point(const EllipticModulus& m);

    /// Draw with `draw` until `accept` returns true without throwing
    /// PoleProximity. Throws SamplerExhausted after kSamplerRetries attempts.
    template <class Draw, class Accept> auto draw_valid(Draw draw, Accept accept)
    {
        for (int attempt = 0; attempt < kSamplerRetries; ++attempt) {
            auto candidate = draw(*this);
            if (try_accept(accept, candidate)) {
                return candidate;
            }
        }
        exhausted();
    }

    /// Generic-box weight point on which `probe(lam)` evaluates without a
    /// pole and (if it returns bool) returns true.
    template <class Probe> WeightPoint valid_point(const EllipticModulus& m, Probe probe)
    {
        return draw_valid([&m](Sampler& s) { return s.weight_point(m); }, probe);
    }

private:
    template <class Accept, class T> static bool try_accept(Accept& accept, const T& candidate);
    [[noreturn]] static void exhausted();

    std::mt19937_64 engine_;
};

namespace detail
{
bool is_pole_proximity(const std::exception& e) noexcept;
}

template <class Accept, class T> bool Sampler::try_accept(Accept& accept, const T& candidate)
{
    try {
        if constexpr (std::is_same_v<decltype(accept(candidate)), bool>) {
            return accept(candidate);
        } else {
            (void)accept(candidate);
            return true;
        }
    } catch (const std::exception& e) {
        if (!detail::is_pole_proximity(e)) {
            throw;
        }
        return false;
    }
}

/// Stable 64-bit key for a stream name.
[[nodiscard]] std::uint64_t stream_key(std::uint64_t seed, std::string_view stream) noexcept;

} // namespace ellidiff

#endif
