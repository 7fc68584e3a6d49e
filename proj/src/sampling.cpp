#include "ellidiff/sampling.hpp"

#include "ellidiff/errors.hpp"

#include <string>

namespace ellidiff
{

namespace
{

std::uint64_t fnv1a(std::string_view s) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t stream_key(std::uint64_t seed, std::string_view stream) noexcept
{
    return splitmix64(seed ^ fnv1a(stream));
}

Sampler::Sampler(std::uint64_t seed, std::string_view stream) : engine_(stream_key(seed, stream)) {}

double Sampler::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int Sampler::uniform_int(int lo, int hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
}

WeightPoint Sampler::weight_point(const EllipticModulus& m)
{
    const double im_hi = 0.3 * m.tau.imag();
    const Complex a = complex_box(0.05, 0.45, 0.0, im_hi);
    const Complex b = complex_box(0.05, 0.45, 0.0, im_hi);
    return {a, b};
}

void Sampler::exhausted()
{
    throw SamplerExhausted("no pole-free sample after " + std::to_string(kSamplerRetries) +
                           " attempts");
}

namespace detail
{
bool is_pole_proximity(const std::exception& e) noexcept
{
    return dynamic_cast<const PoleProximity*>(&e) != nullptr;
}
} // namespace detail

} // namespace ellidiff
