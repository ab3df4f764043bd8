#include "wbansim/rng.h"

#include <cmath>
#include <stdexcept>

namespace wbansim {

namespace {

std::uint64_t SplitMix64(std::uint64_t& state)
{
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t Rotl(std::uint64_t x, int k)
{
    return (x << k) | (x >> (64 - k));
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint32_t nodeId, RngPurpose purpose)
{
    // Stream key folds (node, purpose) into the seed; SplitMix64 expands it
    // into the four xoshiro256++ words.
    std::uint64_t key = (static_cast<std::uint64_t>(nodeId) << 16) |
                        static_cast<std::uint64_t>(purpose);
    std::uint64_t state = seed ^ (0x9E3779B97F4A7C15ULL * (key + 1));
    m_s[0] = SplitMix64(state);
    m_s[1] = SplitMix64(state);
    m_s[2] = SplitMix64(state);
    m_s[3] = SplitMix64(state);
    if ((m_s[0] | m_s[1] | m_s[2] | m_s[3]) == 0)
    {
        m_s[0] = 1;
    }
}

std::uint64_t RngStream::NextU64()
{
    // xoshiro256++
    std::uint64_t result = Rotl(m_s[0] + m_s[3], 23) + m_s[0];
    std::uint64_t t = m_s[1] << 17;
    m_s[2] ^= m_s[0];
    m_s[3] ^= m_s[1];
    m_s[1] ^= m_s[2];
    m_s[0] ^= m_s[3];
    m_s[2] ^= t;
    m_s[3] = Rotl(m_s[3], 45);
    return result;
}

double RngStream::NextUnit()
{
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::UniformInt(std::uint64_t n)
{
    if (n == 0)
    {
        throw std::invalid_argument("UniformInt: bound must be positive");
    }
    // Rejection sampling on the top range keeps the draw unbiased while
    // staying bit-reproducible across platforms.
    std::uint64_t threshold = (0 - n) % n;
    for (;;)
    {
        std::uint64_t r = NextU64();
        if (r >= threshold)
        {
            return r % n;
        }
    }
}

TimeUs RngStream::ExponentialUs(TimeUs meanUs)
{
    if (meanUs <= 0)
    {
        throw std::invalid_argument("ExponentialUs: mean must be positive");
    }
    double u = NextUnit(); // [0, 1)
    double x = -static_cast<double>(meanUs) * std::log1p(-u);
    TimeUs t = static_cast<TimeUs>(std::llround(x));
    return t < 1 ? 1 : t;
}

std::int64_t Draw(RngStream& stream, const DistributionSpec& spec)
{
    switch (spec.kind)
    {
    case DistributionSpec::Kind::Deterministic:
        return spec.valueUs;
    case DistributionSpec::Kind::Exponential:
        return stream.ExponentialUs(spec.valueUs);
    case DistributionSpec::Kind::UniformInt:
        return static_cast<std::int64_t>(stream.UniformInt(spec.bound));
    }
    throw std::logic_error("Draw: unknown distribution kind");
}

} // namespace wbansim
