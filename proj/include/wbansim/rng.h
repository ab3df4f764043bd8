#ifndef WBANSIM_RNG_H
#define WBANSIM_RNG_H

#include "wbansim/sim-time.h"

#include <cstdint>

namespace wbansim {

// Stream purposes. One RngStream per (node, purpose) so adding draws to one
// protocol feature never perturbs another stream's sequence.
enum class RngPurpose : std::uint32_t
{
    ArrivalUrgent = 1,
    ArrivalNormal = 2,
    Backoff = 3,
    Polling = 4,
    Misc = 5,
};

// Deterministic, platform-independent PRNG stream: xoshiro256++ with
// SplitMix64 state initialization (see README for the exact algorithm).
// Identical (seed, node, purpose) yields identical draw sequences everywhere.
class RngStream
{
  public:
    RngStream(std::uint64_t seed, std::uint32_t nodeId, RngPurpose purpose);

    std::uint64_t NextU64();

    // Uniform double in [0, 1), 53-bit resolution.
    double NextUnit();

    // Unbiased uniform integer in [0, n). n must be > 0.
    std::uint64_t UniformInt(std::uint64_t n);

    // Exponential draw with the given mean, rounded to the nearest
    // microsecond and clamped to >= 1 us. Throws on mean <= 0.
    TimeUs ExponentialUs(TimeUs meanUs);

  private:
    std::uint64_t m_s[4];
};

// Distribution spec for the engine-level draw() entry point.
struct DistributionSpec
{
    enum class Kind
    {
        Deterministic,
        Exponential,
        UniformInt,
    };

    Kind kind = Kind::Deterministic;
    TimeUs valueUs = 0;   // Deterministic value or Exponential mean
    std::uint64_t bound = 0; // UniformInt upper bound (exclusive)
};

// Draws one sample from the named stream. UniformInt results are returned as
// a count (not microseconds); callers scale as needed.
std::int64_t Draw(RngStream& stream, const DistributionSpec& spec);

} // namespace wbansim

#endif // WBANSIM_RNG_H
