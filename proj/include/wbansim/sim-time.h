#ifndef WBANSIM_SIM_TIME_H
#define WBANSIM_SIM_TIME_H

#include <cmath>
#include <cstdint>

namespace wbansim {

// All simulation time is integer microseconds from run start. Every
// configured duration is exact on this grid (10.05 ms -> 10050 us), so event
// ordering never depends on floating point.
using TimeUs = std::int64_t;

constexpr TimeUs kUsPerMs = 1000;
constexpr TimeUs kUsPerSec = 1000000;

inline TimeUs MsToUs(double ms)
{
    return static_cast<TimeUs>(std::llround(ms * 1000.0));
}

inline TimeUs SecToUs(double s)
{
    return static_cast<TimeUs>(std::llround(s * 1000000.0));
}

inline double UsToMs(TimeUs t)
{
    return static_cast<double>(t) / 1000.0;
}

inline double UsToSec(TimeUs t)
{
    return static_cast<double>(t) / 1000000.0;
}

} // namespace wbansim

#endif // WBANSIM_SIM_TIME_H
