#include "wbansim/mac.h"

namespace wbansim {

TimeUs PollingPolicy::DrawIntervalUs(RngStream& rng) const
{
    switch (dist)
    {
    case Dist::Deterministic:
        return meanUs;
    case Dist::Exponential:
        return rng.ExponentialUs(meanUs);
    }
    return meanUs;
}

PollingPolicy UpdatePolicy(const ArrivalHistory& history,
                           PollingPolicy policy,
                           double cvThreshold,
                           bool adaptDistribution)
{
    auto cv = history.Cv();
    if (!cv)
    {
        return policy; // insufficient history
    }
    if (adaptDistribution)
    {
        policy.dist = Classify(*cv, cvThreshold) == PatternClass::Cbr
                          ? PollingPolicy::Dist::Deterministic
                          : PollingPolicy::Dist::Exponential;
    }
    if (policy.adaptMean)
    {
        TimeUs observed = static_cast<TimeUs>(*history.MeanUs());
        policy.meanUs = std::max<TimeUs>(1, std::min(observed, policy.meanCapUs));
    }
    return policy;
}

} // namespace wbansim
