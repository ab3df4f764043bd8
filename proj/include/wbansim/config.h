#ifndef WBANSIM_CONFIG_H
#define WBANSIM_CONFIG_H

#include "wbansim/channel.h"
#include "wbansim/metrics.h"
#include "wbansim/sim-time.h"
#include "wbansim/traffic.h"

#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wbansim {

enum class Protocol : std::uint8_t
{
    Adp,
    Adp2,
    Mvdr,
};

const char* ToString(Protocol p);
Protocol ProtocolFromString(const std::string& s);

struct ConfigError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Full experiment description. Defaults reproduce the standard parameter set
// when keys are omitted (see README for the key table).
struct SimConfig
{
    // run
    Protocol protocol = Protocol::Adp2;
    std::uint64_t seed = 1;
    std::uint64_t stopDelivered = 1000;
    TimeUs maxSimTimeUs = 86400LL * kUsPerSec;
    int nodes = 8;
    int queueCapacity = 16; // per priority class per node
    std::uint32_t dataBytes = 58;

    // frame timings
    std::uint32_t bitRateBps = 18780;
    TimeUs tPreUs = 10000;
    TimeUs tPrePauseUs = 10000;
    TimeUs tEaUs = 10000;
    TimeUs tDataUs = 25000;
    TimeUs tAckUs = 10050;
    TimeUs tDetectUs = 7000;
    TimeUs tPollUs = 20000;
    TimeUs tPiUs = 50000;
    TimeUs tAddUs = 100000;
    // legacy duty-cycle envelope (exposed, not used by the polling loop)
    TimeUs tCycleUs = 10 * kUsPerSec;
    TimeUs tWUs = 300000;
    TimeUs tSUs = 9700000;

    // contention / retry
    TimeUs backoffSlotUs = 1000;
    int cwMax = 32;
    int cwUrgent = 8;
    bool cwAdaptive = false;
    int retryLimit = 5;
    int maxBurst = 8;
    TimeUs burstGapUs = 1000;
    TimeUs maxStrobeTimeUs = 0; // 0 = auto: t_pi + t_poll

    // traffic
    ArrivalPattern urgentPattern = ArrivalPattern::Poisson;
    ArrivalPattern normalPattern = ArrivalPattern::Cbr;
    TimeUs urgentMeanUs = 2 * kUsPerSec;
    TimeUs normalMeanUs = 2 * kUsPerSec;
    std::map<int, std::vector<TimeUs>> urgentScript; // node -> arrival times
    std::map<int, std::vector<TimeUs>> normalScript;

    // classification / prediction
    double cvThreshold = 0.5;
    int cvWindow = 10;
    bool adaptDistribution = true;
    bool adaptPollingMean = false;
    TimeUs pollingMeanCapUs = 1000000;
    double guardK = 1.0;
    TimeUs guardMinUs = 50000;
    TimeUs guardCapUs = 2000000;
    bool interruptOnPrediction = true;
    bool urgentStrobePriority = true;

    // powers (mW)
    double pTxMw = 52.2;
    double pListenMw = 56.4;
    double pRxMw = 56.4;
    double pIdleMw = 1.28;
    double pSleepMw = 0.06;

    // MVDR superframe numerology
    TimeUs mvdrPeriodUs = 5000000;
    TimeUs mvdrBeaconUs = 10000;
    TimeUs mvdrCapUs = 1000000;
    int mvdrGtsSlots = 8;
    TimeUs mvdrGtsSlotUs = 130000;
    std::uint32_t rateUrgentBps = 37560;

    // sweep defaults
    std::vector<TimeUs> sweepIntervalsUs = {1 * kUsPerSec, 2 * kUsPerSec, 5 * kUsPerSec,
                                            10 * kUsPerSec};
    std::vector<Protocol> sweepProtocols = {Protocol::Adp, Protocol::Adp2, Protocol::Mvdr};
    int sweepSeeds = 10;

    FrameTimings Timings() const
    {
        FrameTimings t;
        t.strobeUs = tPreUs;
        t.strobePauseUs = tPrePauseUs;
        t.earlyAckUs = tEaUs;
        t.dataUs = tDataUs;
        t.ackUs = tAckUs;
        t.detectUs = tDetectUs;
        t.bitRateBps = bitRateBps;
        return t;
    }

    PowerConfig Powers() const
    {
        PowerConfig p;
        p.sleepMw = pSleepMw;
        p.idleMw = pIdleMw;
        p.listenMw = pListenMw;
        p.receiveMw = pRxMw;
        p.transmitMw = pTxMw;
        return p;
    }

    TimeUs MaxStrobeTimeUs() const
    {
        return maxStrobeTimeUs > 0 ? maxStrobeTimeUs : tPiUs + tPollUs;
    }

    // Cross-key consistency; throws ConfigError on violations.
    void Validate() const;
};

// Parses the flat key=value format ('#' comments, blank lines allowed).
// Unknown keys, malformed lines and out-of-range values raise ConfigError
// with the offending line number.
SimConfig ParseConfigText(const std::string& text, const std::string& sourceName = "<string>");
SimConfig ParseConfigFile(const std::string& path);

// Emits every key with its resolved value; parsing the echo reproduces the
// config (provenance copy for the output directory).
void WriteConfigEcho(const SimConfig& cfg, std::ostream& os);

} // namespace wbansim

#endif // WBANSIM_CONFIG_H
