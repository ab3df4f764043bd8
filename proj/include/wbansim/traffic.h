#ifndef WBANSIM_TRAFFIC_H
#define WBANSIM_TRAFFIC_H

#include "wbansim/rng.h"
#include "wbansim/sim-time.h"

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

namespace wbansim {

enum class Priority : std::uint8_t
{
    None = 0,
    Urgent = 1,
    Normal = 2,
};

const char* ToString(Priority p);

struct Packet
{
    std::uint64_t id = 0;
    int origin = 0;
    Priority priority = Priority::Normal;
    TimeUs generatedAt = 0;
    std::uint32_t sizeBytes = 58;
    std::uint32_t txAttempts = 0; // data-frame transmissions across all hops
};

enum class ArrivalPattern : std::uint8_t
{
    Cbr,      // exact multiples of the mean interval
    Poisson,  // exponential inter-arrivals
    Scripted, // explicit arrival times (scenario scripting)
    Disabled  // the class generates nothing
};

// Per-node, per-priority packet arrival process. CBR emits at k*mean exactly;
// Poisson draws exponential gaps; both enforce >= 1 us spacing so two packets
// never share an instant on one node.
class Generator
{
  public:
    Generator(ArrivalPattern pattern, TimeUs meanIntervalUs, Priority priority, int node);
    Generator(std::vector<TimeUs> scriptedTimes, Priority priority, int node);

    Priority GetPriority() const { return m_priority; }
    int Node() const { return m_node; }

    // Absolute time of the next arrival, or nullopt when a scripted source is
    // exhausted.
    std::optional<TimeUs> NextArrival(RngStream& rng);

  private:
    ArrivalPattern m_pattern;
    TimeUs m_meanUs = 0;
    Priority m_priority;
    int m_node;
    TimeUs m_last = 0;
    std::vector<TimeUs> m_script;
    std::size_t m_scriptPos = 0;
};

// Ring buffer of the last W inter-arrival durations.
class ArrivalHistory
{
  public:
    explicit ArrivalHistory(std::size_t window = 10)
        : m_window(window)
    {
    }

    // Records an arrival at absolute time t; the first call only arms the
    // reference point.
    void AddArrival(TimeUs t);

    // Directly append an inter-arrival sample (testing and replay paths).
    void AddSample(TimeUs delta);

    std::size_t Count() const { return m_samples.size(); }
    bool HasLast() const { return m_hasLast; }
    TimeUs LastArrival() const { return m_last; }

    std::optional<double> MeanUs() const;
    std::optional<double> SigmaUs() const; // population standard deviation

    // Population sigma / mean; nullopt below 2 samples ("insufficient
    // history", never a crash).
    std::optional<double> Cv() const;

  private:
    std::size_t m_window;
    std::deque<TimeUs> m_samples;
    TimeUs m_last = 0;
    bool m_hasLast = false;
};

enum class PatternClass : std::uint8_t
{
    Cbr,
    Poisson,
};

// cv < threshold -> CBR; boundary belongs to the stochastic class.
PatternClass Classify(double cv, double threshold = 0.5);

struct UrgentPrediction
{
    TimeUs expectedAt = 0;
    TimeUs guardBefore = 0;
    TimeUs guardAfter = 0;
    bool valid = false;
};

// Mean-plus-sigma window for the next urgent arrival: expected = lastUrgent +
// mean(history); guards = clamp(k*sigma, guardMin, guardCap) each side.
UrgentPrediction PredictNextUrgent(const ArrivalHistory& history,
                                   TimeUs lastUrgent,
                                   double guardK,
                                   TimeUs guardMinUs,
                                   TimeUs guardCapUs);

} // namespace wbansim

#endif // WBANSIM_TRAFFIC_H
