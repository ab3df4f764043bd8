#ifndef WBANSIM_SIMULATION_H
#define WBANSIM_SIMULATION_H

#include "wbansim/channel.h"
#include "wbansim/config.h"
#include "wbansim/event-queue.h"
#include "wbansim/frame-trace.h"
#include "wbansim/mac.h"
#include "wbansim/metrics.h"
#include "wbansim/mvdr-schedule.h"
#include "wbansim/topology.h"

#include <memory>
#include <ostream>
#include <optional>
#include <string>
#include <vector>

namespace wbansim {

// One sweep row: a run's identity plus its metrics.
struct RunSummary
{
    Protocol protocol = Protocol::Adp;
    TimeUs intervalUrgentUs = 0;
    TimeUs intervalNormalUs = 0;
    std::uint64_t seed = 0;

    std::uint64_t generated = 0;
    std::uint64_t delivered = 0;
    std::uint64_t deliveredUrgent = 0;
    std::uint64_t deliveredNormal = 0;
    std::uint64_t droppedOverflow = 0;
    std::uint64_t droppedRetry = 0;
    double pdr = 0.0;

    std::optional<double> avgDelayUrgentMs;
    std::optional<double> avgDelayNormalMs;

    double energyTotalJ = 0.0;
    std::vector<double> energyPerNodeJ;
    double energyPerDeliveredMj = 0.0;
    double energyPerDeliveredUrgentMj = 0.0;
    double energyPerDeliveredNormalMj = 0.0;

    std::string status = "ok"; // ok | starved | timeout | failed
    TimeUs endTimeUs = 0;
};

// Owns one run: engine, channel, protocol instances, traffic sources and
// metrics. Fully self-contained (no globals), so independent runs can execute
// in parallel threads.
class Simulation
{
  public:
    explicit Simulation(const SimConfig& cfg,
                        bool enableTrace = false,
                        bool captureIntervals = false);

    RunSummary Run();

    struct ArrivalRecord
    {
        TimeUs timeUs;
        int node;
        Priority priority;
        std::uint64_t packetId;
    };

    const FrameTrace& Trace() const { return m_trace; }
    const std::vector<ArrivalRecord>& Arrivals() const { return m_arrivals; }
    // CSV: time_us,node,priority,packet_id
    void WriteArrivalsCsv(std::ostream& os) const;
    const MetricsCollector& Metrics() const { return m_metrics; }
    const EventQueue& Queue() const { return m_queue; }
    const SimConfig& Config() const { return m_cfg; }

  private:
    struct Source
    {
        Generator gen;
        RngStream rng;
        int node;
    };

    void BuildSources();
    void ScheduleNextArrival(std::size_t idx);

    SimConfig m_cfg;
    Topology m_topo;
    MetricsCollector m_metrics;
    EventQueue m_queue;
    FrameTrace m_trace;
    bool m_traceEnabled;
    Channel m_channel;
    std::unique_ptr<MvdrSchedule> m_mvdrSchedule;
    std::vector<std::unique_ptr<MacBase>> m_macs;
    std::vector<Source> m_sources;
    std::vector<ArrivalRecord> m_arrivals;
    std::uint64_t m_nextPacketId = 1;
};

// Builds the summary for a finished run (exposed for reuse by tests).
RunSummary Summarize(const SimConfig& cfg,
                     const MetricsCollector& metrics,
                     const RunReport& report);

} // namespace wbansim

#endif // WBANSIM_SIMULATION_H
