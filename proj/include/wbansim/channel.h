#ifndef WBANSIM_CHANNEL_H
#define WBANSIM_CHANNEL_H

#include "wbansim/event-queue.h"
#include "wbansim/frame-trace.h"
#include "wbansim/frame.h"
#include "wbansim/metrics.h"
#include "wbansim/sim-time.h"
#include "wbansim/topology.h"

#include <cstdint>
#include <deque>
#include <functional>
#include <vector>

namespace wbansim {

// Frame timings (Table-I-shaped defaults, microseconds).
struct FrameTimings
{
    TimeUs strobeUs = 10000;      // preamble strobe
    TimeUs strobePauseUs = 10000; // pause between strobes (EA window)
    TimeUs earlyAckUs = 10000;
    TimeUs dataUs = 25000;     // Data duration at the base bit rate
    TimeUs ackUs = 10050;      // ACK / Block ACK
    TimeUs detectUs = 7000;    // carrier-sense detection latency
    std::uint32_t bitRateBps = 18780;
};

// Payload airtime in whole microseconds (bytes * 8 / rate, nearest us).
TimeUs PayloadAirtimeUs(std::uint64_t bytes, std::uint32_t rateBps);

// Listener interface the MACs implement. OnFrameReceived fires at frame end
// for every audible node that listened through the whole frame (uncorrupted
// frames only). Busy/idle callbacks reflect global carrier transitions.
class FrameSink
{
  public:
    virtual ~FrameSink() = default;
    virtual void OnFrameReceived(const Frame& frame, TimeUs now) = 0;
    virtual void OnChannelBusy(TimeUs) {}
    virtual void OnChannelIdle(TimeUs) {}
};

// Shared half-duplex medium: overlap-based binary collisions (any overlap
// corrupts all parties), global carrier sensing, neighbour-limited hearing,
// and the per-node radio-state timeline feeding the energy ledger.
class Channel
{
  public:
    Channel(EventQueue& queue,
            const Topology& topo,
            MetricsCollector& metrics,
            FrameTimings timings,
            FrameTrace* trace = nullptr);

    void AttachNode(int id, FrameSink* sink);

    const FrameTimings& Timings() const { return m_timings; }

    // Closes the previous state interval at `now` and opens s.
    // Out-of-order timestamps are a logic error.
    void SetRadioState(int node, RadioState s, TimeUs now);
    RadioState GetRadioState(int node) const { return m_state[node]; }

    // Puts the frame on air for frame.airtime. The src radio is switched to
    // Transmit for the interval and back to Listen at end of frame.
    void BeginTransmission(int src, Frame frame, TimeUs now);

    // Busy iff any transmission overlaps the detection window
    // [now, now + detect); the verdict is delivered detect us later.
    void CarrierSense(int node, std::function<void(bool busy)> onResult);

    bool BusyNow() const { return m_activeCount > 0; }
    // Latest end among transmissions currently on air (= now when idle).
    TimeUs BusyUntil() const;

    // Data-frame airtime per packet at the given rate: the configured base
    // duration scaled by baseRate/rate (control frames keep fixed durations).
    TimeUs DataAirtimeUs(std::uint32_t rateBps) const;

    // Closes every node's open state interval at end-of-run.
    void FinalizeTimelines(TimeUs endTime);

  private:
    struct Transmission
    {
        std::uint64_t serial;
        int src;
        Frame frame;
        TimeUs start;
        TimeUs end;
        bool corrupted = false;
    };

    struct PendingSense
    {
        int node;
        TimeUs windowEnd;
        bool busySeen;
        std::function<void(bool)> onResult;
    };

    void EndTransmission(std::uint64_t serial);
    void Trace(const Frame& f, TimeUs at, const char* outcome);

    EventQueue& m_queue;
    const Topology& m_topo;
    MetricsCollector& m_metrics;
    FrameTimings m_timings;
    FrameTrace* m_trace;

    std::vector<FrameSink*> m_sinks;
    std::vector<RadioState> m_state;
    std::vector<TimeUs> m_stateSince;
    std::vector<TimeUs> m_listenSince; // start of the current contiguous Listen/Receive block

    std::vector<Transmission> m_active;
    std::uint64_t m_nextSerial = 0;
    int m_activeCount = 0;
    std::deque<PendingSense> m_senses; // fixed window length: completes FIFO
};

} // namespace wbansim

#endif // WBANSIM_CHANNEL_H
