#ifndef WBANSIM_MAC_H
#define WBANSIM_MAC_H

#include "wbansim/channel.h"
#include "wbansim/config.h"
#include "wbansim/event-queue.h"
#include "wbansim/frame-trace.h"
#include "wbansim/metrics.h"
#include "wbansim/rng.h"
#include "wbansim/topology.h"
#include "wbansim/traffic.h"

namespace wbansim {

// Everything a protocol instance needs from the surrounding run.
struct MacContext
{
    EventQueue& queue;
    Channel& channel;
    const Topology& topo;
    MetricsCollector& metrics;
    const SimConfig& cfg;
    FrameTrace* trace = nullptr;
};

// Receiver wake-up interval policy: the distribution follows the classified
// traffic pattern, the mean follows T_PI (FixedMean) or the observed mean
// capped (TrafficAdaptive).
struct PollingPolicy
{
    enum class Dist : std::uint8_t
    {
        Deterministic,
        Exponential,
    };

    Dist dist = Dist::Deterministic;
    TimeUs meanUs = 50000;
    bool adaptMean = false;
    TimeUs meanCapUs = 1000000;

    // Deterministic -> exactly the mean; Exponential -> exponential draw with
    // that mean, clamped below at 1 us.
    TimeUs DrawIntervalUs(RngStream& rng) const;
};

// Re-derives the policy from observed inter-arrivals: CBR history selects
// deterministic polling, Poisson history exponential. Fewer than 2 samples
// leave the policy unchanged.
PollingPolicy UpdatePolicy(const ArrivalHistory& history,
                           PollingPolicy policy,
                           double cvThreshold,
                           bool adaptDistribution);

// Base interface driven by the simulation: generators push packets in,
// Start() arms the initial timers.
class MacBase : public FrameSink
{
  public:
    MacBase(int id, MacContext ctx)
        : m_id(id),
          m_ctx(ctx)
    {
    }

    int Id() const { return m_id; }
    bool IsSink() const { return m_id == Topology::kSinkId; }

    virtual void Start() = 0;
    virtual void EnqueueFromApp(const Packet& pkt) = 0;

  protected:
    TimeUs Now() const { return m_ctx.queue.Now(); }

    void Marker(const char* kind, int src, int dst, Priority prio)
    {
        if (m_ctx.trace)
        {
            FrameTrace::Entry e;
            e.timeUs = Now();
            e.kind = kind;
            e.src = src;
            e.dst = dst;
            e.priority = prio;
            e.outcome = "-";
            m_ctx.trace->Add(std::move(e));
        }
    }

    // One state timer per node; the epoch invalidates anything armed before
    // the last state transition.
    void ArmTimerFn(TimeUs at, std::function<void()> fn)
    {
        CancelTimer();
        std::uint64_t epoch = m_epoch;
        m_timer = m_ctx.queue.Schedule(at, [this, epoch, fn = std::move(fn)] {
            if (epoch == m_epoch)
            {
                m_timerArmed = false;
                fn();
            }
        });
        m_timerArmed = true;
    }

    void CancelTimer()
    {
        if (m_timerArmed)
        {
            m_ctx.queue.Cancel(m_timer);
            m_timerArmed = false;
        }
    }

    int m_id;
    MacContext m_ctx;
    std::uint64_t m_epoch = 0;
    EventId m_timer = 0;
    bool m_timerArmed = false;
};

} // namespace wbansim

#endif // WBANSIM_MAC_H
