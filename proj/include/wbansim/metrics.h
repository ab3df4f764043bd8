#ifndef WBANSIM_METRICS_H
#define WBANSIM_METRICS_H

#include "wbansim/frame.h"
#include "wbansim/sim-time.h"
#include "wbansim/traffic.h"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace wbansim {

// Per-radio-state power in milliwatts. Conventional low-power-radio figures;
// all config keys.
struct PowerConfig
{
    double sleepMw = 0.06;
    double idleMw = 1.28;
    double listenMw = 56.4;
    double receiveMw = 56.4;
    double transmitMw = 52.2;

    double MwOf(RadioState s) const
    {
        switch (s)
        {
        case RadioState::Sleep:
            return sleepMw;
        case RadioState::Idle:
            return idleMw;
        case RadioState::Listen:
            return listenMw;
        case RadioState::Receive:
            return receiveMw;
        case RadioState::Transmit:
            return transmitMw;
        }
        return 0.0;
    }
};

// Per-node accumulation of time-in-radio-state. Intervals must tile
// [0, run end] per node: RecordInterval enforces continuity, so the
// conservation check reduces to comparing duration sums with the end time.
class EnergyLedger
{
  public:
    struct Interval
    {
        RadioState state;
        TimeUs start;
        TimeUs end;
    };

    EnergyLedger(int nodeCount, PowerConfig powers, bool captureIntervals);

    void RecordInterval(int node, RadioState s, TimeUs start, TimeUs end);

    // mW * us = nJ; returned in joules.
    double NodeEnergyJ(int node) const;
    double TotalEnergyJ() const;

    TimeUs NodeAccountedUs(int node) const;
    TimeUs StateDurationUs(int node, RadioState s) const;

    // Only populated when captureIntervals was requested.
    const std::vector<Interval>& Intervals(int node) const;

  private:
    PowerConfig m_powers;
    bool m_capture;
    std::vector<std::array<TimeUs, 5>> m_stateUs; // per node, per state
    std::vector<TimeUs> m_lastEnd;
    std::vector<std::vector<Interval>> m_intervals;
};

struct DeliveryRecord
{
    std::uint64_t packetId = 0;
    Priority priority = Priority::Normal;
    TimeUs generatedAt = 0;
    TimeUs deliveredAt = 0;
    int hops = 0;
    std::uint32_t retransmissions = 0;
};

// Attribution class for exchange-caused radio energy. Shared is ADP-MAC's
// class-blind pool; Sync holds MVDR beacon overhead, spread per delivered
// packet at summary time.
enum class AttrClass : std::uint8_t
{
    Shared = 0,
    Urgent = 1,
    Normal = 2,
    Sync = 3,
};

AttrClass AttrOf(Priority p);

// Run-wide accounting: deliveries, drops, attributable energy pools and the
// stop condition.
class MetricsCollector
{
  public:
    MetricsCollector(int nodeCount,
                     PowerConfig powers,
                     std::uint64_t deliverTarget,
                     bool captureIntervals = false);

    EnergyLedger& Ledger() { return m_ledger; }
    const EnergyLedger& Ledger() const { return m_ledger; }

    void CountGenerated(Priority p);
    void CountOverflowDrop(Priority p);
    void CountRetryDrop(Priority p, std::size_t packets);

    // Records a sink reception. Deliveries past the stop target fall outside
    // the measurement horizon and are ignored.
    void RecordDelivery(const Packet& pkt, TimeUs now);

    // Exchange-caused radio energy: duration at the given draw, charged to a
    // class pool.
    void ChargeEnergy(AttrClass cls, TimeUs duration, double mw);

    bool StopReached() const { return m_stop; }
    std::uint64_t DeliverTarget() const { return m_target; }

    std::uint64_t Delivered() const { return m_records.size(); }
    std::uint64_t Delivered(Priority p) const;
    std::uint64_t Generated() const { return m_generated[1] + m_generated[2]; }
    std::uint64_t Generated(Priority p) const { return m_generated[static_cast<int>(p)]; }
    std::uint64_t OverflowDrops() const { return m_overflow[1] + m_overflow[2]; }
    std::uint64_t RetryDrops() const { return m_retryDrop[1] + m_retryDrop[2]; }

    const std::vector<DeliveryRecord>& Records() const { return m_records; }

    // Mean generation-to-sink delay in ms over records matching the filter;
    // nullopt when no records match ("no data", not a crash).
    std::optional<double> AverageDelayMs(std::optional<Priority> filter) const;

    double AttributedJ(AttrClass cls) const;

    // Attributable energy per delivered packet of the class, in mJ, including
    // the equal per-delivered share of the Sync pool. Class-blind when
    // `blind` (ADP-MAC: no priority path, both classes report identically).
    double EnergyPerDeliveredMj(Priority p, bool blind) const;

  private:
    EnergyLedger m_ledger;
    std::uint64_t m_target;
    bool m_stop = false;
    std::array<std::uint64_t, 3> m_generated{}; // indexed by Priority
    std::array<std::uint64_t, 3> m_overflow{};
    std::array<std::uint64_t, 3> m_retryDrop{};
    std::array<double, 4> m_attrNj{}; // indexed by AttrClass
    std::array<std::uint64_t, 3> m_deliveredBy{};
    std::vector<DeliveryRecord> m_records;
};

} // namespace wbansim

#endif // WBANSIM_METRICS_H
