#include "wbansim/metrics.h"

#include <stdexcept>

namespace wbansim {

EnergyLedger::EnergyLedger(int nodeCount, PowerConfig powers, bool captureIntervals)
    : m_powers(powers),
      m_capture(captureIntervals),
      m_stateUs(nodeCount),
      m_lastEnd(nodeCount, 0),
      m_intervals(captureIntervals ? nodeCount : 0)
{
    for (auto& a : m_stateUs)
    {
        a.fill(0);
    }
}

void EnergyLedger::RecordInterval(int node, RadioState s, TimeUs start, TimeUs end)
{
    if (node < 0 || node >= static_cast<int>(m_stateUs.size()))
    {
        throw std::out_of_range("EnergyLedger: unknown node");
    }
    if (start != m_lastEnd[node])
    {
        throw std::logic_error("EnergyLedger: interval does not continue the timeline");
    }
    if (end < start)
    {
        throw std::logic_error("EnergyLedger: negative interval");
    }
    if (end == start)
    {
        return; // zero-length, legal no-op
    }
    m_stateUs[node][static_cast<int>(s)] += end - start;
    m_lastEnd[node] = end;
    if (m_capture)
    {
        m_intervals[node].push_back(Interval{s, start, end});
    }
}

double EnergyLedger::NodeEnergyJ(int node) const
{
    double nj = 0.0;
    for (int s = 0; s < 5; ++s)
    {
        nj += static_cast<double>(m_stateUs[node][s]) *
              m_powers.MwOf(static_cast<RadioState>(s));
    }
    return nj * 1e-9;
}

double EnergyLedger::TotalEnergyJ() const
{
    double j = 0.0;
    for (std::size_t n = 0; n < m_stateUs.size(); ++n)
    {
        j += NodeEnergyJ(static_cast<int>(n));
    }
    return j;
}

TimeUs EnergyLedger::NodeAccountedUs(int node) const
{
    TimeUs total = 0;
    for (int s = 0; s < 5; ++s)
    {
        total += m_stateUs[node][s];
    }
    return total;
}

TimeUs EnergyLedger::StateDurationUs(int node, RadioState s) const
{
    return m_stateUs[node][static_cast<int>(s)];
}

const std::vector<EnergyLedger::Interval>& EnergyLedger::Intervals(int node) const
{
    if (!m_capture)
    {
        throw std::logic_error("EnergyLedger: interval capture not enabled");
    }
    return m_intervals[node];
}

AttrClass AttrOf(Priority p)
{
    switch (p)
    {
    case Priority::Urgent:
        return AttrClass::Urgent;
    case Priority::Normal:
        return AttrClass::Normal;
    case Priority::None:
        break;
    }
    return AttrClass::Shared;
}

MetricsCollector::MetricsCollector(int nodeCount,
                                   PowerConfig powers,
                                   std::uint64_t deliverTarget,
                                   bool captureIntervals)
    : m_ledger(nodeCount, powers, captureIntervals),
      m_target(deliverTarget)
{
    if (m_target == 0)
    {
        m_stop = true; // "0 delivered" stop holds immediately
    }
}

void MetricsCollector::CountGenerated(Priority p)
{
    ++m_generated[static_cast<int>(p)];
}

void MetricsCollector::CountOverflowDrop(Priority p)
{
    ++m_overflow[static_cast<int>(p)];
}

void MetricsCollector::CountRetryDrop(Priority p, std::size_t packets)
{
    m_retryDrop[static_cast<int>(p)] += packets;
}

void MetricsCollector::RecordDelivery(const Packet& pkt, TimeUs now)
{
    if (m_stop)
    {
        return; // beyond the measurement horizon
    }
    DeliveryRecord rec;
    rec.packetId = pkt.id;
    rec.priority = pkt.priority;
    rec.generatedAt = pkt.generatedAt;
    rec.deliveredAt = now;
    rec.hops = pkt.origin;
    rec.retransmissions = pkt.txAttempts > static_cast<std::uint32_t>(pkt.origin)
                              ? pkt.txAttempts - static_cast<std::uint32_t>(pkt.origin)
                              : 0;
    m_records.push_back(rec);
    ++m_deliveredBy[static_cast<int>(pkt.priority)];
    if (m_records.size() >= m_target)
    {
        m_stop = true;
    }
}

void MetricsCollector::ChargeEnergy(AttrClass cls, TimeUs duration, double mw)
{
    if (duration <= 0)
    {
        return;
    }
    m_attrNj[static_cast<int>(cls)] += static_cast<double>(duration) * mw;
}

std::uint64_t MetricsCollector::Delivered(Priority p) const
{
    return m_deliveredBy[static_cast<int>(p)];
}

std::optional<double> MetricsCollector::AverageDelayMs(std::optional<Priority> filter) const
{
    double sum = 0.0;
    std::uint64_t n = 0;
    for (const auto& r : m_records)
    {
        if (filter && r.priority != *filter)
        {
            continue;
        }
        sum += UsToMs(r.deliveredAt - r.generatedAt);
        ++n;
    }
    if (n == 0)
    {
        return std::nullopt;
    }
    return sum / static_cast<double>(n);
}

double MetricsCollector::AttributedJ(AttrClass cls) const
{
    return m_attrNj[static_cast<int>(cls)] * 1e-9;
}

double MetricsCollector::EnergyPerDeliveredMj(Priority p, bool blind) const
{
    double syncMj = 0.0;
    if (Delivered() > 0)
    {
        syncMj = AttributedJ(AttrClass::Sync) * 1e3 / static_cast<double>(Delivered());
    }
    if (blind)
    {
        if (Delivered() == 0)
        {
            return 0.0;
        }
        double poolMj = (AttributedJ(AttrClass::Shared) + AttributedJ(AttrClass::Urgent) +
                         AttributedJ(AttrClass::Normal)) *
                        1e3;
        return poolMj / static_cast<double>(Delivered()) + syncMj;
    }
    std::uint64_t dc = Delivered(p);
    if (dc == 0)
    {
        return 0.0;
    }
    return AttributedJ(AttrOf(p)) * 1e3 / static_cast<double>(dc) + syncMj;
}

} // namespace wbansim
