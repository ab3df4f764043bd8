#include "wbansim/simulation.h"

#include "wbansim/mac-adp.h"
#include "wbansim/mac-adp2.h"
#include "wbansim/mac-mvdr.h"

namespace wbansim {

Simulation::Simulation(const SimConfig& cfg, bool enableTrace, bool captureIntervals)
    : m_cfg(cfg),
      m_topo(cfg.nodes),
      m_metrics(m_topo.TotalNodes(), cfg.Powers(), cfg.stopDelivered, captureIntervals),
      m_traceEnabled(enableTrace),
      m_channel(m_queue, m_topo, m_metrics, cfg.Timings(), enableTrace ? &m_trace : nullptr)
{
    m_cfg.Validate();

    MacContext ctx{m_queue, m_channel, m_topo, m_metrics, m_cfg,
                   m_traceEnabled ? &m_trace : nullptr};
    if (m_cfg.protocol == Protocol::Mvdr)
    {
        m_mvdrSchedule = std::make_unique<MvdrSchedule>(m_cfg);
    }
    for (int id = 0; id < m_topo.TotalNodes(); ++id)
    {
        switch (m_cfg.protocol)
        {
        case Protocol::Adp:
            m_macs.push_back(std::make_unique<AdpMac>(id, ctx));
            break;
        case Protocol::Adp2:
            m_macs.push_back(std::make_unique<Adp2Mac>(id, ctx));
            break;
        case Protocol::Mvdr:
            m_macs.push_back(std::make_unique<MvdrMac>(id, ctx, *m_mvdrSchedule));
            break;
        }
        m_channel.AttachNode(id, m_macs.back().get());
    }
    BuildSources();
}

void Simulation::BuildSources()
{
    // Scripted arrivals, when present for a class, replace that class's
    // pattern generators entirely (scenario scripting).
    for (int node = 1; node <= m_cfg.nodes; ++node)
    {
        RngStream rng(m_cfg.seed, static_cast<std::uint32_t>(node), RngPurpose::ArrivalUrgent);
        if (!m_cfg.urgentScript.empty())
        {
            auto it = m_cfg.urgentScript.find(node);
            if (it != m_cfg.urgentScript.end())
            {
                m_sources.push_back(
                    Source{Generator(it->second, Priority::Urgent, node), rng, node});
            }
        }
        else if (m_cfg.urgentPattern != ArrivalPattern::Disabled)
        {
            m_sources.push_back(Source{
                Generator(m_cfg.urgentPattern, m_cfg.urgentMeanUs, Priority::Urgent, node), rng,
                node});
        }
    }
    for (int node = 1; node <= m_cfg.nodes; ++node)
    {
        RngStream rng(m_cfg.seed, static_cast<std::uint32_t>(node), RngPurpose::ArrivalNormal);
        if (!m_cfg.normalScript.empty())
        {
            auto it = m_cfg.normalScript.find(node);
            if (it != m_cfg.normalScript.end())
            {
                m_sources.push_back(
                    Source{Generator(it->second, Priority::Normal, node), rng, node});
            }
        }
        else if (m_cfg.normalPattern != ArrivalPattern::Disabled)
        {
            m_sources.push_back(Source{
                Generator(m_cfg.normalPattern, m_cfg.normalMeanUs, Priority::Normal, node), rng,
                node});
        }
    }
}

void Simulation::ScheduleNextArrival(std::size_t idx)
{
    Source& src = m_sources[idx];
    auto at = src.gen.NextArrival(src.rng);
    if (!at)
    {
        return; // scripted source exhausted
    }
    m_queue.Schedule(*at, [this, idx] {
        Source& s = m_sources[idx];
        Packet pkt;
        pkt.id = m_nextPacketId++;
        pkt.origin = s.node;
        pkt.priority = s.gen.GetPriority();
        pkt.generatedAt = m_queue.Now();
        pkt.sizeBytes = m_cfg.dataBytes;
        if (m_traceEnabled)
        {
            m_arrivals.push_back(ArrivalRecord{pkt.generatedAt, s.node, pkt.priority, pkt.id});
        }
        m_macs[static_cast<std::size_t>(s.node)]->EnqueueFromApp(pkt);
        ScheduleNextArrival(idx);
    });
}

RunSummary Simulation::Run()
{
    for (auto& mac : m_macs)
    {
        mac->Start(); // id order: the MVDR coordinator precedes its nodes
    }
    for (std::size_t i = 0; i < m_sources.size(); ++i)
    {
        ScheduleNextArrival(i);
    }
    RunReport report = m_queue.Run([this] { return m_metrics.StopReached(); },
                                   m_cfg.maxSimTimeUs);
    m_channel.FinalizeTimelines(report.endTime);
    return Summarize(m_cfg, m_metrics, report);
}

void Simulation::WriteArrivalsCsv(std::ostream& os) const
{
    os << "time_us,node,priority,packet_id\n";
    for (const auto& a : m_arrivals)
    {
        os << a.timeUs << ',' << a.node << ',' << ToString(a.priority) << ',' << a.packetId
           << "\n";
    }
}

RunSummary Summarize(const SimConfig& cfg, const MetricsCollector& metrics,
                     const RunReport& report)
{
    RunSummary s;
    s.protocol = cfg.protocol;
    s.intervalUrgentUs = cfg.urgentMeanUs;
    s.intervalNormalUs = cfg.normalMeanUs;
    s.seed = cfg.seed;

    s.generated = metrics.Generated();
    s.delivered = metrics.Delivered();
    s.deliveredUrgent = metrics.Delivered(Priority::Urgent);
    s.deliveredNormal = metrics.Delivered(Priority::Normal);
    s.droppedOverflow = metrics.OverflowDrops();
    s.droppedRetry = metrics.RetryDrops();
    s.pdr = s.generated > 0
                ? static_cast<double>(s.delivered) / static_cast<double>(s.generated)
                : 0.0;

    s.avgDelayUrgentMs = metrics.AverageDelayMs(Priority::Urgent);
    s.avgDelayNormalMs = metrics.AverageDelayMs(Priority::Normal);

    s.energyTotalJ = metrics.Ledger().TotalEnergyJ();
    for (int n = 0; n <= cfg.nodes; ++n)
    {
        s.energyPerNodeJ.push_back(metrics.Ledger().NodeEnergyJ(n));
    }
    s.energyPerDeliveredMj =
        s.delivered > 0 ? s.energyTotalJ * 1e3 / static_cast<double>(s.delivered) : 0.0;

    bool blind = cfg.protocol == Protocol::Adp; // no priority path
    s.energyPerDeliveredUrgentMj = metrics.EnergyPerDeliveredMj(Priority::Urgent, blind);
    s.energyPerDeliveredNormalMj = metrics.EnergyPerDeliveredMj(Priority::Normal, blind);

    switch (report.termination)
    {
    case RunReport::Termination::Completed:
        s.status = "ok";
        break;
    case RunReport::Termination::Starved:
        s.status = "starved";
        break;
    case RunReport::Termination::TimedOut:
        s.status = "timeout";
        break;
    }
    s.endTimeUs = report.endTime;
    return s;
}

} // namespace wbansim
