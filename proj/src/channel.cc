#include "wbansim/channel.h"

#include <algorithm>
#include <stdexcept>

namespace wbansim {

const char* ToString(FrameKind k)
{
    switch (k)
    {
    case FrameKind::PreambleStrobe:
        return "strobe";
    case FrameKind::EarlyAck:
        return "early_ack";
    case FrameKind::Data:
        return "data";
    case FrameKind::Ack:
        return "ack";
    case FrameKind::BlockAck:
        return "block_ack";
    case FrameKind::Beacon:
        return "beacon";
    }
    return "?";
}

const char* ToString(RadioState s)
{
    switch (s)
    {
    case RadioState::Sleep:
        return "sleep";
    case RadioState::Idle:
        return "idle";
    case RadioState::Listen:
        return "listen";
    case RadioState::Receive:
        return "receive";
    case RadioState::Transmit:
        return "transmit";
    }
    return "?";
}

TimeUs PayloadAirtimeUs(std::uint64_t bytes, std::uint32_t rateBps)
{
    if (rateBps == 0)
    {
        throw std::invalid_argument("PayloadAirtimeUs: rate must be positive");
    }
    if (bytes == 0)
    {
        return 0;
    }
    std::uint64_t bits = bytes * 8;
    return static_cast<TimeUs>((bits * 1000000ULL + rateBps / 2) / rateBps);
}

Channel::Channel(EventQueue& queue,
                 const Topology& topo,
                 MetricsCollector& metrics,
                 FrameTimings timings,
                 FrameTrace* trace)
    : m_queue(queue),
      m_topo(topo),
      m_metrics(metrics),
      m_timings(timings),
      m_trace(trace),
      m_sinks(topo.TotalNodes(), nullptr),
      m_state(topo.TotalNodes(), RadioState::Sleep),
      m_stateSince(topo.TotalNodes(), 0),
      m_listenSince(topo.TotalNodes(), -1)
{
}

void Channel::AttachNode(int id, FrameSink* sink)
{
    m_sinks.at(id) = sink;
}

void Channel::SetRadioState(int node, RadioState s, TimeUs now)
{
    if (now < m_stateSince.at(node))
    {
        throw std::logic_error("Channel::SetRadioState: out-of-order timestamp");
    }
    RadioState prev = m_state[node];
    m_metrics.Ledger().RecordInterval(node, prev, m_stateSince[node], now);
    m_stateSince[node] = now;
    m_state[node] = s;

    bool wasRx = prev == RadioState::Listen || prev == RadioState::Receive;
    bool isRx = s == RadioState::Listen || s == RadioState::Receive;
    if (isRx && !wasRx)
    {
        m_listenSince[node] = now;
    }
    else if (!isRx)
    {
        m_listenSince[node] = -1;
    }
}

void Channel::BeginTransmission(int src, Frame frame, TimeUs now)
{
    if (frame.airtime <= 0)
    {
        throw std::logic_error("Channel::BeginTransmission: non-positive airtime");
    }
    for (const auto& t : m_active)
    {
        if (t.src == src)
        {
            throw std::logic_error("Channel::BeginTransmission: node already transmitting");
        }
    }

    frame.src = src;
    Transmission tx;
    tx.serial = m_nextSerial++;
    tx.src = src;
    tx.start = now;
    tx.end = now + frame.airtime;
    tx.frame = std::move(frame);

    // Binary collision model: any overlap corrupts every party. Intervals
    // are half-open, so a frame ending exactly now does not overlap.
    for (auto& other : m_active)
    {
        if (other.end > now)
        {
            other.corrupted = true;
            tx.corrupted = true;
        }
    }
    for (auto& sense : m_senses)
    {
        if (sense.windowEnd > now)
        {
            sense.busySeen = true;
        }
    }

    SetRadioState(src, RadioState::Transmit, now);

    bool wasIdle = m_activeCount == 0;
    m_active.push_back(std::move(tx));
    ++m_activeCount;
    std::uint64_t serial = m_active.back().serial;
    m_queue.Schedule(m_active.back().end, [this, serial] { EndTransmission(serial); });

    if (wasIdle)
    {
        for (std::size_t n = 0; n < m_sinks.size(); ++n)
        {
            if (m_sinks[n] && static_cast<int>(n) != src)
            {
                m_sinks[n]->OnChannelBusy(now);
            }
        }
    }
}

void Channel::EndTransmission(std::uint64_t serial)
{
    TimeUs now = m_queue.Now();
    auto it = std::find_if(m_active.begin(), m_active.end(),
                           [serial](const Transmission& t) { return t.serial == serial; });
    if (it == m_active.end())
    {
        throw std::logic_error("Channel::EndTransmission: unknown transmission");
    }
    Transmission tx = std::move(*it);
    m_active.erase(it);
    --m_activeCount;

    // Sender returns to Listen at end of frame; the MAC decides what follows
    // (its continuation event was scheduled after this one, same instant).
    SetRadioState(tx.src, RadioState::Listen, now);

    bool delivered = false;
    if (!tx.corrupted)
    {
        for (std::size_t n = 0; n < m_sinks.size(); ++n)
        {
            int node = static_cast<int>(n);
            if (node == tx.src || !m_sinks[n] || !m_topo.Hears(tx.src, node))
            {
                continue;
            }
            RadioState s = m_state[node];
            bool rx = s == RadioState::Listen || s == RadioState::Receive;
            // Full-duration rule: no phantom delivery for partial listeners.
            if (rx && m_listenSince[node] >= 0 && m_listenSince[node] <= tx.start)
            {
                delivered = true;
                m_sinks[n]->OnFrameReceived(tx.frame, now);
            }
        }
    }
    Trace(tx.frame, now, tx.corrupted ? "corrupted" : (delivered ? "delivered" : "unheard"));

    if (m_activeCount == 0)
    {
        for (std::size_t n = 0; n < m_sinks.size(); ++n)
        {
            if (m_sinks[n])
            {
                m_sinks[n]->OnChannelIdle(now);
            }
        }
    }
}

void Channel::CarrierSense(int node, std::function<void(bool busy)> onResult)
{
    PendingSense sense;
    sense.node = node;
    sense.windowEnd = m_queue.Now() + m_timings.detectUs;
    sense.busySeen = false;
    for (const auto& t : m_active)
    {
        if (t.end > m_queue.Now())
        {
            sense.busySeen = true;
            break;
        }
    }
    sense.onResult = std::move(onResult);
    m_senses.push_back(std::move(sense));

    m_queue.Schedule(sense.windowEnd, [this] {
        // Equal-length windows complete in registration order.
        PendingSense s = std::move(m_senses.front());
        m_senses.pop_front();
        s.onResult(s.busySeen);
    });
}

TimeUs Channel::BusyUntil() const
{
    TimeUs until = m_queue.Now();
    for (const auto& t : m_active)
    {
        until = std::max(until, t.end);
    }
    return until;
}

TimeUs Channel::DataAirtimeUs(std::uint32_t rateBps) const
{
    if (rateBps == 0)
    {
        throw std::invalid_argument("DataAirtimeUs: rate must be positive");
    }
    if (rateBps == m_timings.bitRateBps)
    {
        return m_timings.dataUs;
    }
    std::uint64_t scaled = static_cast<std::uint64_t>(m_timings.dataUs) * m_timings.bitRateBps;
    return static_cast<TimeUs>((scaled + rateBps / 2) / rateBps);
}

void Channel::FinalizeTimelines(TimeUs endTime)
{
    for (std::size_t n = 0; n < m_state.size(); ++n)
    {
        m_metrics.Ledger().RecordInterval(static_cast<int>(n), m_state[n], m_stateSince[n],
                                          endTime);
        m_stateSince[n] = endTime;
    }
}

void Channel::Trace(const Frame& f, TimeUs endAt, const char* outcome)
{
    if (!m_trace)
    {
        return;
    }
    FrameTrace::Entry e;
    e.timeUs = endAt - f.airtime;
    e.kind = ToString(f.kind);
    e.src = f.src;
    e.dst = f.dst;
    e.priority = f.priority;
    e.outcome = outcome;
    e.airtime = f.airtime;
    m_trace->Add(std::move(e));
}

} // namespace wbansim
