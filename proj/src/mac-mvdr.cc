#include "wbansim/mac-mvdr.h"

#include <algorithm>

namespace wbansim {

namespace {
constexpr TimeUs kAckGraceUs = 1000;
} // namespace

MvdrMac::MvdrMac(int id, MacContext ctx, MvdrSchedule& schedule)
    : MacBase(id, ctx),
      m_schedule(schedule),
      m_backoffRng(ctx.cfg.seed, static_cast<std::uint32_t>(id), RngPurpose::Backoff)
{
}

void MvdrMac::Start()
{
    // Simulation starts all nodes in id order, so the coordinator (0) builds
    // the assignments before anyone schedules against them.
    m_ctx.queue.Schedule(0, [this] { OnSuperframeStart(); });
}

void MvdrMac::EnqueueFromApp(const Packet& pkt)
{
    m_ctx.metrics.CountGenerated(pkt.priority);
    if (!EnqueueLocal(pkt))
    {
        m_ctx.metrics.CountOverflowDrop(pkt.priority);
        return;
    }
    if (pkt.priority == Priority::Normal && m_state == State::Active && Now() >= CapStart() &&
        Now() < CapEnd())
    {
        TryCapAccess();
    }
    // Urgent packets wait for the node's guaranteed slot.
}

bool MvdrMac::EnqueueLocal(const Packet& pkt)
{
    auto& q = pkt.priority == Priority::Urgent ? m_urgentQ : m_normalQ;
    if (q.size() >= static_cast<std::size_t>(m_ctx.cfg.queueCapacity))
    {
        return false;
    }
    q.push_back(pkt);
    if (pkt.priority == Priority::Urgent)
    {
        m_schedule.Register(m_id); // effective from the next superframe
    }
    return true;
}

// ----------------------------------------------------------- superframe ----

void MvdrMac::OnSuperframeStart()
{
    std::int64_t k = m_schedule.IndexAt(Now());
    m_sfStart = Now();
    m_state = State::Active;
    Radio(RadioState::Listen);

    if (IsSink())
    {
        m_schedule.BuildAssignments();
        Frame beacon;
        beacon.kind = FrameKind::Beacon;
        beacon.dst = kBroadcast;
        beacon.airtime = m_ctx.cfg.mvdrBeaconUs;
        m_ctx.channel.BeginTransmission(m_id, std::move(beacon), Now());
        Charge(AttrClass::Sync, m_ctx.cfg.mvdrBeaconUs, m_ctx.cfg.pTxMw);
    }
    else
    {
        // Beacon listening is synchronization overhead.
        Charge(AttrClass::Sync, m_ctx.cfg.mvdrBeaconUs, m_ctx.cfg.pListenMw);
    }

    // Order matters at equal instants: the GTS-region housekeeping must not
    // clobber a child-slot listen opening at the same boundary.
    m_ctx.queue.Schedule(m_sfStart + m_schedule.CapStartOffset(), [this] { OnCapStart(); });
    m_ctx.queue.Schedule(m_sfStart + m_schedule.GtsStartOffset(), [this] { OnGtsRegionStart(); });
    ScheduleSlotEvents(k);
    m_ctx.queue.Schedule(m_sfStart + m_schedule.ActiveEndOffset(), [this] { OnActiveEnd(); });
    m_ctx.queue.Schedule(m_sfStart + m_schedule.PeriodUs(), [this] { OnSuperframeStart(); });
}

void MvdrMac::ScheduleSlotEvents(std::int64_t)
{
    for (int slot = 0; slot < m_schedule.SlotCount(); ++slot)
    {
        int owner = m_schedule.SlotOwner(slot);
        if (owner < 0)
        {
            continue;
        }
        TimeUs slotStart = m_sfStart + m_schedule.SlotStartOffset(slot);
        TimeUs slotEnd = slotStart + m_schedule.SlotUs();
        if (owner == m_id)
        {
            m_ctx.queue.Schedule(slotStart, [this, slotEnd] { OnOwnSlot(slotEnd); });
        }
        else if (m_ctx.topo.NextHop(owner) == m_id)
        {
            m_ctx.queue.Schedule(slotStart, [this] { OnChildSlotStart(); });
            m_ctx.queue.Schedule(slotEnd, [this, slotStart] { OnChildSlotEnd(slotStart); });
        }
    }
}

void MvdrMac::OnCapStart()
{
    if (m_state == State::Active)
    {
        TryCapAccess();
    }
}

void MvdrMac::OnGtsRegionStart()
{
    // Abort any CAP attempt that straggled past the boundary (a lost-ack
    // wait can overhang by its grace period) and go quiet.
    if (m_state == State::CapBackoff || m_state == State::CapSense ||
        m_state == State::CapAwaitAck)
    {
        ++m_epoch;
        CancelTimer();
        m_state = State::Active;
    }
    if (m_state == State::Active && !m_gtsRxWindow)
    {
        Radio(RadioState::Idle);
    }
}

void MvdrMac::OnOwnSlot(TimeUs slotEnd)
{
    if (m_urgentQ.empty() || m_state != State::Active)
    {
        return; // stay idle; the receiver still listens out the slot
    }
    m_gtsSlotEnd = slotEnd;
    m_gtsBurst.clear();
    TimeUs budget = slotEnd - Now() - m_ctx.cfg.tAckUs;
    std::size_t maxPackets = std::min<std::size_t>(m_urgentQ.size(),
                                                   static_cast<std::size_t>(m_ctx.cfg.maxBurst));
    TimeUs airtime = UrgentAirtime();
    for (std::size_t i = 0; i < maxPackets; ++i)
    {
        if (static_cast<TimeUs>(m_gtsBurst.size() + 1) * airtime > budget)
        {
            break;
        }
        m_gtsBurst.push_back(m_urgentQ[i]);
    }
    if (m_gtsBurst.empty())
    {
        return;
    }
    m_gtsIdx = 0;
    GtsSendNext();
}

void MvdrMac::OnChildSlotStart()
{
    if (m_state == State::Active)
    {
        m_gtsRxWindow = true;
        m_gtsServedUntil = 0;
        m_rxAckIds.clear();
        Radio(RadioState::Listen);
    }
}

void MvdrMac::OnChildSlotEnd(TimeUs slotStart)
{
    // Urgent service cost: the receiver's listen time while the slot carried
    // traffic. Idle reserved-slot listening pools with the other overhead.
    if (m_gtsServedUntil > slotStart)
    {
        Charge(AttrClass::Urgent, std::min(m_gtsServedUntil, Now()) - slotStart,
               m_ctx.cfg.pListenMw);
    }
    m_gtsRxWindow = false;
    if (m_state == State::Active)
    {
        Radio(RadioState::Idle);
    }
}

void MvdrMac::OnActiveEnd()
{
    if (m_state != State::Active)
    {
        // Straggling exchange state is abandoned at the active boundary.
        ++m_epoch;
        CancelTimer();
        m_state = State::Active;
    }
    m_state = State::Inactive;
    Radio(RadioState::Sleep);
}

// ------------------------------------------------------------------ CAP ----

void MvdrMac::TryCapAccess()
{
    if (m_state != State::Active || m_normalQ.empty())
    {
        return;
    }
    TimeUs now = Now();
    if (now < CapStart() || now >= CapEnd())
    {
        return; // next superframe's CAP re-triggers
    }
    m_state = State::CapBackoff;
    std::uint64_t slots = m_backoffRng.UniformInt(static_cast<std::uint64_t>(m_ctx.cfg.cwMax));
    m_segStart = now;
    ArmTimerFn(now + static_cast<TimeUs>(slots) * m_ctx.cfg.backoffSlotUs,
               [this] { CapBackoffDone(); });
}

void MvdrMac::CapBackoffDone()
{
    Charge(AttrClass::Normal, Now() - m_segStart, m_ctx.cfg.pListenMw);
    if (Now() + m_ctx.cfg.tDetectUs >= CapEnd())
    {
        m_state = State::Active; // deferred to the next superframe
        return;
    }
    m_state = State::CapSense;
    m_segStart = Now();
    std::uint64_t epoch = m_epoch;
    m_ctx.channel.CarrierSense(m_id, [this, epoch](bool busy) {
        if (epoch == m_epoch && m_state == State::CapSense)
        {
            OnCapSense(busy);
        }
    });
}

void MvdrMac::OnCapSense(bool busy)
{
    Charge(AttrClass::Normal, Now() - m_segStart, m_ctx.cfg.pListenMw);
    if (busy)
    {
        m_state = State::Active;
        TryCapAccess(); // redraw backoff
        return;
    }
    // Transmit only when the whole exchange fits before CAP end.
    if (Now() + NormalAirtime() + m_ctx.cfg.tAckUs > CapEnd())
    {
        m_state = State::Active; // deferred
        return;
    }
    m_state = State::CapTxData;
    ++m_normalQ.front().txAttempts;
    Packet pkt = m_normalQ.front();

    Frame f;
    f.kind = FrameKind::Data;
    f.dst = m_ctx.topo.NextHop(m_id);
    f.priority = Priority::Normal;
    f.airtime = NormalAirtime();
    f.payload.push_back(pkt);
    m_ctx.channel.BeginTransmission(m_id, std::move(f), Now());
    Charge(AttrClass::Normal, NormalAirtime(), m_ctx.cfg.pTxMw);
    ArmTimerFn(Now() + NormalAirtime(), [this] {
        m_state = State::CapAwaitAck;
        m_segStart = Now();
        ArmTimerFn(Now() + m_ctx.cfg.tAckUs + kAckGraceUs, [this] { CapAckTimeout(); });
    });
}

void MvdrMac::CapAckTimeout()
{
    Charge(AttrClass::Normal, Now() - m_segStart, m_ctx.cfg.pListenMw);
    m_state = State::Active;
    ++m_capRetries;
    if (m_capRetries > m_ctx.cfg.retryLimit)
    {
        m_ctx.metrics.CountRetryDrop(Priority::Normal, 1);
        if (!m_normalQ.empty())
        {
            m_normalQ.pop_front();
        }
        m_capRetries = 0;
    }
    TryCapAccess();
}

void MvdrMac::HandleCapAck(const Frame& frame)
{
    Charge(AttrClass::Normal, Now() - m_segStart, m_ctx.cfg.pListenMw);
    CancelTimer();
    for (std::uint64_t id : frame.ackedIds)
    {
        auto it = std::find_if(m_normalQ.begin(), m_normalQ.end(),
                               [id](const Packet& p) { return p.id == id; });
        if (it != m_normalQ.end())
        {
            m_normalQ.erase(it);
        }
    }
    m_capRetries = 0;
    m_state = State::Active;
    TryCapAccess();
}

// ------------------------------------------------------------------ GTS ----

void MvdrMac::GtsSendNext()
{
    m_state = State::GtsTx;
    ++m_gtsBurst[m_gtsIdx].txAttempts;
    // keep the queue copy in sync
    for (auto& p : m_urgentQ)
    {
        if (p.id == m_gtsBurst[m_gtsIdx].id)
        {
            ++p.txAttempts;
            break;
        }
    }
    Packet pkt = m_gtsBurst[m_gtsIdx];

    Frame f;
    f.kind = FrameKind::Data;
    f.dst = m_ctx.topo.NextHop(m_id);
    f.priority = Priority::Urgent;
    f.airtime = UrgentAirtime();
    f.morePending = m_gtsIdx + 1 < m_gtsBurst.size();
    f.payload.push_back(pkt);
    m_ctx.channel.BeginTransmission(m_id, std::move(f), Now());
    Charge(AttrClass::Urgent, UrgentAirtime(), m_ctx.cfg.pTxMw);
    ArmTimerFn(Now() + UrgentAirtime(), [this] { GtsFrameDone(); });
}

void MvdrMac::GtsFrameDone()
{
    if (m_gtsIdx + 1 < m_gtsBurst.size())
    {
        ++m_gtsIdx;
        GtsSendNext(); // contention-free: back to back
    }
    else
    {
        m_state = State::GtsAwaitAck;
        m_segStart = Now();
        ArmTimerFn(Now() + m_ctx.cfg.tAckUs + kAckGraceUs, [this] { GtsAckTimeout(); });
    }
}

void MvdrMac::GtsAckTimeout()
{
    // Contention-free slots should not lose acks; keep the packets queued for
    // the next superframe's slot.
    Charge(AttrClass::Urgent, Now() - m_segStart, m_ctx.cfg.pListenMw);
    m_state = State::Active;
}

// -------------------------------------------------------------- receive ----

void MvdrMac::OnFrameReceived(const Frame& frame, TimeUs now)
{
    if (frame.dst != m_id)
    {
        return;
    }
    switch (frame.kind)
    {
    case FrameKind::Data: {
        bool capFrame = !m_gtsRxWindow;
        if (capFrame &&
            m_state != State::Active && m_state != State::CapBackoff &&
            m_state != State::CapSense)
        {
            return; // busy with an own exchange; the sender retries
        }
        if (capFrame)
        {
            // A reception pre-empts any own CAP attempt in progress.
            ++m_epoch;
            CancelTimer();
            m_state = State::Active;
            Charge(AttrClass::Normal, frame.airtime, m_ctx.cfg.pListenMw);
        }
        m_rxPeer = frame.src;
        for (const auto& pkt : frame.payload)
        {
            m_rxAckIds.push_back(pkt.id);
            if (m_seen.insert(pkt.id).second)
            {
                DeliverOrRelay(pkt, now);
            }
        }
        if (!frame.morePending)
        {
            // CAP acks must fit the CAP, GTS acks their slot; the sender's
            // fit checks guarantee both.
            SendAck(m_rxAckIds.size() > 1, 0);
        }
        break;
    }
    case FrameKind::Ack:
    case FrameKind::BlockAck:
        if (m_state == State::CapAwaitAck)
        {
            HandleCapAck(frame);
        }
        else if (m_state == State::GtsAwaitAck)
        {
            Charge(AttrClass::Urgent, now - m_segStart, m_ctx.cfg.pListenMw);
            CancelTimer();
            for (std::uint64_t id : frame.ackedIds)
            {
                auto it = std::find_if(m_urgentQ.begin(), m_urgentQ.end(),
                                       [id](const Packet& p) { return p.id == id; });
                if (it != m_urgentQ.end())
                {
                    m_urgentQ.erase(it);
                }
            }
            m_state = State::Active;
        }
        break;
    default:
        break; // beacons carry no MAC action (shared schedule)
    }
}

void MvdrMac::SendAck(bool block, TimeUs)
{
    State ackState = m_gtsRxWindow ? State::GtsAckTx : State::TxAck;
    AttrClass cls = m_gtsRxWindow ? AttrClass::Urgent : AttrClass::Normal;
    if (m_gtsRxWindow)
    {
        m_gtsServedUntil = Now() + m_ctx.cfg.tAckUs;
    }
    m_state = ackState;
    Frame f;
    f.kind = block ? FrameKind::BlockAck : FrameKind::Ack;
    f.dst = m_rxPeer;
    f.priority = m_gtsRxWindow ? Priority::Urgent : Priority::Normal;
    f.airtime = m_ctx.cfg.tAckUs;
    f.ackedIds = m_rxAckIds;
    m_rxAckIds.clear();
    m_ctx.channel.BeginTransmission(m_id, std::move(f), Now());
    Charge(cls, m_ctx.cfg.tAckUs, m_ctx.cfg.pTxMw);
    ArmTimerFn(Now() + m_ctx.cfg.tAckUs, [this] { AckTxDone(); });
}

void MvdrMac::AckTxDone()
{
    m_state = State::Active;
    if (!m_gtsRxWindow)
    {
        TryCapAccess(); // a relay may contend for the same CAP
    }
}

void MvdrMac::DeliverOrRelay(const Packet& pkt, TimeUs now)
{
    if (IsSink())
    {
        m_ctx.metrics.RecordDelivery(pkt, now);
        return;
    }
    if (!EnqueueLocal(pkt))
    {
        m_ctx.metrics.CountOverflowDrop(pkt.priority);
    }
}

} // namespace wbansim
