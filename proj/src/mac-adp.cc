#include "wbansim/mac-adp.h"

#include <algorithm>
#include <stdexcept>


namespace wbansim {


namespace {
constexpr TimeUs kAckGraceUs = 1000;
constexpr TimeUs kDataGraceUs = 2000;
} // namespace

AdpMac::AdpMac(int id, MacContext ctx)
    : MacBase(id, ctx),
      m_backoffRng(ctx.cfg.seed, static_cast<std::uint32_t>(id), RngPurpose::Backoff),
      m_pollRng(ctx.cfg.seed, static_cast<std::uint32_t>(id), RngPurpose::Polling),
      m_genHistory(static_cast<std::size_t>(ctx.cfg.cvWindow))
{
    m_policy.meanUs = ctx.cfg.tPiUs;
    m_policy.adaptMean = ctx.cfg.adaptPollingMean;
    m_policy.meanCapUs = ctx.cfg.pollingMeanCapUs;
}

void AdpMac::Start()
{
    if (IsSink())
    {
        // Final polling receiver with an always-on radio.
        Radio(RadioState::Listen);
        m_state = State::Linger;
        return;
    }
    Radio(RadioState::Sleep);
    m_state = State::Sleep;
    ArmTimer(Now() + NextWakeIntervalUs(), &AdpMac::WakeFired);
}

void AdpMac::EnqueueFromApp(const Packet& pkt)
{
    m_ctx.metrics.CountGenerated(pkt.priority);
    if (!QueuePush(pkt, false))
    {
        m_ctx.metrics.CountOverflowDrop(pkt.priority);
        return;
    }
    if (m_state == State::Sleep)
    {
        CancelTimer();
        StartAccess();
    }
    // Any other state picks the packet up at its next idle decision point.
}

// ---------------------------------------------------------------- queue ----

bool AdpMac::QueuePush(const Packet& pkt, bool)
{
    // Single FIFO shared by both classes: 2x the per-class capacity.
    if (m_fifo.size() >= static_cast<std::size_t>(2 * m_ctx.cfg.queueCapacity))
    {
        return false;
    }
    m_fifo.push_back(pkt);
    return true;
}

bool AdpMac::HasQueued() const
{
    return !m_fifo.empty();
}

std::vector<Packet> AdpMac::PreviewBurst()
{
    std::vector<Packet> burst;
    std::size_t n = std::min<std::size_t>(m_fifo.size(),
                                          static_cast<std::size_t>(m_ctx.cfg.maxBurst));
    for (std::size_t i = 0; i < n; ++i)
    {
        burst.push_back(m_fifo[i]);
    }
    m_burstClass = Priority::None; // no priority path
    return burst;
}

std::vector<Packet> AdpMac::PreviewBurstForClass(Priority)
{
    return PreviewBurst();
}

void AdpMac::RemoveQueued(const std::vector<std::uint64_t>& ids)
{
    for (std::uint64_t id : ids)
    {
        auto it = std::find_if(m_fifo.begin(), m_fifo.end(),
                               [id](const Packet& p) { return p.id == id; });
        if (it != m_fifo.end())
        {
            m_fifo.erase(it);
        }
    }
}

void AdpMac::BumpAttempts(std::uint64_t id)
{
    for (auto& p : m_fifo)
    {
        if (p.id == id)
        {
            ++p.txAttempts;
            return;
        }
    }
}

void AdpMac::DropBurstPackets()
{
    std::vector<std::uint64_t> ids;
    for (const auto& p : m_burst)
    {
        ids.push_back(p.id);
        m_ctx.metrics.CountRetryDrop(p.priority, 1);
        ++m_retryDrops;
    }
    RemoveQueued(ids);
}

// ------------------------------------------------------------ behaviour ----

int AdpMac::CwFor(Priority) const
{
    return m_ctx.cfg.cwMax;
}

TimeUs AdpMac::NextWakeIntervalUs()
{
    return m_policy.DrawIntervalUs(m_pollRng);
}

AttrClass AdpMac::ChargeClassFor(Priority) const
{
    return AttrClass::Shared; // class-blind accounting
}

void AdpMac::OnAccessDeferred(Priority)
{
}

void AdpMac::OnAccessSuccess(Priority)
{
}

bool AdpMac::ShouldServeStrobe(const Frame&)
{
    return true;
}

void AdpMac::OnStrobeOverheard(const Frame&)
{
}

bool AdpMac::ShouldInterruptBurst(const Frame&)
{
    return false;
}

void AdpMac::AfterInterruptAck()
{
    EnterLinger();
}

void AdpMac::OnDataFrameReceived(const Frame&, bool)
{
}

bool AdpMac::LiveUrgentInterrupt() const
{
    return false; // no priority path
}

void AdpMac::UpdatePollingPolicies()
{
    m_policy = UpdatePolicy(m_genHistory, m_policy, m_ctx.cfg.cvThreshold,
                            m_ctx.cfg.adaptDistribution);
}

// ------------------------------------------------------------ sender path --

void AdpMac::StartAccess()
{
    m_burst = PreviewBurst(); // re-previewed at every access decision point
    if (m_burst.empty())
    {
        throw std::logic_error("AdpMac::StartAccess with empty queue");
    }
    StartBackoff(false);
}

void AdpMac::StartSense()
{
    Transition(State::TxSense);
    Radio(RadioState::Listen);
    m_segStart = Now();
    std::uint64_t epoch = m_epoch;
    m_ctx.channel.CarrierSense(m_id, [this, epoch](bool busy) {
        if (epoch == m_epoch && m_state == State::TxSense)
        {
            OnSenseResult(busy);
        }
    });
}

void AdpMac::OnSenseResult(bool busy)
{
    Charge(m_burstClass, Now() - m_segStart, m_ctx.cfg.pListenMw);
    if (busy)
    {
        ++m_deferStreak;
        OnAccessDeferred(m_burstClass);
        WaitForClearChannel();
    }
    else
    {
        StartStrobing(); // listen-before-talk: the verdict gates the train
    }
}

void AdpMac::StartBackoff(bool resenseAfter)
{
    m_backoffResense = resenseAfter;
    // Consecutive deferrals escalate the window toward cw_max so clashing
    // trains separate; success resets the streak.
    int cw = CwFor(m_burstClass);
    int shift = m_deferStreak > 5 ? 5 : m_deferStreak;
    cw = std::min(cw << shift, m_ctx.cfg.cwMax);
    std::uint64_t slots = m_backoffRng.UniformInt(static_cast<std::uint64_t>(cw));
    if (resenseAfter && slots == 0)
    {
        slots = 1; // busy-channel redraw must make progress
    }
    Transition(State::TxBackoff);
    Radio(RadioState::Listen);
    m_segStart = Now();
    m_backoffEndsAt = Now() + static_cast<TimeUs>(slots) * m_ctx.cfg.backoffSlotUs;
    ArmTimer(m_backoffEndsAt, &AdpMac::BackoffDone);
}

void AdpMac::BackoffDone()
{
    Charge(m_burstClass, Now() - m_segStart, m_ctx.cfg.pListenMw);
    StartSense(); // sense immediately precedes the strobes
}

void AdpMac::WaitForClearChannel()
{
    // Carrier monitoring until the air clears; the redrawn backoff plus a
    // fresh sense follow. Generic channel-watching is duty-cycle overhead,
    // not exchange cost.
    if (!m_ctx.channel.BusyNow())
    {
        StartBackoff(true);
        return;
    }
    Transition(State::TxWaitClear);
    Radio(RadioState::Listen);
}

void AdpMac::StartStrobing()
{
    // Last access decision point before anything goes on air: re-pin the
    // burst so urgent arrivals during sense/backoff take over.
    m_burst = PreviewBurst();
    if (m_burst.empty())
    {
        throw std::logic_error("AdpMac::StartStrobing with empty queue");
    }
    m_strobeDeadline = Now() + m_ctx.cfg.MaxStrobeTimeUs();
    SendStrobe();
}

void AdpMac::SendStrobe()
{
    Transition(State::TxStrobe);
    Frame f;
    f.kind = FrameKind::PreambleStrobe;
    f.dst = m_ctx.topo.NextHop(m_id);
    f.priority = m_burstClass;
    f.airtime = m_ctx.cfg.tPreUs;
    m_ctx.channel.BeginTransmission(m_id, std::move(f), Now());
    Charge(m_burstClass, m_ctx.cfg.tPreUs, m_ctx.cfg.pTxMw);
    ArmTimer(Now() + m_ctx.cfg.tPreUs, &AdpMac::StrobeDone);
}

void AdpMac::StrobeDone()
{
    Transition(State::TxPause);
    Radio(RadioState::Listen);
    m_segStart = Now();
    m_pauseForeignCarrier = m_ctx.channel.BusyNow();
    ArmTimer(Now() + m_ctx.cfg.tPrePauseUs, &AdpMac::PauseExpired);
}

void AdpMac::PauseExpired()
{
    Charge(m_burstClass, Now() - m_segStart, m_ctx.cfg.pListenMw);
    if (m_pauseForeignCarrier || m_ctx.channel.BusyNow())
    {
        // Someone else is on air mid-train (and it was not our EA): stop
        // strobing into them and re-contend once the channel clears.
        ++m_deferStreak;
        OnAccessDeferred(m_burstClass);
        WaitForClearChannel();
        return;
    }
    if (Now() + m_ctx.cfg.tPreUs <= m_strobeDeadline)
    {
        SendStrobe();
    }
    else
    {
        RetryOrDrop();
    }
}

void AdpMac::RetryOrDrop()
{
    ++m_retryCount;
    if (m_retryCount > m_ctx.cfg.retryLimit)
    {
        DropBurstPackets();
        m_retryCount = 0;
        m_deferStreak = 0;
        if (HasQueued())
        {
            StartAccess();
        }
        else
        {
            AfterExchangeIdle();
        }
    }
    else
    {
        StartAccess();
    }
}

void AdpMac::StartDataTrain()
{
    m_burst = PreviewBurstForClass(m_burstClass);
    if (m_burst.empty())
    {
        throw std::logic_error("AdpMac::StartDataTrain with empty queue");
    }
    m_burstIdx = 0;
    SendDataFrame();
}

void AdpMac::SendDataFrame()
{
    Transition(State::TxData);
    ++m_burst[m_burstIdx].txAttempts;
    BumpAttempts(m_burst[m_burstIdx].id);
    Packet pkt = m_burst[m_burstIdx];

    Frame f;
    f.kind = FrameKind::Data;
    f.dst = m_ctx.topo.NextHop(m_id);
    f.priority = pkt.priority;
    f.airtime = DataFrameAirtime();
    f.morePending = m_burstIdx + 1 < m_burst.size();
    f.payload.push_back(pkt);
    m_ctx.channel.BeginTransmission(m_id, std::move(f), Now());
    Charge(m_burstClass, DataFrameAirtime(), m_ctx.cfg.pTxMw);
    ArmTimer(Now() + DataFrameAirtime(), &AdpMac::DataFrameDone);
}

void AdpMac::DataFrameDone()
{
    if (m_burstIdx + 1 < m_burst.size())
    {
        Transition(State::TxGap);
        Radio(RadioState::Listen);
        m_segStart = Now();
        ArmTimer(Now() + m_ctx.cfg.burstGapUs, &AdpMac::GapDone);
    }
    else
    {
        Transition(State::TxAwaitAck);
        Radio(RadioState::Listen);
        m_segStart = Now();
        ArmTimer(Now() + m_ctx.cfg.tAckUs + kAckGraceUs, &AdpMac::AckTimeout);
    }
}

void AdpMac::GapDone()
{
    Charge(m_burstClass, Now() - m_segStart, m_ctx.cfg.pListenMw);
    if (m_ctx.channel.BusyNow())
    {
        // The receiver broke in at the frame boundary (partial block ack) or
        // someone else grabbed the channel: abort the train and listen.
        Transition(State::TxAwaitAck);
        m_segStart = Now();
        ArmTimer(Now() + m_ctx.cfg.tAckUs + kAckGraceUs, &AdpMac::AckTimeout);
    }
    else
    {
        ++m_burstIdx;
        SendDataFrame();
    }
}

void AdpMac::AckTimeout()
{
    Charge(m_burstClass, Now() - m_segStart, m_ctx.cfg.pListenMw);
    RetryOrDrop();
}

void AdpMac::HandleAck(const Frame& frame)
{
    Charge(m_burstClass, Now() - m_segStart, m_ctx.cfg.pListenMw);
    CancelTimer();
    RemoveQueued(frame.ackedIds);
    m_retryCount = 0;
    m_deferStreak = 0;
    OnAccessSuccess(m_burstClass);
    if (HasQueued())
    {
        // Back into contention: the backoff+sense round ahead of the next
        // burst is where waiting neighbours can win the channel.
        StartAccess();
    }
    else
    {
        AfterExchangeIdle();
    }
}

// ---------------------------------------------------------- receiver path --

void AdpMac::BeginEa(const Frame& strobe)
{
    CancelTimer();
    m_rxPeer = strobe.src;
    m_rxClass = strobe.priority;
    m_rxAckIds.clear();
    Transition(State::RxEa);
    Frame f;
    f.kind = FrameKind::EarlyAck;
    f.dst = strobe.src;
    f.priority = strobe.priority;
    f.airtime = m_ctx.cfg.tEaUs;
    m_ctx.channel.BeginTransmission(m_id, std::move(f), Now());
    Charge(m_rxClass, m_ctx.cfg.tEaUs, m_ctx.cfg.pTxMw);
    ArmTimer(Now() + m_ctx.cfg.tEaUs, &AdpMac::EaDone);
}

void AdpMac::EaDone()
{
    Transition(State::RxDataWait);
    Radio(RadioState::Listen);
    m_segStart = Now();
    ArmTimer(Now() + DataFrameAirtime() + kDataGraceUs, &AdpMac::RxTimeout);
}

void AdpMac::RxTimeout()
{
    Charge(m_rxClass, Now() - m_segStart, m_ctx.cfg.pListenMw);
    if (!m_rxAckIds.empty())
    {
        SendRxAck(false); // acknowledge the part that did arrive
    }
    else
    {
        EnterLinger();
    }
}

void AdpMac::SendRxAck(bool interrupted)
{
    CancelTimer();
    Transition(State::RxAck);
    Frame f;
    f.kind = m_rxAckIds.size() > 1 ? FrameKind::BlockAck : FrameKind::Ack;
    f.dst = m_rxPeer;
    f.priority = m_rxClass;
    f.airtime = m_ctx.cfg.tAckUs;
    f.ackedIds = m_rxAckIds;
    m_ctx.channel.BeginTransmission(m_id, std::move(f), Now());
    Charge(m_rxClass, m_ctx.cfg.tAckUs, m_ctx.cfg.pTxMw);
    m_rxAckIds.clear();
    m_rxInterrupted = interrupted;
    ArmTimer(Now() + m_ctx.cfg.tAckUs, &AdpMac::RxAckTimerFired);
}

void AdpMac::RxAckTimerFired()
{
    RxAckDone(m_rxInterrupted);
}

void AdpMac::RxAckDone(bool interrupted)
{
    if (interrupted)
    {
        AfterInterruptAck();
    }
    else
    {
        // T_add linger; relayed backlog goes out when the linger expires.
        EnterLinger();
    }
}

void AdpMac::EnterLinger()
{
    Transition(State::Linger);
    Radio(RadioState::Listen);
    if (IsSink())
    {
        return; // permanent listen
    }
    ArmTimer(Now() + m_ctx.cfg.tAddUs, &AdpMac::LingerExpired);
}

void AdpMac::LingerExpired()
{
    if (m_ctx.channel.BusyNow())
    {
        // A frame is mid-air: stay awake until it resolves.
        ArmTimer(m_ctx.channel.BusyUntil() + 1, &AdpMac::LingerExpired);
        return;
    }
    if (HasQueued())
    {
        StartAccess();
    }
    else
    {
        EnterSleepCycle();
    }
}

void AdpMac::EnterSleepCycle()
{
    Transition(State::Sleep);
    Radio(RadioState::Sleep);
    ArmTimer(Now() + NextWakeIntervalUs(), &AdpMac::WakeFired);
}

void AdpMac::WakeFired()
{
    Transition(State::Poll);
    Radio(RadioState::Listen);
    ArmTimer(Now() + m_ctx.cfg.tPollUs, &AdpMac::PollExpired);
}

void AdpMac::PollExpired()
{
    if (m_ctx.channel.BusyNow())
    {
        // Activity detected: extend the poll until the channel resolves.
        ArmTimer(m_ctx.channel.BusyUntil() + 1, &AdpMac::PollExpired);
        return;
    }
    if (HasQueued())
    {
        StartAccess();
    }
    else
    {
        EnterSleepCycle();
    }
}

void AdpMac::AfterExchangeIdle()
{
    if (IsSink())
    {
        Transition(State::Linger);
        Radio(RadioState::Listen);
        return;
    }
    EnterSleepCycle();
}

void AdpMac::DeliverOrRelay(const Packet& pkt, TimeUs now)
{
    if (IsSink())
    {
        m_ctx.metrics.RecordDelivery(pkt, now);
        return;
    }
    if (!QueuePush(pkt, true))
    {
        m_ctx.metrics.CountOverflowDrop(pkt.priority);
    }
}

void AdpMac::UpdateGenHistory(const Packet& pkt)
{
    m_genHistory.AddArrival(pkt.generatedAt);
}

// ---------------------------------------------------------------- events ---

void AdpMac::OnFrameReceived(const Frame& frame, TimeUs now)
{
    if (frame.dst != m_id)
    {
        if (frame.kind == FrameKind::PreambleStrobe)
        {
            OnStrobeOverheard(frame);
        }
        return;
    }
    switch (frame.kind)
    {
    case FrameKind::PreambleStrobe:
        if (m_state == State::Poll || m_state == State::Linger ||
            m_state == State::UrgentWait)
        {
            if (ShouldServeStrobe(frame))
            {
                BeginEa(frame);
            }
        }
        else if (m_state == State::RxDataWait && frame.priority == Priority::Urgent &&
                 LiveUrgentInterrupt() && m_rxClass != Priority::Urgent &&
                 !m_rxAckIds.empty())
        {
            // Live urgent strobe broke into a normal exchange: cut it at the
            // frame boundary and serve the urgent sender.
            Marker("interrupt", m_id, frame.src, Priority::Urgent);
            SendRxAck(true);
        }
        break;
    case FrameKind::EarlyAck:
        if (m_state == State::TxPause && frame.src == m_ctx.topo.NextHop(m_id))
        {
            Charge(m_burstClass, now - m_segStart, m_ctx.cfg.pListenMw);
            CancelTimer();
            StartDataTrain();
        }
        break;
    case FrameKind::Data:
        if (m_state == State::RxDataWait && frame.src == m_rxPeer)
        {
            Charge(m_rxClass, now - m_segStart, m_ctx.cfg.pListenMw);
            m_segStart = now;
            CancelTimer();
            bool newUrgent = false;
            for (const auto& pkt : frame.payload)
            {
                m_rxAckIds.push_back(pkt.id);
                if (m_seen.insert(pkt.id).second)
                {
                    newUrgent = newUrgent || pkt.priority == Priority::Urgent;
                    UpdateGenHistory(pkt);
                    DeliverOrRelay(pkt, now);
                }
            }
            OnDataFrameReceived(frame, newUrgent);
            UpdatePollingPolicies();
            if (!frame.morePending)
            {
                SendRxAck(false);
            }
            else if (ShouldInterruptBurst(frame))
            {
                Marker("interrupt", m_id, frame.src, Priority::Urgent);
                SendRxAck(true);
            }
            else
            {
                ArmTimer(now + m_ctx.cfg.burstGapUs + DataFrameAirtime() + kDataGraceUs,
                         &AdpMac::RxTimeout);
            }
        }
        break;
    case FrameKind::Ack:
    case FrameKind::BlockAck:
        if (m_state == State::TxAwaitAck && frame.src == m_ctx.topo.NextHop(m_id))
        {
            HandleAck(frame);
        }
        break;
    case FrameKind::Beacon:
        break;
    }
}

void AdpMac::OnChannelBusy(TimeUs)
{
    if (m_state == State::TxPause)
    {
        m_pauseForeignCarrier = true;
    }
}

void AdpMac::OnChannelIdle(TimeUs)
{
    if (m_state == State::TxWaitClear)
    {
        StartBackoff(true);
    }
}

// --------------------------------------------------------------- helpers ---

void AdpMac::Transition(State s)
{
    ++m_epoch;
    CancelTimer();
    m_state = s;
}

void AdpMac::ArmTimer(TimeUs at, void (AdpMac::*handler)())
{
    ArmTimerFn(at, [this, handler] { (this->*handler)(); });
}

void AdpMac::Charge(Priority p, TimeUs duration, double mw)
{
    m_ctx.metrics.ChargeEnergy(ChargeClassFor(p), duration, mw);
}

TimeUs AdpMac::DataFrameAirtime() const
{
    return m_ctx.channel.DataAirtimeUs(m_ctx.cfg.bitRateBps);
}

} // namespace wbansim
