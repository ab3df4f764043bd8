#include "wbansim/mac-adp2.h"

#include <algorithm>

namespace wbansim {

int SelectCw(Priority priority, const CwPolicy& policy, int consecutiveDeferrals)
{
    if (priority != Priority::Urgent)
    {
        return policy.cwNormal;
    }
    int cw = policy.cwUrgent;
    if (policy.adaptive)
    {
        for (int i = 0; i < consecutiveDeferrals && cw > 1; ++i)
        {
            cw /= 2;
        }
    }
    return cw < 1 ? 1 : cw;
}

InterruptDecision ShouldInterrupt(TimeUs now,
                                  TimeUs normalBusyUntil,
                                  const UrgentPrediction& pred)
{
    InterruptDecision d;
    if (!pred.valid)
    {
        return d;
    }
    TimeUs winStart = pred.expectedAt - pred.guardBefore;
    TimeUs winEnd = pred.expectedAt + pred.guardAfter;
    if (winStart <= normalBusyUntil && winEnd >= now)
    {
        d.interrupt = true;
        d.reason = InterruptDecision::Reason::PredictedUrgentOverlap;
    }
    return d;
}

Adp2Mac::Adp2Mac(int id, MacContext ctx)
    : AdpMac(id, ctx),
      m_genUrgent(static_cast<std::size_t>(ctx.cfg.cvWindow)),
      m_genNormal(static_cast<std::size_t>(ctx.cfg.cvWindow)),
      m_urgentRx(static_cast<std::size_t>(ctx.cfg.cvWindow))
{
    m_policyUrgent.meanUs = ctx.cfg.tPiUs;
    m_policyUrgent.adaptMean = ctx.cfg.adaptPollingMean;
    m_policyUrgent.meanCapUs = ctx.cfg.pollingMeanCapUs;
    m_policyNormal = m_policyUrgent;
}

// ---------------------------------------------------------------- queues ---

bool Adp2Mac::QueuePush(const Packet& pkt, bool)
{
    auto& q = pkt.priority == Priority::Urgent ? m_urgentQ : m_normalQ;
    if (q.size() >= static_cast<std::size_t>(m_ctx.cfg.queueCapacity))
    {
        return false;
    }
    q.push_back(pkt);
    return true;
}

bool Adp2Mac::HasQueued() const
{
    return !m_urgentQ.empty() || !m_normalQ.empty();
}

std::vector<Packet> Adp2Mac::PreviewBurst()
{
    // Strict priority: the burst is all-urgent whenever urgent is pending.
    auto& q = !m_urgentQ.empty() ? m_urgentQ : m_normalQ;
    m_burstClass = !m_urgentQ.empty() ? Priority::Urgent : Priority::Normal;
    std::vector<Packet> burst;
    std::size_t n = std::min<std::size_t>(q.size(), static_cast<std::size_t>(m_ctx.cfg.maxBurst));
    for (std::size_t i = 0; i < n; ++i)
    {
        burst.push_back(q[i]);
    }
    return burst;
}

std::vector<Packet> Adp2Mac::PreviewBurstForClass(Priority cls)
{
    auto& q = cls == Priority::Urgent ? m_urgentQ : m_normalQ;
    std::vector<Packet> burst;
    std::size_t n = std::min<std::size_t>(q.size(), static_cast<std::size_t>(m_ctx.cfg.maxBurst));
    for (std::size_t i = 0; i < n; ++i)
    {
        burst.push_back(q[i]);
    }
    return burst;
}

void Adp2Mac::RemoveQueued(const std::vector<std::uint64_t>& ids)
{
    for (std::uint64_t id : ids)
    {
        auto match = [id](const Packet& p) { return p.id == id; };
        auto it = std::find_if(m_urgentQ.begin(), m_urgentQ.end(), match);
        if (it != m_urgentQ.end())
        {
            m_urgentQ.erase(it);
            continue;
        }
        it = std::find_if(m_normalQ.begin(), m_normalQ.end(), match);
        if (it != m_normalQ.end())
        {
            m_normalQ.erase(it);
        }
    }
}

void Adp2Mac::BumpAttempts(std::uint64_t id)
{
    for (auto& p : m_urgentQ)
    {
        if (p.id == id)
        {
            ++p.txAttempts;
            return;
        }
    }
    for (auto& p : m_normalQ)
    {
        if (p.id == id)
        {
            ++p.txAttempts;
            return;
        }
    }
}

// ------------------------------------------------------------- behaviour ---

int Adp2Mac::CwFor(Priority burstClass) const
{
    CwPolicy policy;
    policy.cwNormal = m_ctx.cfg.cwMax;
    policy.cwUrgent = m_ctx.cfg.cwUrgent;
    policy.adaptive = m_ctx.cfg.cwAdaptive;
    return SelectCw(burstClass, policy, m_urgentDeferrals);
}

TimeUs Adp2Mac::NextWakeIntervalUs()
{
    // One draw per priority schedule; wake for whichever comes first.
    TimeUs u = m_policyUrgent.DrawIntervalUs(m_pollRng);
    TimeUs n = m_policyNormal.DrawIntervalUs(m_pollRng);
    return std::min(u, n);
}

AttrClass Adp2Mac::ChargeClassFor(Priority p) const
{
    return AttrOf(p);
}

void Adp2Mac::OnAccessDeferred(Priority burstClass)
{
    if (burstClass == Priority::Urgent)
    {
        ++m_urgentDeferrals;
    }
}

void Adp2Mac::OnAccessSuccess(Priority burstClass)
{
    if (burstClass == Priority::Urgent)
    {
        m_urgentDeferrals = 0;
    }
}

UrgentPrediction Adp2Mac::CurrentPrediction() const
{
    // A next-arrival estimate is only actionable when the urgent stream is
    // predictable; for Poisson-classified arrivals (cv ~ 1) a mean-plus-sigma
    // window would cover all time and starve normal service.
    auto cv = m_urgentRx.Cv();
    if (!cv || Classify(*cv, m_ctx.cfg.cvThreshold) != PatternClass::Cbr)
    {
        return UrgentPrediction{};
    }
    return PredictNextUrgent(m_urgentRx, m_lastUrgentRx, m_ctx.cfg.guardK,
                             m_ctx.cfg.guardMinUs, m_ctx.cfg.guardCapUs);
}

TimeUs Adp2Mac::WindowEnd(const UrgentPrediction& pred) const
{
    return pred.expectedAt + pred.guardAfter;
}

bool Adp2Mac::ShouldServeStrobe(const Frame& strobe)
{
    if (strobe.priority == Priority::Urgent)
    {
        return true;
    }
    if (m_state == State::UrgentWait)
    {
        Marker("ea_withheld", m_id, strobe.src, strobe.priority);
        return false;
    }
    if (!m_ctx.cfg.interruptOnPrediction)
    {
        return true;
    }
    // Estimated occupancy of the requested normal exchange.
    TimeUs busyUntil = Now() + m_ctx.cfg.tEaUs +
                       static_cast<TimeUs>(m_ctx.cfg.maxBurst) *
                           (DataFrameAirtime() + m_ctx.cfg.burstGapUs) +
                       m_ctx.cfg.tAckUs;
    UrgentPrediction pred = CurrentPrediction();
    InterruptDecision d = ShouldInterrupt(Now(), busyUntil, pred);
    if (d.interrupt)
    {
        Marker("ea_withheld", m_id, strobe.src, strobe.priority);
        if (m_state != State::UrgentWait)
        {
            EnterUrgentWait(WindowEnd(pred));
        }
        return false;
    }
    return true;
}

void Adp2Mac::OnStrobeOverheard(const Frame& strobe)
{
    if (!m_ctx.cfg.urgentStrobePriority || strobe.priority != Priority::Urgent)
    {
        return;
    }
    if (m_state == State::TxBackoff && m_burstClass == Priority::Normal && !m_frozen)
    {
        // Freeze the countdown until the urgent exchange clears the channel.
        m_frozen = true;
        m_freezeEpoch = m_epoch;
        m_frozenRemainingUs = std::max<TimeUs>(0, m_backoffEndsAt - Now());
        CancelTimer();
    }
}

void Adp2Mac::OnChannelIdle(TimeUs now)
{
    if (m_frozen && m_freezeEpoch != m_epoch)
    {
        m_frozen = false; // the frozen access was abandoned meanwhile
    }
    AdpMac::OnChannelIdle(now);
    if (!m_frozen || m_state != State::TxBackoff)
    {
        return;
    }
    // Resume only after the channel stays quiet longer than a strobe pause,
    // i.e. the urgent exchange is really over.
    TimeUs quiet = m_ctx.cfg.tPrePauseUs + m_ctx.cfg.backoffSlotUs;
    ArmTimerFn(now + quiet, [this] { ResumeCheckFired(); });
}

void Adp2Mac::ResumeCheckFired()
{
    if (!m_frozen || m_freezeEpoch != m_epoch || m_state != State::TxBackoff)
    {
        return;
    }
    if (m_ctx.channel.BusyNow())
    {
        return; // a later OnChannelIdle re-arms the check
    }
    m_frozen = false;
    ++m_epoch; // fresh timer context for the resumed countdown
    m_backoffEndsAt = Now() + m_frozenRemainingUs;
    ArmTimerFn(m_backoffEndsAt, [this] { BackoffDone(); });
}

bool Adp2Mac::ShouldInterruptBurst(const Frame& frame)
{
    if (!m_ctx.cfg.interruptOnPrediction || m_rxClass == Priority::Urgent)
    {
        return false;
    }
    // At this boundary at least one more frame (plus gap) is coming.
    TimeUs busyUntil = Now() + m_ctx.cfg.burstGapUs + DataFrameAirtime();
    (void)frame;
    return ShouldInterrupt(Now(), busyUntil, CurrentPrediction()).interrupt;
}

void Adp2Mac::AfterInterruptAck()
{
    UrgentPrediction pred = CurrentPrediction();
    TimeUs until = pred.valid ? WindowEnd(pred) : Now() + m_ctx.cfg.MaxStrobeTimeUs();
    EnterUrgentWait(until);
}

void Adp2Mac::EnterUrgentWait(TimeUs until)
{
    Transition(State::UrgentWait);
    Radio(RadioState::Listen);
    m_segStart = Now();
    if (until <= Now())
    {
        until = Now() + 1;
    }
    ArmTimerFn(until, [this] { UrgentWindowExpired(); });
}

void Adp2Mac::UrgentWindowExpired()
{
    // Window listening is idle receiver time, pooled with the other
    // duty-cycle overhead rather than billed to a class.
    EnterLinger(); // normal service resumes here
}

void Adp2Mac::OnDataFrameReceived(const Frame&, bool newUrgent)
{
    if (newUrgent)
    {
        m_urgentRx.AddArrival(Now());
        m_lastUrgentRx = Now();
    }
}

bool Adp2Mac::LiveUrgentInterrupt() const
{
    return m_ctx.cfg.urgentStrobePriority;
}

void Adp2Mac::UpdateGenHistory(const Packet& pkt)
{
    if (pkt.priority == Priority::Urgent)
    {
        m_genUrgent.AddArrival(pkt.generatedAt);
    }
    else
    {
        m_genNormal.AddArrival(pkt.generatedAt);
    }
}

void Adp2Mac::UpdatePollingPolicies()
{
    m_policyUrgent = UpdatePolicy(m_genUrgent, m_policyUrgent, m_ctx.cfg.cvThreshold,
                                  m_ctx.cfg.adaptDistribution);
    m_policyNormal = UpdatePolicy(m_genNormal, m_policyNormal, m_ctx.cfg.cvThreshold,
                                  m_ctx.cfg.adaptDistribution);
}

} // namespace wbansim
