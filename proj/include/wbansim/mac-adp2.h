#ifndef WBANSIM_MAC_ADP2_H
#define WBANSIM_MAC_ADP2_H

#include "wbansim/mac-adp.h"

namespace wbansim {

// Contention-window policy for the priority extension.
struct CwPolicy
{
    int cwNormal = 32;
    int cwUrgent = 8;
    bool adaptive = false;
};

// Slots for one access attempt. With adaptation enabled the urgent window is
// halved once per consecutive deferral (floor 1); deferral counting resets on
// success.
int SelectCw(Priority priority, const CwPolicy& policy, int consecutiveDeferrals);

struct InterruptDecision
{
    enum class Reason : std::uint8_t
    {
        None,
        PredictedUrgentOverlap,
        UrgentStrobeHeard,
    };

    bool interrupt = false;
    Reason reason = Reason::None;
};

// Interrupt iff the prediction window [expected - guardBefore,
// expected + guardAfter] overlaps the normal transfer's [now, busyUntil].
InterruptDecision ShouldInterrupt(TimeUs now,
                                  TimeUs normalBusyUntil,
                                  const UrgentPrediction& pred);

// ADP2-MAC: ADP-MAC plus per-priority queues with strict urgent-first
// service, a smaller (optionally self-halving) contention window for urgent
// traffic, per-priority polling schedules (wake at the earlier of two draws)
// and prediction-based interruption of normal transfers.
class Adp2Mac : public AdpMac
{
  public:
    Adp2Mac(int id, MacContext ctx);

    void OnChannelIdle(TimeUs now) override;

  protected:
    bool QueuePush(const Packet& pkt, bool relay) override;
    bool HasQueued() const override;
    std::vector<Packet> PreviewBurst() override;
    std::vector<Packet> PreviewBurstForClass(Priority cls) override;
    void RemoveQueued(const std::vector<std::uint64_t>& ids) override;
    void BumpAttempts(std::uint64_t id) override;

    int CwFor(Priority burstClass) const override;
    TimeUs NextWakeIntervalUs() override;
    AttrClass ChargeClassFor(Priority p) const override;
    void OnAccessDeferred(Priority burstClass) override;
    void OnAccessSuccess(Priority burstClass) override;
    bool ShouldServeStrobe(const Frame& strobe) override;
    void OnStrobeOverheard(const Frame& strobe) override;
    bool ShouldInterruptBurst(const Frame& frame) override;
    void AfterInterruptAck() override;
    void OnDataFrameReceived(const Frame& frame, bool newUrgent) override;
    bool LiveUrgentInterrupt() const override;
    void UpdateGenHistory(const Packet& pkt) override;
    void UpdatePollingPolicies() override;

    UrgentPrediction CurrentPrediction() const;
    TimeUs WindowEnd(const UrgentPrediction& pred) const;
    void EnterUrgentWait(TimeUs until);
    void UrgentWindowExpired();
    void ResumeCheckFired();

  private:
    std::deque<Packet> m_urgentQ;
    std::deque<Packet> m_normalQ;

    PollingPolicy m_policyUrgent;
    PollingPolicy m_policyNormal;
    ArrivalHistory m_genUrgent;
    ArrivalHistory m_genNormal;

    ArrivalHistory m_urgentRx; // reception times feeding the prediction
    TimeUs m_lastUrgentRx = 0;

    int m_urgentDeferrals = 0;

    // backoff freeze on overheard urgent strobes
    bool m_frozen = false;
    std::uint64_t m_freezeEpoch = 0;
    TimeUs m_frozenRemainingUs = 0;
    TimeUs m_backoffEndsAt = 0;
};

} // namespace wbansim

#endif // WBANSIM_MAC_ADP2_H
