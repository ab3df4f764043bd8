#ifndef WBANSIM_MAC_ADP_H
#define WBANSIM_MAC_ADP_H

#include "wbansim/mac.h"

#include <cstdint>
#include <deque>
#include <unordered_set>
#include <vector>

namespace wbansim {

// ADP-MAC: duty-cycled polling receiver with preamble strobes and early ACK
// on the sender side, Cv-adaptive polling-interval distribution, T_add
// lingering, packet concatenation and block acknowledgments.
//
// One instance runs both roles of a node. The sink (id 0) keeps its radio on
// permanently and acts as the chain's final polling receiver.
class AdpMac : public MacBase
{
  public:
    AdpMac(int id, MacContext ctx);

    void Start() override;
    void EnqueueFromApp(const Packet& pkt) override;

    void OnFrameReceived(const Frame& frame, TimeUs now) override;
    void OnChannelBusy(TimeUs now) override;
    void OnChannelIdle(TimeUs now) override;

    // Retries this node gave up on (drop policy diagnostics).
    std::uint64_t RetryDrops() const { return m_retryDrops; }

  protected:
    enum class State : std::uint8_t
    {
        Sleep,
        Poll,
        TxSense,
        TxBackoff,
        TxWaitClear, // carrier monitoring until the air clears
        TxStrobe,
        TxPause,
        TxData,
        TxGap,
        TxAwaitAck,
        RxEa,
        RxDataWait,
        RxAck,
        Linger,
        UrgentWait, // used by the priority extension
    };

    // --- queue policy hooks (overridden by the priority extension) ---
    virtual bool QueuePush(const Packet& pkt, bool relay);
    virtual bool HasQueued() const;
    virtual std::vector<Packet> PreviewBurst();
    // Re-slices the burst when the data train starts: packets that queued up
    // during the strobe phase join the concatenation (class stays pinned).
    virtual std::vector<Packet> PreviewBurstForClass(Priority cls);
    virtual void RemoveQueued(const std::vector<std::uint64_t>& ids);
    virtual void BumpAttempts(std::uint64_t id);
    virtual void DropBurstPackets();

    // --- behaviour hooks ---
    virtual int CwFor(Priority burstClass) const;
    virtual TimeUs NextWakeIntervalUs();
    virtual AttrClass ChargeClassFor(Priority p) const;
    virtual void OnAccessDeferred(Priority burstClass);
    virtual void OnAccessSuccess(Priority burstClass);
    // Returns false to withhold the EA (priority interruption).
    virtual bool ShouldServeStrobe(const Frame& strobe);
    virtual void OnStrobeOverheard(const Frame& strobe);
    // Called per received data frame; returns true when the exchange must be
    // cut at this frame boundary (partial block ack).
    virtual bool ShouldInterruptBurst(const Frame& frame);
    virtual void AfterInterruptAck();
    virtual void OnDataFrameReceived(const Frame& frame, bool newUrgent);
    // Whether a live urgent strobe may break into an ongoing normal exchange.
    virtual bool LiveUrgentInterrupt() const;

    // --- shared machinery ---
    void StartAccess();
    void StartSense();
    void OnSenseResult(bool busy);
    void WaitForClearChannel();
    void StartBackoff(bool resenseAfter);
    void BackoffDone();
    void StartStrobing();
    void SendStrobe();
    void StrobeDone();
    void PauseExpired();
    void RetryOrDrop();
    void StartDataTrain();
    void SendDataFrame();
    void DataFrameDone();
    void GapDone();
    void AckTimeout();
    void HandleAck(const Frame& frame);
    void BeginEa(const Frame& strobe);
    void EaDone();
    void RxTimeout();
    void SendRxAck(bool interrupted);
    void RxAckTimerFired();
    void RxAckDone(bool interrupted);
    void EnterLinger();
    void LingerExpired();
    void EnterSleepCycle();
    void WakeFired();
    void PollExpired();
    void AfterExchangeIdle();
    void DeliverOrRelay(const Packet& pkt, TimeUs now);
    virtual void UpdateGenHistory(const Packet& pkt);
    virtual void UpdatePollingPolicies();

    void Transition(State s);
    void ArmTimer(TimeUs at, void (AdpMac::*handler)());
    void Charge(Priority p, TimeUs duration, double mw);
    void Radio(RadioState s) { m_ctx.channel.SetRadioState(m_id, s, Now()); }
    TimeUs DataFrameAirtime() const;

    State m_state = State::Sleep;

    RngStream m_backoffRng;
    RngStream m_pollRng;

    std::deque<Packet> m_fifo; // single FIFO: no priority path in ADP-MAC
    std::unordered_set<std::uint64_t> m_seen;

    std::vector<Packet> m_burst;
    Priority m_burstClass = Priority::None;
    int m_retryCount = 0;
    int m_deferStreak = 0; // consecutive deferrals of the current access
    std::size_t m_burstIdx = 0;
    TimeUs m_strobeDeadline = 0;
    TimeUs m_backoffEndsAt = 0;
    TimeUs m_segStart = 0; // start of the current charged listen segment
    bool m_pauseForeignCarrier = false;

    // receiver side
    int m_rxPeer = -1;
    Priority m_rxClass = Priority::None;
    std::vector<std::uint64_t> m_rxAckIds;
    bool m_rxInterrupted = false;
    bool m_backoffResense = false;

    PollingPolicy m_policy;
    ArrivalHistory m_genHistory; // inter-generation times of received packets

    std::uint64_t m_retryDrops = 0;
};

} // namespace wbansim

#endif // WBANSIM_MAC_ADP_H
