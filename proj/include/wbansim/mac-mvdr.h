#ifndef WBANSIM_MAC_MVDR_H
#define WBANSIM_MAC_MVDR_H

#include "wbansim/mac.h"
#include "wbansim/mvdr-schedule.h"

#include <deque>
#include <unordered_set>
#include <vector>

namespace wbansim {

// MVDR: beacon-delimited superframe with slotted CSMA/CA for normal traffic
// in the CAP and contention-free guaranteed time slots at a higher data rate
// for urgent traffic. The sink (id 0) is the coordinator and beacons; other
// nodes follow the shared schedule (ideal synchronization). All radios sleep
// through the inactive portion.
class MvdrMac : public MacBase
{
  public:
    MvdrMac(int id, MacContext ctx, MvdrSchedule& schedule);

    void Start() override;
    void EnqueueFromApp(const Packet& pkt) override;

    void OnFrameReceived(const Frame& frame, TimeUs now) override;

  private:
    enum class State : std::uint8_t
    {
        Inactive,   // sleeping out the inactive portion
        Active,     // awake, listening (beacon, CAP, child slots)
        CapBackoff,
        CapSense,
        CapTxData,
        CapAwaitAck,
        TxAck,      // acking a received CAP frame
        GtsTx,
        GtsAwaitAck,
        GtsAckTx,   // acking a received GTS train
    };

    void OnSuperframeStart();
    void ScheduleSlotEvents(std::int64_t k);
    void OnCapStart();
    void OnGtsRegionStart();
    void OnOwnSlot(TimeUs slotEnd);
    void OnChildSlotStart();
    void OnChildSlotEnd(TimeUs slotStart);
    void OnActiveEnd();

    void TryCapAccess();
    void CapBackoffDone();
    void OnCapSense(bool busy);
    void CapAckTimeout();
    void HandleCapAck(const Frame& frame);
    void GtsSendNext();
    void GtsFrameDone();
    void GtsAckTimeout();
    void SendAck(bool block, TimeUs slotEndLimit);
    void AckTxDone();

    bool EnqueueLocal(const Packet& pkt);
    void DeliverOrRelay(const Packet& pkt, TimeUs now);

    TimeUs CapStart() const { return m_sfStart + m_schedule.CapStartOffset(); }
    TimeUs CapEnd() const { return m_sfStart + m_schedule.CapEndOffset(); }
    TimeUs NormalAirtime() const { return m_ctx.channel.DataAirtimeUs(m_ctx.cfg.bitRateBps); }
    TimeUs UrgentAirtime() const { return m_ctx.channel.DataAirtimeUs(m_ctx.cfg.rateUrgentBps); }
    void Radio(RadioState s) { m_ctx.channel.SetRadioState(m_id, s, Now()); }
    void Charge(AttrClass cls, TimeUs dur, double mw)
    {
        m_ctx.metrics.ChargeEnergy(cls, dur, mw);
    }

    MvdrSchedule& m_schedule;
    RngStream m_backoffRng;

    State m_state = State::Inactive;
    TimeUs m_sfStart = 0;

    std::deque<Packet> m_urgentQ;
    std::deque<Packet> m_normalQ;
    std::unordered_set<std::uint64_t> m_seen;

    int m_capRetries = 0;
    TimeUs m_segStart = 0;

    // GTS transmit train
    std::vector<Packet> m_gtsBurst;
    std::size_t m_gtsIdx = 0;
    TimeUs m_gtsSlotEnd = 0;

    // receive bookkeeping
    bool m_gtsRxWindow = false;  // inside a child's slot
    TimeUs m_gtsServedUntil = 0; // end of the slot's served portion
    int m_rxPeer = -1;
    std::vector<std::uint64_t> m_rxAckIds;
};

} // namespace wbansim

#endif // WBANSIM_MAC_MVDR_H
