#ifndef WBANSIM_MVDR_SCHEDULE_H
#define WBANSIM_MVDR_SCHEDULE_H

#include "wbansim/config.h"
#include "wbansim/sim-time.h"

#include <optional>
#include <unordered_set>
#include <vector>

namespace wbansim {

// Beacon-delimited superframe layout plus GTS bookkeeping, shared by all
// nodes of one run (synchronization is ideal: everybody reads the same
// schedule). Layout within each period:
//   [0, beacon) beacon | [beacon, beacon+cap) CAP | GTS slots | inactive
class MvdrSchedule
{
  public:
    explicit MvdrSchedule(const SimConfig& cfg)
        : m_periodUs(cfg.mvdrPeriodUs),
          m_beaconUs(cfg.mvdrBeaconUs),
          m_capUs(cfg.mvdrCapUs),
          m_slotUs(cfg.mvdrGtsSlotUs),
          m_slots(cfg.mvdrGtsSlots),
          m_owner(cfg.mvdrGtsSlots, -1)
    {
    }

    TimeUs PeriodUs() const { return m_periodUs; }
    int SlotCount() const { return m_slots; }
    TimeUs SlotUs() const { return m_slotUs; }

    TimeUs SuperframeStart(std::int64_t k) const { return k * m_periodUs; }
    std::int64_t IndexAt(TimeUs now) const { return now / m_periodUs; }

    TimeUs CapStartOffset() const { return m_beaconUs; }
    TimeUs CapEndOffset() const { return m_beaconUs + m_capUs; }
    TimeUs GtsStartOffset() const { return CapEndOffset(); }
    TimeUs SlotStartOffset(int slot) const
    {
        return GtsStartOffset() + static_cast<TimeUs>(slot) * m_slotUs;
    }
    TimeUs ActiveEndOffset() const { return SlotStartOffset(m_slots); }

    // A node registers once, on first urgent backlog, and stays registered.
    void Register(int node)
    {
        if (m_registeredSet.insert(node).second)
        {
            m_registered.push_back(node);
        }
    }

    bool IsRegistered(int node) const { return m_registeredSet.count(node) > 0; }

    // Called once per superframe (at the beacon): slots go round-robin over
    // the registered nodes; flows beyond the slot count wait their turn in a
    // following superframe.
    void BuildAssignments()
    {
        std::fill(m_owner.begin(), m_owner.end(), -1);
        std::size_t n = m_registered.size();
        if (n == 0)
        {
            return;
        }
        if (n <= static_cast<std::size_t>(m_slots))
        {
            for (std::size_t i = 0; i < n; ++i)
            {
                m_owner[i] = m_registered[i];
            }
            return;
        }
        for (int i = 0; i < m_slots; ++i)
        {
            m_owner[i] = m_registered[(m_rrNext + i) % n];
        }
        m_rrNext = (m_rrNext + static_cast<std::size_t>(m_slots)) % n;
    }

    int SlotOwner(int slot) const { return m_owner[slot]; }

    std::optional<int> NodeSlot(int node) const
    {
        for (int i = 0; i < m_slots; ++i)
        {
            if (m_owner[i] == node)
            {
                return i;
            }
        }
        return std::nullopt;
    }

  private:
    TimeUs m_periodUs;
    TimeUs m_beaconUs;
    TimeUs m_capUs;
    TimeUs m_slotUs;
    int m_slots;

    std::vector<int> m_registered; // registration order
    std::unordered_set<int> m_registeredSet;
    std::size_t m_rrNext = 0;
    std::vector<int> m_owner; // current superframe
};

} // namespace wbansim

#endif // WBANSIM_MVDR_SCHEDULE_H
