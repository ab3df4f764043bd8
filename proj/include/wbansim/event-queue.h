#ifndef WBANSIM_EVENT_QUEUE_H
#define WBANSIM_EVENT_QUEUE_H

#include "wbansim/sim-time.h"

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace wbansim {

using EventId = std::uint64_t;

struct RunReport
{
    enum class Termination
    {
        Completed, // stop condition satisfied
        Starved,   // event queue emptied before the stop condition held
        TimedOut,  // virtual-time safety limit reached
    };

    Termination termination = Termination::Completed;
    TimeUs endTime = 0;
    std::uint64_t dispatched = 0;
};

// Deterministic virtual-time event loop. Events fire in strict
// (fireAt, seq) order; seq is the scheduling order, so ties are FIFO.
class EventQueue
{
  public:
    EventQueue() = default;
    EventQueue(const EventQueue&) = delete;
    EventQueue& operator=(const EventQueue&) = delete;

    TimeUs Now() const { return m_now; }

    // Schedules fn at absolute time `at`. Scheduling in the past is a logic
    // error and throws; it is never clamped.
    EventId Schedule(TimeUs at, std::function<void()> fn);

    // Returns true iff the event had not yet fired (and was not already
    // cancelled). A cancelled event never fires. Idempotent.
    bool Cancel(EventId id);

    bool Empty() const { return m_live == 0; }

    // Pops and dispatches events until stop() holds (checked before every
    // dispatch), the queue goes empty (Starved) or the safety horizon is
    // crossed (TimedOut).
    RunReport Run(const std::function<bool()>& stop,
                  TimeUs maxTime = std::numeric_limits<TimeUs>::max());

  private:
    struct HeapNode
    {
        TimeUs fireAt;
        EventId id; // doubles as the tie-break sequence number
        std::function<void()> fn;
    };

    struct HeapCompare
    {
        // std::push_heap keeps the *largest* on top; invert for earliest-first.
        bool operator()(const HeapNode& a, const HeapNode& b) const
        {
            if (a.fireAt != b.fireAt)
            {
                return a.fireAt > b.fireAt;
            }
            return a.id > b.id;
        }
    };

    enum : std::uint8_t
    {
        PENDING = 0,
        CANCELLED = 1,
        FIRED = 2,
    };

    std::vector<HeapNode> m_heap;
    std::vector<std::uint8_t> m_status; // indexed by EventId
    TimeUs m_now = 0;
    std::uint64_t m_live = 0; // pending (not cancelled) events in the heap
};

} // namespace wbansim

#endif // WBANSIM_EVENT_QUEUE_H
