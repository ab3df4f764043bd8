#include "wbansim/event-queue.h"

#include <algorithm>
#include <stdexcept>

namespace wbansim {

EventId EventQueue::Schedule(TimeUs at, std::function<void()> fn)
{
    if (at < m_now)
    {
        throw std::logic_error("EventQueue::Schedule: event scheduled in the past (at=" +
                               std::to_string(at) + " now=" + std::to_string(m_now) + ")");
    }
    EventId id = m_status.size();
    m_status.push_back(PENDING);
    m_heap.push_back(HeapNode{at, id, std::move(fn)});
    std::push_heap(m_heap.begin(), m_heap.end(), HeapCompare{});
    ++m_live;
    return id;
}

bool EventQueue::Cancel(EventId id)
{
    if (id >= m_status.size() || m_status[id] != PENDING)
    {
        return false;
    }
    m_status[id] = CANCELLED;
    --m_live;
    // The heap node stays behind and is discarded when popped.
    return true;
}

RunReport EventQueue::Run(const std::function<bool()>& stop, TimeUs maxTime)
{
    RunReport report;
    for (;;)
    {
        if (stop())
        {
            report.termination = RunReport::Termination::Completed;
            break;
        }
        // Skim cancelled entries off the top without advancing time.
        while (!m_heap.empty() && m_status[m_heap.front().id] == CANCELLED)
        {
            std::pop_heap(m_heap.begin(), m_heap.end(), HeapCompare{});
            m_heap.pop_back();
        }
        if (m_heap.empty())
        {
            report.termination = RunReport::Termination::Starved;
            break;
        }
        if (m_heap.front().fireAt > maxTime)
        {
            m_now = maxTime;
            report.termination = RunReport::Termination::TimedOut;
            break;
        }
        std::pop_heap(m_heap.begin(), m_heap.end(), HeapCompare{});
        HeapNode node = std::move(m_heap.back());
        m_heap.pop_back();
        m_status[node.id] = FIRED;
        --m_live;
        m_now = node.fireAt; // never decreases: heap order plus the past-schedule guard
        ++report.dispatched;
        node.fn();
    }
    report.endTime = m_now;
    return report;
}

} // namespace wbansim
