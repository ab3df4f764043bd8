#ifndef WBANSIM_FRAME_TRACE_H
#define WBANSIM_FRAME_TRACE_H

#include "wbansim/sim-time.h"
#include "wbansim/traffic.h"

#include <ostream>
#include <string>
#include <vector>

namespace wbansim {

// Frame-level event log: one line per frame event, tab separated:
// time_us kind src dst priority outcome. MAC-level markers (interrupt,
// ea_withheld) use the same shape with outcome "-".
class FrameTrace
{
  public:
    struct Entry
    {
        TimeUs timeUs = 0;
        std::string kind;
        int src = 0;
        int dst = 0;
        Priority priority = Priority::None;
        std::string outcome;
        TimeUs airtime = 0; // 0 for markers
    };

    void Add(Entry e) { m_entries.push_back(std::move(e)); }

    const std::vector<Entry>& Entries() const { return m_entries; }

    void WriteTsv(std::ostream& os) const;

  private:
    std::vector<Entry> m_entries;
};

} // namespace wbansim

#endif // WBANSIM_FRAME_TRACE_H
