#include "wbansim/frame-trace.h"

namespace wbansim {

void FrameTrace::WriteTsv(std::ostream& os) const
{
    for (const auto& e : m_entries)
    {
        os << e.timeUs << '\t' << e.kind << '\t' << e.src << '\t' << e.dst << '\t'
           << ToString(e.priority) << '\t' << e.outcome << "\n";
    }
}

} // namespace wbansim
